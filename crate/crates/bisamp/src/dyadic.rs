//! Exact dyadic rationals `k / 2^depth` on the unit interval.
//!
//! Every point the binary sampler queries in normalized coordinates is a
//! dyadic rational, so query locations can be stored exactly, compared
//! bitwise, and serialized as short bit strings. All values with
//! `depth <= MAX_DEPTH` convert to `f64` without rounding.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A dyadic rational `numerator / 2^depth` in `[0, 1]`, kept in canonical
/// form: the numerator is odd unless the point is a domain boundary
/// (`0/1` or `1/1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicPoint {
    numerator: u64,
    depth: u32,
}

impl DyadicPoint {
    /// Deepest representable level. Below widths of `2^-52` the gap between
    /// adjacent points falls under the `f64` resolution of the unit interval
    /// and subdivision stops being meaningful.
    pub const MAX_DEPTH: u32 = 52;

    /// The left domain boundary, `0`.
    pub const ZERO: DyadicPoint = DyadicPoint {
        numerator: 0,
        depth: 0,
    };

    /// The right domain boundary, `1`.
    pub const ONE: DyadicPoint = DyadicPoint {
        numerator: 1,
        depth: 0,
    };

    /// Builds the canonical point for `numerator / 2^depth`.
    pub fn new(numerator: u64, depth: u32) -> Result<Self> {
        if depth > Self::MAX_DEPTH {
            return Err(Error::InvalidInput(format!(
                "dyadic depth {depth} exceeds the cap of {}",
                Self::MAX_DEPTH
            )));
        }
        if numerator > (1u64 << depth) {
            return Err(Error::InvalidInput(format!(
                "dyadic numerator {numerator} exceeds 2^{depth}"
            )));
        }
        Ok(Self::canonical(numerator, depth))
    }

    fn canonical(mut numerator: u64, mut depth: u32) -> Self {
        while depth > 0 && numerator.is_multiple_of(2) {
            numerator /= 2;
            depth -= 1;
        }
        DyadicPoint { numerator, depth }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn is_boundary(&self) -> bool {
        self.depth == 0
    }

    /// Exact `f64` value of the point. Exact because both the numerator and
    /// the power-of-two denominator are representable and the division is by
    /// a power of two.
    pub fn value(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.depth) as f64
    }

    /// Midpoint of two points, or `None` when the canonical result would
    /// sit deeper than [`Self::MAX_DEPTH`].
    pub fn midpoint(a: DyadicPoint, b: DyadicPoint) -> Option<DyadicPoint> {
        let common = a.depth.max(b.depth);
        let ka = a.numerator << (common - a.depth);
        let kb = b.numerator << (common - b.depth);
        let mid = Self::canonical(ka + kb, common + 1);
        if mid.depth > Self::MAX_DEPTH {
            None
        } else {
            Some(mid)
        }
    }

    /// Bit-string codec: the `depth` binary digits of the fractional
    /// expansion, so `1/2 -> "1"` and `3/8 -> "011"`. The boundaries use the
    /// digits of their own expansions, `"0"` and `"10"`, which keeps every
    /// encoding distinct (interior strings always end in `1`).
    pub fn encode(&self) -> String {
        if *self == Self::ZERO {
            return "0".to_string();
        }
        if *self == Self::ONE {
            return "10".to_string();
        }
        format!("{:0width$b}", self.numerator, width = self.depth as usize)
    }

    /// Inverse of [`Self::encode`]. Rejects strings that do not name a
    /// canonical point.
    pub fn decode(bits: &str) -> Result<DyadicPoint> {
        match bits {
            "0" => return Ok(Self::ZERO),
            "10" => return Ok(Self::ONE),
            "" => return Err(Error::InvalidInput("empty dyadic bit string".into())),
            _ => {}
        }
        if bits.len() > Self::MAX_DEPTH as usize {
            return Err(Error::InvalidInput(format!(
                "dyadic bit string '{bits}' is deeper than {}",
                Self::MAX_DEPTH
            )));
        }
        if !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidInput(format!(
                "dyadic bit string '{bits}' contains non-binary digits"
            )));
        }
        if !bits.ends_with('1') {
            return Err(Error::InvalidInput(format!(
                "dyadic bit string '{bits}' is not canonical (trailing zero)"
            )));
        }
        let numerator = u64::from_str_radix(bits, 2)
            .map_err(|e| Error::InvalidInput(format!("dyadic bit string '{bits}': {e}")))?;
        Ok(DyadicPoint {
            numerator,
            depth: bits.len() as u32,
        })
    }
}

impl PartialOrd for DyadicPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.depth.max(other.depth);
        let ka = self.numerator << (common - self.depth);
        let kb = other.numerator << (common - other.depth);
        ka.cmp(&kb)
    }
}

impl fmt::Debug for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.depth)
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_reduction() {
        let p = DyadicPoint::new(4, 3).unwrap();
        assert_eq!(p.numerator(), 1);
        assert_eq!(p.depth(), 1);
        assert_eq!(p.value(), 0.5);

        let one = DyadicPoint::new(8, 3).unwrap();
        assert_eq!(one, DyadicPoint::ONE);

        let zero = DyadicPoint::new(0, 7).unwrap();
        assert_eq!(zero, DyadicPoint::ZERO);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(DyadicPoint::new(9, 3).is_err());
        assert!(DyadicPoint::new(1, 53).is_err());
    }

    #[test]
    fn midpoint_of_boundaries() {
        let m = DyadicPoint::midpoint(DyadicPoint::ZERO, DyadicPoint::ONE).unwrap();
        assert_eq!(m, DyadicPoint::new(1, 1).unwrap());
        assert_eq!(m.value(), 0.5);
    }

    #[test]
    fn midpoint_mixed_depth() {
        // midpoint of 1/4 and 1/2 is 3/8
        let a = DyadicPoint::new(1, 2).unwrap();
        let b = DyadicPoint::new(1, 1).unwrap();
        let m = DyadicPoint::midpoint(a, b).unwrap();
        assert_eq!((m.numerator(), m.depth()), (3, 3));
    }

    #[test]
    fn midpoint_depth_cap() {
        let a = DyadicPoint::new(1, 52).unwrap();
        let b = DyadicPoint::new(2, 52).unwrap(); // canonical (1, 51)
        assert!(DyadicPoint::midpoint(a, b).is_none());
        // but a midpoint that canonicalizes back under the cap is fine
        let c = DyadicPoint::new(1, 52).unwrap();
        let d = DyadicPoint::new(3, 52).unwrap();
        let m = DyadicPoint::midpoint(c, d).unwrap();
        assert_eq!((m.numerator(), m.depth()), (1, 51));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(DyadicPoint::new(1, 1).unwrap().encode(), "1");
        assert_eq!(DyadicPoint::new(3, 3).unwrap().encode(), "011");
        assert_eq!(DyadicPoint::ZERO.encode(), "0");
        assert_eq!(DyadicPoint::ONE.encode(), "10");
        assert_eq!(DyadicPoint::new(1, 2).unwrap().encode(), "01");
    }

    #[test]
    fn decode_rejects_non_canonical() {
        assert!(DyadicPoint::decode("").is_err());
        assert!(DyadicPoint::decode("010").is_err());
        assert!(DyadicPoint::decode("2").is_err());
        assert!(DyadicPoint::decode("00").is_err());
        assert_eq!(DyadicPoint::decode("011").unwrap().value(), 0.375);
    }

    #[test]
    fn ordering_follows_value() {
        let a = DyadicPoint::new(1, 2).unwrap();
        let b = DyadicPoint::new(1, 1).unwrap();
        let c = DyadicPoint::new(3, 2).unwrap();
        assert!(DyadicPoint::ZERO < a && a < b && b < c && c < DyadicPoint::ONE);
    }

    proptest! {
        #[test]
        fn codec_roundtrip(depth in 1u32..=52, raw in 0u64..u64::MAX) {
            let numerator = (raw % (1u64 << depth)) | 1; // odd, in range
            let p = DyadicPoint::new(numerator, depth).unwrap();
            let back = DyadicPoint::decode(&p.encode()).unwrap();
            prop_assert_eq!(p, back);
        }

        #[test]
        fn boundary_roundtrip_and_float_midpoint(depth in 0u32..52, raw in 0u64..u64::MAX) {
            let k = raw % (1u64 << depth);
            let left = DyadicPoint::new(k, depth).unwrap();
            let right = DyadicPoint::new(k + 1, depth).unwrap();
            prop_assert_eq!(DyadicPoint::decode(&left.encode()).unwrap(), left);
            // floating midpoint of adjacent points matches the exact value bitwise
            let m = DyadicPoint::midpoint(left, right).unwrap();
            let float_mid = (left.value() + right.value()) / 2.0;
            prop_assert_eq!(m.value().to_bits(), float_mid.to_bits());
        }
    }
}
