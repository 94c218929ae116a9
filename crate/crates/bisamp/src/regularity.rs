//! Regularity conditions `(C, d(.))` and the candidate score they induce.
//!
//! A condition pairs a positive constant with a convex distance function and
//! asserts that the objective moves away from its extrema no faster than
//! `C * d(.)`. Four distance shapes are supported: absolute value (Lipschitz
//! continuity with constant `L`), square (Lipschitz smoothness with constant
//! `H`), a general power `|.|^p` with `p >= 1` (constant `K`), and a
//! caller-supplied convex function `g` (constant `M`).
//!
//! The score of an interval bracketed by evaluated points is
//! `min(f0, f1) - C * d((x1 - x0) / 2)`, a certified lower bound on the
//! objective over the whole interval.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Evaluation contract for a custom convex distance function.
pub type DistanceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Absolute tolerance on `g(0) = 0` for custom distances.
pub const ORIGIN_TOLERANCE: f64 = 1e-12;

/// Slack allowed when checking midpoint convexity of a custom distance on
/// the validation grid.
pub const CONVEXITY_SLACK: f64 = 1e-9;

/// Grid resolution used when a custom distance is validated implicitly
/// before an optimizer run.
pub const DEFAULT_VALIDATION_GRID: usize = 101;

/// The distance shape `d(.)` of a regularity condition.
///
/// Distances are evaluated on the magnitude of their argument; all concrete
/// shapes are even functions, and taking `|u|` keeps a custom `g` well
/// defined for negative displacements.
#[derive(Clone)]
pub enum DistanceSpec {
    /// `d(u) = |u|`. Equivalent to `Power(1)`.
    Absolute,
    /// `d(u) = |u|^2`. Equivalent to `Power(2)`.
    Square,
    /// `d(u) = |u|^p` with `p >= 1`.
    Power(f64),
    /// `d(u) = g(|u|)` for a non-negative convex `g` with `g(0) = 0`,
    /// validated on a grid over `[0, 1]` rather than trusted.
    ConvexCustom {
        g: DistanceFn,
        /// Cached `g(1)`, the value driving the convex-class regret bound.
        g_one: f64,
    },
}

impl DistanceSpec {
    /// Evaluates the distance at `u` (on its magnitude).
    pub fn eval(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(Error::InvalidInput(format!(
                "distance argument must be finite, got {u}"
            )));
        }
        let mag = u.abs();
        match self {
            DistanceSpec::Absolute => Ok(mag),
            DistanceSpec::Square => Ok(mag * mag),
            // Dispatch on the exponent so Power(1)/Power(2) are bitwise
            // identical to Absolute/Square.
            DistanceSpec::Power(p) if *p == 1.0 => Ok(mag),
            DistanceSpec::Power(p) if *p == 2.0 => Ok(mag * mag),
            DistanceSpec::Power(p) => Ok(mag.powf(*p)),
            DistanceSpec::ConvexCustom { g, .. } => {
                let value = g(mag);
                if !value.is_finite() || value < 0.0 {
                    Err(Error::ConditionViolation(format!(
                        "custom distance returned {value} at u = {mag}"
                    )))
                } else {
                    Ok(value)
                }
            }
        }
    }

    /// Checks a custom distance on a uniform grid over `[0, 1]`:
    /// non-negativity, `g(0) = 0` within [`ORIGIN_TOLERANCE`], and midpoint
    /// convexity within [`CONVEXITY_SLACK`] for every grid pair whose
    /// midpoint is itself a grid point. Built-in shapes pass trivially.
    pub fn validate_custom(&self, grid_size: usize) -> ValidationReport {
        let n = grid_size.max(2);
        let g = match self {
            DistanceSpec::ConvexCustom { g, .. } => g,
            _ => {
                return ValidationReport {
                    grid_size: n,
                    violations: Vec::new(),
                }
            }
        };
        let mut violations = Vec::new();
        let step = 1.0 / (n - 1) as f64;
        let us: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { 1.0 } else { i as f64 * step })
            .collect();
        let values: Vec<f64> = us.iter().map(|&u| g(u)).collect();

        for (&u, &v) in us.iter().zip(values.iter()) {
            if !v.is_finite() {
                violations.push(CustomViolation::NonFinite { u, value: v });
            } else if v < 0.0 {
                violations.push(CustomViolation::Negative { u, value: v });
            }
        }
        if values[0].is_finite() && values[0].abs() > ORIGIN_TOLERANCE {
            violations.push(CustomViolation::OriginOffset { value: values[0] });
        }
        for i in 0..n {
            for j in (i + 2..n).step_by(2) {
                let mid = (i + j) / 2;
                let lhs = values[mid];
                let rhs = (values[i] + values[j]) / 2.0;
                if lhs.is_finite() && rhs.is_finite() && lhs > rhs + CONVEXITY_SLACK {
                    violations.push(CustomViolation::MidpointConvexity {
                        u: us[i],
                        v: us[j],
                        midpoint_value: lhs,
                        chord_value: rhs,
                    });
                }
            }
        }
        ValidationReport {
            grid_size: n,
            violations,
        }
    }
}

impl fmt::Debug for DistanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceSpec::Absolute => write!(f, "Absolute"),
            DistanceSpec::Square => write!(f, "Square"),
            DistanceSpec::Power(p) => write!(f, "Power({p})"),
            DistanceSpec::ConvexCustom { g_one, .. } => {
                write!(f, "ConvexCustom {{ g_one: {g_one} }}")
            }
        }
    }
}

/// One defect found while validating a custom distance.
#[derive(Debug, Clone, PartialEq)]
pub enum CustomViolation {
    NonFinite {
        u: f64,
        value: f64,
    },
    Negative {
        u: f64,
        value: f64,
    },
    OriginOffset {
        value: f64,
    },
    MidpointConvexity {
        u: f64,
        v: f64,
        midpoint_value: f64,
        chord_value: f64,
    },
}

/// Outcome of a custom-distance grid validation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    grid_size: usize,
    violations: Vec<CustomViolation>,
}

impl ValidationReport {
    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn violations(&self) -> &[CustomViolation] {
        &self.violations
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A regularity condition `(C, d(.))`: constant and distance shape together.
#[derive(Debug, Clone)]
pub struct RegularityCondition {
    constant: f64,
    distance: DistanceSpec,
}

impl RegularityCondition {
    pub fn new(constant: f64, distance: DistanceSpec) -> Result<Self> {
        if !constant.is_finite() || constant <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "regularity constant must be finite and strictly positive, got {constant}"
            )));
        }
        if let DistanceSpec::Power(p) = distance {
            if !p.is_finite() || p < 1.0 {
                return Err(Error::InvalidInput(format!(
                    "power exponent must be finite and at least 1, got {p}"
                )));
            }
        }
        if let DistanceSpec::ConvexCustom { g_one, .. } = &distance {
            if !g_one.is_finite() || *g_one < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "custom distance must have finite non-negative g(1), got {g_one}"
                )));
            }
        }
        Ok(RegularityCondition { constant, distance })
    }

    /// Lipschitz continuity with constant `l`.
    pub fn lipschitz(l: f64) -> Result<Self> {
        Self::new(l, DistanceSpec::Absolute)
    }

    /// Lipschitz smoothness with constant `h`.
    pub fn smooth(h: f64) -> Result<Self> {
        Self::new(h, DistanceSpec::Square)
    }

    /// Power-law condition `K |.|^p`.
    pub fn power(p: f64, k: f64) -> Result<Self> {
        Self::new(k, DistanceSpec::Power(p))
    }

    /// General convex condition `M g(.)`. Evaluates and caches `g(1)`.
    pub fn convex_custom<G>(m: f64, g: G) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let g_one = g(1.0);
        Self::new(
            m,
            DistanceSpec::ConvexCustom {
                g: Arc::new(g),
                g_one,
            },
        )
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn distance(&self) -> &DistanceSpec {
        &self.distance
    }

    /// Certified lower bound for the objective over `[x0, x1]` from the
    /// endpoint evaluations: `min(f0, f1) - C * d((x1 - x0) / 2)`.
    pub fn score(&self, x0: f64, x1: f64, f0: f64, f1: f64) -> Result<f64> {
        if !x0.is_finite() || !x1.is_finite() || x0 >= x1 {
            return Err(Error::InvalidInterval { x0, x1 });
        }
        if !f0.is_finite() || !f1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "endpoint evaluations must be finite, got f0 = {f0}, f1 = {f1}"
            )));
        }
        let d = self.distance.eval((x1 - x0) / 2.0)?;
        Ok(f0.min(f1) - self.constant * d)
    }

    /// Re-expresses the condition in normalized coordinates
    /// `u = (x - lo) / (hi - lo)`, so that scores computed on `[0, 1]` equal
    /// scores computed in original coordinates. Power-family constants scale
    /// by `(hi - lo)^p`; a custom `g` is composed with the width.
    pub fn normalize(&self, lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidDomain { lo, hi });
        }
        let width = hi - lo;
        match &self.distance {
            DistanceSpec::Absolute => Self::new(self.constant * width, DistanceSpec::Absolute),
            DistanceSpec::Square => Self::new(self.constant * width * width, DistanceSpec::Square),
            DistanceSpec::Power(p) => {
                Self::new(self.constant * width.powf(*p), DistanceSpec::Power(*p))
            }
            DistanceSpec::ConvexCustom { g, .. } => {
                let inner = Arc::clone(g);
                let g_one = inner(width);
                if !g_one.is_finite() || g_one < 0.0 {
                    return Err(Error::ConditionViolation(format!(
                        "custom distance returned {g_one} at the domain width {width}"
                    )));
                }
                Self::new(
                    self.constant,
                    DistanceSpec::ConvexCustom {
                        g: Arc::new(move |u| inner(u * width)),
                        g_one,
                    },
                )
            }
        }
    }
}

impl fmt::Display for RegularityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.distance {
            DistanceSpec::Absolute => write!(f, "abs:{}", self.constant),
            DistanceSpec::Square => write!(f, "square:{}", self.constant),
            DistanceSpec::Power(p) => write!(f, "power:{}:{}", p, self.constant),
            DistanceSpec::ConvexCustom { g_one, .. } => {
                write!(f, "convex[g(1)={}]:{}", g_one, self.constant)
            }
        }
    }
}

impl FromStr for RegularityCondition {
    type Err = Error;

    /// Parses `abs:<C>`, `square:<C>`, or `power:<p>:<C>`. Custom convex
    /// conditions are only constructible programmatically.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse = |field: &str, what: &str| -> Result<f64> {
            field.parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!("condition '{s}': cannot parse {what} '{field}'"))
            })
        };
        match parts.as_slice() {
            ["abs", c] => Self::lipschitz(parse(c, "constant")?),
            ["square", c] => Self::smooth(parse(c, "constant")?),
            ["power", p, c] => Self::power(parse(p, "exponent")?, parse(c, "constant")?),
            _ => Err(Error::InvalidInput(format!(
                "condition '{s}' is not of the form abs:<C>, square:<C>, or power:<p>:<C>"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        assert_eq!(DistanceSpec::Absolute.eval(-0.5).unwrap(), 0.5);
        assert_eq!(DistanceSpec::Square.eval(0.25).unwrap(), 0.0625);
        assert_eq!(DistanceSpec::Power(3.0).eval(0.5).unwrap(), 0.125);
        assert_eq!(DistanceSpec::Absolute.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn eval_is_symmetric_in_sign() {
        for spec in [
            DistanceSpec::Absolute,
            DistanceSpec::Square,
            DistanceSpec::Power(1.7),
        ] {
            assert_eq!(spec.eval(0.3).unwrap(), spec.eval(-0.3).unwrap());
        }
    }

    #[test]
    fn eval_rejects_non_finite() {
        assert!(DistanceSpec::Absolute.eval(f64::NAN).is_err());
        assert!(DistanceSpec::Square.eval(f64::INFINITY).is_err());
    }

    #[test]
    fn eval_flags_bad_custom() {
        let cond = RegularityCondition::convex_custom(1.0, |u| u - 0.5).unwrap();
        match cond.distance().eval(0.1) {
            Err(Error::ConditionViolation(_)) => {}
            other => panic!("expected condition violation, got {other:?}"),
        }
    }

    #[test]
    fn score_examples() {
        let abs1 = RegularityCondition::lipschitz(1.0).unwrap();
        assert_eq!(abs1.score(0.0, 1.0, 0.0, 0.0).unwrap(), -0.5);

        let abs2 = RegularityCondition::lipschitz(2.0).unwrap();
        assert_eq!(abs2.score(0.0, 0.5, 1.0, 3.0).unwrap(), 0.5);

        let sq4 = RegularityCondition::smooth(4.0).unwrap();
        assert_eq!(sq4.score(0.5, 1.0, 2.0, 1.0).unwrap(), 0.75);
    }

    #[test]
    fn score_rejects_bad_interval() {
        let cond = RegularityCondition::lipschitz(1.0).unwrap();
        assert!(matches!(
            cond.score(1.0, 1.0, 0.0, 0.0),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            cond.score(2.0, 1.0, 0.0, 0.0),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(cond.score(0.0, 1.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn constant_must_be_positive() {
        assert!(RegularityCondition::lipschitz(0.0).is_err());
        assert!(RegularityCondition::lipschitz(-1.0).is_err());
        assert!(RegularityCondition::power(0.5, 1.0).is_err());
    }

    #[test]
    fn validate_custom_examples() {
        let identity = RegularityCondition::convex_custom(1.0, |u| u).unwrap();
        assert!(identity.distance().validate_custom(101).is_pass());

        let square = RegularityCondition::convex_custom(1.0, |u| u * u).unwrap();
        assert!(square.distance().validate_custom(101).is_pass());

        let negated = DistanceSpec::ConvexCustom {
            g: Arc::new(|u: f64| -u),
            g_one: -1.0,
        };
        let report = negated.validate_custom(101);
        assert!(!report.is_pass());
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, CustomViolation::Negative { .. })));
    }

    #[test]
    fn validated_custom_is_monotone_on_the_grid() {
        // non-negativity, g(0) = 0, and midpoint convexity together force
        // monotonicity in magnitude; spot-check it on a validated shape
        let cond = RegularityCondition::convex_custom(1.0, |u: f64| u.powf(1.5)).unwrap();
        assert!(cond.distance().validate_custom(101).is_pass());
        let mut prev = 0.0;
        for i in 0..=100 {
            let v = cond.distance().eval(i as f64 / 100.0).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn validate_custom_flags_concavity() {
        let sqrt = DistanceSpec::ConvexCustom {
            g: Arc::new(|u: f64| u.sqrt()),
            g_one: 1.0,
        };
        let report = sqrt.validate_custom(101);
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, CustomViolation::MidpointConvexity { .. })));
    }

    #[test]
    fn parse_condition_strings() {
        let abs = "abs:2.5".parse::<RegularityCondition>().unwrap();
        assert_eq!(abs.constant(), 2.5);
        assert!(matches!(abs.distance(), DistanceSpec::Absolute));

        let square = "square:1".parse::<RegularityCondition>().unwrap();
        assert!(matches!(square.distance(), DistanceSpec::Square));

        let power = "power:3:1".parse::<RegularityCondition>().unwrap();
        assert!(matches!(power.distance(), DistanceSpec::Power(p) if *p == 3.0));

        assert!("power:3".parse::<RegularityCondition>().is_err());
        assert!("abs:zero".parse::<RegularityCondition>().is_err());
        assert!("cubic:1".parse::<RegularityCondition>().is_err());
        assert!("abs:-1".parse::<RegularityCondition>().is_err());
    }

    #[test]
    fn display_roundtrips_through_parse() {
        for text in ["abs:2.5", "square:1", "power:3:1"] {
            let cond = text.parse::<RegularityCondition>().unwrap();
            assert_eq!(cond.to_string(), text);
        }
    }

    #[test]
    fn normalize_examples() {
        let abs3 = RegularityCondition::lipschitz(3.0).unwrap();
        let identity = abs3.normalize(0.0, 1.0).unwrap();
        assert_eq!(identity.constant(), 3.0);

        let stretched = abs3.normalize(0.0, 2.0).unwrap();
        assert_eq!(stretched.constant(), 6.0);

        let sq5 = RegularityCondition::smooth(5.0).unwrap();
        assert_eq!(sq5.normalize(-1.0, 1.0).unwrap().constant(), 20.0);

        assert!(abs3.normalize(1.0, 1.0).is_err());
    }

    #[test]
    fn normalize_preserves_scores() {
        // interval [0.5, 1.25] inside [0, 2] maps to [0.25, 0.625]
        let cond = RegularityCondition::power(3.0, 1.5).unwrap();
        let normalized = cond.normalize(0.0, 2.0).unwrap();
        let original = cond.score(0.5, 1.25, 2.0, 3.0).unwrap();
        let mapped = normalized.score(0.25, 0.625, 2.0, 3.0).unwrap();
        assert!((original - mapped).abs() < 1e-12);
    }

    #[test]
    fn normalize_custom_composes_width() {
        let cond = RegularityCondition::convex_custom(2.0, |u| u * u).unwrap();
        let normalized = cond.normalize(0.0, 3.0).unwrap();
        // g_norm(u) = (3u)^2, so d(1/2) = 2.25
        assert!((normalized.distance().eval(0.5).unwrap() - 2.25).abs() < 1e-15);
        match normalized.distance() {
            DistanceSpec::ConvexCustom { g_one, .. } => assert_eq!(*g_one, 9.0),
            other => panic!("expected custom distance, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn eval_monotone_in_magnitude(
            p in 1.0f64..6.0,
            a in -1.0f64..1.0,
            b in -1.0f64..1.0,
        ) {
            let spec = DistanceSpec::Power(p);
            let (small, large) = if a.abs() <= b.abs() { (a, b) } else { (b, a) };
            prop_assert!(spec.eval(small).unwrap() <= spec.eval(large).unwrap());
        }

        #[test]
        fn power_one_matches_absolute_bitwise(u in -1.0f64..1.0) {
            let via_power = DistanceSpec::Power(1.0).eval(u).unwrap();
            let via_abs = DistanceSpec::Absolute.eval(u).unwrap();
            prop_assert_eq!(via_power.to_bits(), via_abs.to_bits());
            let via_power2 = DistanceSpec::Power(2.0).eval(u).unwrap();
            let via_square = DistanceSpec::Square.eval(u).unwrap();
            prop_assert_eq!(via_power2.to_bits(), via_square.to_bits());
        }

        #[test]
        fn score_monotone_in_width_and_floor(
            c in 0.1f64..5.0,
            p in 1.0f64..4.0,
            x0 in 0.0f64..0.4,
            x1 in 0.6f64..1.0,
            shrink in 0.0f64..0.09,
            f0 in -1.0f64..1.0,
            f1 in -1.0f64..1.0,
            raise in 0.0f64..1.0,
        ) {
            let cond = RegularityCondition::power(p, c).unwrap();
            let base = cond.score(x0, x1, f0, f1).unwrap();
            // shrinking the interval around its midpoint never lowers the score
            let shrunk = cond.score(x0 + shrink, x1 - shrink, f0, f1).unwrap();
            prop_assert!(shrunk >= base);
            // raising both endpoint values never lowers the score
            let raised = cond.score(x0, x1, f0 + raise, f1 + raise).unwrap();
            prop_assert!(raised >= base);
        }
    }
}
