//! Regret series, the brute-force grid oracle, and the theoretical
//! cumulative-regret bounds.
//!
//! All logarithms here are base 2. The closed-form bounds chain through
//! `log2 3 >= 3/2` and `a <= log2 T` for the generation count `a`, neither
//! of which survives a switch to natural logarithms, so base 2 is the only
//! base under which every inequality below is valid.

use crate::error::{Error, Result};
use crate::regularity::{DistanceSpec, RegularityCondition};
use crate::trace::QueryTrace;

/// Default grid resolution for the brute-force oracle.
pub const DEFAULT_ORACLE_GRID: usize = 1_000_001;

/// Ground-truth minimum estimate from a uniform evaluation grid.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Grid point with the lowest evaluation, in original coordinates.
    pub x_star: f64,
    /// Lowest evaluation found on the grid.
    pub f_star: f64,
    /// Number of grid points used (0 for analytically known minima).
    pub grid_points: usize,
    /// Certified bound on `f_star - true minimum`: the true minimizer lies
    /// within half a grid spacing of some grid point, and the regularity
    /// condition at the minimizer bounds how much lower the function can be
    /// there: `C * d(spacing / 2)`.
    pub error_bound: f64,
}

impl OracleResult {
    /// Wraps an analytically known minimum as an exact oracle.
    pub fn analytic(x_star: f64, f_star: f64) -> Self {
        OracleResult {
            x_star,
            f_star,
            grid_points: 0,
            error_bound: 0.0,
        }
    }
}

/// Brute-force minimum of the objective over a uniform grid, with a
/// certified error bound derived from the regularity condition.
pub fn oracle_min<F: Fn(f64) -> f64>(
    objective: F,
    domain: (f64, f64),
    cond: &RegularityCondition,
    grid_points: usize,
) -> Result<OracleResult> {
    let (lo, hi) = domain;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidDomain { lo, hi });
    }
    if grid_points < 2 {
        return Err(Error::InvalidInput(format!(
            "oracle grid needs at least 2 points, got {grid_points}"
        )));
    }
    let n = grid_points;
    let spacing = (hi - lo) / (n - 1) as f64;
    let mut x_star = lo;
    let mut f_star = f64::INFINITY;
    for i in 0..n {
        let x = if i == n - 1 {
            hi
        } else {
            lo + i as f64 * spacing
        };
        let fx = objective(x);
        if !fx.is_finite() {
            return Err(Error::Evaluation { x });
        }
        if fx < f_star {
            f_star = fx;
            x_star = x;
        }
    }
    let error_bound = cond.constant() * cond.distance().eval(spacing / 2.0)?;
    Ok(OracleResult {
        x_star,
        f_star,
        grid_points: n,
        error_bound,
    })
}

/// Cumulative and simple regret of a trace, optionally paired with the
/// series of the applicable theoretical bound.
#[derive(Debug, Clone)]
pub struct RegretReport {
    /// `cumulative[t-1] = sum_{tau <= t} (f(x_tau) - f_star)`.
    pub cumulative: Vec<f64>,
    /// `simple[t-1] = min_{tau <= t} f(x_tau) - f_star`.
    pub simple: Vec<f64>,
    /// Theoretical bound at each `t` (NaN for `t < 3`, where the bounds are
    /// not defined). Empty when no bound was attached.
    pub bound: Vec<f64>,
    /// Label of the attached bound, or `"none"`.
    pub bound_name: String,
    /// The oracle the regrets were measured against.
    pub f_star_source: OracleResult,
}

impl RegretReport {
    /// Final cumulative regret `R_T`.
    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }
}

/// Which theoretical cumulative-regret curve applies to a trace.
#[derive(Debug, Clone)]
pub enum TheoreticalBound {
    /// The closed-form bound matching the condition class used by the
    /// binary sampler. The condition must be the normalized one, since
    /// regret is measured on raw function values.
    BinarySampling(RegularityCondition),
    /// Reference level reported for Piyavskii-Shubert comparisons.
    PiyavskiiShubert { lipschitz: f64 },
}

impl TheoreticalBound {
    pub fn name(&self) -> String {
        match self {
            TheoreticalBound::BinarySampling(cond) => match cond.distance() {
                DistanceSpec::Absolute => "L*log2(3T)".to_string(),
                DistanceSpec::Square => "2.25*H".to_string(),
                DistanceSpec::Power(p) => format!("power(p={p})"),
                DistanceSpec::ConvexCustom { .. } => "M*g(1)*log2(3T)".to_string(),
            },
            TheoreticalBound::PiyavskiiShubert { .. } => "ps:2*L*log2(T)".to_string(),
        }
    }

    /// Bound value at horizon `t`; NaN below the smallest valid horizon.
    pub fn at(&self, t: usize) -> f64 {
        if t < 3 {
            return f64::NAN;
        }
        match self {
            TheoreticalBound::BinarySampling(cond) => {
                let c = cond.constant();
                match cond.distance() {
                    DistanceSpec::Absolute => bound_lipschitz(c, t as u64),
                    DistanceSpec::Square => bound_smooth(c, t as u64),
                    DistanceSpec::Power(p) => bound_power(c, *p, t as u64),
                    DistanceSpec::ConvexCustom { g_one, .. } => bound_convex(c, *g_one, t as u64),
                }
            }
            TheoreticalBound::PiyavskiiShubert { lipschitz } => {
                crate::baseline::ps_reference_bound(*lipschitz, t)
            }
        }
    }
}

/// Regret series of a trace against an oracle, without a bound series.
pub fn regret(trace: &QueryTrace, oracle: &OracleResult) -> RegretReport {
    let mut cumulative = Vec::with_capacity(trace.len());
    let mut simple = Vec::with_capacity(trace.len());
    let mut running = 0.0;
    let mut best = f64::INFINITY;
    for r in &trace.records {
        running += r.fx - oracle.f_star;
        best = best.min(r.fx);
        cumulative.push(running);
        simple.push(best - oracle.f_star);
    }
    RegretReport {
        cumulative,
        simple,
        bound: Vec::new(),
        bound_name: "none".to_string(),
        f_star_source: oracle.clone(),
    }
}

/// Regret series plus the series of the given theoretical bound.
pub fn regret_with_bound(
    trace: &QueryTrace,
    oracle: &OracleResult,
    bound: &TheoreticalBound,
) -> RegretReport {
    let mut report = regret(trace, oracle);
    report.bound = (1..=trace.len()).map(|t| bound.at(t)).collect();
    report.bound_name = bound.name();
    report
}

/// Splits a horizon `T >= 3` into the unique `(a, B)` with `1 <= B <= 2^a`
/// and `2^a + B + 1 = T`: after the first boundary query, the remaining
/// `T - 1` queries fill `a` full halving generations plus `B` queries of the
/// next one.
pub fn decompose_t(t: u64) -> Result<(u32, u64)> {
    if t < 3 {
        return Err(Error::InvalidInput(format!(
            "horizon must be at least 3, got {t}"
        )));
    }
    let m = t - 1; // 2^a < m <= 2^(a+1)
    let a = 63 - (m - 1).leading_zeros();
    let b = m - (1u64 << a);
    debug_assert!(b >= 1 && b <= (1u64 << a));
    Ok((a, b))
}

/// The general cumulative-regret bound for any condition class:
/// `C d(1/2) + C sum_{i=0}^{a-1} 2^i d(2^-i) + C B d(2^-a)`
/// with `(a, B)` from [`decompose_t`].
pub fn bound_general(cond: &RegularityCondition, t: u64) -> Result<f64> {
    let (a, b) = decompose_t(t)?;
    let c = cond.constant();
    let d = |u: f64| cond.distance().eval(u);
    let mut total = c * d(0.5)?;
    for i in 0..a {
        total += c * 2f64.powi(i as i32) * d(2f64.powi(-(i as i32)))?;
    }
    total += c * b as f64 * d(2f64.powi(-(a as i32)))?;
    Ok(total)
}

/// Closed-form bound for Lipschitz-continuous objectives: `L log2(3T)`.
pub fn bound_lipschitz(l: f64, t: u64) -> f64 {
    l * (3.0 * t as f64).log2()
}

/// Closed-form bound for Lipschitz-smooth objectives: `2.25 H`, independent
/// of the horizon.
pub fn bound_smooth(h: f64, _t: u64) -> f64 {
    2.25 * h
}

/// Closed-form bound for the power class `K |.|^p`:
/// `K/2^p + K (1 - (2T)^(1-p)) / (1 - 2^(1-p))` for `p > 1`. At `p = 1` the
/// expression is singular and its limit is the Lipschitz bound, so the call
/// dispatches there.
pub fn bound_power(k: f64, p: f64, t: u64) -> f64 {
    if p == 1.0 {
        return bound_lipschitz(k, t);
    }
    let tail = (2.0 * t as f64).powf(1.0 - p);
    k / 2f64.powf(p) + k * (1.0 - tail) / (1.0 - 2f64.powf(1.0 - p))
}

/// Horizon limit of [`bound_power`]: `K/2^p + K / (1 - 2^(1-p))` for
/// `p > 1` (infinite at `p = 1`, where the bound grows with the horizon).
pub fn bound_power_limit(k: f64, p: f64) -> f64 {
    if p == 1.0 {
        return f64::INFINITY;
    }
    k / 2f64.powf(p) + k / (1.0 - 2f64.powf(1.0 - p))
}

/// Closed-form bound for the general convex class: `M g(1) log2(3T)`.
pub fn bound_convex(m: f64, g_one: f64, t: u64) -> f64 {
    m * g_one * (3.0 * t as f64).log2()
}
