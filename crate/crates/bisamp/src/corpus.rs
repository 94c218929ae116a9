//! Built-in univariate test objectives with certified regularity constants.
//!
//! Each function carries the conditions it is known to satisfy, with a
//! provenance note (analytic or numeric) and a flag saying whether the
//! condition holds between arbitrary point pairs or only relative to the
//! extrema. Square and higher-power conditions of non-constant functions can
//! only hold in the extremum form; their pairwise flag is off and validation
//! checks displacement from the known minimizer instead.

use crate::error::{Error, Result};
use crate::regularity::{DistanceSpec, RegularityCondition};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::Arc;

/// Slack allowed when spot-checking a condition on random samples.
pub const VALIDATION_TOLERANCE: f64 = 1e-9;

/// A regularity condition attached to a corpus function.
#[derive(Debug, Clone)]
pub struct CertifiedCondition {
    pub condition: RegularityCondition,
    /// How the constant was obtained: `"analytic"` or `"numeric"`.
    pub provenance: String,
    /// True when the condition holds between arbitrary point pairs, not
    /// just relative to the extrema.
    pub pairwise: bool,
}

/// A test objective: evaluation contract, domain, known minimum when one is
/// available analytically, and certified conditions.
#[derive(Clone)]
pub struct TestFunction {
    id: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: (f64, f64),
    known_min: Option<(f64, f64)>,
    conditions: Vec<CertifiedCondition>,
}

impl TestFunction {
    pub fn new<F>(
        id: &str,
        f: F,
        domain: (f64, f64),
        known_min: Option<(f64, f64)>,
        conditions: Vec<CertifiedCondition>,
    ) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TestFunction {
            id: id.to_string(),
            f: Arc::new(f),
            domain,
            known_min,
            conditions,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Shared handle to the evaluation contract.
    pub fn objective(&self) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
        Arc::clone(&self.f)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn known_min(&self) -> Option<(f64, f64)> {
        self.known_min
    }

    pub fn conditions(&self) -> &[CertifiedCondition] {
        &self.conditions
    }

    /// First attached condition of the given shape, if any.
    pub fn condition_where(
        &self,
        pred: impl Fn(&DistanceSpec) -> bool,
    ) -> Option<&CertifiedCondition> {
        self.conditions
            .iter()
            .find(|c| pred(c.condition.distance()))
    }

    /// Spot-checks every attached condition on `samples` random draws.
    /// Pairwise conditions are checked between arbitrary pairs; extremum
    /// conditions are checked as displacement from the known minimizer.
    pub fn validate_conditions(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = self.domain;
        for cert in &self.conditions {
            let c = cert.condition.constant();
            let d = cert.condition.distance();
            if cert.pairwise {
                for _ in 0..samples {
                    let x = rng.random_range(lo..=hi);
                    let y = rng.random_range(lo..=hi);
                    let gap = (self.evaluate(x) - self.evaluate(y)).abs();
                    let allowed = c * d.eval(x - y)? + VALIDATION_TOLERANCE;
                    if gap > allowed {
                        return Err(Error::ConditionViolation(format!(
                            "{}: |f({x}) - f({y})| = {gap} exceeds {allowed} under {}",
                            self.id, cert.condition
                        )));
                    }
                }
            } else if let Some((x_star, f_star)) = self.known_min {
                for _ in 0..samples {
                    let x = rng.random_range(lo..=hi);
                    let gap = (self.evaluate(x) - f_star).abs();
                    let allowed = c * d.eval(x - x_star)? + VALIDATION_TOLERANCE;
                    if gap > allowed {
                        return Err(Error::ConditionViolation(format!(
                            "{}: |f({x}) - f_star| = {gap} exceeds {allowed} under {}",
                            self.id, cert.condition
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("known_min", &self.known_min)
            .field("conditions", &self.conditions)
            .finish()
    }
}

/// Condition class targeted by numeric certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionClass {
    Lipschitz,
    Smooth,
}

/// Safety margin applied to numerically estimated constants, covering the
/// discretization error of the finite-difference maximum.
pub const CERTIFY_MARGIN: f64 = 1.05;

/// Estimates a regularity constant from finite differences on a uniform
/// grid: the maximum absolute central difference for the Lipschitz class,
/// the maximum absolute second difference (halved) for the smooth class,
/// inflated by [`CERTIFY_MARGIN`].
pub fn certify_constant(
    f: &TestFunction,
    class: ConditionClass,
    grid_points: usize,
) -> Result<CertifiedCondition> {
    if grid_points < 3 {
        return Err(Error::InvalidInput(format!(
            "certification grid needs at least 3 points, got {grid_points}"
        )));
    }
    let (lo, hi) = f.domain();
    let n = grid_points;
    let h = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| -> f64 {
        if i == n - 1 {
            f.evaluate(hi)
        } else {
            f.evaluate(lo + i as f64 * h)
        }
    };
    let mut prev = at(0);
    let mut here = at(1);
    let mut max_estimate: f64 = 0.0;
    for i in 1..n - 1 {
        let next = at(i + 1);
        let estimate = match class {
            ConditionClass::Lipschitz => ((next - prev) / (2.0 * h)).abs(),
            // |f''| <= 2H, so H is half the largest second difference
            ConditionClass::Smooth => ((next - 2.0 * here + prev) / (h * h)).abs() / 2.0,
        };
        if !estimate.is_finite() {
            return Err(Error::Evaluation {
                x: lo + i as f64 * h,
            });
        }
        max_estimate = max_estimate.max(estimate);
        prev = here;
        here = next;
    }
    let constant = max_estimate * CERTIFY_MARGIN;
    let condition = match class {
        ConditionClass::Lipschitz => RegularityCondition::lipschitz(constant)?,
        ConditionClass::Smooth => RegularityCondition::smooth(constant)?,
    };
    Ok(CertifiedCondition {
        condition,
        provenance: "numeric".to_string(),
        // a derivative bound gives the pairwise form for the Lipschitz
        // class; the smooth form only holds relative to stationary extrema
        pairwise: class == ConditionClass::Lipschitz,
    })
}

fn analytic(condition: RegularityCondition, pairwise: bool) -> CertifiedCondition {
    CertifiedCondition {
        condition,
        provenance: "analytic".to_string(),
        pairwise,
    }
}

/// Piecewise-linear sawtooth with four teeth of unequal depth and a unique
/// minimum of 0.05 at x = 0.25. Valleys sit on even eighths, peaks of 0.5 on
/// odd eighths; the steepest segment has slope 3.6.
fn sawtooth(x: f64) -> f64 {
    const YS: [f64; 9] = [0.2, 0.5, 0.05, 0.5, 0.1, 0.5, 0.15, 0.5, 0.25];
    let scaled = x * 8.0;
    let idx = (scaled.floor() as usize).min(7);
    let t = scaled - idx as f64;
    YS[idx] + t * (YS[idx + 1] - YS[idx])
}

/// The built-in corpus.
///
/// - `V1`: `|x - 1/3|`, a kink at a non-dyadic point (worst case for
///   midpoint subdivision).
/// - `Q1`: `(x - 1/2)^2`, the canonical smooth objective.
/// - `S1`: `sin(13x) sin(27x) + 1`, multimodal, constants certified
///   numerically.
/// - `W1`: a four-tooth sawtooth with analytic minimum.
/// - `P3`: `|x - 0.4|^3`, the cubic power class.
/// - `C1`: `(1 - cos(2 pi x)) / 2`, smooth with stationary boundary minima.
pub fn builtin_corpus() -> Vec<TestFunction> {
    let v1 = TestFunction::new(
        "V1",
        |x: f64| (x - 1.0 / 3.0).abs(),
        (0.0, 1.0),
        Some((1.0 / 3.0, 0.0)),
        vec![analytic(RegularityCondition::lipschitz(1.0).unwrap(), true)],
    );

    let q1 = TestFunction::new(
        "Q1",
        |x: f64| (x - 0.5) * (x - 0.5),
        (0.0, 1.0),
        Some((0.5, 0.0)),
        vec![
            // |f'| <= 1 on [0, 1]
            analytic(RegularityCondition::lipschitz(1.0).unwrap(), true),
            // f'' = 2, so H = 1
            analytic(RegularityCondition::smooth(1.0).unwrap(), false),
        ],
    );

    let mut s1 = TestFunction::new(
        "S1",
        |x: f64| (13.0 * x).sin() * (27.0 * x).sin() + 1.0,
        (0.0, 1.0),
        None,
        Vec::new(),
    );
    let s1_lipschitz =
        certify_constant(&s1, ConditionClass::Lipschitz, 100_001).expect("S1 certification");
    s1.conditions.push(s1_lipschitz);

    let w1 = TestFunction::new(
        "W1",
        sawtooth,
        (0.0, 1.0),
        Some((0.25, 0.05)),
        vec![analytic(RegularityCondition::lipschitz(3.6).unwrap(), true)],
    );

    let p3 = TestFunction::new(
        "P3",
        |x: f64| {
            let u = (x - 0.4).abs();
            u * u * u
        },
        (0.0, 1.0),
        Some((0.4, 0.0)),
        vec![
            analytic(RegularityCondition::power(3.0, 1.0).unwrap(), false),
            // |f'| = 3 (x - 0.4)^2 <= 3 * 0.36
            analytic(RegularityCondition::lipschitz(1.08).unwrap(), true),
        ],
    );

    let c1 = TestFunction::new(
        "C1",
        |x: f64| 0.5 * (1.0 - (2.0 * PI * x).cos()),
        (0.0, 1.0),
        Some((0.0, 0.0)),
        vec![
            // |f''| = 2 pi^2 |cos(2 pi x)| <= 2 pi^2, so H = pi^2; every
            // extremum (0, 1/2, 1) is stationary
            analytic(RegularityCondition::smooth(PI * PI).unwrap(), false),
            // |f'| = pi |sin(2 pi x)| <= pi
            analytic(RegularityCondition::lipschitz(PI).unwrap(), true),
        ],
    );

    vec![v1, q1, s1, w1, p3, c1]
}

/// Looks up a corpus function by id.
pub fn find(corpus: &[TestFunction], id: &str) -> Option<TestFunction> {
    corpus.iter().find(|f| f.id() == id).cloned()
}
