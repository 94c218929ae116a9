//! Query traces: the ordered record of everything an optimizer run evaluated.
//!
//! Both the binary sampler and the Piyavskii-Shubert baseline produce the
//! same trace shape, so the regret analytics and CSV serialization work on
//! either. Locations are stored in normalized `[0, 1]` coordinates; binary
//! sampling additionally carries the exact dyadic representation of each
//! query.

use crate::dyadic::DyadicPoint;
use crate::error::{Error, Result};

/// One query: its index, location, evaluation, and queue bookkeeping.
#[derive(Debug, Clone)]
pub struct QueryRecord {
    /// 1-based query index.
    pub t: usize,
    /// Query location in normalized coordinates.
    pub x: f64,
    /// Exact dyadic representation of `x`; present for binary-sampling
    /// queries, absent for baseline troughs (which are not dyadic).
    pub dyadic: Option<DyadicPoint>,
    /// Objective value at the query.
    pub fx: f64,
    /// Score of the popped candidate that produced this query. Absent for
    /// the fixed prelude (the two boundary queries and the first midpoint,
    /// which is popped unconditionally) and for repeat records.
    pub popped_score: Option<f64>,
    /// Lowest live queue score after this query was processed, a certified
    /// global lower bound while candidates cover the domain. Absent before
    /// the first candidate exists and once the queue empties.
    pub queue_lb: Option<f64>,
    /// Set when the queue emptied and this record re-reports the incumbent
    /// best instead of a fresh evaluation.
    pub repeat: bool,
}

/// Ordered record of a full optimizer run.
#[derive(Debug, Clone)]
pub struct QueryTrace {
    /// All queries in the order they were made.
    pub records: Vec<QueryRecord>,
    /// Lowest evaluation seen.
    pub best_value: f64,
    /// Location of the best evaluation, normalized.
    pub best_x: f64,
    /// Dyadic form of `best_x` when it came from binary sampling.
    pub best_dyadic: Option<DyadicPoint>,
    /// The original, un-normalized domain `(lo, hi)`.
    pub domain: (f64, f64),
    /// Set when subdivision ran into the dyadic depth cap and candidates
    /// were suppressed.
    pub depth_cap_hit: bool,
}

impl QueryTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Maps a normalized location back into the original domain.
    pub fn original_x(&self, normalized: f64) -> f64 {
        to_original(self.domain, normalized)
    }

    /// Best location in original coordinates.
    pub fn best_original_x(&self) -> f64 {
        to_original(self.domain, self.best_x)
    }
}

/// Maps `u` in `[0, 1]` onto `[lo, hi]`, hitting the endpoints exactly.
pub(crate) fn to_original(domain: (f64, f64), u: f64) -> f64 {
    let (lo, hi) = domain;
    if u == 0.0 {
        lo
    } else if u == 1.0 {
        hi
    } else {
        lo + u * (hi - lo)
    }
}

/// When an optimizer run stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoppingRule {
    /// Stop after exactly this many query records.
    MaxQueries(usize),
    /// Stop once `best_value - (lowest queue score) <= epsilon`. Since the
    /// lowest score is a certified global lower bound, the incumbent best is
    /// then within `epsilon` of the true minimum.
    ScoreGap(f64),
    /// Whichever of the two fires first.
    Either { max_queries: usize, epsilon: f64 },
}

impl StoppingRule {
    /// The run needs both boundaries plus at least one candidate, so query
    /// budgets start at 3.
    pub(crate) fn validate(&self) -> Result<()> {
        let check_budget = |t: usize| {
            if t < 3 {
                Err(Error::InvalidInput(format!(
                    "query budget must be at least 3, got {t}"
                )))
            } else {
                Ok(())
            }
        };
        let check_epsilon = |e: f64| {
            if !e.is_finite() || e <= 0.0 {
                Err(Error::InvalidInput(format!(
                    "score-gap epsilon must be finite and positive, got {e}"
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            StoppingRule::MaxQueries(t) => check_budget(t),
            StoppingRule::ScoreGap(e) => check_epsilon(e),
            StoppingRule::Either {
                max_queries,
                epsilon,
            } => {
                check_budget(max_queries)?;
                check_epsilon(epsilon)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stopping_rule_validation() {
        assert!(StoppingRule::MaxQueries(3).validate().is_ok());
        assert!(StoppingRule::MaxQueries(2).validate().is_err());
        assert!(StoppingRule::ScoreGap(1e-3).validate().is_ok());
        assert!(StoppingRule::ScoreGap(0.0).validate().is_err());
        assert!(StoppingRule::Either {
            max_queries: 10,
            epsilon: 0.1
        }
        .validate()
        .is_ok());
        assert!(StoppingRule::Either {
            max_queries: 2,
            epsilon: 0.1
        }
        .validate()
        .is_err());
    }

    #[test]
    fn original_coordinates_hit_endpoints_exactly() {
        let domain = (0.1, 0.7);
        assert_eq!(to_original(domain, 0.0), 0.1);
        assert_eq!(to_original(domain, 1.0), 0.7);
        let mid = to_original(domain, 0.5);
        assert!((mid - 0.4).abs() < 1e-15);
    }
}
