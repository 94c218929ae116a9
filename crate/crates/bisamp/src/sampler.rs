//! The binary sampling optimizer.
//!
//! The loop keeps a priority queue of interval-midpoint candidates. Each
//! candidate carries a score that certifies a lower bound on the objective
//! over its bracketing interval. Every step pops the candidate with the
//! lowest score (oldest first on ties), evaluates the objective at its
//! midpoint, and inserts the two half-interval children. Because candidates
//! are always midpoints, the sampling set is a predetermined dyadic grid and
//! selecting the next query costs one heap pop instead of an inner
//! optimization problem.
//!
//! Determinism: identical inputs produce bitwise-identical traces. Scores
//! are compared exactly (no epsilon fuzzing), ties break on the creation
//! counter, and stored scores are never recomputed after insertion.

use crate::dyadic::DyadicPoint;
use crate::error::{Error, Result};
use crate::regularity::{DistanceSpec, RegularityCondition, DEFAULT_VALIDATION_GRID};
use crate::trace::{to_original, QueryRecord, QueryTrace, StoppingRule};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

/// Re-expresses a regularity condition in the normalized coordinates
/// `u = (x - lo) / (hi - lo)` used internally by the optimizer, so that any
/// compact domain reduces to optimization on `[0, 1]`.
pub fn normalize_domain(
    lo: f64,
    hi: f64,
    cond: &RegularityCondition,
) -> Result<RegularityCondition> {
    cond.normalize(lo, hi)
}

/// A potential query: the midpoint of an interval between two evaluated
/// points, with the certified score of that interval.
#[derive(Debug, Clone)]
struct Candidate {
    point: DyadicPoint,
    left: DyadicPoint,
    right: DyadicPoint,
    f_left: f64,
    f_right: f64,
    score: f64,
    birth: u64,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.birth == other.birth
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    /// Lexicographic on (score, birth). Scores are finite by construction;
    /// `total_cmp` keeps the order total and exact.
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then(self.birth.cmp(&other.birth))
    }
}

/// Binary sampling optimizer state over one objective.
///
/// A state is single-threaded: `step` mutates it. Distinct states over the
/// same or different objectives run independently in parallel; the objective
/// must be pure and reentrant.
pub struct BinarySampler<F> {
    objective: F,
    domain: (f64, f64),
    cond: RegularityCondition,
    queue: BinaryHeap<Reverse<Candidate>>,
    records: Vec<QueryRecord>,
    best_value: f64,
    best_point: DyadicPoint,
    births: u64,
    prune: bool,
    depth_cap_hit: bool,
}

impl<F: Fn(f64) -> f64> BinarySampler<F> {
    /// Queries both domain boundaries and seeds the queue with the single
    /// candidate at the domain midpoint.
    ///
    /// The condition is given in original coordinates and normalized
    /// internally. A custom convex distance is grid-validated first and
    /// rejected if the validation fails.
    pub fn new(
        objective: F,
        domain: (f64, f64),
        cond: &RegularityCondition,
        prune: bool,
    ) -> Result<Self> {
        let (lo, hi) = domain;
        let cond = normalize_domain(lo, hi, cond)?;
        if let custom @ DistanceSpec::ConvexCustom { .. } = cond.distance() {
            let report = custom.validate_custom(DEFAULT_VALIDATION_GRID);
            if !report.is_pass() {
                return Err(Error::ConditionViolation(format!(
                    "custom distance failed grid validation: {:?}",
                    report.violations()[0]
                )));
            }
        }

        let f_lo = objective(lo);
        if !f_lo.is_finite() {
            return Err(Error::Evaluation { x: lo });
        }
        let f_hi = objective(hi);
        if !f_hi.is_finite() {
            return Err(Error::Evaluation { x: hi });
        }

        let (best_value, best_point) = if f_hi < f_lo {
            (f_hi, DyadicPoint::ONE)
        } else {
            (f_lo, DyadicPoint::ZERO)
        };

        let mut state = BinarySampler {
            objective,
            domain,
            cond,
            queue: BinaryHeap::new(),
            records: Vec::new(),
            best_value,
            best_point,
            births: 0,
            prune,
            depth_cap_hit: false,
        };

        state.records.push(QueryRecord {
            t: 1,
            x: 0.0,
            dyadic: Some(DyadicPoint::ZERO),
            fx: f_lo,
            popped_score: None,
            queue_lb: None,
            repeat: false,
        });
        state.spawn(DyadicPoint::ZERO, f_lo, DyadicPoint::ONE, f_hi)?;
        state.records.push(QueryRecord {
            t: 2,
            x: 1.0,
            dyadic: Some(DyadicPoint::ONE),
            fx: f_hi,
            popped_score: None,
            queue_lb: state.queue_lower_bound(),
            repeat: false,
        });
        Ok(state)
    }

    /// Inserts the midpoint candidate of `(left, right)`, unless the depth
    /// cap suppresses it or pruning discards it.
    fn spawn(
        &mut self,
        left: DyadicPoint,
        f_left: f64,
        right: DyadicPoint,
        f_right: f64,
    ) -> Result<()> {
        let point = match DyadicPoint::midpoint(left, right) {
            Some(p) => p,
            None => {
                self.depth_cap_hit = true;
                return Ok(());
            }
        };
        // the float midpoint of adjacent dyadics is exact up to the depth cap
        debug_assert_eq!(point.value(), (left.value() + right.value()) / 2.0);
        let score = self
            .cond
            .score(left.value(), right.value(), f_left, f_right)?;
        if self.prune && score >= self.best_value {
            return Ok(());
        }
        let birth = self.births;
        self.births += 1;
        self.queue.push(Reverse(Candidate {
            point,
            left,
            right,
            f_left,
            f_right,
            score,
            birth,
        }));
        Ok(())
    }

    /// Pops the lowest-scored candidate, evaluates the objective at its
    /// midpoint, records the query, and inserts the two child candidates.
    ///
    /// With pruning on, queued candidates whose score has gone stale
    /// (no longer below the incumbent best) are discarded on the way.
    pub fn step(&mut self) -> Result<QueryRecord> {
        let cand = loop {
            let Reverse(cand) = self.queue.pop().ok_or(Error::Exhausted)?;
            if self.prune && cand.score >= self.best_value {
                continue;
            }
            break cand;
        };

        // the first pop is the unconditional midpoint of the whole domain,
        // part of the fixed prelude, so it carries no popped score
        let first_pop = self.records.len() == 2;

        let x = to_original(self.domain, cand.point.value());
        let fx = (self.objective)(x);
        if !fx.is_finite() {
            return Err(Error::Evaluation { x });
        }
        if fx < self.best_value {
            self.best_value = fx;
            self.best_point = cand.point;
        }

        self.spawn(cand.left, cand.f_left, cand.point, fx)?;
        self.spawn(cand.point, fx, cand.right, cand.f_right)?;

        let record = QueryRecord {
            t: self.records.len() + 1,
            x: cand.point.value(),
            dyadic: Some(cand.point),
            fx,
            popped_score: if first_pop { None } else { Some(cand.score) },
            queue_lb: self.queue_lower_bound(),
            repeat: false,
        };
        self.records.push(record.clone());
        Ok(record)
    }

    /// Appends a record that re-reports the incumbent best. Used when the
    /// queue empties under a fixed query budget.
    fn push_repeat(&mut self) {
        self.records.push(QueryRecord {
            t: self.records.len() + 1,
            x: self.best_point.value(),
            dyadic: Some(self.best_point),
            fx: self.best_value,
            popped_score: None,
            queue_lb: None,
            repeat: true,
        });
    }

    /// Runs to completion under a stopping rule.
    ///
    /// `MaxQueries(t)` produces exactly `t` records; if pruning empties the
    /// queue early the remaining records repeat the incumbent best, flagged
    /// as repeats. `ScoreGap(epsilon)` stops once the incumbent best is
    /// certified within `epsilon` of the global minimum (an empty queue
    /// counts as gap zero).
    pub fn run(
        objective: F,
        domain: (f64, f64),
        cond: &RegularityCondition,
        rule: &StoppingRule,
        prune: bool,
    ) -> Result<QueryTrace> {
        rule.validate()?;
        let mut state = Self::new(objective, domain, cond, prune)?;
        match *rule {
            StoppingRule::MaxQueries(t_max) => {
                while state.records.len() < t_max {
                    match state.step() {
                        Ok(_) => {}
                        Err(Error::Exhausted) => state.push_repeat(),
                        Err(e) => return Err(e),
                    }
                }
            }
            StoppingRule::ScoreGap(epsilon) => {
                while state.score_gap() > epsilon {
                    state.step()?;
                }
            }
            StoppingRule::Either {
                max_queries,
                epsilon,
            } => {
                while state.records.len() < max_queries && state.score_gap() > epsilon {
                    state.step()?;
                }
                // an Either rule still promises at most max_queries records,
                // not exactly max_queries, so no repeat filling here
            }
        }
        Ok(state.into_trace())
    }

    pub fn records(&self) -> &[QueryRecord] {
        &self.records
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn best_point(&self) -> DyadicPoint {
        self.best_point
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    /// Lowest score among live candidates, a certified lower bound on the
    /// global minimum while candidates cover the domain (pruning off).
    pub fn queue_lower_bound(&self) -> Option<f64> {
        self.queue.peek().map(|Reverse(c)| c.score)
    }

    /// `best_value` minus the certified lower bound; an empty queue means
    /// everything is certified and the gap is zero.
    pub fn score_gap(&self) -> f64 {
        match self.queue_lower_bound() {
            Some(lb) => self.best_value - lb,
            None => 0.0,
        }
    }

    pub fn depth_cap_hit(&self) -> bool {
        self.depth_cap_hit
    }

    /// Live candidates as `(left, midpoint, right)` normalized values,
    /// sorted by midpoint. Exposed for structural checks.
    pub fn live_candidates(&self) -> Vec<(f64, f64, f64)> {
        let mut out: Vec<(f64, f64, f64)> = self
            .queue
            .iter()
            .map(|Reverse(c)| (c.left.value(), c.point.value(), c.right.value()))
            .collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        out
    }

    pub fn into_trace(self) -> QueryTrace {
        QueryTrace {
            records: self.records,
            best_value: self.best_value,
            best_x: self.best_point.value(),
            best_dyadic: Some(self.best_point),
            domain: self.domain,
            depth_cap_hit: self.depth_cap_hit,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v1(x: f64) -> f64 {
        (x - 1.0 / 3.0).abs()
    }

    fn abs1() -> RegularityCondition {
        RegularityCondition::lipschitz(1.0).unwrap()
    }

    #[test]
    fn init_queries_boundaries_and_seeds_midpoint() {
        let s = BinarySampler::new(v1, (0.0, 1.0), &abs1(), false).unwrap();
        assert_eq!(s.records().len(), 2);
        assert_eq!(s.records()[0].x, 0.0);
        assert_eq!(s.records()[0].fx, 1.0 / 3.0);
        assert_eq!(s.records()[1].x, 1.0);
        assert_eq!(s.records()[1].fx, 1.0 - 1.0 / 3.0);
        assert_eq!(s.queue_len(), 1);
        let lb = s.queue_lower_bound().unwrap();
        assert!((lb - (1.0 / 3.0 - 0.5)).abs() < 1e-15); // -1/6
        assert_eq!(s.best_value(), 1.0 / 3.0);
    }

    #[test]
    fn init_constant_and_linear_scores() {
        let s = BinarySampler::new(|_| 0.0, (0.0, 1.0), &abs1(), false).unwrap();
        assert_eq!(s.queue_lower_bound().unwrap(), -0.5);

        let s = BinarySampler::new(|x| x, (0.0, 1.0), &abs1(), false).unwrap();
        assert_eq!(s.queue_lower_bound().unwrap(), -0.5);
    }

    #[test]
    fn init_rejects_non_finite_boundary() {
        match BinarySampler::new(|x: f64| 1.0 / x, (0.0, 1.0), &abs1(), false) {
            Err(Error::Evaluation { x }) => assert_eq!(x, 0.0),
            Err(other) => panic!("expected evaluation error, got {other:?}"),
            Ok(_) => panic!("expected evaluation error, got a sampler"),
        }
        match BinarySampler::new(|x: f64| 1.0 / (1.0 - x), (0.0, 1.0), &abs1(), false) {
            Err(Error::Evaluation { x }) => assert_eq!(x, 1.0),
            Err(other) => panic!("expected evaluation error, got {other:?}"),
            Ok(_) => panic!("expected evaluation error, got a sampler"),
        }
    }

    #[test]
    fn step_follows_hand_simulation() {
        let mut s = BinarySampler::new(v1, (0.0, 1.0), &abs1(), false).unwrap();

        // step 3 pops the prelude midpoint, which carries no popped score
        let r3 = s.step().unwrap();
        assert_eq!(r3.x, 0.5);
        assert!((r3.fx - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(r3.popped_score, None);
        // both children score -1/12
        assert_eq!(s.queue_len(), 2);
        assert!((s.queue_lower_bound().unwrap() - (-1.0 / 12.0)).abs() < 1e-15);

        // step 4 breaks the tie toward the older candidate, 0.25
        let r4 = s.step().unwrap();
        assert_eq!(r4.x, 0.25);
        assert!((r4.fx - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn run_hand_trace() {
        let trace =
            BinarySampler::run(v1, (0.0, 1.0), &abs1(), &StoppingRule::MaxQueries(4), false)
                .unwrap();
        let xs: Vec<f64> = trace.records.iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![0.0, 1.0, 0.5, 0.25]);
        assert_eq!(trace.len(), 4);
        assert!(!trace.depth_cap_hit);
    }

    #[test]
    fn constant_function_explores_breadth_first() {
        let trace = BinarySampler::run(
            |_| 0.0,
            (0.0, 1.0),
            &abs1(),
            &StoppingRule::MaxQueries(5),
            false,
        )
        .unwrap();
        let xs: Vec<f64> = trace.records.iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![0.0, 1.0, 0.5, 0.25, 0.75]);
    }

    #[test]
    fn score_gap_certifies_the_best_value() {
        let trace = BinarySampler::run(
            v1,
            (0.0, 1.0),
            &abs1(),
            &StoppingRule::ScoreGap(1e-3),
            false,
        )
        .unwrap();
        assert!(trace.best_value <= 1e-3);
        assert!(trace.len() >= 3);
    }

    #[test]
    fn pruning_exhaustion_fills_with_repeats() {
        // On f(x) = x the right-hand children always score above the best
        // evaluation, so pruning keeps the queue at a single diving
        // candidate until the depth cap suppresses it.
        let trace = BinarySampler::run(
            |x| x,
            (0.0, 1.0),
            &abs1(),
            &StoppingRule::MaxQueries(60),
            true,
        )
        .unwrap();
        assert_eq!(trace.len(), 60);
        assert!(trace.depth_cap_hit);
        let repeats: Vec<&QueryRecord> = trace.records.iter().filter(|r| r.repeat).collect();
        assert!(!repeats.is_empty());
        assert!(repeats.iter().all(|r| r.x == 0.0 && r.fx == 0.0));
        assert_eq!(trace.best_value, 0.0);
    }

    #[test]
    fn pruned_run_still_finds_the_minimum() {
        let off = BinarySampler::run(
            v1,
            (0.0, 1.0),
            &abs1(),
            &StoppingRule::MaxQueries(100),
            false,
        )
        .unwrap();
        let on = BinarySampler::run(
            v1,
            (0.0, 1.0),
            &abs1(),
            &StoppingRule::MaxQueries(100),
            true,
        )
        .unwrap();
        assert!((off.best_value - on.best_value).abs() < 1e-6);
    }

    #[test]
    fn domain_mapping_scales_queries() {
        // same function shifted to [2, 4]: records stay normalized
        let trace = BinarySampler::run(
            |x| (x - 3.0).abs(),
            (2.0, 4.0),
            &abs1(),
            &StoppingRule::MaxQueries(3),
            false,
        )
        .unwrap();
        assert_eq!(trace.records[2].x, 0.5);
        assert_eq!(trace.original_x(trace.records[2].x), 3.0);
        assert_eq!(trace.records[2].fx, 0.0);
    }

    #[test]
    fn queue_lower_bound_stays_below_true_minimum() {
        let f = |x: f64| (13.0 * x).sin() * (27.0 * x).sin() + 1.0;
        let cond = RegularityCondition::lipschitz(30.0).unwrap();
        let oracle = crate::analytics::oracle_min(f, (0.0, 1.0), &cond, 100_001).unwrap();
        let trace = BinarySampler::run(f, (0.0, 1.0), &cond, &StoppingRule::MaxQueries(128), false)
            .unwrap();
        for r in &trace.records {
            if let Some(lb) = r.queue_lb {
                assert!(
                    lb <= oracle.f_star + oracle.error_bound,
                    "t = {}: queue bound {lb} above the oracle minimum {}",
                    r.t,
                    oracle.f_star
                );
            }
        }
    }

    #[test]
    fn conditions_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<RegularityCondition>();
        assert_send_sync::<crate::trace::QueryTrace>();
        assert_send_sync::<crate::corpus::TestFunction>();
    }

    #[test]
    fn custom_distance_is_validated_before_running() {
        let concave = RegularityCondition::convex_custom(1.0, |u: f64| u.sqrt()).unwrap();
        let err = BinarySampler::new(v1, (0.0, 1.0), &concave, false);
        assert!(matches!(err, Err(Error::ConditionViolation(_))));

        let convex = RegularityCondition::convex_custom(1.0, |u: f64| u).unwrap();
        assert!(BinarySampler::new(v1, (0.0, 1.0), &convex, false).is_ok());
    }

    #[test]
    fn rejects_bad_stopping_rules() {
        let r = BinarySampler::run(v1, (0.0, 1.0), &abs1(), &StoppingRule::MaxQueries(2), false);
        assert!(r.is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn runs_are_deterministic(t in 3usize..48, which in 0usize..3) {
            let f = |x: f64| match which {
                0 => (x - 1.0 / 3.0).abs(),
                1 => (x - 0.5) * (x - 0.5),
                _ => (13.0 * x).sin() * (27.0 * x).sin() + 1.0,
            };
            let rule = StoppingRule::MaxQueries(t);
            let a = BinarySampler::run(f, (0.0, 1.0), &abs1(), &rule, false).unwrap();
            let b = BinarySampler::run(f, (0.0, 1.0), &abs1(), &rule, false).unwrap();
            for (ra, rb) in a.records.iter().zip(b.records.iter()) {
                prop_assert_eq!(ra.x.to_bits(), rb.x.to_bits());
                prop_assert_eq!(ra.fx.to_bits(), rb.fx.to_bits());
            }
        }

        #[test]
        fn one_candidate_per_interval(t in 3usize..48) {
            let mut s = BinarySampler::new(
                |x: f64| (13.0 * x).sin() * (27.0 * x).sin() + 1.0,
                (0.0, 1.0),
                &abs1(),
                false,
            ).unwrap();
            while s.records().len() < t {
                s.step().unwrap();
            }
            prop_assert_eq!(s.queue_len(), t - 1);

            let mut xs: Vec<f64> = s.records().iter().map(|r| r.x).collect();
            xs.sort_by(f64::total_cmp);
            let candidates = s.live_candidates();
            prop_assert_eq!(candidates.len(), xs.len() - 1);
            for (gap, cand) in xs.windows(2).zip(candidates.iter()) {
                prop_assert_eq!(cand.0.to_bits(), gap[0].to_bits());
                prop_assert_eq!(cand.2.to_bits(), gap[1].to_bits());
            }
        }

        #[test]
        fn queries_are_exact_dyadics(t in 3usize..48) {
            let trace = BinarySampler::run(
                |x: f64| (x - 0.5) * (x - 0.5),
                (0.0, 1.0),
                &abs1(),
                &StoppingRule::MaxQueries(t),
                false,
            ).unwrap();
            for r in &trace.records {
                let p = r.dyadic.unwrap();
                prop_assert_eq!(p.value().to_bits(), r.x.to_bits());
                prop_assert!(p.numerator() % 2 == 1 || p.is_boundary());
            }
        }
    }
}
