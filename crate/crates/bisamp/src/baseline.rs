//! Classic Piyavskii-Shubert minimization for Lipschitz-continuous
//! objectives, used as the comparison target in regret experiments.
//!
//! The method maintains the piecewise sawtooth lower envelope built from
//! slope `+-L` cones through the evaluated points and always queries the
//! point where the envelope is lowest. Unlike binary sampling, the query
//! locations depend on the observed function values.

use crate::error::{Error, Result};
use crate::trace::{to_original, QueryRecord, QueryTrace, StoppingRule};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

/// One cell of the lower envelope: an interval between two evaluated points
/// with the trough of the two slope-`L` cones over it.
#[derive(Debug, Clone)]
pub struct EnvelopeCell {
    pub x_l: f64,
    pub x_r: f64,
    pub f_l: f64,
    pub f_r: f64,
    pub trough_x: f64,
    pub trough_v: f64,
    birth: u64,
}

impl PartialEq for EnvelopeCell {
    fn eq(&self, other: &Self) -> bool {
        self.birth == other.birth
    }
}

impl Eq for EnvelopeCell {}

impl PartialOrd for EnvelopeCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EnvelopeCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.trough_v
            .total_cmp(&other.trough_v)
            .then(self.birth.cmp(&other.birth))
    }
}

/// Relative slack on the Lipschitz consistency check. Objectives whose
/// steepest slope equals `L` exactly produce cells with
/// `|f_l - f_r| = L (x_r - x_l)` up to rounding, and the comparison must not
/// reject them over the last few ulps.
pub const CONSISTENCY_SLACK: f64 = 1e-12;

/// Ulp budget for evaluation rounding in the consistency check. On cells a
/// few ulps wide the measured value gap is dominated by the rounding of the
/// two evaluations, which is unrelated to the slope of the objective.
const CONSISTENCY_EVAL_ULPS: f64 = 8.0;

/// Minimizer and minimum of the envelope over one cell: the intersection of
/// the line of slope `-L` through `(x_l, f_l)` with the line of slope `+L`
/// through `(x_r, f_r)`.
///
/// Requires consistent Lipschitz data, `|f_l - f_r| <= L (x_r - x_l)` within
/// [`CONSISTENCY_SLACK`]; anything beyond that proves the objective is not
/// `L`-Lipschitz on the cell.
pub fn ps_trough(x_l: f64, x_r: f64, f_l: f64, f_r: f64, lipschitz: f64) -> Result<(f64, f64)> {
    if !x_l.is_finite() || !x_r.is_finite() || x_l >= x_r {
        return Err(Error::InvalidInterval { x0: x_l, x1: x_r });
    }
    if !lipschitz.is_finite() || lipschitz <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "Lipschitz constant must be finite and positive, got {lipschitz}"
        )));
    }
    if !f_l.is_finite() || !f_r.is_finite() {
        return Err(Error::InvalidInput(format!(
            "cell evaluations must be finite, got f_l = {f_l}, f_r = {f_r}"
        )));
    }
    let eval_noise = CONSISTENCY_EVAL_ULPS * f64::EPSILON * f_l.abs().max(f_r.abs()).max(1.0);
    if (f_l - f_r).abs() > lipschitz * (x_r - x_l) * (1.0 + CONSISTENCY_SLACK) + eval_noise {
        return Err(Error::ConditionViolation(format!(
            "|f_l - f_r| = {} exceeds L (x_r - x_l) = {} on [{x_l}, {x_r}]; \
             the objective is not {lipschitz}-Lipschitz there",
            (f_l - f_r).abs(),
            lipschitz * (x_r - x_l),
        )));
    }
    let trough_x = ((f_l - f_r + lipschitz * (x_l + x_r)) / (2.0 * lipschitz)).clamp(x_l, x_r);
    let trough_v = 0.5 * (f_l + f_r) - 0.5 * lipschitz * (x_r - x_l);
    Ok((trough_x, trough_v))
}

/// Piyavskii-Shubert run state. Same usage contract as the binary sampler:
/// one state is single-threaded, independent runs parallelize freely.
pub struct PiyavskiiShubert<F> {
    objective: F,
    domain: (f64, f64),
    lipschitz: f64,
    cells: BinaryHeap<Reverse<EnvelopeCell>>,
    records: Vec<QueryRecord>,
    best_value: f64,
    best_x: f64,
    births: u64,
}

impl<F: Fn(f64) -> f64> PiyavskiiShubert<F> {
    /// Queries both boundaries and seeds the envelope with the single cell
    /// spanning the normalized domain. The constant is given in original
    /// coordinates and scaled internally.
    pub fn new(objective: F, domain: (f64, f64), lipschitz: f64) -> Result<Self> {
        let (lo, hi) = domain;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidDomain { lo, hi });
        }
        let f_lo = objective(lo);
        if !f_lo.is_finite() {
            return Err(Error::Evaluation { x: lo });
        }
        let f_hi = objective(hi);
        if !f_hi.is_finite() {
            return Err(Error::Evaluation { x: hi });
        }
        let (best_value, best_x) = if f_hi < f_lo {
            (f_hi, 1.0)
        } else {
            (f_lo, 0.0)
        };
        let mut state = PiyavskiiShubert {
            objective,
            domain,
            lipschitz: lipschitz * (hi - lo),
            cells: BinaryHeap::new(),
            records: Vec::new(),
            best_value,
            best_x,
            births: 0,
        };
        if !state.lipschitz.is_finite() || state.lipschitz <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "Lipschitz constant must be finite and positive, got {lipschitz}"
            )));
        }
        state.records.push(QueryRecord {
            t: 1,
            x: 0.0,
            dyadic: None,
            fx: f_lo,
            popped_score: None,
            queue_lb: None,
            repeat: false,
        });
        state.insert_cell(0.0, 1.0, f_lo, f_hi)?;
        state.records.push(QueryRecord {
            t: 2,
            x: 1.0,
            dyadic: None,
            fx: f_hi,
            popped_score: None,
            queue_lb: state.lowest_trough(),
            repeat: false,
        });
        Ok(state)
    }

    /// Creates a cell unless its trough degenerates onto an endpoint, in
    /// which case the endpoint evaluation already equals the envelope
    /// minimum and the cell is retired without re-querying.
    fn insert_cell(&mut self, x_l: f64, x_r: f64, f_l: f64, f_r: f64) -> Result<()> {
        let (trough_x, trough_v) = ps_trough(x_l, x_r, f_l, f_r, self.lipschitz)?;
        if trough_x == x_l || trough_x == x_r {
            return Ok(());
        }
        let birth = self.births;
        self.births += 1;
        self.cells.push(Reverse(EnvelopeCell {
            x_l,
            x_r,
            f_l,
            f_r,
            trough_x,
            trough_v,
            birth,
        }));
        Ok(())
    }

    /// Queries the trough of the cell with the lowest envelope minimum and
    /// splits that cell in two.
    pub fn step(&mut self) -> Result<QueryRecord> {
        let Reverse(cell) = self.cells.pop().ok_or(Error::Exhausted)?;
        // mirror the sampler's trace shape: the first pop is the prelude
        let first_pop = self.records.len() == 2;
        let x = to_original(self.domain, cell.trough_x);
        let fx = (self.objective)(x);
        if !fx.is_finite() {
            return Err(Error::Evaluation { x });
        }
        if fx < self.best_value {
            self.best_value = fx;
            self.best_x = cell.trough_x;
        }
        self.insert_cell(cell.x_l, cell.trough_x, cell.f_l, fx)?;
        self.insert_cell(cell.trough_x, cell.x_r, fx, cell.f_r)?;
        let record = QueryRecord {
            t: self.records.len() + 1,
            x: cell.trough_x,
            dyadic: None,
            fx,
            popped_score: if first_pop { None } else { Some(cell.trough_v) },
            queue_lb: self.lowest_trough(),
            repeat: false,
        };
        self.records.push(record.clone());
        Ok(record)
    }

    /// Lowest envelope minimum among live cells.
    pub fn lowest_trough(&self) -> Option<f64> {
        self.cells.peek().map(|Reverse(c)| c.trough_v)
    }

    pub fn records(&self) -> &[QueryRecord] {
        &self.records
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn into_trace(self) -> QueryTrace {
        QueryTrace {
            records: self.records,
            best_value: self.best_value,
            best_x: self.best_x,
            best_dyadic: None,
            domain: self.domain,
            depth_cap_hit: false,
        }
    }
}

/// Runs Piyavskii-Shubert for exactly `t_max` query records.
///
/// If every live cell degenerates away (the envelope minimum coincides with
/// already-queried points everywhere), remaining records repeat the
/// incumbent best, flagged as repeats, mirroring the binary sampler.
pub fn ps_run<F: Fn(f64) -> f64>(
    objective: F,
    domain: (f64, f64),
    lipschitz: f64,
    t_max: usize,
) -> Result<QueryTrace> {
    StoppingRule::MaxQueries(t_max).validate()?;
    let mut state = PiyavskiiShubert::new(objective, domain, lipschitz)?;
    while state.records.len() < t_max {
        match state.step() {
            Ok(_) => {}
            Err(Error::Exhausted) => {
                state.records.push(QueryRecord {
                    t: state.records.len() + 1,
                    x: state.best_x,
                    dyadic: None,
                    fx: state.best_value,
                    popped_score: None,
                    queue_lb: None,
                    repeat: true,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(state.into_trace())
}

/// Reference cumulative-regret level reported for the baseline in
/// comparison tables, `2 L log2(T)`. Reported alongside measured regrets,
/// not asserted by this crate's own bound checks.
pub fn ps_reference_bound(lipschitz: f64, t: usize) -> f64 {
    2.0 * lipschitz * (t as f64).log2()
}
