//! The three stopping rules: a fixed query budget, a certified score gap,
//! and the combination of both.
//!
//! The score-gap rule exploits that the lowest queued score is a certified
//! global lower bound: when `best - lowest_score <= epsilon` the incumbent
//! best is provably within `epsilon` of the true minimum, no oracle needed.
//!
//! ```bash
//! cargo run -p bisamp --example stopping_rules
//! ```

use bisamp::{BinarySampler, RegularityCondition, StoppingRule};

fn main() -> bisamp::Result<()> {
    let objective = |x: f64| (x - 1.0 / 3.0).abs();
    let domain = (0.0, 1.0);
    let cond = RegularityCondition::lipschitz(1.0)?;

    let budget = BinarySampler::run(
        objective,
        domain,
        &cond,
        &StoppingRule::MaxQueries(25),
        false,
    )?;
    println!(
        "MaxQueries(25):    {} queries, best = {:.6e}",
        budget.len(),
        budget.best_value
    );

    for epsilon in [1e-2, 1e-4, 1e-6] {
        let certified = BinarySampler::run(
            objective,
            domain,
            &cond,
            &StoppingRule::ScoreGap(epsilon),
            false,
        )?;
        println!(
            "ScoreGap({epsilon:.0e}):  {} queries, best = {:.6e} (certified within {epsilon:.0e})",
            certified.len(),
            certified.best_value
        );
    }

    let either = BinarySampler::run(
        objective,
        domain,
        &cond,
        &StoppingRule::Either {
            max_queries: 40,
            epsilon: 1e-9,
        },
        false,
    )?;
    println!(
        "Either(40, 1e-9):  {} queries, best = {:.6e} (budget fired first)",
        either.len(),
        either.best_value
    );
    Ok(())
}
