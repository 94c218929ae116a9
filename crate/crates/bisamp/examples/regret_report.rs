//! Measuring cumulative and simple regret against the brute-force grid
//! oracle, next to the closed-form bound for the condition class.
//!
//! ```bash
//! cargo run -p bisamp --example regret_report
//! ```

use bisamp::analytics::{oracle_min, regret_with_bound, TheoreticalBound};
use bisamp::corpus::{builtin_corpus, find};
use bisamp::sampler::BinarySampler;
use bisamp::trace::StoppingRule;
use bisamp::DistanceSpec;

fn main() -> bisamp::Result<()> {
    let q1 = find(&builtin_corpus(), "Q1").expect("corpus");
    let smooth = q1
        .condition_where(|d| matches!(d, DistanceSpec::Square))
        .expect("smooth condition")
        .condition
        .clone();

    let obj = q1.objective();
    let oracle = oracle_min(move |x| obj(x), q1.domain(), &smooth, 1_000_001)?;
    println!(
        "oracle: f* = {:.6e} at x* = {} (certified within {:.3e})",
        oracle.f_star, oracle.x_star, oracle.error_bound
    );

    let obj = q1.objective();
    let trace = BinarySampler::run(
        move |x| obj(x),
        q1.domain(),
        &smooth,
        &StoppingRule::MaxQueries(1000),
        false,
    )?;
    let bound = TheoreticalBound::BinarySampling(smooth.clone());
    let report = regret_with_bound(&trace, &oracle, &bound);

    println!(
        "\n{:>6} {:>14} {:>14} {:>12}",
        "t", "cum_regret", "simple_regret", report.bound_name
    );
    for t in [1usize, 2, 3, 10, 100, 1000] {
        println!(
            "{t:>6} {:>14.6} {:>14.6e} {:>12.4}",
            report.cumulative[t - 1],
            report.simple[t - 1],
            report.bound[t - 1]
        );
    }
    println!(
        "\ncumulative regret stays under {} = {:.4} at every horizon",
        report.bound_name,
        report.bound.last().unwrap()
    );
    Ok(())
}
