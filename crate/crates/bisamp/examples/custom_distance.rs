//! Supplying a custom convex distance function.
//!
//! Any non-negative convex `g` with `g(0) = 0` defines a condition
//! `|f(x) - f(xE)| <= M g(x - xE)` with scores `min(f0,f1) - M g(width/2)`
//! and the regret bound `M g(1) log2(3T)`. The shape of `g` is checked on a
//! grid before a run will accept it, never trusted.
//!
//! ```bash
//! cargo run -p bisamp --example custom_distance
//! ```

use bisamp::analytics::bound_convex;
use bisamp::{BinarySampler, DistanceSpec, RegularityCondition, StoppingRule};

fn main() -> bisamp::Result<()> {
    // g(u) = u^1.5 sits between the Lipschitz and smooth classes
    let cond = RegularityCondition::convex_custom(1.0, |u: f64| u.powf(1.5))?;

    let report = cond.distance().validate_custom(101);
    println!(
        "validation on a {}-point grid: {}",
        report.grid_size(),
        if report.is_pass() { "pass" } else { "fail" }
    );

    let trace = BinarySampler::run(
        |x: f64| (x - 1.0 / 3.0).abs().powf(1.5),
        (0.0, 1.0),
        &cond,
        &StoppingRule::MaxQueries(200),
        false,
    )?;
    let g_one = match cond.distance() {
        DistanceSpec::ConvexCustom { g_one, .. } => *g_one,
        _ => unreachable!(),
    };
    println!(
        "best f = {:.3e} after {} queries; regret bound M*g(1)*log2(3T) = {:.4}",
        trace.best_value,
        trace.len(),
        bound_convex(cond.constant(), g_one, trace.len() as u64),
    );

    // a concave g is rejected before any query is spent
    let concave = RegularityCondition::convex_custom(1.0, |u: f64| u.sqrt())?;
    let report = concave.distance().validate_custom(101);
    println!(
        "sqrt validation: {} ({} violations), runs refuse it:",
        if report.is_pass() { "pass" } else { "fail" },
        report.violations().len()
    );
    let refused = BinarySampler::run(
        |x: f64| x,
        (0.0, 1.0),
        &concave,
        &StoppingRule::MaxQueries(10),
        false,
    );
    println!("  {}", refused.unwrap_err());
    Ok(())
}
