//! Minimal end-to-end run: minimize a kinked objective on [0, 1] under a
//! Lipschitz condition and print what the optimizer did.
//!
//! ```bash
//! cargo run -p bisamp --example quick_start
//! ```

use bisamp::{BinarySampler, RegularityCondition, StoppingRule};

fn main() -> bisamp::Result<()> {
    // |x - 1/3| has its minimum at a point the dyadic grid never hits
    // exactly, which makes it a good first exercise.
    let objective = |x: f64| (x - 1.0 / 3.0).abs();
    let cond = RegularityCondition::lipschitz(1.0)?;

    let trace = BinarySampler::run(
        objective,
        (0.0, 1.0),
        &cond,
        &StoppingRule::MaxQueries(50),
        false,
    )?;

    println!("first queries:");
    for r in trace.records.iter().take(6) {
        println!(
            "  t={:<2} x={:<22} f(x)={:<22} score={:?}",
            r.t, r.x, r.fx, r.popped_score
        );
    }
    println!("...");
    println!(
        "best after {} queries: f({}) = {:.3e}",
        trace.len(),
        trace.best_x,
        trace.best_value
    );
    println!(
        "true minimizer 1/3 missed by {:.3e}",
        (trace.best_x - 1.0 / 3.0).abs()
    );
    Ok(())
}
