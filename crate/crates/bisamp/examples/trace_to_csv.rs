//! Serializing a run to CSV, the interface for plotting and downstream
//! analysis. Floats carry 17 significant digits so the file round-trips
//! bitwise; identical runs produce identical bytes.
//!
//! ```bash
//! cargo run -p bisamp --example trace_to_csv
//! ```

use bisamp::analytics::{oracle_min, regret_with_bound, TheoreticalBound};
use bisamp::csv::write_trace_csv;
use bisamp::{BinarySampler, RegularityCondition, StoppingRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let objective = |x: f64| (x - 1.0 / 3.0).abs();
    let cond = RegularityCondition::lipschitz(1.0)?;
    let trace = BinarySampler::run(
        objective,
        (0.0, 1.0),
        &cond,
        &StoppingRule::MaxQueries(8),
        false,
    )?;
    let oracle = oracle_min(objective, (0.0, 1.0), &cond, 1_000_001)?;
    let report = regret_with_bound(&trace, &oracle, &TheoreticalBound::BinarySampling(cond));

    let mut buf = Vec::new();
    write_trace_csv(&mut buf, &trace, Some(&report))?;
    print!("{}", String::from_utf8(buf)?);

    eprintln!();
    eprintln!("(same table, no oracle: drop the three regret columns)");
    let mut plain = Vec::new();
    write_trace_csv(&mut plain, &trace, None)?;
    eprint!("{}", String::from_utf8(plain)?);
    Ok(())
}
