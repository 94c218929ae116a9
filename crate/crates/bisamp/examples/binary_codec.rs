//! Every query location is an exact dyadic rational, so it serializes as a
//! short bit string: the binary digits of its fractional expansion.
//!
//! A depth-d point costs d bits instead of 8 bytes, which matters when
//! queries are logged or shipped between processes.
//!
//! ```bash
//! cargo run -p bisamp --example binary_codec
//! ```

use bisamp::{BinarySampler, DyadicPoint, RegularityCondition, StoppingRule};

fn main() -> bisamp::Result<()> {
    let trace = BinarySampler::run(
        |x: f64| (13.0 * x).sin() * (27.0 * x).sin() + 1.0,
        (0.0, 1.0),
        &RegularityCondition::lipschitz(30.0)?,
        &StoppingRule::MaxQueries(16),
        false,
    )?;

    println!("{:>3} {:>22} {:>18} bits", "t", "x", "encoding");
    let mut bits_total = 0;
    for r in &trace.records {
        let p = r.dyadic.expect("binary queries are dyadic");
        let code = p.encode();
        bits_total += code.len();
        println!("{:>3} {:>22} {:>18}", r.t, r.x, code);
        assert_eq!(DyadicPoint::decode(&code).unwrap(), p);
    }
    println!(
        "\n{} queries in {} bits total ({} bytes as f64)",
        trace.len(),
        bits_total,
        trace.len() * 8
    );
    Ok(())
}
