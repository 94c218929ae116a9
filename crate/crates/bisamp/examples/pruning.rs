//! Candidate pruning: discarding queued candidates whose score cannot beat
//! the incumbent best evaluation.
//!
//! Pruning is off by default. It shrinks the queue, sometimes dramatically,
//! but the default stays off so runs remain inside the analyzed regime. If
//! pruning empties the queue under a fixed budget, the remaining records
//! repeat the incumbent best and are flagged.
//!
//! ```bash
//! cargo run -p bisamp --example pruning
//! ```

use bisamp::corpus::{builtin_corpus, find};
use bisamp::sampler::BinarySampler;

fn main() -> bisamp::Result<()> {
    let s1 = find(&builtin_corpus(), "S1").expect("corpus");
    let cond = s1.conditions()[0].condition.clone();
    let t = 400;

    for prune in [false, true] {
        let obj = s1.objective();
        let mut state = BinarySampler::new(move |x| obj(x), s1.domain(), &cond, prune)?;
        while state.records().len() < t {
            state.step()?;
        }
        println!(
            "prune={prune:<5}  queue={:<4} best = {:.12}",
            state.queue_len(),
            state.best_value()
        );
    }

    // a monotone objective prunes everything right of the minimum; the
    // queue dies out and the budget fills with repeat records
    let trace = BinarySampler::run(
        |x: f64| x,
        (0.0, 1.0),
        &bisamp::RegularityCondition::lipschitz(1.0)?,
        &bisamp::StoppingRule::MaxQueries(60),
        true,
    )?;
    let repeats = trace.records.iter().filter(|r| r.repeat).count();
    println!(
        "f(x) = x with pruning: {} records, {repeats} repeats after exhaustion, best = {}",
        trace.len(),
        trace.best_value
    );
    Ok(())
}
