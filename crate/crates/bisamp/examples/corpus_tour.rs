//! Tour of the built-in corpus: domains, certified conditions, and oracle
//! minima, plus numeric certification of a constant from scratch.
//!
//! ```bash
//! cargo run -p bisamp --example corpus_tour
//! ```

use bisamp::analytics::oracle_min;
use bisamp::corpus::{builtin_corpus, certify_constant, find, ConditionClass};

fn main() -> bisamp::Result<()> {
    let corpus = builtin_corpus();
    println!("{:<4} {:>14} {:>22} conditions", "id", "f*", "x*");
    for f in &corpus {
        let cond = &f.conditions()[0].condition;
        let obj = f.objective();
        let oracle = oracle_min(move |x| obj(x), f.domain(), cond, 100_001)?;
        let conds: Vec<String> = f
            .conditions()
            .iter()
            .map(|c| format!("{} [{}]", c.condition, c.provenance))
            .collect();
        println!(
            "{:<4} {:>14.6e} {:>22} {}",
            f.id(),
            oracle.f_star,
            oracle.x_star,
            conds.join(", ")
        );
        f.validate_conditions(10_000, 7)?;
    }
    println!("\nall attached conditions pass 10^4-sample validation");

    // numeric certification: estimate constants from finite differences
    let q1 = find(&corpus, "Q1").expect("corpus");
    let l = certify_constant(&q1, ConditionClass::Lipschitz, 100_001)?;
    let h = certify_constant(&q1, ConditionClass::Smooth, 100_001)?;
    println!(
        "Q1 numeric certification: {} and {} (true L = 1, H = 1, plus 5% margin)",
        l.condition, h.condition
    );
    Ok(())
}
