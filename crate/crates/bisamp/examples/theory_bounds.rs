//! The cumulative-regret bounds themselves: the general generation-sum
//! bound next to its closed-form relaxations for each condition class.
//!
//! The horizon splits as `T = 2^a + B + 1` with `1 <= B <= 2^a`: after the
//! boundaries and the first midpoint, queries fill halving generations of
//! sizes 1, 2, 4, ..., and the general bound charges each generation its
//! interval width through `d`. All logarithms are base 2.
//!
//! ```bash
//! cargo run -p bisamp --example theory_bounds
//! ```

use bisamp::analytics::{
    bound_convex, bound_general, bound_lipschitz, bound_power, bound_power_limit, bound_smooth,
    decompose_t,
};
use bisamp::RegularityCondition;

fn main() -> bisamp::Result<()> {
    println!("horizon decomposition T = 2^a + B + 1:");
    for t in [3u64, 5, 10, 100, 1000] {
        let (a, b) = decompose_t(t)?;
        println!("  T = {t:<5} -> a = {a}, B = {b}");
    }

    let abs = RegularityCondition::lipschitz(1.0)?;
    let square = RegularityCondition::smooth(1.0)?;
    let cube = RegularityCondition::power(3.0, 1.0)?;

    println!(
        "\n{:>7} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "T", "gen(abs)", "L*log2 3T", "gen(sq)", "2.25H", "gen(p=3)", "power p=3"
    );
    for t in [3u64, 10, 100, 1000, 10_000, 100_000] {
        println!(
            "{t:>7} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            bound_general(&abs, t)?,
            bound_lipschitz(1.0, t),
            bound_general(&square, t)?,
            bound_smooth(1.0, t),
            bound_general(&cube, t)?,
            bound_power(1.0, 3.0, t),
        );
    }

    println!(
        "\npower-class horizon limits: p=2 -> {}, p=3 -> {:.6} (= 1 + 1/8 + 1/3)",
        bound_power_limit(1.0, 2.0),
        bound_power_limit(1.0, 3.0),
    );
    println!(
        "convex class with g(u) = u reproduces the Lipschitz level: {:.4} vs {:.4}",
        bound_convex(1.0, 1.0, 1000),
        bound_lipschitz(1.0, 1000),
    );
    Ok(())
}
