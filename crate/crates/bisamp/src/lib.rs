//! Univariate global optimization by binary midpoint sampling.
//!
//! The optimizer never solves an inner problem to pick its next query:
//! between any two evaluated points there is exactly one potential query,
//! their midpoint, and each midpoint carries a score
//! `min(f0, f1) - C * d((x1 - x0) / 2)` that certifies a lower bound on the
//! objective over the interval. Sampling the lowest-scored candidate first
//! keeps the cumulative regret within closed-form bounds for every supported
//! regularity class:
//!
//! | class               | condition                        | cumulative regret |
//! |---------------------|----------------------------------|-------------------|
//! | Lipschitz continuous| `\|f(x)-f(xE)\| <= L \|x-xE\|`   | `L log2(3T)`      |
//! | Lipschitz smooth    | `\|f(x)-f(xE)\| <= H \|x-xE\|^2` | `2.25 H`          |
//! | power law           | `\|f(x)-f(xE)\| <= K \|x-xE\|^p` | see [`analytics::bound_power`] |
//! | general convex      | `\|f(x)-f(xE)\| <= M g(x-xE)`    | `M g(1) log2(3T)` |
//!
//! All logarithms in this crate are base 2; the closed forms above are not
//! valid under natural logarithms.
//!
//! The crate ships a classic Piyavskii-Shubert baseline ([`baseline`]), a
//! brute-force grid oracle and regret analytics ([`analytics`]), a corpus of
//! test objectives with certified constants ([`corpus`]), CSV serialization
//! ([`csv`]), and a small CLI ([`cli`]). The `examples/` directory holds one
//! runnable example per capability.
//!
//! # Example
//!
//! ```
//! use bisamp::{BinarySampler, RegularityCondition, StoppingRule};
//!
//! let objective = |x: f64| (x - 1.0 / 3.0).abs();
//! let cond = RegularityCondition::lipschitz(1.0)?;
//! let trace = BinarySampler::run(
//!     objective,
//!     (0.0, 1.0),
//!     &cond,
//!     &StoppingRule::MaxQueries(100),
//!     false,
//! )?;
//! assert!(trace.best_value < 1e-3);
//! # Ok::<(), bisamp::Error>(())
//! ```

pub mod analytics;
pub mod baseline;
pub mod cli;
pub mod corpus;
pub mod csv;
pub mod dyadic;
pub mod error;
pub mod regularity;
pub mod sampler;
pub mod trace;

pub use analytics::{oracle_min, regret, regret_with_bound, OracleResult, RegretReport};
pub use baseline::{ps_run, ps_trough, PiyavskiiShubert};
pub use corpus::{builtin_corpus, TestFunction};
pub use dyadic::DyadicPoint;
pub use error::{Error, Result};
pub use regularity::{DistanceSpec, RegularityCondition};
pub use sampler::{normalize_domain, BinarySampler};
pub use trace::{QueryRecord, QueryTrace, StoppingRule};
