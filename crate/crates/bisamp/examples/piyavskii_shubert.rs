//! Head-to-head with the classic Piyavskii-Shubert lower-envelope method.
//!
//! Piyavskii-Shubert queries the minimum of the sawtooth envelope, so its
//! query points depend on the observed values and must be solved for; binary
//! sampling always queries midpoints of a predetermined dyadic grid. The
//! regret levels end up comparable, which is the point of the comparison.
//!
//! ```bash
//! cargo run -p bisamp --example piyavskii_shubert
//! ```

use bisamp::analytics::{bound_lipschitz, oracle_min, regret};
use bisamp::baseline::{ps_reference_bound, ps_run};
use bisamp::corpus::{builtin_corpus, find};
use bisamp::sampler::BinarySampler;
use bisamp::trace::StoppingRule;
use bisamp::DistanceSpec;

fn main() -> bisamp::Result<()> {
    let corpus = builtin_corpus();
    let t = 1000usize;
    println!(
        "{:<4} {:<8} {:>12} {:>14} {:>12}",
        "fn", "alg", "R_T", "simple_T", "bound"
    );
    for id in ["V1", "S1", "W1"] {
        let f = find(&corpus, id).expect("corpus");
        let cert = f
            .condition_where(|d| matches!(d, DistanceSpec::Absolute))
            .expect("abs condition");
        let l = cert.condition.constant();

        let obj = f.objective();
        let oracle = oracle_min(move |x| obj(x), f.domain(), &cert.condition, 1_000_001)?;

        let obj = f.objective();
        let binary = BinarySampler::run(
            move |x| obj(x),
            f.domain(),
            &cert.condition,
            &StoppingRule::MaxQueries(t),
            false,
        )?;
        let obj = f.objective();
        let baseline = ps_run(move |x| obj(x), f.domain(), l, t)?;

        for (alg, trace, bound) in [
            ("binary", &binary, bound_lipschitz(l, t as u64)),
            ("ps", &baseline, ps_reference_bound(l, t)),
        ] {
            let report = regret(trace, &oracle);
            println!(
                "{id:<4} {alg:<8} {:>12.6} {:>14.3e} {:>12.4}",
                report.total(),
                report.simple.last().unwrap(),
                bound
            );
        }
    }
    println!("\nthe binary-sampling bound L*log2(3T) is roughly half the");
    println!("baseline reference level 2*L*log2(T) at large T");
    Ok(())
}
