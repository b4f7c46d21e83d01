//! Seeded falsification: a true claim survives, a false one yields a
//! reproducible counterexample.
//!
//!     cargo run --release --example falsify

use ssne::hilbert::{project_ball, scaled_identity};
use ssne::lab::{falsify_certificates, falsify_inverse_uniform_monotonicity, falsify_ssne, Claim};
use ssne::modulus::ssne_of_averaged;
use ssne::sampling::SamplerSettings;
use ssne::{Modulus, MonotoneMap, Vector};

fn main() -> ssne::Result<()> {
    let settings = SamplerSettings::new(100_000, 42).heavy_tail(true);

    let p = project_ball(Vector::new(vec![1.0, -1.0])?, 2.0)?;
    for r in falsify_certificates(&p, &settings)? {
        println!("{:<16} {:<40} falsified: {}", r.claim, r.certificate, r.falsified());
    }

    // A projection delivers chi(eps) = eps^2 and no more: two points on a
    // ray outside the ball land on the same boundary point.
    let honest = ssne_of_averaged(0.5)?;
    let greedy = Modulus::power(2.0, 2.0);
    println!("\nhonest chi on P: falsified = {}", falsify_ssne(&p, &honest, &settings)?.falsified());
    let r = falsify_ssne(&p, &greedy, &settings)?;
    println!("2 eps^2 on P: falsified = {}", r.falsified());

    let neg = scaled_identity(2, -1.0)?;
    let sq = Modulus::power(1.0, 2.0);
    let report = falsify_ssne(&neg, &sq, &settings)?;
    if let Some(cex) = &report.counterexample {
        println!(
            "\n-id violates chi = eps^2 at trial {}: x = {:?}, y = {:?}, eps = {:.4}, gap {:.3e} < {:.3e}",
            cex.trial,
            cex.x.as_slice(),
            cex.y.as_slice(),
            cex.epsilon,
            cex.gap,
            cex.threshold
        );
        println!("reproduces: {}", Claim::Ssne(sq).reproduces(&neg, cex)?);
    }

    let a = MonotoneMap::scaled_identity(2, 2.0)?;
    let psi = Modulus::power(0.5, 2.0);
    let wrong = Modulus::power(1.0, 2.0);
    println!(
        "\n2·id, psi = eps^2/2: falsified = {}; psi = eps^2: falsified = {}",
        falsify_inverse_uniform_monotonicity(&a, &psi, &settings)?.falsified(),
        falsify_inverse_uniform_monotonicity(&a, &wrong, &settings)?.falsified()
    );
    Ok(())
}
