//! Certified Σ against the actual iterates of a composition of two
//! projections onto disjoint balls.
//!
//!     cargo run --release --example rate_vs_reality

use ssne::hilbert::{compose, project_ball};
use ssne::lab::rate_vs_reality;
use ssne::rates::SigmaInputs;
use ssne::{Modulus, Vector};

fn main() -> ssne::Result<()> {
    let r = compose(&[
        project_ball(Vector::new(vec![0.0, 0.0])?, 1.0)?,
        project_ball(Vector::new(vec![4.0, 0.0])?, 1.0)?,
    ])?;
    let chi = Modulus::power(1.0, 2.0);
    let sigma = SigmaInputs {
        chis: vec![chi.clone(), chi],
        nus: vec![Modulus::power(1.0, 1.0)],
        k: Modulus::constant(4.0),
        b: 5.0,
        d: 6.0,
    };
    let x0 = Vector::new(vec![0.0, 5.0])?;
    let report = rate_vs_reality(&r, &x0, &sigma, &[1.0, 0.5, 0.1, 1e-6], 10_000)?;
    for row in &report.rows {
        println!(
            "eps = {:<6} certified = {:<24} empirical = {:?} {:?}",
            row.epsilon,
            row.certified_rate.to_string(),
            row.empirical_index,
            row.verdict
        );
    }
    report.write_csv(std::io::stdout())?;
    Ok(())
}
