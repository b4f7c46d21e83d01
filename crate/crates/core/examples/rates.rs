//! Θ, Φ, Ψ, Γ and Σ for the standard instance χ = ε², ν = M, K ≡ 4.
//!
//!     cargo run --example rates

use ssne::rates::{gamma_rate, phi_bound, psi_bound, sigma_rate, theta_bound};
use ssne::{Modulus, SneModulus};

fn main() -> ssne::Result<()> {
    let chi = Modulus::power(1.0, 2.0);
    let nu = Modulus::power(1.0, 1.0);
    let k = Modulus::constant(4.0);

    let t = theta_bound(&nu, 1.0, 1.0, 1.0)?;
    println!("Theta(eta = N; 1, 1, 1): rho = {}, theta = {}", t.rho, t.theta);

    println!("\n{:>8} {:>14} {:>14} {:>14} {:>14}", "delta", "B", "G", "H", "Phi");
    for delta in [0.01, 0.1, 1.0, 10.0] {
        let p = phi_bound(&chi, &nu, &k, delta)?;
        println!("{delta:>8} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}", p.b.to_f64(), p.g.to_f64(), p.h.to_f64(), p.phi.to_f64());
    }

    for m in 2..=4 {
        let chis = vec![chi.clone(); m - 1];
        let nus = vec![nu.clone(); m - 1];
        println!("Psi(m = {m}, delta = 1) = {}", psi_bound(m, &chis, &nus, &k, 1.0)?);
    }

    let alpha = Modulus::constant(1.0);
    let omega = SneModulus::monomial(0.5, 0.0, 1.0);
    println!("\nGamma(eps = 1, b = d = 1, alpha = 1, omega = eps/2) = {}", gamma_rate(1.0, 1.0, 1.0, &alpha, &omega)?);

    println!("\nSigma for two maps, b = 5, d = 6:");
    for eps in [1.0, 0.5, 0.1] {
        let s = sigma_rate(2, &[chi.clone(), chi.clone()], &[nu.clone()], &k, 5.0, 6.0, eps)?;
        println!("  eps = {eps:<4} Sigma = {s}");
    }
    Ok(())
}
