//! Converting between SNE, SSNE, CLD, uniform-monotonicity and
//! supercoercivity moduli.
//!
//!     cargo run --example modulus_calculus

use ssne::modulus::*;
use ssne::{CldGauge, Modulus};

fn show(label: &str, m: &Modulus) {
    let values: Vec<String> = [0.01, 0.1, 1.0, 10.0].iter().map(|&e| format!("{:.4e}", m.eval(e))).collect();
    println!("{label:<34} [{}]  <- {}", values.join(", "), m.provenance());
}

fn main() -> ssne::Result<()> {
    let avg = ssne_of_averaged(0.5)?;
    show("chi of a 1/2-averaged map", &avg);
    show("nu of a 1/2-averaged map", &supercoercivity_of_averaged(0.5)?);

    let k = CldGauge::constant(0.8)?;
    show("chi of a CLD map, K = 0.8", &ssne_of_cld(&k));
    show("nu of a CLD map, K = 0.8", &supercoercivity_of_cld(&k)?);

    let comp = ssne_of_composition(&[avg.clone(), ssne_of_cld(&k)])?;
    show("chi of their composition", &comp);

    let w = sne_from_ssne(&comp);
    println!("omega(b = 2, eps = 1) = {:.6e}", w.eval(2.0, 1.0));

    // Inverse uniformly monotone A with psi(eps) = eps^2 / lambda.
    let psi = Modulus::power(0.5, 2.0);
    show("chi of R_A", &ssne_from_inverse_uniform_monotonicity(&psi));
    show("alpha_psi of J_A", &resolvent_uniform_monotonicity(&psi));
    show("beta (quadratic gauge)", &quadratic_gauge(&resolvent_uniform_monotonicity(&psi)));
    show("L_psi", &displacement_gap_bound(&psi));
    show("gamma_psi (uniform continuity)", &uniform_continuity_modulus(&psi));

    let eta = Modulus::power(2.0, 1.0);
    show("nu of R_A from eta", &supercoercivity_of_reflected_resolvent(&eta));

    let pm = cld_from_two_sided_sne(&w, &w);
    println!("two-sided CLD gauge at eps = 1: {:.6}", pm.eval(1.0));

    // Classical modulus of a sampled adequate triple.
    let samples = [(0.1, 0.02), (0.5, 0.3), (1.0, 0.9), (2.0, 0.7)];
    let emp = empirical_adequate_modulus(&samples)?;
    for eps in [0.0, 0.3, 1.5, 3.0] {
        println!("empirical modulus at {eps}: {:?}", emp.eval(eps));
    }
    Ok(())
}
