//! Constructs a δ-fixed point of R_B ∘ R_A and compares its norm with Φ.
//!
//!     cargo run --release --example afp_witness

use ssne::hilbert::SolverSettings;
use ssne::lab::construct_afp_witness;
use ssne::{Modulus, MonotoneMap, Vector};

fn main() -> ssne::Result<()> {
    let a = MonotoneMap::halfspace_residual(Vector::new(vec![-1.0, 0.0])?, -1.0, 1.0)?;
    let b = MonotoneMap::halfspace_residual(Vector::new(vec![0.0, -1.0])?, -1.0, 1.0)?;
    let k = Modulus::constant(1.0);
    let solver = SolverSettings::with_tol(1e-12);
    for delta in [1.0, 0.5, 0.1] {
        let w = construct_afp_witness(&a, &b, &k, delta, solver)?;
        println!(
            "delta = {delta:<4} eta = {:.3e} p = ({:.6}, {:.6}) |p - Rp| = {:.3e} |p| = {:.4} Phi = {} holds: {}",
            w.eta,
            w.p.as_slice()[0],
            w.p.as_slice()[1],
            w.residual,
            w.p.norm(),
            w.phi,
            w.holds()
        );
    }
    Ok(())
}
