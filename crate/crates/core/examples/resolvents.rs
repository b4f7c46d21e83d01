//! Numerically resolved resolvents and reflected resolvents of monotone maps.
//!
//!     cargo run --example resolvents

use ssne::hilbert::{reflected_resolvent, resolvent, SolverSettings};
use ssne::lab::{falsify_certificates, monotone_claims, falsify_monotone};
use ssne::sampling::SamplerSettings;
use ssne::{MonotoneMap, Vector};

fn main() -> ssne::Result<()> {
    let a = MonotoneMap::halfspace_residual(Vector::new(vec![1.0, 2.0])?, 1.0, 3.0)?;
    let solver = SolverSettings::with_tol(1e-12);
    let j = resolvent(&a, solver)?;
    let r = reflected_resolvent(&a, solver)?;

    let x = Vector::new(vec![4.0, 4.0])?;
    let jx = j.apply(&x)?;
    println!("A = {}", a.name());
    println!("J_A(4,4) = {:?}", jx.as_slice());
    // J_A x + A(J_A x) = x
    println!("residual = {:.2e}", (&(&jx + &a.apply(&jx)?) - &x).norm());
    println!("R_A(4,4) = {:?}", r.apply(&x)?.as_slice());
    println!("R_A chi  : {}", r.ssne_modulus().unwrap().provenance());
    println!("R_A nu   : {}", r.supercoercivity_modulus().unwrap().provenance());

    let settings = SamplerSettings::new(20_000, 1).heavy_tail(true);
    for rep in falsify_certificates(&r, &settings)? {
        println!("  {:<16} falsified: {}", rep.claim, rep.falsified());
    }
    for claim in monotone_claims(&a) {
        let rep = falsify_monotone(&a, &claim, &settings)?;
        println!("  {:<28} falsified: {}", rep.claim, rep.falsified());
    }
    Ok(())
}
