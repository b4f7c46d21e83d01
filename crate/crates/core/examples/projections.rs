//! Projections, averaged maps and compositions with their certificates.
//!
//!     cargo run --example projections

use ssne::hilbert::{compose, make_averaged, project_ball, project_box, project_halfspace};
use ssne::{Result, Vector};

fn main() -> Result<()> {
    let ball = project_ball(Vector::new(vec![0.0, 0.0])?, 1.0)?;
    let half = project_halfspace(Vector::new(vec![1.0, 1.0])?, -0.5)?;
    let cube = project_box(Vector::new(vec![-2.0, 0.5])?, Vector::new(vec![2.0, 3.0])?)?;
    let x = Vector::new(vec![3.0, 4.0])?;

    for op in [&ball, &half, &cube] {
        let c = op.certificates();
        println!(
            "{:<40} P(3,4) = {:?}  averaged alpha = {:?}  ssne = {}",
            op.name(),
            op.apply(&x)?.as_slice(),
            c.averaged_alpha,
            op.ssne_modulus().map(|m| m.provenance().to_string()).unwrap_or_default()
        );
    }

    let avg = make_averaged(0.25, &ball)?;
    println!("\n{}: x -> {:?}", avg.name(), avg.apply(&x)?.as_slice());

    // The composite carries the composition rule for its SSNE-modulus.
    let r = compose(&[ball, half, cube])?;
    let chi = r.ssne_modulus().expect("every member is SSNE");
    println!("\n{}", r.name());
    println!("chi provenance: {}", chi.provenance());
    for eps in [0.1, 1.0, 10.0] {
        println!("  chi({eps}) = {:.6e}", chi.eval(eps));
    }
    Ok(())
}
