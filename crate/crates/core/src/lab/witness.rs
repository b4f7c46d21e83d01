//! Constructive approximate fixed points of `R_B ∘ R_A`.

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::hilbert::{reflected_resolvent, solve_resolvent, CertifiedOperator, MonotoneMap, SolverSettings, Vector};
use crate::modulus::{supercoercivity_of_inverse, Modulus};
use crate::rates::{phi_bound, theta_raw};
use serde::Serialize;

/// Solves `ηu + A(u) + B(u) = f` for `η > 0`.
///
/// Uses forward-backward-forward splitting with the strongly monotone
/// linear part `ηu − f` taken implicitly and `G = A + B` explicitly:
///
/// ```text
/// y  = (u − τG(u) + τf) / (1 + τη)
/// u⁺ = y − τ(G(y) − G(u))
/// ```
///
/// with `τ = 1/(2(L_A + L_B + η))`. Converges linearly for any η; the plain
/// damped iteration on the full operator needs `O((L/η)²)` steps, which is
/// prohibitive for the small η the witness construction uses.
/// Stops when the residual at `y` is at most `settings.tol`.
pub fn solve_regularized_inclusion(
    a: &MonotoneMap,
    b: &MonotoneMap,
    f: &Vector,
    eta: f64,
    settings: SolverSettings,
) -> Result<Vector> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid("eta", format!("{eta} must be positive")));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    f.check_dim(a.dim())?;
    let tau = 0.5 / (a.lipschitz() + b.lipschitz() + eta);
    let g = |u: &Vector| &a.eval(u) + &b.eval(u);
    let mut u = Vector::zeros(a.dim());
    let mut gu = g(&u);
    let mut residual = f64::INFINITY;
    for _ in 0..settings.max_iter {
        let y = (&u - &(tau * &(&gu - f))).scale(1.0 / (1.0 + tau * eta));
        let gy = g(&y);
        residual = (&(&y.scale(eta) + &gy) - f).norm();
        if residual <= settings.tol {
            return Ok(y);
        }
        u = y.axpy(-tau, &(&gy - &gu));
        gu = g(&u);
    }
    Err(Error::NoConvergence {
        solver: "regularized inclusion",
        iterations: settings.max_iter,
        residual,
        tol: settings.tol,
    })
}

/// Krasnosel'skiĭ–Mann iteration `x ← (x + Rx)/2` from `x0` until
/// `‖x − Rx‖ ≤ eps`. Needs `R` nonexpansive with a fixed point.
pub fn locate_fixed_point(
    r: &CertifiedOperator,
    x0: &Vector,
    eps: f64,
    max_iter: usize,
) -> Result<Vector> {
    let mut x = x0.clone();
    let mut disp = f64::INFINITY;
    for _ in 0..max_iter {
        let rx = r.apply(&x)?;
        disp = x.distance(&rx);
        if disp <= eps {
            return Ok(x);
        }
        x = x.lerp(0.5, &rx);
    }
    Err(Error::NoConvergence {
        solver: "fixed point search",
        iterations: max_iter,
        residual: disp,
        tol: eps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AfpWitness {
    pub delta: f64,
    pub p: Vector,
    /// `‖p − R_B(R_A(p))‖`.
    pub residual: f64,
    pub p1: Vector,
    pub p2: Vector,
    pub eta: f64,
    pub u: Vector,
    /// Φ(χ of R_A, ν of R_B, K, δ).
    pub phi: Bound,
}

impl AfpWitness {
    /// Both conclusions: `‖p − Rp‖ ≤ δ` and `‖p‖ ≤ Φ`.
    pub fn holds(&self) -> bool {
        self.residual <= self.delta && self.phi.finite().is_none_or(|phi| self.p.norm() <= phi)
    }
}

fn approximate_fixed_point(
    r: &CertifiedOperator,
    eps: f64,
    k: f64,
) -> Result<Vector> {
    let p = match &r.certificates().fixed_point {
        Some(p) => p.clone(),
        None => locate_fixed_point(r, &Vector::zeros(r.dim()), eps, 1_000_000)?,
    };
    let disp = p.distance(&r.apply(&p)?);
    if disp > eps {
        return Err(Error::Precondition(format!(
            "{}: point has displacement {disp} > ε = {eps}",
            r.name()
        )));
    }
    if p.norm() > k {
        return Err(Error::Precondition(format!(
            "{}: ε-fixed point has norm {} > K(ε) = {k}",
            r.name(),
            p.norm()
        )));
    }
    Ok(p)
}

/// Builds a δ-fixed point of `R_B ∘ R_A` from δ/4-fixed points of `R_A` and
/// `R_B` whose norms are bounded by `K(δ/4)`.
///
/// With `ε = δ/4`, `k = K(ε) + ε/2`:
///
/// ```text
/// f = p₁ − J_A p₁ + p₂ − J_B p₂
/// c = Θ(η_ν, k, k, ε/2)
/// η = min(1/2, ε² / (k² + 2c))
/// u solves ηu + Au + Bu = f
/// p = u + Au
/// ```
///
/// where ν is the supercoercivity modulus certified for `R_B`.
/// The points `p₁, p₂` come from the fixed-point certificates of the
/// reflected resolvents when present, otherwise from [`locate_fixed_point`].
pub fn construct_afp_witness(
    a: &MonotoneMap,
    b: &MonotoneMap,
    k: &Modulus,
    delta: f64,
    solver: SolverSettings,
) -> Result<AfpWitness> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid("delta", format!("{delta} must be positive")));
    }
    let ra = reflected_resolvent(a, solver)?;
    let rb = reflected_resolvent(b, solver)?;
    let nu = rb.supercoercivity_modulus().ok_or_else(|| {
        Error::Precondition(format!("{} has no supercoercivity modulus", rb.name()))
    })?;
    let eps = delta / 4.0;
    let k_eps = k.eval(eps);
    let p1 = approximate_fixed_point(&ra, eps, k_eps)?;
    let p2 = approximate_fixed_point(&rb, eps, k_eps)?;

    let j1 = solve_resolvent(a, &p1, solver)?;
    let j2 = solve_resolvent(b, &p2, solver)?;
    let f = &(&p1 - &j1) + &(&p2 - &j2);
    let kk = k_eps + eps / 2.0;
    let (_, c) = theta_raw(&supercoercivity_of_inverse(&nu), kk, kk, eps / 2.0);
    let eta = 0.5f64.min(eps * eps / (kk * kk + 2.0 * c));
    if !(eta > 0.0) {
        return Err(Error::Precondition(format!(
            "regularization parameter underflowed (Θ = {c})"
        )));
    }
    let u = solve_regularized_inclusion(a, b, &f, eta, solver)?;
    let p = &u + &a.eval(&u);
    let residual = p.distance(&rb.apply(&ra.apply(&p)?)?);
    let phi = match ra.ssne_modulus() {
        Some(chi) => phi_bound(&chi, &nu, k, delta)?.phi,
        None => Bound::Overflow,
    };
    Ok(AfpWitness {
        delta,
        p,
        residual,
        p1,
        p2,
        eta,
        u,
        phi,
    })
}
