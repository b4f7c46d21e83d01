use super::{CertifiedOperator, Vector};
use crate::error::{Error, Result};
use crate::modulus::{
    ssne_from_inverse_uniform_monotonicity, supercoercivity_of_reflected_resolvent, Modulus,
};
use crate::sampling::{self, SamplerSettings};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

type PlainMap = dyn Fn(&Vector) -> Vector + Send + Sync;

/// Stopping rule for the iterative solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-10,
            max_iter: 1_000_000,
        }
    }
}

impl SolverSettings {
    pub fn with_tol(tol: f64) -> Self {
        SolverSettings {
            tol,
            ..SolverSettings::default()
        }
    }
}

/// A single-valued, full-domain, Lipschitz monotone map `A: ℝⁿ → ℝⁿ`.
///
/// Optional metadata: a modulus ψ of inverse uniform monotonicity
/// (`‖Ax−Ay‖ ≥ ε ⇒ ⟨x−y, Ax−Ay⟩ ≥ ψ(ε)`), a supercoercivity modulus η of
/// the inverse (`‖Ax−Ay‖ ≥ η(N) ⇒ ⟨x−y, Ax−Ay⟩ ≥ N‖Ax−Ay‖`) and a known zero.
#[derive(Clone)]
pub struct MonotoneMap {
    name: String,
    dim: usize,
    map: Arc<PlainMap>,
    lipschitz: f64,
    inverse_modulus: Option<Modulus>,
    supercoercivity: Option<Modulus>,
    zero: Option<Vector>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("lipschitz", &self.lipschitz)
            .field("inverse_modulus", &self.inverse_modulus)
            .field("supercoercivity", &self.supercoercivity)
            .field("zero", &self.zero)
            .finish()
    }
}

impl MonotoneMap {
    /// Wraps `map` after sampling monotonicity and the Lipschitz bound on
    /// 10³ seeded pairs from `[−10, 10]ⁿ`.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        lipschitz: f64,
        map: impl Fn(&Vector) -> Vector + Send + Sync + 'static,
    ) -> Result<Self> {
        let name = name.into();
        if dim == 0 {
            return Err(Error::invalid("dimension", "must be positive"));
        }
        if !(lipschitz >= 0.0 && lipschitz.is_finite()) {
            return Err(Error::invalid("lipschitz", format!("{lipschitz} is not a nonnegative real")));
        }
        let out = MonotoneMap::closed_form(name, dim, lipschitz, map);
        out.check(&SamplerSettings::construction())?;
        Ok(out)
    }

    /// For the built-in forms, which are monotone and Lipschitz by
    /// construction and skip the sampled check.
    fn closed_form(
        name: String,
        dim: usize,
        lipschitz: f64,
        map: impl Fn(&Vector) -> Vector + Send + Sync + 'static,
    ) -> Self {
        MonotoneMap {
            name,
            dim,
            map: Arc::new(map),
            lipschitz,
            inverse_modulus: None,
            supercoercivity: None,
            zero: None,
        }
    }

    fn check(&self, settings: &SamplerSettings) -> Result<()> {
        let hit = sampling::search(settings, |_, rng| {
            let (x, y) = sampling::pair(rng, self.dim, settings);
            let (ax, ay) = (self.eval(&x), self.eval(&y));
            let (d, w) = (&x - &y, &ax - &ay);
            let (dn, wn) = (d.norm(), w.norm());
            let slack = 1e-12 * (1.0 + dn * wn);
            if d.dot(&w) < -slack {
                return Ok(Some(("monotone", format!("⟨x−y, Ax−Ay⟩ = {} < 0", d.dot(&w)))));
            }
            if wn > self.lipschitz * dn * (1.0 + 1e-12) + 1e-12 {
                return Ok(Some((
                    "lipschitz",
                    format!("‖Ax−Ay‖ = {wn} > {} · ‖x−y‖ = {}", self.lipschitz, self.lipschitz * dn),
                )));
            }
            Ok(None)
        })?;
        match hit {
            None => Ok(()),
            Some((_, (certificate, reason))) => Err(Error::CertificateRejected {
                operator: self.name.clone(),
                certificate,
                reason,
            }),
        }
    }

    /// `x ↦ λx` for `λ ≥ 0`. For `λ > 0`: ψ(ε) = ε²/λ and η(N) = λN; the
    /// zero map satisfies both claims vacuously and gets ψ(ε) = ε², η(N) = N.
    pub fn scaled_identity(dim: usize, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", format!("{lambda} must be nonnegative")));
        }
        let name = if lambda == 0.0 {
            "0".to_owned()
        } else {
            format!("{lambda}·id")
        };
        if dim == 0 {
            return Err(Error::invalid("dimension", "must be positive"));
        }
        let map = MonotoneMap::closed_form(name, dim, lambda, move |x| x.scale(lambda));
        let (psi, eta) = if lambda > 0.0 {
            (
                Modulus::power(1.0 / lambda, 2.0),
                Modulus::power(lambda, 1.0),
            )
        } else {
            (Modulus::power(1.0, 2.0), Modulus::power(1.0, 1.0))
        };
        map.with_inverse_modulus(psi)
            .with_supercoercivity(eta)
            .with_zero(Vector::zeros(dim))
    }

    /// `x ↦ λ(x − P_H x)` for the halfspace `H = {⟨a, x⟩ ≤ b}`: the gradient
    /// of `(λ/2)·dist(x, H)²`. It is (1/λ)-cocoercive, giving ψ(ε) = ε²/λ and
    /// η(N) = λN; its zeros are the points of `H`.
    pub fn halfspace_residual(a: Vector, b: f64, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", format!("{lambda} must be positive")));
        }
        if !b.is_finite() {
            return Err(Error::invalid("b", "must be finite"));
        }
        let a2 = a.norm_squared();
        if a2 == 0.0 {
            return Err(Error::invalid("a", "normal vector must be nonzero"));
        }
        let dim = a.dim();
        let zero = a.scale(b.min(0.0) / a2);
        let normal = a.clone();
        let map = MonotoneMap::closed_form(
            format!("{lambda}·(id − P_halfspace({:?}, {b}))", a.as_slice()),
            dim,
            lambda,
            move |x| {
                let excess = ((normal.dot(x) - b) / a2).max(0.0);
                normal.scale(lambda * excess)
            },
        );
        map.with_inverse_modulus(Modulus::power(1.0 / lambda, 2.0))
            .with_supercoercivity(Modulus::power(lambda, 1.0))
            .with_zero(zero)
    }

    pub fn with_inverse_modulus(mut self, psi: Modulus) -> Self {
        self.inverse_modulus = Some(psi);
        self
    }

    pub fn with_supercoercivity(mut self, eta: Modulus) -> Self {
        self.supercoercivity = Some(eta);
        self
    }

    /// Records a zero of the map; rejected unless `‖A z‖ ≤ 1e-12`.
    pub fn with_zero(mut self, z: Vector) -> Result<Self> {
        z.check_dim(self.dim)?;
        let r = self.eval(&z).norm();
        if r > 1e-12 {
            return Err(Error::CertificateRejected {
                operator: self.name.clone(),
                certificate: "zero",
                reason: format!("‖A z‖ = {r}"),
            });
        }
        self.zero = Some(z);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn inverse_modulus(&self) -> Option<&Modulus> {
        self.inverse_modulus.as_ref()
    }

    pub fn supercoercivity(&self) -> Option<&Modulus> {
        self.supercoercivity.as_ref()
    }

    pub fn zero(&self) -> Option<&Vector> {
        self.zero.as_ref()
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        Ok(self.eval(x))
    }

    pub(crate) fn eval(&self, x: &Vector) -> Vector {
        (self.map)(x)
    }
}

/// Solves `y + A(y) = x` by the damped iteration `y ← y − τ(y + A(y) − x)`
/// with `τ = 1/(1+L)²`; `id + A` is 1-strongly monotone and `(1+L)`-Lipschitz,
/// so the iteration contracts. Stops when the residual is at most `tol`,
/// which bounds the error in `y` by `tol` as well.
pub fn solve_resolvent(a: &MonotoneMap, x: &Vector, settings: SolverSettings) -> Result<Vector> {
    x.check_dim(a.dim())?;
    let tau = 1.0 / ((1.0 + a.lipschitz()) * (1.0 + a.lipschitz()));
    let mut y = x.clone();
    let mut residual = f64::INFINITY;
    for _ in 0..settings.max_iter {
        let ay = a.eval(&y);
        let r = Vector::raw(
            y.as_slice()
                .iter()
                .zip(ay.as_slice())
                .zip(x.as_slice())
                .map(|((yi, ai), xi)| yi + ai - xi)
                .collect(),
        );
        residual = r.norm();
        if residual <= settings.tol {
            return Ok(y);
        }
        y = y.axpy(-tau, &r);
    }
    Err(Error::NoConvergence {
        solver: "resolvent",
        iterations: settings.max_iter,
        residual,
        tol: settings.tol,
    })
}

/// `J_A = (id + A)⁻¹`, firmly nonexpansive, certified ½-averaged.
pub fn resolvent(a: &MonotoneMap, settings: SolverSettings) -> Result<CertifiedOperator> {
    let inner = a.clone();
    let mut op = CertifiedOperator::new(format!("J[{}]", a.name()), a.dim(), move |x| {
        solve_resolvent(&inner, x, settings)
    })?
    .with_averaged_alpha(0.5)?
    .with_lipschitz(1.0)?
    .with_eval_tol(settings.tol);
    if let Some(z) = a.zero() {
        op = op.with_fixed_point(z.clone())?;
    }
    Ok(op)
}

/// `R_A = 2J_A − id`.
///
/// From the metadata of `a`: SSNE-modulus `4ψ(ε/2)` and supercoercivity
/// `2η(M/2)`; zeros of `A` are fixed points of `R_A`.
pub fn reflected_resolvent(a: &MonotoneMap, settings: SolverSettings) -> Result<CertifiedOperator> {
    let inner = a.clone();
    let mut op = CertifiedOperator::new(format!("R[{}]", a.name()), a.dim(), move |x| {
        let j = solve_resolvent(&inner, x, settings)?;
        Ok(Vector::raw(
            j.as_slice()
                .iter()
                .zip(x.as_slice())
                .map(|(ji, xi)| 2.0 * ji - xi)
                .collect(),
        ))
    })?
    .with_lipschitz(1.0)?
    .with_eval_tol(2.0 * settings.tol);
    if let Some(psi) = a.inverse_modulus() {
        op = op.with_ssne(ssne_from_inverse_uniform_monotonicity(psi));
    }
    if let Some(eta) = a.supercoercivity() {
        op = op.with_supercoercivity(supercoercivity_of_reflected_resolvent(eta));
    }
    if let Some(z) = a.zero() {
        op = op.with_fixed_point(z.clone())?;
    }
    Ok(op)
}
