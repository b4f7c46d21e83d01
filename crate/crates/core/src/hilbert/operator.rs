use super::Vector;
use crate::error::{Error, Result};
use crate::grid::sweep_grid;
use crate::modulus::{
    sne_from_ssne, ssne_of_averaged, ssne_of_cld, ssne_of_composition, supercoercivity_of_averaged,
    supercoercivity_of_cld, CldGauge, Modulus, Provenance, SneModulus,
};
use crate::sampling::{self, SamplerSettings};
use std::fmt;
use std::sync::Arc;

type MapFn = dyn Fn(&Vector) -> Result<Vector> + Send + Sync;

/// Claims attached to an operator. Every field is optional and every claim
/// is falsifiable by the lab.
#[derive(Clone, Debug, Default)]
pub struct Certificates {
    /// `R = (1−α)id + αT` for some nonexpansive `T`, α ∈ (0,1).
    pub averaged_alpha: Option<f64>,
    pub cld_gauge: Option<CldGauge>,
    pub ssne: Option<Modulus>,
    pub sne: Option<SneModulus>,
    pub supercoercivity: Option<Modulus>,
    /// `ε ↦` norm bound of some ε-fixed point.
    pub afp_bound: Option<Modulus>,
    pub lipschitz: Option<f64>,
    /// An exact fixed point, used as the witness behind `afp_bound`.
    pub fixed_point: Option<Vector>,
}

/// An evaluable self-map of ℝⁿ bundled with its certificates.
#[derive(Clone)]
pub struct CertifiedOperator {
    name: String,
    dim: usize,
    map: Arc<MapFn>,
    certificates: Certificates,
    eval_tol: f64,
}

impl fmt::Debug for CertifiedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CertifiedOperator")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("certificates", &self.certificates)
            .field("eval_tol", &self.eval_tol)
            .finish()
    }
}

impl CertifiedOperator {
    /// Wraps a map with no certificates attached.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        map: impl Fn(&Vector) -> Result<Vector> + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension", "must be positive"));
        }
        Ok(CertifiedOperator {
            name: name.into(),
            dim,
            map: Arc::new(map),
            certificates: Certificates::default(),
            eval_tol: 0.0,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    /// Absolute accuracy of a single evaluation (0 for closed forms, the
    /// solver tolerance bound for resolvent-backed maps).
    pub fn eval_tol(&self) -> f64 {
        self.eval_tol
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        (self.map)(x)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_eval_tol(mut self, tol: f64) -> Self {
        self.eval_tol = tol;
        self
    }

    fn reject(&self, certificate: &'static str, reason: impl Into<String>) -> Error {
        Error::CertificateRejected {
            operator: self.name.clone(),
            certificate,
            reason: reason.into(),
        }
    }

    pub fn with_averaged_alpha(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(self.reject("averaged_alpha", format!("{alpha} is not in (0, 1)")));
        }
        self.certificates.averaged_alpha = Some(alpha);
        Ok(self)
    }

    /// Attaches a CLD gauge after checking its range on the sweep grid.
    pub fn with_cld_gauge(mut self, gauge: CldGauge) -> Result<Self> {
        for eps in sweep_grid() {
            if let Err(e) = gauge.checked_eval(eps) {
                return Err(self.reject("cld_gauge", e.to_string()));
            }
        }
        self.certificates.cld_gauge = Some(gauge);
        Ok(self)
    }

    pub fn with_ssne(mut self, chi: Modulus) -> Self {
        self.certificates.ssne = Some(chi);
        self
    }

    pub fn with_sne(mut self, omega: SneModulus) -> Self {
        self.certificates.sne = Some(omega);
        self
    }

    pub fn with_supercoercivity(mut self, nu: Modulus) -> Self {
        self.certificates.supercoercivity = Some(nu);
        self
    }

    pub fn with_afp_bound(mut self, bound: Modulus) -> Self {
        self.certificates.afp_bound = Some(bound);
        self
    }

    pub fn with_lipschitz(mut self, l: f64) -> Result<Self> {
        if !(l >= 0.0 && l.is_finite()) {
            return Err(self.reject("lipschitz", format!("{l} is not a nonnegative real")));
        }
        self.certificates.lipschitz = Some(l);
        Ok(self)
    }

    /// Attaches an exact fixed point together with the constant AFP bound `‖p‖`.
    pub fn with_fixed_point(mut self, p: Vector) -> Result<Self> {
        p.check_dim(self.dim)?;
        let norm = p.norm();
        self.certificates.afp_bound = Some(Modulus::new(
            Provenance::new("fixed_point_norm").number("norm", norm),
            move |_| norm,
        ));
        self.certificates.fixed_point = Some(p);
        Ok(self)
    }

    /// SSNE-modulus: the explicit certificate, else derived from the averaged
    /// parameter, else from the CLD gauge.
    pub fn ssne_modulus(&self) -> Option<Modulus> {
        let c = &self.certificates;
        c.ssne
            .clone()
            .or_else(|| c.averaged_alpha.and_then(|a| ssne_of_averaged(a).ok()))
            .or_else(|| c.cld_gauge.as_ref().map(ssne_of_cld))
    }

    /// SNE-modulus: the explicit certificate, else derived from the SSNE-modulus.
    pub fn sne_modulus(&self) -> Option<SneModulus> {
        self.certificates
            .sne
            .clone()
            .or_else(|| self.ssne_modulus().map(|chi| sne_from_ssne(&chi)))
    }

    /// Supercoercivity modulus: the explicit certificate, else derived from
    /// the averaged parameter, else from the CLD gauge.
    pub fn supercoercivity_modulus(&self) -> Option<Modulus> {
        let c = &self.certificates;
        c.supercoercivity
            .clone()
            .or_else(|| c.averaged_alpha.and_then(|a| supercoercivity_of_averaged(a).ok()))
            .or_else(|| {
                c.cld_gauge
                    .as_ref()
                    .and_then(|k| supercoercivity_of_cld(k).ok())
            })
    }

    /// Sampled nonexpansiveness check over the construction box.
    pub(crate) fn check_nonexpansive(&self, settings: &SamplerSettings) -> Result<()> {
        let slack = 2.0 * self.eval_tol;
        let hit = sampling::search(settings, |_, rng| {
            let (x, y) = sampling::pair(rng, self.dim, settings);
            let (tx, ty) = (self.apply(&x)?, self.apply(&y)?);
            let (d, td) = (x.distance(&y), tx.distance(&ty));
            Ok((td > d * (1.0 + 1e-12) + 1e-12 + slack).then_some((x, y, d, td)))
        })?;
        match hit {
            None => Ok(()),
            Some((_, (x, y, d, td))) => Err(self.reject(
                "nonexpansive",
                format!("‖Tx−Ty‖ = {td} > ‖x−y‖ = {d} at x = {x:?}, y = {y:?}"),
            )),
        }
    }
}

/// `x ↦ β·x`. Certified averaged for `β ∈ (−1, 1]`, CLD with `K ≡ |β|`
/// for `|β| < 1`, Lipschitz `|β|` always. The origin is a fixed point.
pub fn scaled_identity(dim: usize, beta: f64) -> Result<CertifiedOperator> {
    if !beta.is_finite() {
        return Err(Error::invalid("beta", "must be finite"));
    }
    let name = if beta == 1.0 {
        "id".to_owned()
    } else {
        format!("{beta}·id")
    };
    let mut op = CertifiedOperator::new(name, dim, move |x| Ok(x.scale(beta)))?
        .with_lipschitz(beta.abs())?
        .with_fixed_point(Vector::zeros(dim))?;
    if beta > -1.0 && beta <= 1.0 {
        let alpha = if beta >= 0.0 { 0.5 } else { (1.0 - beta) / 2.0 };
        op = op.with_averaged_alpha(alpha)?;
    }
    if beta.abs() < 1.0 {
        op = op.with_cld_gauge(CldGauge::constant(beta.abs())?)?;
    }
    Ok(op)
}

pub fn identity(dim: usize) -> Result<CertifiedOperator> {
    scaled_identity(dim, 1.0)
}

/// Metric projection onto the closed ball `B(center, radius)`.
pub fn project_ball(center: Vector, radius: f64) -> Result<CertifiedOperator> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid("radius", format!("{radius} must be positive")));
    }
    let dim = center.dim();
    let c = center.clone();
    CertifiedOperator::new(
        format!("P_ball({:?}, {radius})", center.as_slice()),
        dim,
        move |x| {
            let v = x - &c;
            let n = v.norm();
            if n <= radius {
                Ok(x.clone())
            } else {
                Ok(c.axpy(radius / n, &v))
            }
        },
    )?
    .with_averaged_alpha(0.5)?
    .with_lipschitz(1.0)?
    .with_fixed_point(center)
}

/// Metric projection onto the halfspace `{x : ⟨a, x⟩ ≤ b}`.
pub fn project_halfspace(a: Vector, b: f64) -> Result<CertifiedOperator> {
    let a2 = a.norm_squared();
    if a2 == 0.0 {
        return Err(Error::invalid("a", "normal vector must be nonzero"));
    }
    if !b.is_finite() {
        return Err(Error::invalid("b", "must be finite"));
    }
    let dim = a.dim();
    let witness = a.scale(b / a2);
    let normal = a.clone();
    CertifiedOperator::new(
        format!("P_halfspace({:?}, {b})", a.as_slice()),
        dim,
        move |x| {
            let excess = (normal.dot(x) - b) / a2;
            if excess > 0.0 {
                Ok(x.axpy(-excess, &normal))
            } else {
                Ok(x.clone())
            }
        },
    )?
    .with_averaged_alpha(0.5)?
    .with_lipschitz(1.0)?
    .with_fixed_point(witness)
}

/// Metric projection onto the box `∏ [loᵢ, hiᵢ]`.
pub fn project_box(lo: Vector, hi: Vector) -> Result<CertifiedOperator> {
    hi.check_dim(lo.dim())?;
    if lo.as_slice().iter().zip(hi.as_slice()).any(|(l, h)| l > h) {
        return Err(Error::invalid("box", "lower corner exceeds upper corner"));
    }
    let dim = lo.dim();
    let witness = Vector::raw(
        lo.as_slice()
            .iter()
            .zip(hi.as_slice())
            .map(|(l, h)| 0f64.clamp(*l, *h))
            .collect(),
    );
    let (l, h) = (lo.clone(), hi.clone());
    CertifiedOperator::new(
        format!("P_box({:?}, {:?})", lo.as_slice(), hi.as_slice()),
        dim,
        move |x| {
            Ok(Vector::raw(
                x.as_slice()
                    .iter()
                    .zip(l.as_slice().iter().zip(h.as_slice()))
                    .map(|(v, (a, b))| v.clamp(*a, *b))
                    .collect(),
            ))
        },
    )?
    .with_averaged_alpha(0.5)?
    .with_lipschitz(1.0)?
    .with_fixed_point(witness)
}

/// `(1−α)id + αT` for a nonexpansive `T`, checked by sampling at construction.
pub fn make_averaged(alpha: f64, t: &CertifiedOperator) -> Result<CertifiedOperator> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha", format!("{alpha} is not in (0, 1)")));
    }
    t.check_nonexpansive(&SamplerSettings::construction())?;
    let inner = t.clone();
    let mut op = CertifiedOperator::new(format!("avg({alpha}, {})", t.name()), t.dim(), move |x| {
        let tx = inner.apply(x)?;
        Ok(x.lerp(alpha, &tx))
    })?
    .with_averaged_alpha(alpha)?
    .with_lipschitz(1.0)?
    .with_eval_tol(alpha * t.eval_tol());
    if let Some(p) = &t.certificates().fixed_point {
        op = op.with_fixed_point(p.clone())?;
    }
    Ok(op)
}

/// `ops[n−1] ∘ … ∘ ops[0]`: the first element is applied first.
///
/// Attaches the composite SSNE-modulus when every member has one.
pub fn compose(ops: &[CertifiedOperator]) -> Result<CertifiedOperator> {
    let first = ops.first().ok_or(Error::Empty {
        what: "operator list",
    })?;
    let dim = first.dim();
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.dim(),
            });
        }
    }
    if ops.len() == 1 {
        return Ok(first.clone());
    }
    let members = ops.to_vec();
    let name = format!(
        "compose[{}]",
        ops.iter().map(|o| o.name()).collect::<Vec<_>>().join(", ")
    );
    // errors made early are propagated through the later members
    let mut eval_tol = 0.0;
    for op in ops {
        eval_tol = eval_tol * op.certificates().lipschitz.unwrap_or(1.0) + op.eval_tol();
    }
    let mut out = CertifiedOperator::new(name, dim, move |x| {
        let mut y = x.clone();
        for op in &members {
            y = op.apply(&y)?;
        }
        Ok(y)
    })?
    .with_eval_tol(eval_tol);
    let chis: Option<Vec<Modulus>> = ops.iter().map(|o| o.ssne_modulus()).collect();
    if let Some(chis) = chis {
        out = out.with_ssne(ssne_of_composition(&chis)?);
    }
    let lips: Option<Vec<f64>> = ops.iter().map(|o| o.certificates().lipschitz).collect();
    if let Some(l) = lips {
        out = out.with_lipschitz(l.iter().product())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn ball_projection() {
        let p = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(p.apply(&v(&[3.0, 0.0])).unwrap(), v(&[1.0, 0.0]));
        assert_eq!(p.apply(&v(&[0.3, -0.4])).unwrap(), v(&[0.3, -0.4]));
        let q = project_ball(v(&[4.0, 0.0]), 1.0).unwrap();
        assert_eq!(q.apply(&v(&[1.0, 0.0])).unwrap(), v(&[3.0, 0.0]));
        assert_eq!(q.certificates().averaged_alpha, Some(0.5));
        assert_eq!(q.certificates().afp_bound.as_ref().unwrap().eval(0.1), 4.0);
        assert!(project_ball(v(&[0.0]), 0.0).is_err());
    }

    #[test]
    fn halfspace_projection() {
        let p = project_halfspace(v(&[1.0, 0.0]), 0.0).unwrap();
        assert_eq!(p.apply(&v(&[2.0, 3.0])).unwrap(), v(&[0.0, 3.0]));
        assert_eq!(p.apply(&v(&[-2.0, 3.0])).unwrap(), v(&[-2.0, 3.0]));
        let q = project_halfspace(v(&[0.0, 1.0]), 1.0).unwrap();
        assert_eq!(q.apply(&v(&[5.0, 4.0])).unwrap(), v(&[5.0, 1.0]));
        assert_eq!(q.certificates().afp_bound.as_ref().unwrap().eval(1.0), 1.0);
        assert!(project_halfspace(v(&[0.0, 0.0]), 1.0).is_err());
    }

    #[test]
    fn box_projection() {
        let p = project_box(v(&[1.0, -1.0]), v(&[2.0, 1.0])).unwrap();
        assert_eq!(p.apply(&v(&[0.0, 5.0])).unwrap(), v(&[1.0, 1.0]));
        assert_eq!(p.certificates().fixed_point, Some(v(&[1.0, 0.0])));
        assert!(project_box(v(&[1.0]), v(&[0.0])).is_err());
    }

    #[test]
    fn averaged_examples() {
        let x = v(&[1.5, -2.0]);
        let id = identity(2).unwrap();
        assert!(make_averaged(0.3, &id).unwrap().apply(&x).unwrap().distance(&x) < 1e-12);
        let neg = scaled_identity(2, -1.0).unwrap();
        let zero = make_averaged(0.5, &neg).unwrap();
        assert_eq!(zero.apply(&x).unwrap(), v(&[0.0, 0.0]));
        // rotation by π
        let rot = CertifiedOperator::new("rot_pi", 2, |x| {
            let s = x.as_slice();
            let (c, sn) = (std::f64::consts::PI.cos(), std::f64::consts::PI.sin());
            Ok(Vector::raw(vec![c * s[0] - sn * s[1], sn * s[0] + c * s[1]]))
        })
        .unwrap();
        let r = make_averaged(0.5, &rot).unwrap().apply(&x).unwrap();
        assert!(r.norm() < 1e-15);
        assert!(make_averaged(1.0, &id).is_err());
        assert!(make_averaged(0.5, &scaled_identity(2, 2.0).unwrap()).is_err());
    }

    #[test]
    fn compose_examples() {
        let id = identity(2).unwrap();
        let t = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let x = v(&[3.0, 4.0]);
        let c = compose(&[id, t.clone()]).unwrap();
        assert_eq!(c.apply(&x).unwrap(), t.apply(&x).unwrap());
        let single = compose(std::slice::from_ref(&t)).unwrap();
        assert_eq!(single.apply(&x).unwrap(), t.apply(&x).unwrap());

        let p1 = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let p2 = project_ball(v(&[4.0, 0.0]), 1.0).unwrap();
        let r = compose(&[p1, p2]).unwrap();
        assert_eq!(r.apply(&v(&[3.0, 0.0])).unwrap(), v(&[3.0, 0.0]));
        // χ = min(ε²/4, ε²/4)
        assert_eq!(r.certificates().ssne.as_ref().unwrap().eval(2.0), 1.0);

        assert!(compose(&[]).is_err());
        let other = identity(3).unwrap();
        assert!(matches!(
            compose(&[t, other]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn apply_checks_dimension() {
        let t = identity(2).unwrap();
        assert!(t.apply(&v(&[1.0])).is_err());
    }

    #[test]
    fn scaled_identity_certificates() {
        let h = scaled_identity(2, 0.5).unwrap();
        assert_eq!(h.certificates().cld_gauge.as_ref().unwrap().eval(3.0), 0.5);
        assert_eq!(h.certificates().averaged_alpha, Some(0.5));
        let m = scaled_identity(2, -0.5).unwrap();
        assert_eq!(m.certificates().averaged_alpha, Some(0.75));
        let neg = scaled_identity(2, -1.0).unwrap();
        assert!(neg.ssne_modulus().is_none());
        assert_eq!(neg.certificates().lipschitz, Some(1.0));
    }
}
