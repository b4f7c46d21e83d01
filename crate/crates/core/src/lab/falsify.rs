//! Seeded falsification of modulus claims.
//!
//! Each claim is an implication over all pairs `(x, y)`. A falsifier samples
//! pairs, sweeps ε (or M) over the log grid and reports the first pair that
//! violates the implication. Finding nothing is not a proof.
//!
//! Measured quantities carry slack: `1e-12` absolute plus `1e-12` relative to
//! the magnitudes involved, plus the evaluation tolerance of the operator
//! (nonzero for numerically resolved resolvents). A pair is only reported if
//! it violates the claim for every value inside that slack.

use crate::error::{Error, Result};
use crate::grid::{round_up_to_log_grid, sweep_grid};
use crate::hilbert::{CertifiedOperator, MonotoneMap, Vector};
use crate::modulus::{
    sne_from_ssne, uniform_continuity_modulus, CldGauge, Modulus, Provenance, SneModulus,
};
use crate::sampling::{self, SamplerSettings, SamplingBox};
use rand::Rng;
use serde::{Deserialize, Serialize};

const ABS: f64 = 1e-12;
const REL: f64 = 1e-12;
const REAL_LINE_RULE: &str = "ssne_from_sne_real_line";

/// A claim about a [`CertifiedOperator`].
#[derive(Clone, Debug)]
pub enum Claim {
    /// `‖(x−y)−(Tx−Ty)‖ ≥ ε ⇒ ‖x−y‖² − ‖Tx−Ty‖² ≥ χ(ε)`.
    Ssne(Modulus),
    /// `‖x−y‖ ≤ b`, `‖(x−y)−(Tx−Ty)‖ ≥ ε ⇒ ‖x−y‖ − ‖Tx−Ty‖ ≥ ω(b, ε)`.
    Sne(SneModulus),
    /// `‖x−y‖ ≥ ε ⇒ ‖Tx−Ty‖ ≤ K(ε)‖x−y‖`.
    Cld(CldGauge),
    /// `‖x−y‖² − ‖Tx−Ty‖² < M‖(x−y)−(Tx−Ty)‖ ⇒ ‖(x−y)−(Tx−Ty)‖ < ν(M)`.
    Supercoercivity(Modulus),
    /// `(T − (1−α)id)/α` is nonexpansive.
    Averaged(f64),
    Lipschitz(f64),
    /// `p` is an ε-fixed point with `‖p‖ ≤ K(ε)` for every grid ε.
    /// Checked once, no sampling.
    AfpBound { bound: Modulus, witness: Vector },
}

/// A claim about a [`MonotoneMap`].
#[derive(Clone, Debug)]
pub enum MonotoneClaim {
    /// `‖Ax−Ay‖ ≥ ε ⇒ ⟨x−y, Ax−Ay⟩ ≥ ψ(ε)`.
    InverseUniformMonotonicity(Modulus),
    /// `‖x−y‖ < γ(ε) ⇒ ‖Ax−Ay‖ < ε`.
    UniformContinuity(Modulus),
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::Ssne(_) => "ssne",
            Claim::Sne(_) => "sne",
            Claim::Cld(_) => "cld",
            Claim::Supercoercivity(_) => "supercoercivity",
            Claim::Averaged(_) => "averaged",
            Claim::Lipschitz(_) => "lipschitz",
            Claim::AfpBound { .. } => "afp_bound",
        }
    }

    pub fn certificate(&self) -> String {
        match self {
            Claim::Ssne(m) | Claim::Supercoercivity(m) => m.provenance().to_string(),
            Claim::Sne(w) => w.provenance().to_string(),
            Claim::Cld(k) => k.provenance().to_string(),
            Claim::Averaged(a) => format!("alpha={a}"),
            Claim::Lipschitz(l) => format!("L={l}"),
            Claim::AfpBound { bound, .. } => bound.provenance().to_string(),
        }
    }

    fn provenance(&self) -> Option<&Provenance> {
        match self {
            Claim::Ssne(m) | Claim::Supercoercivity(m) => Some(m.provenance()),
            Claim::Sne(w) => Some(w.provenance()),
            Claim::Cld(k) => Some(k.provenance()),
            Claim::AfpBound { bound, .. } => Some(bound.provenance()),
            _ => None,
        }
    }

    /// Re-evaluates a stored counterexample against `op`. True iff the
    /// stored pair still violates the claim at the stored ε (and b).
    pub fn reproduces(&self, op: &CertifiedOperator, cex: &Counterexample) -> Result<bool> {
        if let Claim::AfpBound { bound, witness } = self {
            let m = afp_measures(op, witness)?;
            return Ok(cex.x == *witness && afp_violation(&m, cex.epsilon, bound.eval(cex.epsilon)).is_some());
        }
        let m = Measures::of(op, &cex.x, &cex.y)?;
        let threshold = match (self, cex.b) {
            (Claim::Sne(w), Some(b)) => w.eval(b, cex.epsilon),
            (Claim::Sne(_), None) => return Ok(false),
            _ => self.threshold(cex.epsilon),
        };
        Ok(self.violation(&m, cex.epsilon, threshold).is_some())
    }

    fn threshold(&self, eps: f64) -> f64 {
        match self {
            Claim::Ssne(m) | Claim::Supercoercivity(m) => m.eval(eps),
            Claim::Cld(k) => k.eval(eps),
            Claim::Averaged(a) => *a,
            Claim::Lipschitz(l) => *l,
            Claim::AfpBound { bound, .. } => bound.eval(eps),
            Claim::Sne(_) => unreachable!("SNE thresholds depend on b"),
        }
    }

    /// `Some((gap, defect))` iff the measured pair robustly violates the
    /// claim at `eps` given the claim's value `threshold` there.
    fn violation(&self, m: &Measures, eps: f64, t: f64) -> Option<(f64, f64)> {
        let hit = match self {
            Claim::Ssne(_) => m.d - m.slack_d >= eps && m.gap_sq + m.slack_sq < t,
            Claim::Sne(_) => m.d - m.slack_d >= eps && (m.r - m.s) + m.slack_lin < t,
            Claim::Supercoercivity(_) => {
                let d = m.d - m.slack_d;
                d >= t && m.gap_sq + m.slack_sq < eps * d
            }
            Claim::Cld(_) => eps <= m.r - m.slack_r && m.s - m.slack_s > t * (m.r + m.slack_r),
            Claim::Lipschitz(_) => m.s - m.slack_s > t * (m.r + m.slack_r),
            Claim::Averaged(_) => {
                let n = m.averaged_part(t);
                n - (m.eval_err / t + ABS + REL * n) > m.r + m.slack_r
            }
            Claim::AfpBound { .. } => false,
        };
        if !hit {
            return None;
        }
        Some(match self {
            Claim::Ssne(_) | Claim::Supercoercivity(_) => (m.gap_sq, m.d),
            Claim::Sne(_) => (m.r - m.s, m.d),
            Claim::Cld(_) | Claim::Lipschitz(_) => (m.s, m.r),
            Claim::Averaged(a) => (m.averaged_part(*a), m.r),
            Claim::AfpBound { .. } => unreachable!(),
        })
    }
}

impl MonotoneClaim {
    pub fn kind(&self) -> &'static str {
        match self {
            MonotoneClaim::InverseUniformMonotonicity(_) => "inverse_uniform_monotonicity",
            MonotoneClaim::UniformContinuity(_) => "uniform_continuity",
        }
    }

    fn modulus(&self) -> &Modulus {
        match self {
            MonotoneClaim::InverseUniformMonotonicity(m) | MonotoneClaim::UniformContinuity(m) => m,
        }
    }

    pub fn reproduces(&self, a: &MonotoneMap, cex: &Counterexample) -> Result<bool> {
        let m = MonotoneMeasures::of(a, &cex.x, &cex.y)?;
        Ok(self
            .violation(&m, cex.epsilon, self.modulus().eval(cex.epsilon))
            .is_some())
    }

    fn violation(&self, m: &MonotoneMeasures, eps: f64, t: f64) -> Option<(f64, f64)> {
        let hit = match self {
            MonotoneClaim::InverseUniformMonotonicity(_) => {
                m.a - m.slack_a >= eps && m.ip + m.slack_ip < t
            }
            MonotoneClaim::UniformContinuity(_) => m.r + m.slack_r < t && m.a - m.slack_a >= eps,
        };
        hit.then_some(match self {
            MonotoneClaim::InverseUniformMonotonicity(_) => (m.ip, m.a),
            MonotoneClaim::UniformContinuity(_) => (m.r, m.a),
        })
    }
}

/// A violating pair, with the quantities that violate the claim.
///
/// `gap` and `defect` per claim:
///
/// | claim | gap | defect | threshold |
/// |---|---|---|---|
/// | ssne | ‖x−y‖² − ‖Tx−Ty‖² | ‖(x−y)−(Tx−Ty)‖ | χ(ε) |
/// | sne | ‖x−y‖ − ‖Tx−Ty‖ | ‖(x−y)−(Tx−Ty)‖ | ω(b, ε) |
/// | cld, lipschitz | ‖Tx−Ty‖ | ‖x−y‖ | K(ε), L |
/// | supercoercivity (ε is M) | ‖x−y‖² − ‖Tx−Ty‖² | ‖(x−y)−(Tx−Ty)‖ | ν(M) |
/// | averaged | ‖Nx−Ny‖ | ‖x−y‖ | α |
/// | afp_bound (y = Tx) | ‖x‖ | ‖x−Tx‖ | K(ε) |
/// | inverse uniform monotonicity | ⟨x−y, Ax−Ay⟩ | ‖Ax−Ay‖ | ψ(ε) |
/// | uniform continuity | ‖x−y‖ | ‖Ax−Ay‖ | γ(ε) |
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub x: Vector,
    pub y: Vector,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub gap: f64,
    pub defect: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub claim: String,
    pub target: String,
    pub certificate: String,
    pub trials: usize,
    pub seed: u64,
    #[serde(rename = "box")]
    pub sampling_box: SamplingBox,
    pub heavy_tail: bool,
    pub counterexample: Option<Counterexample>,
}

impl SampleReport {
    pub fn falsified(&self) -> bool {
        self.counterexample.is_some()
    }

    fn new(
        claim: &str,
        target: &str,
        certificate: String,
        settings: &SamplerSettings,
        counterexample: Option<Counterexample>,
    ) -> Self {
        SampleReport {
            claim: claim.to_owned(),
            target: target.to_owned(),
            certificate,
            trials: settings.trials,
            seed: settings.seed,
            sampling_box: settings.sampling_box,
            heavy_tail: settings.heavy_tail,
            counterexample,
        }
    }
}

struct Measures {
    r: f64,
    s: f64,
    d: f64,
    gap_sq: f64,
    slack_r: f64,
    slack_s: f64,
    slack_d: f64,
    slack_sq: f64,
    slack_lin: f64,
    eval_err: f64,
    diff: Vector,
    tdiff: Vector,
}

impl Measures {
    fn of(op: &CertifiedOperator, x: &Vector, y: &Vector) -> Result<Self> {
        let (tx, ty) = (op.apply(x)?, op.apply(y)?);
        let diff = x - y;
        let tdiff = &tx - &ty;
        let (r, s) = (diff.norm(), tdiff.norm());
        let d = (&diff - &tdiff).norm();
        let e = 2.0 * op.eval_tol();
        let slack_r = ABS + REL * r;
        Ok(Measures {
            r,
            s,
            d,
            gap_sq: r * r - s * s,
            slack_r,
            slack_s: e + ABS + REL * s,
            slack_d: e + ABS + REL * (r + s),
            slack_sq: 2.0 * e * (s + e) + ABS + REL * (r * r + s * s),
            slack_lin: e + ABS + REL * (r + s),
            eval_err: e,
            diff,
            tdiff,
        })
    }

    fn averaged_part(&self, alpha: f64) -> f64 {
        self.tdiff.axpy(-(1.0 - alpha), &self.diff).norm() / alpha
    }
}

struct MonotoneMeasures {
    r: f64,
    a: f64,
    ip: f64,
    slack_r: f64,
    slack_a: f64,
    slack_ip: f64,
}

impl MonotoneMeasures {
    fn of(map: &MonotoneMap, x: &Vector, y: &Vector) -> Result<Self> {
        let (ax, ay) = (map.apply(x)?, map.apply(y)?);
        let diff = x - y;
        let adiff = &ax - &ay;
        let (r, a) = (diff.norm(), adiff.norm());
        Ok(MonotoneMeasures {
            r,
            a,
            ip: diff.dot(&adiff),
            slack_r: ABS + REL * r,
            slack_a: ABS + REL * (a + ax.norm() + ay.norm()),
            slack_ip: ABS + REL * (r * a + r * (ax.norm() + ay.norm())),
        })
    }
}

struct AfpMeasures {
    norm: f64,
    residual: f64,
    slack: f64,
}

fn afp_measures(op: &CertifiedOperator, p: &Vector) -> Result<AfpMeasures> {
    let tp = op.apply(p)?;
    let norm = p.norm();
    Ok(AfpMeasures {
        norm,
        residual: p.distance(&tp),
        slack: op.eval_tol() + ABS + REL * norm,
    })
}

fn afp_violation(m: &AfpMeasures, eps: f64, k: f64) -> Option<(f64, f64)> {
    (m.residual - m.slack > eps || m.norm - m.slack > k).then_some((m.norm, m.residual))
}

fn refuse_real_line(claim_prov: Option<&Provenance>, dim: usize) -> Result<()> {
    if dim != 1 && claim_prov.is_some_and(|p| p.rules().contains(&REAL_LINE_RULE)) {
        return Err(Error::Precondition(format!(
            "a modulus built by {REAL_LINE_RULE} is only valid on ℝ, operator has dimension {dim}"
        )));
    }
    Ok(())
}

/// Samples `settings.trials` pairs and looks for a violation of `claim`.
pub fn falsify(
    op: &CertifiedOperator,
    claim: &Claim,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    if settings.trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    refuse_real_line(claim.provenance(), op.dim())?;
    if let Claim::AfpBound { bound, witness } = claim {
        return afp_report(op, bound, witness, settings);
    }
    let grid = sweep_grid();
    // single-argument claims are evaluated on the grid once
    let cached: Vec<f64> = match claim {
        Claim::Sne(_) => Vec::new(),
        _ => grid.iter().map(|&e| claim.threshold(e)).collect(),
    };
    let hit = sampling::search(settings, |trial, rng| {
        let (x, y) = sampling::pair(rng, op.dim(), settings);
        let m = Measures::of(op, &x, &y)?;
        let found = match claim {
            Claim::Sne(omega) => {
                if m.r <= 0.0 {
                    None
                } else {
                    let b = round_up_to_log_grid(m.r + m.slack_r, 20);
                    grid.iter().find_map(|&eps| {
                        claim
                            .violation(&m, eps, omega.eval(b, eps))
                            .map(|v| (eps, Some(b), omega.eval(b, eps), v))
                    })
                }
            }
            Claim::Averaged(_) | Claim::Lipschitz(_) => {
                let t = cached[0];
                claim.violation(&m, 1.0, t).map(|v| (1.0, None, t, v))
            }
            _ => {
                let on_grid = grid
                    .iter()
                    .zip(&cached)
                    .find_map(|(&eps, &t)| claim.violation(&m, eps, t).map(|v| (eps, None, t, v)));
                // the defect itself is the sharpest ε for an SSNE claim
                on_grid.or_else(|| match claim {
                    Claim::Ssne(chi) => {
                        let eps = m.d - m.slack_d;
                        (eps > 0.0)
                            .then(|| chi.eval(eps))
                            .and_then(|t| claim.violation(&m, eps, t).map(|v| (eps, None, t, v)))
                    }
                    _ => None,
                })
            }
        };
        Ok(found.map(|(epsilon, b, threshold, (gap, defect))| Counterexample {
            trial,
            x,
            y,
            epsilon,
            b,
            gap,
            defect,
            threshold,
        }))
    })?;
    Ok(SampleReport::new(
        claim.kind(),
        op.name(),
        claim.certificate(),
        settings,
        hit.map(|(_, c)| c),
    ))
}

fn afp_report(
    op: &CertifiedOperator,
    bound: &Modulus,
    witness: &Vector,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    let m = afp_measures(op, witness)?;
    let tp = op.apply(witness)?;
    let cex = sweep_grid().into_iter().find_map(|eps| {
        let k = bound.eval(eps);
        afp_violation(&m, eps, k).map(|(gap, defect)| Counterexample {
            trial: 0,
            x: witness.clone(),
            y: tp.clone(),
            epsilon: eps,
            b: None,
            gap,
            defect,
            threshold: k,
        })
    });
    let mut report = SampleReport::new(
        "afp_bound",
        op.name(),
        bound.provenance().to_string(),
        settings,
        cex,
    );
    report.trials = 1;
    Ok(report)
}

/// Samples pairs for a claim about a monotone map. Uniform continuity claims
/// also draw pairs at a random fraction of γ(ε) for a random grid ε, since
/// uniformly drawn pairs are rarely that close.
pub fn falsify_monotone(
    a: &MonotoneMap,
    claim: &MonotoneClaim,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    if settings.trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let grid = sweep_grid();
    let cached: Vec<f64> = grid.iter().map(|&e| claim.modulus().eval(e)).collect();
    let hit = sampling::search(settings, |trial, rng| {
        let (x, mut y) = sampling::pair(rng, a.dim(), settings);
        if let MonotoneClaim::UniformContinuity(_) = claim {
            if rng.random_bool(0.5) {
                let i = rng.random_range(0..grid.len());
                let t: f64 = rng.random_range(0.0..1.0);
                let u = sampling::unit_direction(rng, a.dim());
                y = x.axpy(t * cached[i], &u);
            }
        }
        let m = MonotoneMeasures::of(a, &x, &y)?;
        let found = grid
            .iter()
            .zip(&cached)
            .find_map(|(&eps, &t)| claim.violation(&m, eps, t).map(|v| (eps, t, v)));
        Ok(found.map(|(epsilon, threshold, (gap, defect))| Counterexample {
            trial,
            x,
            y,
            epsilon,
            b: None,
            gap,
            defect,
            threshold,
        }))
    })?;
    Ok(SampleReport::new(
        claim.kind(),
        a.name(),
        claim.modulus().provenance().to_string(),
        settings,
        hit.map(|(_, c)| c),
    ))
}

pub fn falsify_ssne(t: &CertifiedOperator, chi: &Modulus, settings: &SamplerSettings) -> Result<SampleReport> {
    falsify(t, &Claim::Ssne(chi.clone()), settings)
}

pub fn falsify_sne(
    t: &CertifiedOperator,
    omega: &SneModulus,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    falsify(t, &Claim::Sne(omega.clone()), settings)
}

pub fn falsify_cld(t: &CertifiedOperator, k: &CldGauge, settings: &SamplerSettings) -> Result<SampleReport> {
    falsify(t, &Claim::Cld(k.clone()), settings)
}

pub fn falsify_supercoercivity(
    t: &CertifiedOperator,
    nu: &Modulus,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    falsify(t, &Claim::Supercoercivity(nu.clone()), settings)
}

pub fn falsify_inverse_uniform_monotonicity(
    a: &MonotoneMap,
    psi: &Modulus,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    falsify_monotone(a, &MonotoneClaim::InverseUniformMonotonicity(psi.clone()), settings)
}

pub fn falsify_uniform_continuity(
    a: &MonotoneMap,
    gamma: &Modulus,
    settings: &SamplerSettings,
) -> Result<SampleReport> {
    falsify_monotone(a, &MonotoneClaim::UniformContinuity(gamma.clone()), settings)
}

/// Every claim carried or implied by the certificates of `op`.
pub fn certificate_claims(op: &CertifiedOperator) -> Vec<Claim> {
    let c = op.certificates();
    let mut out = Vec::new();
    if let Some(chi) = op.ssne_modulus() {
        out.push(Claim::Ssne(chi));
    }
    match (&c.sne, op.ssne_modulus()) {
        (Some(w), _) => out.push(Claim::Sne(w.clone())),
        (None, Some(chi)) => out.push(Claim::Sne(sne_from_ssne(&chi))),
        _ => {}
    }
    if let Some(k) = &c.cld_gauge {
        out.push(Claim::Cld(k.clone()));
    }
    if let Some(nu) = op.supercoercivity_modulus() {
        out.push(Claim::Supercoercivity(nu));
    }
    if let Some(a) = c.averaged_alpha {
        out.push(Claim::Averaged(a));
    }
    if let Some(l) = c.lipschitz {
        out.push(Claim::Lipschitz(l));
    }
    if let (Some(bound), Some(p)) = (&c.afp_bound, &c.fixed_point) {
        out.push(Claim::AfpBound {
            bound: bound.clone(),
            witness: p.clone(),
        });
    }
    out
}

/// Runs [`falsify`] on every claim of [`certificate_claims`].
pub fn falsify_certificates(op: &CertifiedOperator, settings: &SamplerSettings) -> Result<Vec<SampleReport>> {
    certificate_claims(op)
        .iter()
        .map(|c| falsify(op, c, settings))
        .collect()
}

/// Claims carried by a monotone map: its inverse modulus and the uniform
/// continuity modulus derived from it.
pub fn monotone_claims(a: &MonotoneMap) -> Vec<MonotoneClaim> {
    match a.inverse_modulus() {
        Some(psi) => vec![
            MonotoneClaim::InverseUniformMonotonicity(psi.clone()),
            MonotoneClaim::UniformContinuity(uniform_continuity_modulus(psi)),
        ],
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{identity, project_ball, project_halfspace, scaled_identity};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn quick(trials: usize) -> SamplerSettings {
        SamplerSettings::new(trials, 7).heavy_tail(true)
    }

    #[test]
    fn ball_projection_is_ssne_with_square() {
        let p = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let r = falsify_ssne(&p, &Modulus::power(1.0, 2.0), &quick(5000)).unwrap();
        assert!(!r.falsified(), "{r:?}");
    }

    #[test]
    fn negative_identity_is_caught_and_reproduces() {
        let neg = scaled_identity(2, -1.0).unwrap();
        let claim = Claim::Ssne(Modulus::power(1.0, 2.0));
        let r = falsify(&neg, &claim, &quick(100)).unwrap();
        let cex = r.counterexample.clone().expect("violation");
        assert!(cex.trial < 5);
        assert_eq!(cex.gap, 0.0);
        assert!((cex.defect - 2.0 * cex.x.distance(&cex.y)).abs() < 1e-9);
        assert!(claim.reproduces(&neg, &cex).unwrap());
        assert!(!claim.reproduces(&identity(2).unwrap(), &cex).unwrap());
    }

    #[test]
    fn identity_survives_everything() {
        let id = identity(2).unwrap();
        let s = quick(2000);
        for chi in [Modulus::power(1.0, 2.0), Modulus::power(100.0, 1.0)] {
            assert!(!falsify_ssne(&id, &chi, &s).unwrap().falsified());
            assert!(!falsify_supercoercivity(&id, &chi, &s).unwrap().falsified());
        }
        let w = SneModulus::monomial(1.0, 0.0, 1.0);
        assert!(!falsify_sne(&id, &w, &s).unwrap().falsified());
    }

    #[test]
    fn cld_examples() {
        let s = quick(2000);
        let half = CldGauge::constant(0.5).unwrap();
        assert!(!falsify_cld(&scaled_identity(2, 0.5).unwrap(), &half, &s).unwrap().falsified());
        assert!(falsify_cld(&identity(2).unwrap(), &half, &s).unwrap().falsified());
        let ball = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        // the default box is too large to land both points in the unit ball often
        let small = quick(2000).with_box(-1.0, 1.0);
        let nine = CldGauge::constant(0.9).unwrap();
        assert!(falsify_cld(&ball, &nine, &small).unwrap().falsified());
    }

    #[test]
    fn supercoercivity_examples() {
        let s = quick(5000);
        let h = project_halfspace(v(&[1.0, 1.0]), 0.5).unwrap();
        assert!(!falsify_supercoercivity(&h, &Modulus::power(1.0, 1.0), &s).unwrap().falsified());
        let neg = scaled_identity(2, -1.0).unwrap();
        assert!(falsify_supercoercivity(&neg, &Modulus::power(1.0, 1.0), &s).unwrap().falsified());
    }

    #[test]
    fn monotone_examples() {
        let s = quick(5000);
        let id = MonotoneMap::scaled_identity(2, 1.0).unwrap();
        let sq = Modulus::power(1.0, 2.0);
        assert!(!falsify_inverse_uniform_monotonicity(&id, &sq, &s).unwrap().falsified());
        let r = falsify_inverse_uniform_monotonicity(&id, &Modulus::power(2.0, 2.0), &s).unwrap();
        let cex = r.counterexample.clone().unwrap();
        assert!(MonotoneClaim::InverseUniformMonotonicity(Modulus::power(2.0, 2.0))
            .reproduces(&id, &cex)
            .unwrap());
        let two = MonotoneMap::scaled_identity(2, 2.0).unwrap();
        assert!(!falsify_inverse_uniform_monotonicity(&two, &Modulus::power(0.5, 2.0), &s)
            .unwrap()
            .falsified());

        let gamma = uniform_continuity_modulus(&sq);
        assert!(!falsify_uniform_continuity(&id, &gamma, &s).unwrap().falsified());
        let big = MonotoneMap::scaled_identity(2, 1e6).unwrap();
        assert!(falsify_uniform_continuity(&big, &Modulus::constant(1.0), &s)
            .unwrap()
            .falsified());
        let zero = MonotoneMap::scaled_identity(2, 0.0).unwrap();
        assert!(!falsify_uniform_continuity(&zero, &Modulus::constant(1.0), &s)
            .unwrap()
            .falsified());
    }

    #[test]
    fn reports_are_deterministic() {
        let neg = scaled_identity(3, -1.0).unwrap();
        let claim = Claim::Ssne(Modulus::power(1e-6, 2.0));
        let a = falsify(&neg, &claim, &quick(3000)).unwrap();
        let b = falsify(&neg, &claim, &quick(3000)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn certificates_of_projection_survive() {
        let p = project_ball(v(&[1.0, 2.0]), 2.0).unwrap();
        let reports = falsify_certificates(&p, &quick(2000)).unwrap();
        let kinds: Vec<&str> = reports.iter().map(|r| r.claim.as_str()).collect();
        assert!(kinds.contains(&"ssne") && kinds.contains(&"afp_bound"));
        assert!(reports.iter().all(|r| !r.falsified()), "{reports:?}");
    }

    #[test]
    fn real_line_modulus_refused_off_the_line() {
        let omega = SneModulus::monomial(1.0, 0.0, 2.0);
        let chi = crate::modulus::ssne_from_sne_real_line(&omega);
        let p2 = project_ball(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(matches!(
            falsify_ssne(&p2, &chi, &quick(10)),
            Err(Error::Precondition(_))
        ));
        let p1 = project_ball(v(&[0.0]), 1.0).unwrap();
        assert!(falsify_ssne(&p1, &chi, &quick(10)).is_ok());
    }

    #[test]
    fn zero_trials_rejected() {
        let id = identity(1).unwrap();
        assert!(falsify_ssne(&id, &Modulus::power(1.0, 2.0), &SamplerSettings::new(0, 1)).is_err());
    }
}
