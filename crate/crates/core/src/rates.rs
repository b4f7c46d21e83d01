//! Certified bounds for compositions of supercoercively SSNE maps.
//!
//! Θ bounds the rectangularity pairing of a supercoercive inverse uniformly
//! monotone map, Φ and Ψ bound the norm of an approximate fixed point of a
//! composition of two resp. `m` maps, and Γ, Σ are rates of asymptotic
//! regularity.
//!
//! All evaluation is in double precision. Anything that leaves the double
//! range comes back as [`Bound::Overflow`]. Ceilings are taken with no added
//! slack; a one-unit overestimate from rounding is harmless because every
//! rate here is an upper bound valid for all larger indices.

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::modulus::{
    displacement_gap_bound, inverse_uniform_monotonicity_from_ssne, sne_from_ssne,
    ssne_of_composition, supercoercivity_of_inverse, Modulus, Provenance, SneModulus,
};
use serde::Serialize;

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("{v} must be a positive real")))
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rectangularity {
    pub rho: Bound,
    pub theta: Bound,
}

pub(crate) fn theta_raw(eta: &Modulus, l1: f64, l2: f64, l3: f64) -> (f64, f64) {
    let rho = 2.0 * l3 + l1 * l3 + eta.eval(2.0 * l1 + 2.0 * l2 + 2.0);
    let theta = (l1 + l2) * (l3 + rho);
    (sanitize(rho), sanitize(theta))
}

/// Θ(η, L₁, L₂, L₃) with its intermediate ρ:
/// `ρ = 2L₃ + L₁L₃ + η(2L₁ + 2L₂ + 2)`, `Θ = (L₁ + L₂)(L₃ + ρ)`.
///
/// For `A` inverse uniformly monotone with supercoercivity modulus η and
/// `‖b‖ ≤ L₁`, `‖c‖ ≤ L₂`, `‖Ab‖ ≤ L₃`: `⟨a − c, Ab − Aa⟩ ≤ Θ` for all `a`.
pub fn theta_bound(eta: &Modulus, l1: f64, l2: f64, l3: f64) -> Result<Rectangularity> {
    positive("l1", l1)?;
    positive("l2", l2)?;
    positive("l3", l3)?;
    let (rho, theta) = theta_raw(eta, l1, l2, l3);
    Ok(Rectangularity {
        rho: Bound::from_f64(rho),
        theta: Bound::from_f64(theta),
    })
}

/// The four stages of Φ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiBound {
    pub b: Bound,
    pub g: Bound,
    pub h: Bound,
    pub phi: Bound,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PhiRaw {
    pub b: f64,
    pub g: f64,
    pub h: f64,
    pub phi: f64,
}

pub(crate) fn phi_raw(chi: &Modulus, nu: &Modulus, k: &Modulus, delta: f64) -> PhiRaw {
    let eta_nu = supercoercivity_of_inverse(nu);
    let psi_chi = inverse_uniform_monotonicity_from_ssne(chi);
    let kk = k.eval(delta / 4.0) + delta / 8.0;
    let (_, theta) = theta_raw(&eta_nu, kk, kk, delta / 8.0);
    let b = sanitize((kk * kk + 2.0 * theta).sqrt());
    let g = sanitize(b * std::f64::consts::SQRT_2.max(4.0 * b / delta));
    let h = if g.is_finite() {
        sanitize(displacement_gap_bound(&psi_chi).eval(g + kk))
    } else {
        f64::INFINITY
    };
    let phi = sanitize(g + h + delta / 8.0);
    PhiRaw { b, g, h, phi }
}

/// Φ(χ, ν, K, δ): if `R₁` has SSNE-modulus χ, `R₂` has supercoercivity
/// modulus ν and every `Rᵢ` has an ε-fixed point of norm at most `K(ε)`,
/// then `R₂ ∘ R₁` has a δ-fixed point of norm at most Φ.
///
/// ```text
/// k = K(δ/4) + δ/8
/// B = √(k² + 2Θ(η_ν, k, k, δ/8))
/// G = B · max(√2, 4B/δ)
/// H = L_{ψ_χ}(G + k)
/// Φ = G + H + δ/8
/// ```
pub fn phi_bound(chi: &Modulus, nu: &Modulus, k: &Modulus, delta: f64) -> Result<PhiBound> {
    positive("delta", delta)?;
    let r = phi_raw(chi, nu, k, delta);
    Ok(PhiBound {
        b: Bound::from_f64(r.b),
        g: Bound::from_f64(r.g),
        h: Bound::from_f64(r.h),
        phi: Bound::from_f64(r.phi),
    })
}

/// Ψ with `chis = [χ₁ … χ_{m−1}]` and `nus = [ν₂ … ν_m]`.
fn psi_raw(chis: &[Modulus], nus: &[Modulus], k: &Modulus, delta: f64) -> f64 {
    debug_assert_eq!(chis.len(), nus.len());
    let l = chis.len();
    if l == 1 {
        return phi_raw(&chis[0], &nus[0], k, delta).phi;
    }
    let chi_prefix = ssne_of_composition(chis).expect("nonempty");
    let (inner_chis, inner_nus) = (chis[..l - 1].to_vec(), nus[..l - 1].to_vec());
    let inner_k = k.clone();
    let gauge = Modulus::new(Provenance::new("psi_recursion_gauge").number("m", l as f64), move |rho| {
        psi_raw(&inner_chis, &inner_nus, &inner_k, rho).max(inner_k.eval(rho))
    });
    phi_raw(&chi_prefix, &nus[l - 1], &gauge, delta).phi
}

fn check_psi_lengths(m: usize, chis: usize, nus: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::invalid("m", format!("{m} < 2")));
    }
    if chis != m - 1 || nus != m - 1 {
        return Err(Error::invalid(
            "moduli",
            format!("m = {m} needs {} χ's and {} ν's, got {chis} and {nus}", m - 1, m - 1),
        ));
    }
    Ok(())
}

/// Ψ(m, {χᵢ}₁^{m−1}, {νᵢ}₂^m, K, δ): norm bound for a δ-fixed point of
/// `R_m ∘ … ∘ R₁`.
///
/// `Ψ(2, …) = Φ(χ₁, ν₂, K, δ)` and
/// `Ψ(m+1, …) = Φ(χ_{χ₁…χ_m}, ν_{m+1}, ρ ↦ max(Ψ(m, …, ρ), K(ρ)), δ)`.
/// Nothing is memoized; the gauge of each level calls the level below.
pub fn psi_bound(
    m: usize,
    chis: &[Modulus],
    nus: &[Modulus],
    k: &Modulus,
    delta: f64,
) -> Result<Bound> {
    check_psi_lengths(m, chis.len(), nus.len())?;
    positive("delta", delta)?;
    Ok(Bound::from_f64(psi_raw(chis, nus, k, delta)))
}

/// Γ(ε, b, d, α, ω): for `T` strongly nonexpansive with modulus ω whose
/// δ-fixed points have norm at most α(δ), and `‖x‖ ≤ b`, `‖x − Tx‖ ≤ d`,
/// every `n ≥ Γ` has `‖Tⁿx − Tⁿ⁺¹x‖ ≤ ε`.
///
/// ```text
/// Γ = ⌈(18b + 12α(ε/6))/ε − 1⌉ · ⌈d / ω(d, ε²/(27b + 18α(ε/6)))⌉
/// ```
/// A nonpositive first factor gives Γ = 0.
pub fn gamma_rate(eps: f64, b: f64, d: f64, alpha: &Modulus, omega: &SneModulus) -> Result<Bound> {
    positive("epsilon", eps)?;
    positive("b", b)?;
    positive("d", d)?;
    let a = sanitize(alpha.eval(eps / 6.0));
    if a < 0.0 {
        return Err(Error::invalid("alpha", format!("α(ε/6) = {a} is negative")));
    }
    let first = ((18.0 * b + 12.0 * a) / eps - 1.0).ceil();
    let w = omega.eval(d, eps * eps / (27.0 * b + 18.0 * a));
    if w.is_nan() || w < 0.0 {
        return Err(Error::invalid("omega", format!("ω = {w} is not positive")));
    }
    let second = (d / w).ceil();
    if first <= 0.0 {
        return Ok(Bound::Finite(0.0));
    }
    Ok(Bound::from_f64(sanitize(first * second)))
}

/// Inputs of Σ for a composition of `m` maps.
#[derive(Clone, Debug)]
pub struct SigmaInputs {
    /// SSNE-moduli of all `m` maps.
    pub chis: Vec<Modulus>,
    /// Supercoercivity moduli of maps `2..=m`.
    pub nus: Vec<Modulus>,
    /// Common AFP norm gauge.
    pub k: Modulus,
    pub b: f64,
    pub d: f64,
}

impl SigmaInputs {
    pub fn m(&self) -> usize {
        self.chis.len()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.chis.len();
        if m < 2 {
            return Err(Error::invalid("chis", format!("need m ≥ 2 maps, got {m}")));
        }
        if self.nus.len() != m - 1 {
            return Err(Error::invalid(
                "nus",
                format!("m = {m} needs {} supercoercivity moduli, got {}", m - 1, self.nus.len()),
            ));
        }
        positive("b", self.b)?;
        positive("d", self.d)
    }

    /// The AFP bound Ψ(m, χ₁…χ_{m−1}, ν₂…ν_m, K, ·) as a modulus.
    pub fn afp_modulus(&self) -> Modulus {
        let m = self.m();
        let chis = self.chis[..m - 1].to_vec();
        let nus = self.nus.clone();
        let k = self.k.clone();
        Modulus::new(
            Provenance::new("psi_bound")
                .number("m", m as f64)
                .inputs("chis", chis.iter().map(|c| c.provenance()))
                .inputs("nus", nus.iter().map(|c| c.provenance()))
                .input("k", k.provenance()),
            move |delta| psi_raw(&chis, &nus, &k, delta),
        )
    }

    /// `ω_{χ_{χ₁…χ_m}}`, the SNE-modulus of the composition.
    pub fn composite_sne(&self) -> Result<SneModulus> {
        Ok(sne_from_ssne(&ssne_of_composition(&self.chis)?))
    }

    pub fn rate(&self, eps: f64) -> Result<Bound> {
        self.validate()?;
        gamma_rate(eps, self.b, self.d, &self.afp_modulus(), &self.composite_sne()?)
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::new("sigma_rate")
            .number("m", self.m() as f64)
            .inputs("chis", self.chis.iter().map(|c| c.provenance()))
            .inputs("nus", self.nus.iter().map(|c| c.provenance()))
            .input("k", self.k.provenance())
            .number("b", self.b)
            .number("d", self.d)
    }
}

/// Σ(ε): rate of asymptotic regularity of `R_m ∘ … ∘ R₁` from any `x` with
/// `‖x‖ ≤ b` and `‖x − Rx‖ ≤ d`. Equals Γ with α = Ψ(m, …) and
/// ω = the SNE-modulus of the composite SSNE-modulus.
pub fn sigma_rate(
    m: usize,
    chis: &[Modulus],
    nus: &[Modulus],
    k: &Modulus,
    b: f64,
    d: f64,
    eps: f64,
) -> Result<Bound> {
    if chis.len() != m {
        return Err(Error::invalid(
            "chis",
            format!("m = {m} needs {m} SSNE moduli, got {}", chis.len()),
        ));
    }
    SigmaInputs {
        chis: chis.to_vec(),
        nus: nus.to_vec(),
        k: k.clone(),
        b,
        d,
    }
    .rate(eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_example() {
        let eta = Modulus::power(1.0, 1.0);
        let r = theta_bound(&eta, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.rho, Bound::Finite(9.0));
        assert_eq!(r.theta, Bound::Finite(20.0));
        let c = 2.5;
        let r = theta_bound(&Modulus::constant(c), 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.theta, Bound::Finite(2.0 * (4.0 + c)));
        assert!(theta_bound(&eta, 0.0, 1.0, 1.0).is_err());
        assert!(theta_bound(&eta, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn gamma_example() {
        let alpha = Modulus::constant(1.0);
        let omega = SneModulus::monomial(0.5, 0.0, 1.0);
        assert_eq!(
            gamma_rate(1.0, 1.0, 1.0, &alpha, &omega).unwrap(),
            Bound::Finite(2610.0)
        );
        assert!(gamma_rate(0.0, 1.0, 1.0, &alpha, &omega).is_err());
    }

    #[test]
    fn gamma_overflow_is_a_marker() {
        let alpha = Modulus::constant(1e300);
        let omega = SneModulus::monomial(0.5, 0.0, 1.0);
        assert_eq!(
            gamma_rate(1.0, 1.0, 1.0, &alpha, &omega).unwrap(),
            Bound::Overflow
        );
    }

    #[test]
    fn psi_length_checks() {
        let sq = Modulus::power(1.0, 2.0);
        let k = Modulus::constant(4.0);
        assert!(psi_bound(2, &[sq.clone()], &[], &k, 1.0).is_err());
        assert!(psi_bound(1, &[], &[], &k, 1.0).is_err());
        assert!(psi_bound(3, &[sq.clone(), sq.clone()], &[sq.clone()], &k, 1.0).is_err());
        assert!(sigma_rate(2, &[sq.clone()], &[sq.clone()], &k, 1.0, 1.0, 1.0).is_err());
    }
}
