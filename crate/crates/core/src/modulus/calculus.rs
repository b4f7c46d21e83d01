//! Conversion rules between moduli.
//!
//! Each function returns a new modulus closing over its inputs; nothing is
//! simplified symbolically. Names follow what the output *is*, e.g.
//! [`ssne_of_averaged`] is the SSNE-modulus of an α-averaged map.

use super::{CldGauge, Modulus, Provenance, SneModulus};
use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid("alpha", format!("{alpha} is not in (0, 1)")))
    }
}

/// SNE-modulus of an SSNE map: `ω(b, ε) = χ(ε) / (2b)`.
pub fn sne_from_ssne(chi: &Modulus) -> SneModulus {
    let chi_c = chi.clone();
    SneModulus::new(
        Provenance::new("sne_from_ssne").input("chi", chi.provenance()),
        move |b, eps| chi_c.eval(eps) / (2.0 * b),
    )
}

/// SSNE-modulus of a strongly nonexpansive map of the real line:
/// `χ(ε) = min(ω(1,ε)², ε², ω(1,1/2)², 1)`.
///
/// Only valid for full-domain maps `ℝ → ℝ`. The restriction is recorded in
/// the provenance; the lab refuses to test the result on other dimensions.
pub fn ssne_from_sne_real_line(omega: &SneModulus) -> Modulus {
    let w = omega.clone();
    let half = omega.eval(1.0, 0.5);
    Modulus::new(
        Provenance::new("ssne_from_sne_real_line")
            .input("omega", omega.provenance())
            .text("domain", "real line"),
        move |eps| {
            let w1 = w.eval(1.0, eps);
            (w1 * w1).min(eps * eps).min(half * half).min(1.0)
        },
    )
}

/// SSNE-modulus of an α-averaged map: `χ(ε) = ε²(1−α)/α`.
pub fn ssne_of_averaged(alpha: f64) -> Result<Modulus> {
    check_alpha(alpha)?;
    let c = (1.0 - alpha) / alpha;
    Ok(Modulus::new(
        Provenance::new("ssne_of_averaged").number("alpha", alpha),
        move |eps| eps * eps * c,
    ))
}

/// SSNE-modulus of a contraction for large distances with gauge K:
/// `χ(ε) = (1 − K(ε/2)²)(ε/2)²`.
pub fn ssne_of_cld(k: &CldGauge) -> Modulus {
    let k_c = k.clone();
    Modulus::new(
        Provenance::new("ssne_of_cld").input("k", k.provenance()),
        move |eps| {
            let half = eps / 2.0;
            let kv = k_c.eval(half);
            (1.0 - kv * kv) * half * half
        },
    )
}

/// CLD gauge of a map `T` such that `T` and `−T` are both strongly
/// nonexpansive: with `ψ(b,ε) = min(ω₊(b,ε), ω₋(b,ε))`,
/// `K(ε) = max(0, 1 − ψ(2ε, ε) / (2ε))`.
pub fn cld_from_two_sided_sne(omega_plus: &SneModulus, omega_minus: &SneModulus) -> CldGauge {
    let (p, m) = (omega_plus.clone(), omega_minus.clone());
    CldGauge::new(
        Provenance::new("cld_from_two_sided_sne")
            .input("omega_plus", omega_plus.provenance())
            .input("omega_minus", omega_minus.provenance()),
        move |eps| {
            let psi = p.eval(2.0 * eps, eps).min(m.eval(2.0 * eps, eps));
            (1.0 - psi / (2.0 * eps)).max(0.0)
        },
    )
}

/// SSNE-modulus of `T_n ∘ … ∘ T_1`: `χ(ε) = minᵢ χᵢ(ε/n)`.
pub fn ssne_of_composition(chis: &[Modulus]) -> Result<Modulus> {
    if chis.is_empty() {
        return Err(Error::Empty {
            what: "modulus list",
        });
    }
    let n = chis.len() as f64;
    let parts = chis.to_vec();
    Ok(Modulus::new(
        Provenance::new("ssne_of_composition").inputs("chis", chis.iter().map(|c| c.provenance())),
        move |eps| {
            parts
                .iter()
                .map(|c| c.eval(eps / n))
                .fold(f64::INFINITY, f64::min)
        },
    ))
}

/// SSNE-modulus of the reflected resolvent `R_A` of an inverse uniformly
/// monotone `A` with modulus ψ: `χ(ε) = 4ψ(ε/2)`.
pub fn ssne_from_inverse_uniform_monotonicity(psi: &Modulus) -> Modulus {
    let p = psi.clone();
    Modulus::new(
        Provenance::new("ssne_from_inverse_uniform_monotonicity").input("psi", psi.provenance()),
        move |eps| 4.0 * p.eval(eps / 2.0),
    )
}

/// Modulus of inverse uniform monotonicity of `A` when `R_A` has SSNE-modulus χ:
/// `ψ(ε) = χ(2ε)/4`. Pointwise inverse of
/// [`ssne_from_inverse_uniform_monotonicity`].
pub fn inverse_uniform_monotonicity_from_ssne(chi: &Modulus) -> Modulus {
    let c = chi.clone();
    Modulus::new(
        Provenance::new("inverse_uniform_monotonicity_from_ssne").input("chi", chi.provenance()),
        move |eps| c.eval(2.0 * eps) / 4.0,
    )
}

/// Modulus of uniform monotonicity of the resolvent `J_A`:
/// `α_ψ(ε) = min(ψ(ε/2), ε²/4)`.
pub fn resolvent_uniform_monotonicity(psi: &Modulus) -> Modulus {
    let p = psi.clone();
    Modulus::new(
        Provenance::new("resolvent_uniform_monotonicity").input("psi", psi.provenance()),
        move |eps| p.eval(eps / 2.0).min(eps * eps / 4.0),
    )
}

/// Quadratic lower gauge of a uniformly monotone map with modulus α:
/// `⟨x−y, Bx−By⟩ ≥ β_α(ε)‖x−y‖²` whenever `‖x−y‖ ≥ ε`, where
/// `β_α(ε) = min(α(1)/4, α(ε))` for `ε < 1` and `α(1)/4` otherwise.
pub fn quadratic_gauge(alpha: &Modulus) -> Modulus {
    let a = alpha.clone();
    let quarter = alpha.eval(1.0) / 4.0;
    Modulus::new(
        Provenance::new("quadratic_gauge").input("alpha", alpha.provenance()),
        move |eps| {
            if eps < 1.0 {
                quarter.min(a.eval(eps))
            } else {
                quarter
            }
        },
    )
}

/// `L_ψ(ε)`: whenever `‖Ax − Ay‖ ≥ L_ψ(ε)` then `‖x − y‖ > ε`, for `A`
/// inverse uniformly monotone with modulus ψ.
///
/// `L_ψ(ε) = max(4ε / (√(1+4β) − 1), 2ε)` with `β = β_{α_ψ}(ε)`. The first
/// branch is evaluated as `ε(√(1+4β) + 1)/β`, which is the same quantity
/// without the cancellation for small β.
pub fn displacement_gap_bound(psi: &Modulus) -> Modulus {
    let beta = quadratic_gauge(&resolvent_uniform_monotonicity(psi));
    Modulus::new(
        Provenance::new("displacement_gap_bound").input("psi", psi.provenance()),
        move |eps| gap_bound_from_beta(eps, beta.eval(eps)),
    )
}

pub(crate) fn gap_bound_from_beta(eps: f64, beta: f64) -> f64 {
    let ratio = eps * ((1.0 + 4.0 * beta).sqrt() + 1.0) / beta;
    ratio.max(2.0 * eps)
}

/// Modulus of uniform continuity of an inverse uniformly monotone `A`:
/// `γ_ψ(ε) = min(ψ(ε)/L_ψ(ε), ε)`.
pub fn uniform_continuity_modulus(psi: &Modulus) -> Modulus {
    let p = psi.clone();
    let l = displacement_gap_bound(psi);
    Modulus::new(
        Provenance::new("uniform_continuity_modulus").input("psi", psi.provenance()),
        move |eps| (p.eval(eps) / l.eval(eps)).min(eps),
    )
}

/// Supercoercivity modulus of an α-averaged map: `ν(M) = M·α/(1−α)`.
pub fn supercoercivity_of_averaged(alpha: f64) -> Result<Modulus> {
    check_alpha(alpha)?;
    let c = alpha / (1.0 - alpha);
    Ok(Modulus::new(
        Provenance::new("supercoercivity_of_averaged").number("alpha", alpha),
        move |m| m * c,
    ))
}

/// Supercoercivity modulus of a contraction for large distances:
/// `ν(M) = max(2, 4M / (1 − K(1)²))`.
pub fn supercoercivity_of_cld(k: &CldGauge) -> Result<Modulus> {
    let k1 = k.checked_eval(1.0)?;
    let denom = 1.0 - k1 * k1;
    Ok(Modulus::new(
        Provenance::new("supercoercivity_of_cld").input("k", k.provenance()),
        move |m| (4.0 * m / denom).max(2.0),
    ))
}

/// Supercoercivity modulus of `R_A` when `A` (inverse sense) has
/// supercoercivity modulus η: `ν(M) = 2η(M/2)`.
pub fn supercoercivity_of_reflected_resolvent(eta: &Modulus) -> Modulus {
    let e = eta.clone();
    Modulus::new(
        Provenance::new("supercoercivity_of_reflected_resolvent").input("eta", eta.provenance()),
        move |m| 2.0 * e.eval(m / 2.0),
    )
}

/// Supercoercivity modulus of `A` when `R_A` has supercoercivity modulus ν:
/// `η(N) = ν(2N)/2`.
pub fn supercoercivity_of_inverse(nu: &Modulus) -> Modulus {
    let n = nu.clone();
    Modulus::new(
        Provenance::new("supercoercivity_of_inverse").input("nu", nu.provenance()),
        move |big_n| n.eval(2.0 * big_n) / 2.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::modulus_grid;

    fn sq() -> Modulus {
        Modulus::power(1.0, 2.0)
    }

    #[test]
    fn sne_from_ssne_examples() {
        let w = sne_from_ssne(&sq());
        assert_eq!(w.eval(2.0, 1.0), 0.25);
        assert_eq!(w.eval(0.5, 1.0), 1.0);
        let wc = sne_from_ssne(&Modulus::constant(3.0));
        assert_eq!(wc.eval(4.0, 0.1), 3.0 / 8.0);
    }

    #[test]
    fn real_line_examples() {
        let half_eps = SneModulus::monomial(0.5, 0.0, 1.0);
        assert_eq!(ssne_from_sne_real_line(&half_eps).eval(1.0), 1.0 / 16.0);
        let two = SneModulus::monomial(2.0, 0.0, 0.0);
        assert_eq!(ssne_from_sne_real_line(&two).eval(3.0), 1.0);
        let id = SneModulus::monomial(1.0, 0.0, 1.0);
        assert_eq!(ssne_from_sne_real_line(&id).eval(0.25), 1.0 / 16.0);
        let chi = ssne_from_sne_real_line(&id);
        assert!(chi.provenance().to_string().contains("real line"));
    }

    #[test]
    fn averaged_examples() {
        let chi = ssne_of_averaged(0.5).unwrap();
        assert_eq!(chi.eval(2.0), 4.0);
        for e in modulus_grid() {
            assert_eq!(chi.eval(e), e * e);
        }
        assert_eq!(ssne_of_averaged(0.75).unwrap().eval(3.0), 3.0);
        assert!(ssne_of_averaged(0.0).is_err());
        assert!(ssne_of_averaged(1.0).is_err());
    }

    #[test]
    fn cld_ssne_examples() {
        let half = CldGauge::constant(0.5).unwrap();
        assert_eq!(ssne_of_cld(&half).eval(2.0), 0.75);
        assert_eq!(ssne_of_cld(&half).eval(4.0), 3.0);
        assert_eq!(ssne_of_cld(&CldGauge::constant(0.0).unwrap()).eval(2.0), 1.0);
    }

    #[test]
    fn two_sided_examples() {
        // ψ(2ε, ε) = ε
        let w = SneModulus::monomial(1.0, 0.0, 1.0);
        assert_eq!(cld_from_two_sided_sne(&w, &w).eval(1.0), 0.5);
        let big = SneModulus::monomial(3.0, 0.0, 1.0);
        assert_eq!(cld_from_two_sided_sne(&big, &big).eval(0.7), 0.0);
        let plus = SneModulus::monomial(0.5, 0.0, 1.0);
        let minus = SneModulus::monomial(0.25, 0.0, 1.0);
        assert_eq!(cld_from_two_sided_sne(&plus, &minus).eval(2.0), 7.0 / 8.0);
    }

    #[test]
    fn composition_examples() {
        let c = ssne_of_composition(&[sq(), sq()]).unwrap();
        assert_eq!(c.eval(1.0), 0.25);
        let single = ssne_of_composition(&[sq()]).unwrap();
        for e in modulus_grid() {
            assert_eq!(single.eval(e), e * e);
        }
        let lin: Vec<_> = (1..=3).map(|i| Modulus::power(i as f64, 1.0)).collect();
        assert_eq!(ssne_of_composition(&lin).unwrap().eval(3.0), 1.0);
        assert!(ssne_of_composition(&[]).is_err());
    }

    #[test]
    fn monotonicity_conversions() {
        assert_eq!(ssne_from_inverse_uniform_monotonicity(&sq()).eval(2.0), 4.0);
        assert_eq!(
            ssne_from_inverse_uniform_monotonicity(&Modulus::constant(0.3)).eval(9.0),
            1.2
        );
        assert_eq!(
            ssne_from_inverse_uniform_monotonicity(&Modulus::power(1.0, 1.0)).eval(1.0),
            2.0
        );
        assert_eq!(inverse_uniform_monotonicity_from_ssne(&sq()).eval(1.0), 1.0);
        assert_eq!(
            inverse_uniform_monotonicity_from_ssne(&Modulus::constant(2.0)).eval(5.0),
            0.5
        );
    }

    #[test]
    fn resolvent_and_quadratic_gauge() {
        assert_eq!(resolvent_uniform_monotonicity(&sq()).eval(1.0), 0.25);
        assert_eq!(resolvent_uniform_monotonicity(&Modulus::constant(100.0)).eval(1.0), 0.25);
        assert_eq!(
            resolvent_uniform_monotonicity(&Modulus::power(0.01, 1.0)).eval(2.0),
            0.01
        );
        let a = Modulus::power(0.25, 2.0);
        assert_eq!(quadratic_gauge(&a).eval(0.5), 1.0 / 16.0);
        assert_eq!(quadratic_gauge(&a).eval(3.0), 1.0 / 16.0);
        assert_eq!(quadratic_gauge(&Modulus::constant(4.0)).eval(0.5), 1.0);
    }

    #[test]
    fn gap_bound_and_continuity() {
        // 4/(√1.25 − 1) and its reciprocal, 50-digit reference values.
        let l = displacement_gap_bound(&sq()).eval(1.0);
        assert!((l - 33.888_543_819_998_317).abs() < 1e-12);
        let g = uniform_continuity_modulus(&sq()).eval(1.0);
        assert!((g - 0.029_508_497_187_473_712).abs() < 1e-15);

        // α_ψ ≤ ε²/4 caps β at 1/16 for every ψ, so β = 2 only reaches the
        // formula directly: √9 = 3.
        assert_eq!(gap_bound_from_beta(1.0, 2.0), 2.0);

        let l_psi = displacement_gap_bound(&sq());
        let gamma = uniform_continuity_modulus(&Modulus::constant(1e12));
        for e in modulus_grid() {
            assert!(l_psi.eval(e) >= 2.0 * e);
            assert!(gamma.eval(e) <= e);
            assert!(gamma.eval(e) > 0.0);
        }
    }

    #[test]
    fn supercoercivity_conversions() {
        let nu = supercoercivity_of_averaged(0.5).unwrap();
        assert_eq!(nu.eval(6.0), 6.0);
        assert!((supercoercivity_of_averaged(2.0 / 3.0).unwrap().eval(3.0) - 6.0).abs() < 1e-12);
        assert!(supercoercivity_of_averaged(1.5).is_err());

        let k0 = CldGauge::constant(0.0).unwrap();
        let kh = CldGauge::constant(0.5).unwrap();
        assert_eq!(supercoercivity_of_cld(&k0).unwrap().eval(1.0), 4.0);
        assert_eq!(supercoercivity_of_cld(&kh).unwrap().eval(0.125), 2.0);
        assert_eq!(supercoercivity_of_cld(&kh).unwrap().eval(3.0), 16.0);
        let bad = CldGauge::new(Provenance::new("bad"), |_| 1.0);
        assert!(supercoercivity_of_cld(&bad).is_err());

        let id = Modulus::power(1.0, 1.0);
        assert_eq!(supercoercivity_of_reflected_resolvent(&id).eval(6.0), 6.0);
        assert_eq!(
            supercoercivity_of_reflected_resolvent(&Modulus::constant(1.5)).eval(7.0),
            3.0
        );
        assert_eq!(supercoercivity_of_inverse(&id).eval(3.0), 3.0);
        assert_eq!(supercoercivity_of_inverse(&sq()).eval(1.0), 2.0);
        assert_eq!(supercoercivity_of_inverse(&Modulus::constant(5.0)).eval(2.0), 2.5);
    }

    #[test]
    fn averaged_supercoercivity_semantics() {
        // χ(s) ≥ M·s whenever s ≥ ν(M)
        for alpha in [0.1, 0.5, 0.9] {
            let chi = ssne_of_averaged(alpha).unwrap();
            let nu = supercoercivity_of_averaged(alpha).unwrap();
            for m in modulus_grid() {
                for s in modulus_grid() {
                    if s >= nu.eval(m) {
                        assert!(chi.eval(s) >= m * s * (1.0 - 1e-14), "α={alpha} M={m} s={s}");
                    }
                }
            }
        }
    }
}
