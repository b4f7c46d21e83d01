use proptest::prelude::*;
use ssne::grid::modulus_grid;
use ssne::hilbert::{
    compose, inner, make_averaged, project_ball, project_box, project_halfspace, reflected_resolvent, resolvent,
    scaled_identity, SolverSettings,
};
use ssne::lab::{
    construct_afp_witness, falsify, falsify_ssne, falsify_supercoercivity, iterate_displacement, Claim,
};
use ssne::modulus::*;
use ssne::rates::{gamma_rate, phi_bound, psi_bound, sigma_rate, theta_bound};
use ssne::sampling::SamplerSettings;
use ssne::{CertifiedOperator, Modulus, MonotoneMap, SneModulus, Vector};

fn v(c: Vec<f64>) -> Vector {
    Vector::new(c).unwrap()
}

fn vec_n(n: usize, r: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-r..r, n).prop_map(v)
}

fn nonzero2() -> impl Strategy<Value = Vector> {
    (0.0..std::f64::consts::TAU, 0.2..5.0f64).prop_map(|(t, r)| v(vec![r * t.cos(), r * t.sin()]))
}

fn tight() -> SolverSettings {
    SolverSettings::with_tol(1e-12)
}

fn firmly_nonexpansive(op: &CertifiedOperator, x: &Vector, y: &Vector, tol: f64) -> bool {
    let (tx, ty) = (op.apply(x).unwrap(), op.apply(y).unwrap());
    let d = &tx - &ty;
    inner(&(x - y), &d).unwrap() >= d.norm_squared() - tol * (1.0 + x.distance(y).powi(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convex_combination_identity(x in vec_n(3, 50.0), y in vec_n(3, 50.0), l in 0.0..1.0f64) {
        let lhs = x.lerp(l, &y).norm_squared();
        let rhs = (1.0 - l) * x.norm_squared() + l * y.norm_squared() - l * (1.0 - l) * x.distance(&y).powi(2);
        let scale = 1.0 + x.norm_squared() + y.norm_squared();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn polarization(x in vec_n(4, 50.0), y in vec_n(4, 50.0)) {
        let lhs = 4.0 * inner(&x, &y).unwrap();
        let rhs = (&x + &y).norm_squared() - (&x - &y).norm_squared();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + x.norm_squared() + y.norm_squared()));
    }

    #[test]
    fn projections_firmly_nonexpansive(
        c in vec_n(2, 5.0), r in 0.1..4.0f64, a in nonzero2(), b in -3.0..3.0f64,
        x in vec_n(2, 100.0), y in vec_n(2, 100.0),
    ) {
        let lo = v(vec![-1.0, -2.0]);
        let hi = v(vec![3.0, 0.5]);
        for op in [project_ball(c.clone(), r).unwrap(), project_halfspace(a.clone(), b).unwrap(), project_box(lo, hi).unwrap()] {
            prop_assert!(firmly_nonexpansive(&op, &x, &y, 1e-12), "{}", op.name());
            let (px, py) = (op.apply(&x).unwrap(), op.apply(&y).unwrap());
            prop_assert!(px.distance(&py) <= x.distance(&y) * (1.0 + 1e-12) + 1e-12);
            // idempotent
            prop_assert!(op.apply(&px).unwrap().distance(&px) <= 1e-9 * (1.0 + px.norm()));
        }
    }

    #[test]
    fn resolvents_firmly_nonexpansive(
        lambda in 0.05..8.0f64, a in nonzero2(), b in -3.0..3.0f64,
        x in vec_n(2, 20.0), y in vec_n(2, 20.0),
    ) {
        for map in [MonotoneMap::scaled_identity(2, lambda).unwrap(), MonotoneMap::halfspace_residual(a.clone(), b, lambda).unwrap()] {
            let j = resolvent(&map, tight()).unwrap();
            prop_assert!(firmly_nonexpansive(&j, &x, &y, 1e-9), "{}", map.name());
            let r = reflected_resolvent(&map, tight()).unwrap();
            let (rx, ry) = (r.apply(&x).unwrap(), r.apply(&y).unwrap());
            prop_assert!(rx.distance(&ry) <= x.distance(&y) + 1e-9);
        }
    }

    #[test]
    fn modulus_round_trips(c in 0.01..100.0f64, p in 0.5..4.0f64) {
        let m = Modulus::power(c, p);
        let chi = ssne_from_inverse_uniform_monotonicity(&inverse_uniform_monotonicity_from_ssne(&m));
        let psi = inverse_uniform_monotonicity_from_ssne(&ssne_from_inverse_uniform_monotonicity(&m));
        let nu = supercoercivity_of_reflected_resolvent(&supercoercivity_of_inverse(&m));
        let eta = supercoercivity_of_inverse(&supercoercivity_of_reflected_resolvent(&m));
        for e in modulus_grid() {
            let want = m.eval(e);
            for (name, got) in [("chi", chi.eval(e)), ("psi", psi.eval(e)), ("nu", nu.eval(e)), ("eta", eta.eval(e))] {
                prop_assert!((got - want).abs() <= 1e-12 * want, "{name} at {e}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn derived_moduli_positive(c1 in 0.01..10.0f64, p1 in 1.0..3.0f64, c2 in 0.01..10.0f64, p2 in 1.0..3.0f64, alpha in 0.05..0.95f64) {
        let grid = modulus_grid();
        let (m1, m2) = (Modulus::power(c1, p1), Modulus::power(c2, p2));
        let k = CldGauge::constant(0.5).unwrap();
        let derived = [
            ssne_of_composition(&[m1.clone(), m2.clone()]).unwrap(),
            ssne_from_inverse_uniform_monotonicity(&m1),
            inverse_uniform_monotonicity_from_ssne(&m1),
            resolvent_uniform_monotonicity(&m1),
            quadratic_gauge(&resolvent_uniform_monotonicity(&m1)),
            displacement_gap_bound(&m1),
            uniform_continuity_modulus(&m1),
            ssne_of_averaged(alpha).unwrap(),
            ssne_of_cld(&k),
            supercoercivity_of_averaged(alpha).unwrap(),
            supercoercivity_of_cld(&k).unwrap(),
            supercoercivity_of_inverse(&m2),
            supercoercivity_of_reflected_resolvent(&m2),
        ];
        for m in &derived {
            prop_assert!(m.is_positive_on(&grid), "{}", m.provenance());
        }
        let w = sne_from_ssne(&m1);
        for &b in &[0.5, 1.0, 10.0] {
            for &e in &grid {
                prop_assert!(w.eval(b, e) > 0.0);
            }
        }
    }

    // ⟨x−y, J_A x − J_A y⟩ ≥ β(ε)‖x−y‖² whenever ‖x−y‖ ≥ ε.
    #[test]
    fn quadratic_gauge_lower_bound(
        lambda in 0.05..8.0f64, a in nonzero2(), b in -3.0..3.0f64,
        x in vec_n(2, 20.0), y in vec_n(2, 20.0),
    ) {
        let dist = x.distance(&y);
        prop_assume!(dist > 1e-6);
        for map in [MonotoneMap::scaled_identity(2, lambda).unwrap(), MonotoneMap::halfspace_residual(a.clone(), b, lambda).unwrap()] {
            let beta = quadratic_gauge(&resolvent_uniform_monotonicity(map.inverse_modulus().unwrap()));
            let j = resolvent(&map, tight()).unwrap();
            let lhs = inner(&(&x - &y), &(&j.apply(&x).unwrap() - &j.apply(&y).unwrap())).unwrap();
            for eps in [dist, dist / 2.0, dist / 10.0] {
                prop_assert!(lhs >= beta.eval(eps) * dist * dist - 1e-9 * (1.0 + dist * dist));
            }
        }
    }

    // T = (1−α)id + αN: ‖x−y‖² − ‖Tx−Ty‖² ≥ ((1−α)/α)‖(x−y)−(Tx−Ty)‖², so gap < M·D forces D < ν(M).
    #[test]
    fn averaged_supercoercivity_semantics(
        alpha in 0.05..0.95f64, c in vec_n(2, 3.0), x in vec_n(2, 30.0), y in vec_n(2, 30.0), big_m in 0.001..100.0f64,
    ) {
        let reflect = compose(&[project_ball(c, 1.0).unwrap(), scaled_identity(2, 1.0).unwrap()]).unwrap();
        let t = make_averaged(alpha, &reflect).unwrap();
        let nu = supercoercivity_of_averaged(alpha).unwrap();
        let (tx, ty) = (t.apply(&x).unwrap(), t.apply(&y).unwrap());
        let gap = x.distance(&y).powi(2) - tx.distance(&ty).powi(2);
        let disp = (&(&x - &y) - &(&tx - &ty)).norm();
        if gap < big_m * disp - 1e-9 {
            prop_assert!(disp < nu.eval(big_m) + 1e-9);
        }
    }

    #[test]
    fn theta_monotone_in_each_bound(
        c in 0.01..10.0f64, p in 0.5..3.0f64,
        l in prop::array::uniform3(0.01..50.0f64), bump in 0.0..10.0f64, which in 0usize..3,
    ) {
        let eta = Modulus::power(c, p);
        let base = theta_bound(&eta, l[0], l[1], l[2]).unwrap().theta.to_f64();
        let mut up = l;
        up[which] += bump;
        let bigger = theta_bound(&eta, up[0], up[1], up[2]).unwrap().theta.to_f64();
        prop_assert!(bigger >= base * (1.0 - 1e-14));
    }

    #[test]
    fn gamma_nonincreasing_in_eps(
        e1 in 0.01..10.0f64, ratio in 1.0..20.0f64, b in 0.1..10.0f64, d in 0.1..10.0f64,
        k in 0.0..10.0f64, coef in 0.1..2.0f64, eps_exp in 1.0..3.0f64,
    ) {
        let alpha = Modulus::constant(k);
        let omega = SneModulus::monomial(coef, -1.0, eps_exp);
        let g1 = gamma_rate(e1, b, d, &alpha, &omega).unwrap().to_f64();
        let g2 = gamma_rate(e1 * ratio, b, d, &alpha, &omega).unwrap().to_f64();
        prop_assert!(g1 >= g2, "{g1} < {g2}");
    }

    #[test]
    fn psi_two_is_phi(c in 0.01..10.0f64, p in 1.0..3.0f64, n in 0.1..10.0f64, k in 0.1..20.0f64, delta in 0.001..100.0f64) {
        let chi = Modulus::power(c, p);
        let nu = Modulus::power(n, 1.0);
        let kk = Modulus::constant(k);
        let phi = phi_bound(&chi, &nu, &kk, delta).unwrap().phi;
        let psi = psi_bound(2, &[chi], &[nu], &kk, delta).unwrap();
        prop_assert_eq!(phi.to_f64().to_bits(), psi.to_f64().to_bits());
    }

    #[test]
    fn expansion_is_caught_and_reproduces(beta in 1.05..3.0f64, seed in any::<u64>()) {
        let op = scaled_identity(2, beta).unwrap();
        let chi = Modulus::power(1.0, 2.0);
        let settings = SamplerSettings::new(2000, seed);
        let report = falsify_ssne(&op, &chi, &settings).unwrap();
        let cex = report.counterexample.clone().expect("expansive map passes SSNE claim");
        prop_assert!(Claim::Ssne(chi.clone()).reproduces(&op, &cex).unwrap());
        prop_assert_eq!(report, falsify_ssne(&op, &chi, &settings).unwrap());
    }

    #[test]
    fn iterates_of_projections_settle_monotonically(
        c1 in vec_n(2, 5.0), c2 in vec_n(2, 5.0), r1 in 0.2..3.0f64, r2 in 0.2..3.0f64, x0 in vec_n(2, 20.0),
    ) {
        let r = compose(&[project_ball(c1, r1).unwrap(), project_ball(c2, r2).unwrap()]).unwrap();
        let curve = iterate_displacement(&r, &x0, 200).unwrap();
        prop_assert!(curve.is_nonincreasing(1e-12 * (1.0 + x0.norm())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sigma_nonincreasing_in_eps(e1 in 0.01..5.0f64, ratio in 1.0..10.0f64, b in 1.0..10.0f64, d in 1.0..10.0f64) {
        let sq = Modulus::power(1.0, 2.0);
        let lin = Modulus::power(1.0, 1.0);
        let k = Modulus::constant(4.0);
        let s = |e: f64| sigma_rate(2, &[sq.clone(), sq.clone()], &[lin.clone()], &k, b, d, e).unwrap().to_f64();
        prop_assert!(s(e1) >= s(e1 * ratio));
    }

    #[test]
    fn certificates_of_firm_maps_survive(seed in any::<u64>(), c in vec_n(2, 5.0), alpha in 0.1..0.9f64) {
        let settings = SamplerSettings::new(1000, seed).heavy_tail(true);
        let p = project_ball(c, 1.5).unwrap();
        let avg = make_averaged(alpha, &p).unwrap();
        for op in [&p, &avg] {
            for claim in ssne::lab::certificate_claims(op) {
                let rep = falsify(op, &claim, &settings).unwrap();
                prop_assert!(!rep.falsified(), "{} {}: {:?}", op.name(), claim.kind(), rep.counterexample);
            }
        }
        let nu = supercoercivity_of_averaged(alpha).unwrap();
        prop_assert!(!falsify_supercoercivity(&avg, &nu, &settings).unwrap().falsified());
    }

    #[test]
    fn witness_meets_bound(l1 in 0.2..3.0f64, l2 in 0.2..3.0f64, off1 in -2.0..0.0f64, off2 in -2.0..0.0f64, delta in 0.3..2.0f64) {
        let a = MonotoneMap::halfspace_residual(v(vec![-1.0, 0.0]), off1, l1).unwrap();
        let b = MonotoneMap::halfspace_residual(v(vec![0.0, -1.0]), off2, l2).unwrap();
        let k = Modulus::constant(3.0);
        let w = construct_afp_witness(&a, &b, &k, delta, tight()).unwrap();
        prop_assert!(w.holds(), "residual {} delta {} |p| {} phi {:?}", w.residual, delta, w.p.norm(), w.phi);
    }
}
