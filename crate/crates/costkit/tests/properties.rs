use proptest::prelude::*;
use qls_costkit::halftail::{alpha_sum_closed, alpha_sum_mass, halftail_beta, ExactTails};
use qls_costkit::hamsim::r_tilde_threshold;
use qls_costkit::*;
use num_traits::ToPrimitive;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn r_tilde_monotone_within_branches(eps in 1e-12f64..0.9, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let th = r_tilde_threshold(eps);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        // log branch on [0, th), linear branch on [th, 10 th]
        let (x, y) = (lo * th, hi * th);
        if y < th {
            prop_assert!(r_tilde(x, eps).unwrap() <= r_tilde(y, eps).unwrap());
        }
        let (x, y) = (th * (1.0 + 9.0 * lo), th * (1.0 + 9.0 * hi));
        prop_assert!(r_tilde(x, eps).unwrap() <= r_tilde(y, eps).unwrap());
    }

    #[test]
    fn r_tilde_boundary_prefers_linear_branch(eps in 1e-12f64..0.9) {
        let th = r_tilde_threshold(eps);
        let lin = r_tilde(th, eps).unwrap();
        let l = (1.0 / eps).ln();
        let log_branch = (4.0 * l / (std::f64::consts::E + l / th).ln()).ceil() as u64;
        prop_assert!(lin <= log_branch);
    }

    #[test]
    fn qaa_bounds(lp0 in -12.0f64..0.0, frac in 0.0f64..1.0, c in 1.05f64..1.95) {
        let p0 = 10f64.powf(lp0);
        let p = p0 + (1.0 - p0) * frac;
        let n = qaa_expected(p, p0, c).unwrap();
        prop_assert!(n >= 1.0 - 1e-12, "n = {}", n);
        prop_assert!(n <= 3.0 / p0.sqrt(), "n = {} bound {}", n, 3.0 / p0.sqrt());
    }

    #[test]
    fn fourier_alpha_riemann_sanity(lk in 0.0f64..4.0, le in -10.0f64..-0.30103) {
        let kappa = 10f64.powf(lk);
        let eps = 10f64.powf(le);
        let alpha = fourier_alpha(kappa, eps).unwrap();
        let (dz, l) = fourier_grid(kappa, eps);
        let z = l as f64 * dz;
        let integral = 4.0 * std::f64::consts::PI.sqrt() * kappa / (kappa + 1.0) / dz
            * (1.0 - (-z * z / 2.0).exp());
        prop_assert!(alpha >= 1.0, "alpha = {}", alpha);
        prop_assert!(alpha >= 0.5 * integral && alpha <= 2.0 * integral);
    }

    #[test]
    fn chebyshev_alpha_bounded(d in 1u64..17, lk in 0.0f64..2.0, le in -10.0f64..-1.0) {
        let kappa = 10f64.powf(lk);
        let eps = 10f64.powf(le);
        prop_assume!(d as f64 * kappa / eps > 1.0);
        let cp = chebyshev_params(d, kappa, eps).unwrap();
        prop_assert!(cp.j0 <= cp.s);
        let alpha: f64 = chebyshev_alpha(d, &cp);
        prop_assert!(alpha > 0.0);
        prop_assert!(alpha <= 4.0 * (cp.j0 + 1) as f64 / d as f64);
    }

    #[test]
    fn qsvt_degrees_odd(d in 1u64..17, lk in 0.0f64..3.0, le in -10.0f64..-1.0) {
        let kappa = 10f64.powf(lk);
        prop_assume!(d as f64 * kappa > 1.0);
        let q = qsvt_degrees(d, kappa, 10f64.powf(le)).unwrap();
        prop_assert_eq!(q.n_rect % 2, 1);
        prop_assert_eq!(q.n_inv % 2, 1);
    }

    #[test]
    fn reported_probabilities_are_ordered(d in 1u64..17, lk in 0.0f64..3.0, xf in 0.0f64..1.0) {
        let kappa = 10f64.powf(lk);
        prop_assume!(d as f64 * kappa > 1.0);
        let x_norm = 1.0 + (kappa - 1.0) * xf;
        let inp = CostInputs { d, kappa, a_max: 0.5, x_norm };
        for r in cost_all(&inp, &SolverParams::with_epsilon(1e-6)).unwrap() {
            prop_assert!(r.p0 > 0.0 && r.p0 <= r.p && r.p <= 1.0);
            prop_assert!(r.queries_log10.is_finite());
            prop_assert!(r.n_qaa >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn qsvt_lower_bound_below_probability(lk in 0.0f64..3.0, le in -10.0f64..-1.0, xf in 0.0f64..1.0) {
        let kappa = 10f64.powf(lk);
        let eps = 10f64.powf(le);
        let x_norm = (1.0 - eps / 2.0) + xf;
        let inp = CostInputs { d: 2, kappa, a_max: 1.0, x_norm };
        let r = qsvt_cost(&inp, &SolverParams::with_epsilon(eps)).unwrap();
        prop_assert!(r.warnings.iter().all(|w| !matches!(w, Warning::ProbabilityRaised(_))));
    }
}

#[test]
fn halftail_routes_agree_on_overlap_band() {
    for s in [1u64, 2, 3, 10, 57, 100, 333, 500, 1000, 1500, 1750, 2000] {
        let ex = ExactTails::new(s);
        let jmax = s.min((3.0 * (s as f64).sqrt()).floor() as u64);
        for j in 0..=jmax {
            let e = ex.tail_f64(j);
            if e == 0.0 {
                continue;
            }
            let b = halftail_beta(s, j);
            assert!((b - e).abs() <= 1e-6 * e, "s={s} j={j} exact={e} beta={b}");
        }
    }
}

#[test]
fn exact_tails_match_direct_binomial_sums() {
    for (s, j) in [(1u64, 0u64), (7, 2), (100, 0), (100, 10), (500, 67), (2000, 44)] {
        assert_eq!(ExactTails::new(s).tail(j), qls_oracle::binomial_halftail(s, j), "s={s} j={j}");
    }
}

#[test]
fn alpha_routes_agree_past_exact_range() {
    for (s, j0) in [(2001u64, 200u64), (50_000, 2_000), (80_000_000, 70_000)] {
        let m = alpha_sum_mass(s, j0);
        let c = alpha_sum_closed(s, j0);
        assert!((m - c).abs() <= 1e-9 * c, "s={s} {m} {c}");
    }
    let ex = ExactTails::new(2000).alpha_sum(300).to_f64().unwrap();
    assert!((alpha_sum_closed(2000, 300) - ex).abs() <= 1e-12 * ex);
}

#[test]
fn n_inv_monotone_in_kappa() {
    for d in [1u64, 2, 4, 16] {
        for eps in [1e-2, 1e-8] {
            let mut prev = 0;
            let mut kappa = 2.0;
            while kappa <= 1024.0 {
                let n = qsvt_degrees(d, kappa, eps).unwrap().n_inv;
                assert!(n >= prev, "d={d} eps={eps} kappa={kappa}");
                prev = n;
                kappa *= 2.0;
            }
        }
    }
}

#[test]
fn reports_are_bit_identical_across_runs() {
    let inp = CostInputs { d: 8, kappa: 321.5, a_max: 0.41, x_norm: 17.25 };
    let p = SolverParams::default();
    let a = format!("{:?}", cost_all(&inp, &p).unwrap());
    let b = format!("{:?}", cost_all(&inp, &p).unwrap());
    assert_eq!(a, b);
}
