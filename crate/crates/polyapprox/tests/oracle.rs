//! Scalar evaluators against the high-precision reference implementations.

use qls_oracle as oracle;
use qls_polyapprox::cheb::{chebyshev_points, dkappa_points, GRID_POINTS};
use qls_polyapprox::hhl::clock_distribution;
use qls_polyapprox::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SLACK: f64 = 1e-9;

#[test]
fn bessel_j_matches_power_series() {
    for &t in &[0.5, 1.0, 5.0, 20.0] {
        let seq = bessel_j_seq(t, 40);
        for (k, &v) in seq.iter().enumerate() {
            let want = oracle::bessel_j(k as u32, t);
            assert!((v - want).abs() < 1e-12, "J_{k}({t}) = {v}, oracle {want}");
        }
    }
    assert!((bessel_j_seq(1.0f64, 1)[1] - 0.4400505857449335).abs() < 1e-15);
}

#[test]
fn scaled_bessel_i_matches_power_series() {
    for &q in &[0.25, 2.0, 10.0, 50.0] {
        let seq = bessel_i_scaled_seq(q, 30);
        for (k, &v) in seq.iter().enumerate() {
            let want = oracle::bessel_i_scaled(k as u32, q);
            assert!((v - want).abs() <= 1e-12 * want.max(1e-300) + 1e-300, "I~_{k}({q}) = {v}, oracle {want}");
        }
    }
}

#[test]
fn truncated_jacobi_anger_within_twice_epsilon() {
    for &(t, eps) in &[(1.0, 1e-4), (5.0, 1e-6), (20.0, 1e-6)] {
        let r = hamsim_truncation_degree(t, eps).unwrap();
        let h = TruncatedHamsimF64::new(t, r);
        let mut worst = 0.0f64;
        for x in chebyshev_points(GRID_POINTS, -1.0, 1.0) {
            let (re, im) = oracle::exp_minus_i(x, t);
            let z = h.eval(x);
            worst = worst.max((z.re - re).hypot(z.im - im));
        }
        assert!(worst <= 2.0 * eps + SLACK, "t={t} eps={eps} R={r}: {worst}");
    }
}

#[test]
fn chebyshev_inverse_close_and_at_least_one() {
    for &(c, eps) in &[(2.0, 0.125), (4.0, 0.05), (8.0, 0.02)] {
        let g = cheb_inverse_coeffs(c, eps).unwrap();
        let (b, _) = inverse_params(c, eps).unwrap();
        let pts = dkappa_points(GRID_POINTS, c);
        let err = pts.iter().map(|&x| (g.eval(x) - 1.0 / x).abs()).fold(0.0, f64::max);
        assert!(err <= 2.0 * eps + SLACK, "c={c}: {err}");
        // |x| >= 1 holds for the untruncated (1 - (1 - x^2)^b)/x; the truncated series may dip
        // below by up to its truncation error
        let exact = pts.iter().map(|&x| ((1.0 - (1.0 - x * x).powi(b as i32)) / x).abs()).fold(f64::INFINITY, f64::min);
        assert!(exact >= 1.0 - SLACK, "c={c}: min |f| = {exact}");
        let low = pts.iter().map(|&x| g.eval(x).abs()).fold(f64::INFINITY, f64::min);
        assert!(low >= 1.0 - eps, "c={c}: min |g| = {low}");
    }
}

#[test]
fn truncated_chebyshev_inverse_dips_below_one_at_the_edge() {
    // independent evaluation: g(1) = 4 sum_j (-1)^j P(X > b + j) = 1 - 6.7557e-8 at (4, 0.05)
    let g = cheb_inverse_coeffs(4.0, 0.05).unwrap();
    assert!((1.0 - g.eval(1.0) - 6.7557e-8).abs() < 1e-11, "{}", 1.0 - g.eval(1.0));
}

#[test]
fn matrix_inversion_polynomial_bounded_and_close() {
    for &kappa in &[2.0, 4.0] {
        for &eps in &[0.2, 0.1] {
            let p = MiPoly::new(1, kappa, eps).unwrap();
            let full = chebyshev_points(GRID_POINTS, -1.0, 1.0);
            let top = full.iter().map(|&x| p.eval(x).abs()).fold(0.0, f64::max);
            assert!(top <= 1.0 + SLACK, "kappa={kappa} eps={eps}: max |P| = {top}");
            let err = dkappa_points(GRID_POINTS, kappa)
                .iter()
                .map(|&x| (p.eval(x) - 1.0 / (2.0 * kappa * x)).abs())
                .fold(0.0, f64::max);
            assert!(err <= eps + SLACK, "kappa={kappa} eps={eps}: {err}");
        }
    }
}

#[test]
fn erf_polynomial_tracks_erf() {
    // the sign approximation budgets eps/2 for the polynomial and eps/2 for erf versus sign
    for &(a, w, eps) in &[(0.0, 0.5, 0.05), (0.2, 0.3, 0.01)] {
        let s = SignPolyF64::new(a, w, eps).unwrap();
        for x in chebyshev_points(201, -1.0, 1.0) {
            let want = oracle::erf(s.erf.k * x);
            assert!((s.erf.eval(x) - want).abs() <= eps / 2.0 + SLACK, "x={x}");
        }
    }
}

#[test]
fn sign_and_rect_within_epsilon_on_valid_regions() {
    let pts = chebyshev_points(GRID_POINTS, -1.0, 1.0);
    for &(a, w, eps) in &[(0.0, 0.5, 0.05), (0.2, 0.3, 0.01), (-0.1, 0.1, 0.1)] {
        let s = SignPolyF64::new(a, w, eps).unwrap();
        let err = pts
            .iter()
            .filter(|&&x| s.in_valid_region(x))
            .map(|&x| (s.eval(x) - (x - a).signum()).abs())
            .fold(0.0, f64::max);
        assert!(err <= eps + SLACK, "sign a={a}: {err}");
    }
    for &(t, d, eps) in &[(0.25, 0.25, 0.05), (0.1, 0.2, 0.01), (0.5, 0.1, 0.1)] {
        let r = RectPolyF64::new(t, d, eps).unwrap();
        let err = pts
            .iter()
            .filter(|&&x| r.in_valid_region(x))
            .map(|&x| (r.eval(x) - r.target(x)).abs())
            .fold(0.0, f64::max);
        assert!(err <= eps + SLACK, "rect t={t}: {err}");
    }
}

#[test]
fn hhl_success_probability_on_random_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let kappa = rng.random_range(1.5..=4.0);
        let mut lambdas = vec![1.0, 1.0 / kappa];
        lambdas.extend((0..2).map(|_| rng.random_range(1.0 / kappa..1.0)));
        let betas: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let model = HhlToyModel::new(lambdas, betas, kappa, 0.1).unwrap();
        let (pt, pe) = hhl_exact_success_prob(&model);
        assert!((0.0..=1.0).contains(&pt));
        assert!((pt - pe).abs() <= 0.1, "kappa={kappa}: {pt} vs {pe}");
    }
}

#[test]
fn resonant_clock_concentrates_on_one_register_value() {
    let two_pi = 2.0 * std::f64::consts::PI;
    let model = HhlToyModel::with_time(vec![1.0], vec![1.0], 2.0, two_pi * 40.0).unwrap();
    let dist = clock_distribution(&model, 1.0);
    let (arg, top) = dist.iter().enumerate().fold((0, 0.0), |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc });
    assert_eq!(arg, 40);
    assert!(top > 0.5, "{top}");
}
