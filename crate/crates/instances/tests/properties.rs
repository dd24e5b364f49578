use proptest::prelude::*;
use qls_instances::*;

fn arb_hermitian(max_n: usize) -> impl Strategy<Value = SparseHermitian> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, -1.0f64..1.0, -1.0f64..1.0), 1..4 * n).prop_map(move |es| {
            let mut t = Vec::new();
            for (j, k, re, im) in es {
                if j == k {
                    t.push((j, j, Complex64::new(re + 3.0, 0.0)));
                } else {
                    t.push((j, k, Complex64::new(re, im)));
                    t.push((k, j, Complex64::new(re, -im)));
                }
            }
            SparseHermitian::from_triplets(n, t).unwrap()
        })
    })
}

fn arb_instance() -> impl Strategy<Value = Instance> {
    arb_hermitian(12).prop_flat_map(|m| {
        let n = m.dim();
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_map(move |b| {
            let mut rhs: Vec<Complex64> = b.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
            rhs[0] += Complex64::new(1.5, 0.0);
            Instance::new("prop", Source::External, m.clone(), rhs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn stored_matrices_are_exactly_hermitian(m in arb_hermitian(16)) {
        prop_assert_eq!(m.hermiticity_defect(), 0.0);
        for (j, k, v) in m.triplets() {
            prop_assert!(v != Complex64::new(0.0, 0.0));
            prop_assert_eq!(m.get(k, j), Some(v.conj()));
        }
    }

    #[test]
    fn normalization_hits_unit_norms(inst in arb_instance()) {
        let cfg = MetricsConfig::default();
        let n = normalize(&inst, &cfg).unwrap();
        let ev = qls_instances::linalg::dense_eigenvalues(&n.matrix.to_dense());
        let lmax = ev.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        prop_assert!((lmax - 1.0).abs() <= 1e-10, "lmax {}", lmax);
        prop_assert!((n.rhs_norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn solution_norm_at_least_one(inst in arb_instance()) {
        let cfg = MetricsConfig::default();
        let n = normalize(&inst, &cfg).unwrap();
        match compute_metrics(&n, MetricsMode::Dense, &cfg) {
            Ok(m) => {
                prop_assert!(m.x_norm >= 1.0 - 1e-10, "x_norm {}", m.x_norm);
                prop_assert!(m.kappa >= 1.0);
                prop_assert!(m.a_max > 0.0 && m.a_max <= 1.0 + 1e-12);
                prop_assert!(m.sparsity_d >= 1 && m.sparsity_d <= m.dim);
            }
            Err(InstanceError::SingularMatrix { .. }) | Err(InstanceError::ResidualTooLarge { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn text_round_trip_is_lossless(inst in arb_instance()) {
        let back = from_text(&to_text(&inst)).unwrap();
        prop_assert_eq!(back, inst);
    }
}
