use proptest::prelude::*;
use qls_simplexer::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random boxed LPs with a known feasible point: the solver must end optimal, feasible,
    /// no worse than the known point, with every basis emitted nonsingular.
    #[test]
    fn random_boxed_lps(m in 1usize..6, n in 1usize..6, seed_vals in prop::collection::vec(-3i32..=3, 60)) {
        let mut it = seed_vals.into_iter().cycle();
        let mut lp = LpProblem::new("rand");
        for j in 0..n {
            let c = lp.add_column(format!("x{j}"), it.next().unwrap() as f64);
            lp.columns[c].upper = 10.0;
        }
        let x0: Vec<f64> = (0..n).map(|_| (it.next().unwrap().abs() as f64) / 2.0).collect();
        for i in 0..m {
            let coeffs: Vec<(usize, f64)> = (0..n).map(|j| (j, it.next().unwrap() as f64)).collect();
            let ax: f64 = coeffs.iter().map(|&(j, v)| v * x0[j]).sum();
            let kind = [RowKind::Le, RowKind::Ge, RowKind::Eq][i % 3];
            let rhs = match kind { RowKind::Le => ax + 1.0, RowKind::Ge => ax - 1.0, RowKind::Eq => ax };
            lp.add_row(format!("r{i}"), kind, &coeffs, rhs);
        }
        let sf = to_standard_form(&lp).unwrap();
        let run = run_simplex(&sf, 10_000).unwrap();
        prop_assert_eq!(run.status, Status::Optimal);
        let x = sf.recover(&run.x);
        let c0: f64 = lp.columns.iter().zip(&x0).map(|(c, v)| c.cost * v).sum();
        prop_assert!(run.objective <= c0 + 1e-9);
        for (j, c) in lp.columns.iter().enumerate() {
            prop_assert!(x[j] >= c.lower - 1e-9 && x[j] <= c.upper + 1e-9);
        }
        for (i, row) in lp.rows.iter().enumerate() {
            let ax: f64 = lp.entries.iter().filter(|e| e.0 == i).map(|e| e.2 * x[e.1]).sum();
            let ok = match row.kind { RowKind::Le => ax <= row.rhs + 1e-8, RowKind::Ge => ax >= row.rhs - 1e-8, RowKind::Eq => (ax - row.rhs).abs() < 1e-8 };
            prop_assert!(ok, "row {}: {} vs {}", i, ax, row.rhs);
        }
        for s in &run.snapshots {
            prop_assert!(s.kappa_b.is_finite() && s.kappa_b >= 1.0 - 1e-12);
        }
    }
}
