use qls_instances::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn e(n: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); n];
    v[j] = c(1.0);
    v
}

fn tridiag(n: usize) -> SparseHermitian {
    let mut t = Vec::new();
    for j in 0..n {
        t.push((j, j, c(2.0)));
        if j + 1 < n {
            t.push((j, j + 1, c(-1.0)));
            t.push((j + 1, j, c(-1.0)));
        }
    }
    SparseHermitian::from_triplets(n, t).unwrap()
}

fn cfg() -> MetricsConfig {
    MetricsConfig::default()
}

#[test]
fn identity_metrics() {
    let inst = Instance::new("eye", Source::External, SparseHermitian::identity(4), e(4, 0)).unwrap();
    let m = compute_metrics(&inst, MetricsMode::Dense, &cfg()).unwrap();
    assert_eq!((m.dim, m.sparsity_d), (4, 1));
    assert_eq!((m.kappa, m.a_max, m.x_norm), (1.0, 1.0, 1.0));
    assert_eq!(m.kappa_source, KappaSource::ExactEigen);
}

#[test]
fn diagonal_metrics() {
    let inst = Instance::new("diag", Source::External, SparseHermitian::from_diagonal(&[1.0, 0.5]), e(2, 0)).unwrap();
    let m = compute_metrics(&inst, MetricsMode::Dense, &cfg()).unwrap();
    assert!((m.kappa - 2.0).abs() < 1e-14);
    assert_eq!((m.sparsity_d, m.a_max), (1, 1.0));
    assert!((m.x_norm - 1.0).abs() < 1e-15);
}

#[test]
fn poisson_1d_kappa_closed_form() {
    let raw = Instance::new("p3", Source::Poisson, tridiag(3), vec![c(1.0); 3]).unwrap();
    let inst = normalize(&raw, &cfg()).unwrap();
    let m = compute_metrics(&inst, MetricsMode::Dense, &cfg()).unwrap();
    let expect = 3.0 + 2.0 * 2f64.sqrt();
    assert!((m.kappa - expect).abs() < 1e-12 * expect, "{}", m.kappa);
    assert_eq!(m.sparsity_d, 3);
}

#[test]
fn normalize_scalar_rescale() {
    let inst = Instance::new("two", Source::External, SparseHermitian::from_diagonal(&[2.0, 2.0]), vec![c(2.0), c(0.0)]).unwrap();
    let n = normalize(&inst, &cfg()).unwrap();
    assert_eq!(n.matrix, SparseHermitian::identity(2));
    assert_eq!(n.rhs, e(2, 0));
    assert_eq!(n.scale, ScaleRecord { matrix: 2.0, rhs: 2.0 });
}

#[test]
fn normalize_fixed_point() {
    let inst = Instance::new("eye", Source::External, SparseHermitian::identity(3), e(3, 2)).unwrap();
    let n = normalize(&inst, &cfg()).unwrap();
    assert_eq!(n, inst);
    assert_eq!(n.scale, ScaleRecord::default());
}

#[test]
fn normalize_tridiagonal() {
    let inst = Instance::new("p3", Source::Poisson, tridiag(3), e(3, 0)).unwrap();
    let n = normalize(&inst, &cfg()).unwrap();
    let lmax = 2.0 + 2f64.sqrt();
    assert!((n.scale.matrix - lmax).abs() < 1e-12 * lmax);
    let d = n.matrix.get(0, 0).unwrap().re;
    assert!((d - 2.0 / lmax).abs() < 1e-15);
}

#[test]
fn normalize_errors() {
    let z = SparseHermitian::from_triplets(2, vec![]).unwrap();
    let inst = Instance::new("z", Source::External, z, e(2, 0)).unwrap();
    assert!(matches!(normalize(&inst, &cfg()), Err(InstanceError::ZeroMatrix)));
    let inst = Instance::new("z", Source::External, SparseHermitian::identity(2), vec![c(0.0); 2]).unwrap();
    assert!(matches!(normalize(&inst, &cfg()), Err(InstanceError::ZeroRhs)));
}

#[test]
fn solve_examples() {
    let inst = Instance::new("eye", Source::External, SparseHermitian::identity(2), e(2, 1)).unwrap();
    assert_eq!(solve_reference(&inst, &cfg()).unwrap(), e(2, 1));
    let inst = Instance::new("diag", Source::External, SparseHermitian::from_diagonal(&[1.0, 0.5]), e(2, 1)).unwrap();
    let x = solve_reference(&inst, &cfg()).unwrap();
    assert!((x[0] - c(0.0)).norm() < 1e-15 && (x[1] - c(2.0)).norm() < 1e-15);
}

#[test]
fn singular_matrix_is_rejected() {
    let inst = Instance::new("sing", Source::External, SparseHermitian::from_diagonal(&[1.0, 1e-16]), e(2, 0)).unwrap();
    assert!(matches!(compute_metrics(&inst, MetricsMode::Dense, &cfg()), Err(InstanceError::SingularMatrix { .. })));
}

#[test]
fn dense_mode_above_threshold() {
    let small = MetricsConfig { dense_threshold: 2, ..cfg() };
    let inst = Instance::new("p3", Source::Poisson, tridiag(3).scaled(0.25), e(3, 0)).unwrap();
    assert!(matches!(compute_metrics(&inst, MetricsMode::Dense, &small), Err(InstanceError::DimensionTooLarge { .. })));
    let inst = inst.with_kappa_truth(5.0);
    let m = compute_metrics(&inst, MetricsMode::Dense, &small).unwrap();
    assert_eq!((m.kappa, m.kappa_source), (5.0, KappaSource::GeneratorGroundTruth));
    // the iterative route recovers the closed form
    let m = compute_metrics(&inst, MetricsMode::Iterative, &small).unwrap();
    assert!((m.kappa - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-6);
    assert_eq!(m.kappa_source, KappaSource::IterativeEstimate);
}

#[test]
fn ground_truth_mode_requires_metadata() {
    let inst = Instance::new("eye", Source::External, SparseHermitian::identity(2), e(2, 0)).unwrap();
    assert!(matches!(compute_metrics(&inst, MetricsMode::UseGroundTruth, &cfg()), Err(InstanceError::MissingGroundTruth)));
}

#[test]
fn file_round_trip_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.qls");
    let raw = Instance::new("p5", Source::Poisson, tridiag(5), vec![c(1.0); 5]).unwrap().with_kappa_truth(13.928203230275509);
    let inst = normalize(&raw, &cfg()).unwrap();
    save_instance(&path, &inst).unwrap();
    let back = load_instance(&path).unwrap();
    assert_eq!(back, inst);
    let m0 = compute_metrics(&inst, MetricsMode::Dense, &cfg()).unwrap();
    let m1 = compute_metrics(&back, MetricsMode::Dense, &cfg()).unwrap();
    assert_eq!(m0, m1);

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() * 2 / 3]).unwrap();
    assert!(matches!(load_instance(&path), Err(InstanceError::Parse { .. })));
}

#[test]
fn loader_rejects_non_hermitian_and_zero_entries() {
    let seal = |body: &str| {
        let crc = crc32fast_hash(body.as_bytes());
        format!("{body}CRC32={crc:08x}\n")
    };
    let head = "QLSINST v1 N=2 source=external id=bad matrix_scale=1e0 rhs_scale=1e0\n";
    let text = seal(&format!("{head}0 1 1e0 0e0\nB\n1e0 0e0\n0e0 0e0\n"));
    assert!(matches!(from_text(&text), Err(InstanceError::NotHermitian { .. })));
    let text = seal(&format!("{head}0 0 0e0 0e0\nB\n1e0 0e0\n0e0 0e0\n"));
    assert!(matches!(from_text(&text), Err(InstanceError::Parse { line: 2, .. })));
}

// CRC-32/ISO-HDLC, bitwise; independent of the crate used by the writer
fn crc32fast_hash(bytes: &[u8]) -> u32 {
    let mut crc = !0u32;
    for &b in bytes {
        crc ^= b as u32;
        for _ in 0..8 {
            crc = if crc & 1 != 0 { (crc >> 1) ^ 0xEDB8_8320 } else { crc >> 1 };
        }
    }
    !crc
}
