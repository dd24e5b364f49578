//! End-to-end runs of the `qls` binary on small instance sets.

use std::path::Path;
use std::process::{Command, Output};

use qls_benchcli::report::{HEATMAP_CSV, INSTANCES_CSV, REPORT_JSON};
use qls_benchcli::{parse_heatmap_json, parse_report_json, read_heatmap_csv, read_rows_csv, ROW_COLUMNS};

fn qls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qls")).args(args).output().expect("qls runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn small_set(dir: &Path) {
    let inst = dir.join("inst");
    let out = qls(&["--out-dir", path(&inst), "--seed", "3", "generate", "random", "--n", "16", "--kappas", "10,100", "--ds", "2,4", "--seeds", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = qls(&["--out-dir", path(&inst), "generate", "poisson", "--points", "1:7,2:3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_writes_consistent_outputs() {
    let dir = tempfile::tempdir().unwrap();
    small_set(dir.path());
    let out_dir = dir.path().join("out");
    let out = qls(&["--out-dir", path(&out_dir), "sweep", path(&dir.path().join("inst"))]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let rows_text = std::fs::read_to_string(out_dir.join(INSTANCES_CSV)).unwrap();
    assert_eq!(rows_text.lines().next().unwrap(), ROW_COLUMNS.join(","));
    let rows = read_rows_csv(rows_text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 10 * 4);
    let heat = read_heatmap_csv(std::fs::read(out_dir.join(HEATMAP_CSV)).unwrap().as_slice()).unwrap();
    let report = parse_report_json(&std::fs::read_to_string(out_dir.join(REPORT_JSON)).unwrap()).unwrap();
    assert_eq!(report.heatmap, heat.cells);
    assert_eq!(report.instances, rows);
    assert_eq!(report.processed, 10);
    // every solver's counts add up to the number of processed instances
    for solver in ["HHL", "Fourier", "Chebyshev", "QSVT"] {
        let total: usize = heat.cells.iter().filter(|c| c.solver == solver).map(|c| c.count).sum();
        assert_eq!(total, 10, "{solver}");
    }
    for cell in &heat.cells {
        assert!(cell.min_log10 <= cell.mean_log10 && cell.mean_log10 <= cell.max_log10);
    }
}

#[test]
fn sweep_output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    small_set(dir.path());
    let inst = dir.path().join("inst");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(code(&qls(&["--out-dir", path(&a), "--threads", "1", "sweep", path(&inst)])), 0);
    assert_eq!(code(&qls(&["--out-dir", path(&b), "--threads", "4", "sweep", path(&inst)])), 0);
    for name in [INSTANCES_CSV, HEATMAP_CSV, REPORT_JSON] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn empty_sweep_succeeds_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let out = qls(&["--out-dir", path(&dir.path().join("out")), "sweep", path(&empty)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no instances"));
    let heat = std::fs::read_to_string(dir.path().join("out").join(HEATMAP_CSV)).unwrap();
    assert_eq!(heat.lines().count(), 1);
}

#[test]
fn unreadable_instance_is_a_partial_failure() {
    let dir = tempfile::tempdir().unwrap();
    small_set(dir.path());
    std::fs::write(dir.path().join("inst").join("broken.qls"), "not an instance\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = qls(&["--out-dir", path(&out_dir), "sweep", path(&dir.path().join("inst"))]);
    assert_eq!(code(&out), 2);
    let report = parse_report_json(&std::fs::read_to_string(out_dir.join(REPORT_JSON)).unwrap()).unwrap();
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.processed, 10);
}

#[test]
fn config_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "epsilon = 2\n").unwrap();
    assert_eq!(code(&qls(&["--config", path(&cfg), "cost", "--d", "2", "--kappa", "10"])), 3);
    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(code(&qls(&["--config", path(&cfg), "cost", "--d", "2", "--kappa", "10"])), 3);
    assert_eq!(code(&qls(&["--config", path(&dir.path().join("missing.conf")), "cost", "--d", "2", "--kappa", "10"])), 3);
    assert_eq!(code(&qls(&["--epsilon", "0", "cost", "--d", "2", "--kappa", "10"])), 3);
    assert_eq!(code(&qls(&["sweep", "--solvers", "grover"])), 3);
    assert_eq!(code(&qls(&["frobnicate"])), 3);
}

#[test]
fn config_file_sets_the_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# looser target\nepsilon = 1e-4\n").unwrap();
    let loose = qls(&["--config", path(&cfg), "cost", "--d", "4", "--kappa", "100", "--solvers", "qsvt"]);
    let tight = qls(&["cost", "--d", "4", "--kappa", "100", "--solvers", "qsvt"]);
    assert_eq!(code(&loose), 0);
    let value = |o: &Output| String::from_utf8_lossy(&o.stdout).lines().nth(1).unwrap().split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!(value(&loose) < value(&tight));
    // a flag overrides the file
    let flagged = qls(&["--config", path(&cfg), "--epsilon", "1e-8", "cost", "--d", "4", "--kappa", "100", "--solvers", "qsvt"]);
    assert_eq!(value(&flagged), value(&tight));
}

#[test]
fn report_converts_between_formats() {
    let dir = tempfile::tempdir().unwrap();
    small_set(dir.path());
    let out_dir = dir.path().join("out");
    assert_eq!(code(&qls(&["--out-dir", path(&out_dir), "sweep", path(&dir.path().join("inst"))])), 0);
    let json = dir.path().join("heat.json");
    assert_eq!(code(&qls(&["report", path(&out_dir.join(HEATMAP_CSV)), "--format", "json", "--output", path(&json)])), 0);
    let from_json = parse_heatmap_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let from_csv = read_heatmap_csv(std::fs::read(out_dir.join(HEATMAP_CSV)).unwrap().as_slice()).unwrap();
    assert_eq!(from_json, from_csv);
    let back = qls(&["report", path(&json), "--format", "csv"]);
    assert_eq!(code(&back), 0);
    assert_eq!(back.stdout, std::fs::read(out_dir.join(HEATMAP_CSV)).unwrap());
    let from_report = qls(&["report", path(&out_dir.join(REPORT_JSON)), "--format", "csv"]);
    assert_eq!(from_report.stdout, back.stdout);
}

#[test]
fn extract_simplex_writes_manifest_and_instances() {
    let dir = tempfile::tempdir().unwrap();
    let mps = dir.path().join("toy.mps");
    std::fs::write(&mps, qls_simplexer::fixtures::TOY).unwrap();
    let out_dir = dir.path().join("lp");
    let out = qls(&["--out-dir", path(&out_dir), "extract-simplex", path(&mps)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(out_dir.join("simplex_manifest.csv")).unwrap();
    assert_eq!(manifest.lines().next().unwrap(), "lp,iteration,phase,M,kappa_b,accepted,id,file");
    let accepted = manifest.lines().skip(1).filter(|l| l.contains(",true,")).count();
    assert!(accepted > 0);
    let analyzed = qls(&["--out-dir", path(&out_dir), "analyze", path(&out_dir)]);
    assert_eq!(code(&analyzed), 0);
    assert_eq!(std::fs::read_to_string(out_dir.join("metrics.csv")).unwrap().lines().count(), accepted + 1);
}

#[test]
fn validation_tables_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = qls(&["--out-dir", path(dir.path()), "--seed", "9", "qaa-validate", "--trials", "20000", "--cases", "1:1,0.5:0.5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("qaa_validate.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
    // the stated Fourier kernel grid fails its bound, so the suite reports a partial failure
    let out = qls(&["--out-dir", path(dir.path()), "validate-approx", "--grid", "2000"]);
    assert_eq!(code(&out), 2);
    let table = std::fs::read_to_string(dir.path().join("validate_approx.csv")).unwrap();
    let failing: Vec<&str> = table.lines().filter(|l| l.ends_with(",false")).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(failing, ["fourier_kernel"]);
}
