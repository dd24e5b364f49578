use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qls_benchcli::config::parse_solvers;
use qls_benchcli::extract::{extract_simplex, BasisRow};
use qls_benchcli::report::{heatmap_text, parse_heatmap_json, parse_report_json, write_file};
use qls_benchcli::sets::{poisson_set, random_set, write_set, RandomGrid, DEFAULT_POISSON_POINTS};
use qls_benchcli::tables::{approx_csv, qaa_csv, qaa_row_passes, DEFAULT_QAA_CASES};
use qls_benchcli::*;
use qls_costkit::{solver_cost, CostInputsF64};
use qls_generators::DEFAULT_MAX_DIM;
use qls_instances::{compute_metrics, save_instance};
use qls_simplexer::{parse_mps_file, ConditionPolicy, SystemKind};

#[derive(Parser, Debug)]
#[command(name = "qls", version, about = "Query-count benchmarks for quantum linear solvers")]
struct Cli {
    /// `key = value` settings file, applied before the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Multiply the QSVT count by the expected amplitude-amplification rounds.
    #[arg(long, global = true)]
    qsvt_qaa: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write random or Poisson instances and a manifest into the output directory.
    Generate {
        #[command(subcommand)]
        set: GenerateSet,
    },
    /// Run the simplex on MPS files and write the well-conditioned bases as instances.
    ExtractSimplex(ExtractArgs),
    /// Compute metrics of instance files.
    Analyze {
        /// Instance files or directories of `*.qls` files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Cost of one parameter set, printed as CSV.
    Cost(CostArgs),
    /// Cost every instance and bin the results.
    Sweep(SweepArgs),
    /// Crossvalidate the QAA expectation against Monte-Carlo.
    QaaValidate(QaaArgs),
    /// Check every approximation bound on dense grids.
    ValidateApprox {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Convert a heatmap table (heatmap CSV or report JSON) to CSV or JSON.
    Report {
        input: PathBuf,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateSet {
    /// Sparse Hermitian instances with a prescribed condition number and row degree
    Random {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        kappas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
        ds: Vec<usize>,
        /// Seeds per (kappa, d) cell, counted up from `--seed`.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
    /// Finite-difference Poisson matrices on D-dimensional grids
    Poisson {
        /// `D:m` pairs (dimension, points per axis); the default is a 20-instance family.
        #[arg(long, value_delimiter = ',', value_parser = parse_points)]
        points: Vec<(usize, usize)>,
        /// Refinement levels, `2^(r+1) - 1` points per axis; used with `--dims`.
        #[arg(long, value_delimiter = ',')]
        refine: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_n: usize,
    },
}

fn parse_points(s: &str) -> std::result::Result<(usize, usize), String> {
    let (d, m) = s.split_once(':').ok_or_else(|| format!("expected D:m, got {s:?}"))?;
    Ok((d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?, m.trim().parse().map_err(|e| format!("{s:?}: {e}"))?))
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(required = true)]
    mps: Vec<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1.0)]
    coeff: f64,
    #[arg(long, default_value_t = 3.0)]
    power: f64,
    /// Dilate `B^T y = c_B` instead of `B x = b`.
    #[arg(long)]
    transposed: bool,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    a_max: f64,
    #[arg(long, default_value_t = 1.0)]
    x_norm: f64,
    /// Comma-separated subset; all four by default.
    #[arg(long)]
    solvers: Option<String>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Instance files or directories of `*.qls` files.
    inputs: Vec<PathBuf>,
    #[arg(long)]
    solvers: Option<String>,
    #[arg(long, value_delimiter = ',')]
    kappa_bins: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    d_bins: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct QaaArgs {
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = qls_costkit::qaa::DEFAULT_GROWTH)]
    c: f64,
    /// `p:p0` pairs; the default covers five `p = p0` values and one gap case.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    cases: Vec<(f64, f64)>,
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (p, p0) = s.split_once(':').ok_or_else(|| format!("expected p:p0, got {s:?}"))?;
    Ok((p.trim().parse().map_err(|e| format!("{s:?}: {e}"))?, p0.trim().parse().map_err(|e| format!("{s:?}: {e}"))?))
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(eps) = cli.epsilon {
        cfg.sweep.epsilon = eps;
    }
    if let Some(dir) = &cli.out_dir {
        cfg.out_dir = dir.clone();
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(BenchError::Config("--threads must be positive".into()));
        }
        cfg.threads = Some(n);
    }
    if cli.qsvt_qaa {
        cfg.sweep.params.include_qaa_in_qsvt = true;
    }
    if let Command::Sweep(args) = &cli.command {
        if let Some(s) = &args.solvers {
            cfg.sweep.solvers = parse_solvers(s).map_err(BenchError::Config)?;
        }
        if let Some(k) = &args.kappa_bins {
            cfg.sweep.kappa_bins = Some(k.clone());
        }
        if let Some(d) = &args.d_bins {
            cfg.sweep.d_bins = Some(d.clone());
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn partial_if(failed: bool) -> i32 {
    if failed {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    }
}

fn generate(set: &GenerateSet, cfg: &RunConfig) -> Result<i32> {
    let written = match set {
        GenerateSet::Random { n, kappas, ds, seeds } => {
            let grid = RandomGrid { dim: *n, kappas: kappas.clone(), ds: ds.clone(), seeds: *seeds, base_seed: cfg.seed };
            random_set(&grid)?
        }
        GenerateSet::Poisson { points, refine, dims, max_n } => {
            let mut pairs = points.clone();
            for &dim in dims {
                pairs.extend(refine.iter().map(|&r| (dim, (1usize << (r + 1)) - 1)));
            }
            if pairs.is_empty() {
                pairs = DEFAULT_POISSON_POINTS.to_vec();
            }
            poisson_set(&pairs, *max_n)?
        }
    };
    write_set(&cfg.out_dir, &written)?;
    eprintln!("wrote {} instances to {}", written.len(), cfg.out_dir.display());
    Ok(EXIT_OK)
}

fn extract(args: &ExtractArgs, cfg: &RunConfig) -> Result<i32> {
    let policy = ConditionPolicy { coeff: args.coeff, power: args.power };
    let kind = if args.transposed { SystemKind::Transposed } else { SystemKind::Forward };
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| BenchError::io(&cfg.out_dir, e))?;
    let mut rows: Vec<BasisRow> = Vec::new();
    let mut failed = false;
    for path in &args.mps {
        let outcome = parse_mps_file(path).map_err(BenchError::from).and_then(|lp| extract_simplex(&lp, args.max_iter, &policy, kind, &cfg.sweep.metrics_config));
        match outcome {
            Ok(ex) => {
                for inst in &ex.instances {
                    save_instance(&cfg.out_dir.join(format!("{}.qls", inst.id)), inst)?;
                }
                eprintln!("{}: {:?}, objective {}, {} of {} bases accepted", path.display(), ex.status, ex.objective, ex.instances.len(), ex.bases.len());
                rows.extend(ex.bases);
            }
            Err(e) => {
                log::error!("{}: {e}", path.display());
                failed = true;
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    write_file(&cfg.out_dir.join("simplex_manifest.csv"), &String::from_utf8(bytes).expect("csv output is UTF-8"))?;
    Ok(partial_if(failed))
}

fn analyze(inputs: &[PathBuf], cfg: &RunConfig) -> Result<i32> {
    let paths = collect_instance_paths(inputs)?;
    let (mut instances, failures) = load_instances(&paths);
    instances.sort_by(|a, b| a.id.cmp(&b.id));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "source", "N", "d", "kappa", "a_max", "x_norm", "kappa_source"])?;
    let mut failed = !failures.is_empty();
    for inst in &instances {
        match compute_metrics(inst, cfg.sweep.metrics.mode(), &cfg.sweep.metrics_config) {
            Ok(m) => w.write_record([
                inst.id.clone(),
                inst.source.to_string(),
                m.dim.to_string(),
                m.sparsity_d.to_string(),
                m.kappa.to_string(),
                m.a_max.to_string(),
                m.x_norm.to_string(),
                m.kappa_source.as_str().to_string(),
            ])?,
            Err(e) => {
                log::error!("{}: {e}", inst.id);
                failed = true;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    let path = cfg.out_dir.join("metrics.csv");
    write_file(&path, &String::from_utf8(bytes).expect("csv output is UTF-8"))?;
    eprintln!("wrote {}", path.display());
    Ok(partial_if(failed))
}

fn cost(args: &CostArgs, cfg: &RunConfig) -> Result<i32> {
    let solvers = match &args.solvers {
        Some(s) => parse_solvers(s).map_err(BenchError::Config)?,
        None => cfg.sweep.solvers.clone(),
    };
    let inp = CostInputsF64 { d: args.d, kappa: args.kappa, a_max: args.a_max, x_norm: args.x_norm };
    let params = cfg.sweep.solver_params();
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["solver", "queries_log10", "base_queries_log10", "n_qaa", "t_hamsim", "alpha", "r_tilde", "j0", "s", "n_rect", "n_exp", "n_inv", "p", "p0", "warnings"])?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let optf = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for solver in solvers {
        let r = solver_cost(solver, &inp, &params)?;
        let g = r.degrees;
        w.write_record([
            solver.name().to_string(),
            r.queries_log10.to_string(),
            r.base_queries_log10.to_string(),
            r.n_qaa.to_string(),
            optf(r.hamsim_time_t),
            optf(r.alpha),
            opt(g.r_tilde),
            opt(g.j0),
            opt(g.s),
            opt(g.n_rect),
            opt(g.n_exp),
            opt(g.n_inv),
            r.p.to_string(),
            r.p0.to_string(),
            r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(EXIT_OK)
}

fn sweep(args: &SweepArgs, cfg: &RunConfig) -> Result<i32> {
    let paths = collect_instance_paths(&args.inputs)?;
    let (instances, load_failures) = load_instances(&paths);
    let mut outcome = run_sweep(&instances, &cfg.sweep)?;
    outcome.failures.extend(load_failures);
    outcome.failures.sort_by(|a, b| a.id.cmp(&b.id));
    write_sweep(&cfg.out_dir, &outcome, &cfg.sweep)?;
    eprintln!(
        "processed {} instances ({} failed, {} outside the bins) into {}",
        outcome.processed(),
        outcome.failures.len(),
        outcome.unbinned.len(),
        cfg.out_dir.display()
    );
    Ok(partial_if(!outcome.failures.is_empty()))
}

fn qaa_validate(args: &QaaArgs, cfg: &RunConfig) -> Result<i32> {
    let cases = if args.cases.is_empty() { DEFAULT_QAA_CASES.to_vec() } else { args.cases.clone() };
    let rows = qls_qaasim::crossvalidate(&cases, args.c, args.trials, cfg.seed)?;
    let path = cfg.out_dir.join("qaa_validate.csv");
    write_file(&path, &qaa_csv(&rows)?)?;
    let failed = rows.iter().filter(|r| !qaa_row_passes(r)).count();
    eprintln!("wrote {} ({} of {} cases failed)", path.display(), failed, rows.len());
    Ok(partial_if(failed > 0))
}

fn validate_approx(grid: usize, cfg: &RunConfig) -> Result<i32> {
    let rows = qls_polyapprox::validate_all(grid)?;
    let path = cfg.out_dir.join("validate_approx.csv");
    write_file(&path, &approx_csv(&rows)?)?;
    let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.check).collect();
    eprintln!("wrote {} ({} of {} checks failed{})", path.display(), failed.len(), rows.len(), if failed.is_empty() { String::new() } else { format!(": {}", failed.join(", ")) });
    Ok(partial_if(!failed.is_empty()))
}

fn report(input: &Path, format: Format, output: Option<&Path>) -> Result<i32> {
    let text = std::fs::read_to_string(input).map_err(|e| BenchError::io(input, e))?;
    let table = if input.extension().is_some_and(|x| x == "json") {
        match parse_report_json(&text) {
            Ok(r) => HeatmapTable { cells: r.heatmap },
            Err(_) => parse_heatmap_json(&text)?,
        }
    } else {
        read_heatmap_csv(text.as_bytes())?
    };
    let out = heatmap_text(&table, format)?;
    match output {
        Some(path) => write_file(path, &out)?,
        None => std::io::stdout().lock().write_all(out.as_bytes()).map_err(|e| BenchError::io("<stdout>", e))?,
    }
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = build_config(cli)?;
    with_threads(cfg.threads, || match &cli.command {
        Command::Generate { set } => generate(set, &cfg),
        Command::ExtractSimplex(args) => extract(args, &cfg),
        Command::Analyze { inputs } => analyze(inputs, &cfg),
        Command::Cost(args) => cost(args, &cfg),
        Command::Sweep(args) => sweep(args, &cfg),
        Command::QaaValidate(args) => qaa_validate(args, &cfg),
        Command::ValidateApprox { grid } => validate_approx(*grid, &cfg),
        Command::Report { input, format, output } => report(input, *format, output.as_deref()),
    })?
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
