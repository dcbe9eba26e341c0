use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qiils::bench::time_sweeps;
use qiils::graph::{gen_regular, gen_torus, parse_gset, Graph};
use qiils::oracle::{brute_force_maxcut, MAX_BRUTE_FORCE};
use qiils::presets::{find_preset, BestKnownRegistry};
use qiils::report::{run_trials, TraceFile};
use qiils::tuning::{explore_csv, explore_grid, tune_lambda, Param, LAMBDA_BRACKET};
use qiils::{Algorithm, Error, SolverConfig};
use serde::Serialize;

/// MaxCut and Ising ground-state search with product-state iterated local
/// search.
#[derive(Parser)]
#[command(name = "qiils", version)]
struct Cli {
    /// Worker threads for trials and parallel kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded trials on one instance and write a trace file.
    Solve(SolveArgs),
    /// Choose lambda by golden-section search on the fitted decay rate.
    Tune(TuneArgs),
    /// Generate a random regular or toroidal instance in Gset format.
    Gen(GenArgs),
    /// Time sweeps and report the median and interquartile range.
    Bench(BenchArgs),
    /// Sweep one hyperparameter and emit mean relative-error curves as CSV.
    Explore(ExploreArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    U3r,
    W3r,
}

/// Hyperparameters shared by every solving command. Unset flags fall back
/// to the preset, then to the library defaults.
#[derive(Args, Clone, Default)]
struct ConfigArgs {
    #[arg(long)]
    algo: Option<Algorithm>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Perturbation strength.
    #[arg(long)]
    p: Option<f64>,
    /// Convergence tolerance.
    #[arg(long)]
    eps: Option<f64>,
    /// Sweep cap per iteration.
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
    /// QiIGS step size.
    #[arg(long)]
    tau: Option<f64>,
    /// LQA rescaling of the problem Hamiltonian.
    #[arg(long)]
    gamma: Option<f64>,
    /// LQA / GCS step size.
    #[arg(long)]
    eta: Option<f64>,
    /// Cap on total sweeps across all iterations.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start from a named preset.
    #[arg(long)]
    preset: Option<String>,
}

impl ConfigArgs {
    fn build(&self) -> qiils::Result<SolverConfig> {
        let mut cfg = SolverConfig::default();
        if let Some(name) = &self.preset {
            find_preset(name)?.apply(&mut cfg)?;
        }
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        if let Some(a) = self.algo {
            cfg.algo = a;
        }
        set(&mut cfg.lambda, self.lambda);
        set(&mut cfg.p, self.p);
        set(&mut cfg.epsilon, self.eps);
        set(&mut cfg.tau, self.tau);
        set(&mut cfg.gamma, self.gamma);
        if self.eta.is_some() {
            cfg.eta = self.eta;
        }
        if let Some(s) = self.sweeps {
            cfg.max_sweeps = s;
        }
        if let Some(i) = self.iters {
            cfg.iterations = i;
        }
        if self.budget.is_some() {
            cfg.sweep_budget = self.budget;
            if self.iters.is_none() {
                cfg.iterations = usize::MAX;
            }
        }
        cfg.seed = self.seed;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Gset-format instance.
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Reference cut for relative errors and the solved count.
    #[arg(long)]
    best_known: Option<f64>,
    /// Extra `name = value` best-known entries (TOML).
    #[arg(long)]
    registry: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct InstanceArgs {
    /// Gset-format instances (repeatable).
    #[arg(long, conflicts_with = "family")]
    graph: Vec<PathBuf>,
    /// Random 3-regular ensemble instead of files.
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Seed of the first generated instance.
    #[arg(long, default_value_t = 0)]
    instance_seed: u64,
}

impl InstanceArgs {
    /// `(name, graph)` pairs.
    fn load(&self) -> Result<Vec<(String, Graph)>, CliError> {
        if let Some(family) = self.family {
            let weighted = matches!(family, Family::W3r);
            return (0..self.count as u64)
                .map(|i| {
                    let seed = self.instance_seed + i;
                    Ok((
                        format!("3r-{}-{seed}", self.n),
                        gen_regular(self.n, 3, weighted, seed)?,
                    ))
                })
                .collect();
        }
        if self.graph.is_empty() {
            return Err(CliError::Usage("give --graph FILE or --family".into()));
        }
        self.graph
            .iter()
            .map(|p| Ok((instance_name(p), read_graph(p)?)))
            .collect()
    }
}

#[derive(Args)]
struct TuneArgs {
    #[command(flatten)]
    instances: InstanceArgs,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = LAMBDA_BRACKET.0)]
    lo: f64,
    #[arg(long, default_value_t = LAMBDA_BRACKET.1)]
    hi: f64,
    /// Final bracket width.
    #[arg(long, default_value_t = 0.01)]
    tol: f64,
    /// Write the full report as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, required_unless_present = "torus")]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Uniform (0, 1] weights instead of unit weights.
    #[arg(long)]
    weighted: bool,
    /// Periodic ROWSxCOLS lattice with ±1 couplings instead.
    #[arg(long, conflicts_with_all = ["n", "weighted"])]
    torus: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "qiils")]
    algo: Algorithm,
    #[arg(long, default_value_t = 100)]
    sweeps: usize,
    #[arg(long, default_value_t = 100)]
    repeats: usize,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Step size: tau for QiIGS, eta for LQA and GCS.
    #[arg(long, default_value_t = 0.1)]
    step: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of a one-line summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    instances: InstanceArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Hyperparameter to vary.
    #[arg(long)]
    param: Param,
    /// Comma-separated values.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Reference cut for file instances; generated ones use brute force.
    #[arg(long)]
    best_known: Option<f64>,
    #[arg(long)]
    registry: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::PresetData(_) => {
                CliError::Io(msg)
            }
            Error::NotNormalized(_) | Error::Degenerate(_) | Error::NoConvergence(_) => {
                CliError::Numeric(msg)
            }
            _ => CliError::Usage(msg),
        }
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_gset(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn registry(extra: Option<&Path>) -> Result<BestKnownRegistry, CliError> {
    let mut r = BestKnownRegistry::shipped();
    if let Some(path) = extra {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        r.merge_toml(&text)?;
    }
    Ok(r)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let cfg = args.config.build()?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let g = read_graph(&args.graph)?;
    let name = instance_name(&args.graph);
    let best_known = match args.best_known {
        Some(v) if !(v > 0.0) => return Err(Error::NonPositiveBestKnown(v).into()),
        Some(v) => Some(v),
        None => registry(args.registry.as_deref())?.get(&name),
    };
    let runs = run_trials(&g, &cfg, args.trials)?;
    let file = TraceFile::new(name, &cfg, runs, best_known);
    let text = match args.format {
        Format::Json => {
            let mut s = file.to_json()?;
            s.push('\n');
            s
        }
        Format::Csv => file.to_csv(),
    };
    write_output(args.out.as_deref(), &text)?;
    let s = &file.summary;
    let mut line = format!("{}: best {} avg {}", file.instance, s.best, s.avg);
    if let (Some(solved), Some(bk)) = (s.solved, s.best_known) {
        line += &format!(" solved {solved}/{} (best known {bk})", s.trials);
    }
    eprintln!("{line}");
    Ok(())
}

fn tune(args: TuneArgs) -> Result<(), CliError> {
    let base = args.config.build()?;
    let graphs: Vec<Graph> = args.instances.load()?.into_iter().map(|(_, g)| g).collect();
    let report = tune_lambda(&graphs, &base, args.trials, args.lo, args.hi, args.tol)?;
    let mut text = format!("lambda* = {}\n", report.lambda);
    if report.fallback {
        text += "(a decay fit failed; lambda* is the probe with the lowest final energy)\n";
    }
    text += "lambda,decay_rate,mean_final_energy\n";
    for p in &report.probes {
        let rate = p
            .decay_rate()
            .map_or_else(|| "nan".to_string(), |m| m.to_string());
        text += &format!("{},{rate},{}\n", p.lambda, p.mean_final_energy);
    }
    write_output(None, &text)?;
    if let Some(out) = &args.out {
        write_output(Some(out), &to_json(&report)?)?;
    }
    Ok(())
}

fn parse_torus(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--torus expects ROWSxCOLS, got {spec:?}"));
    let (r, c) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        c.trim().parse().map_err(|_| bad())?,
    ))
}

fn gen(args: GenArgs) -> Result<(), CliError> {
    let g = match (&args.torus, args.n) {
        (Some(spec), _) => {
            let (rows, cols) = parse_torus(spec)?;
            gen_torus(rows, cols, args.seed)?
        }
        (None, Some(n)) => gen_regular(n, args.d, args.weighted, args.seed)?,
        (None, None) => unreachable!("clap requires --n or --torus"),
    };
    write_output(args.out.as_deref(), &g.to_gset())
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let g = read_graph(&args.graph)?;
    let param = if args.algo == Algorithm::Lqa {
        args.gamma
    } else {
        args.lambda
    };
    let t = time_sweeps(
        &g,
        args.algo,
        param,
        args.step,
        args.sweeps,
        args.repeats,
        args.seed,
    )?;
    let text = if args.json {
        to_json(&t)?
    } else {
        format!(
            "{} {}: median {:.6} ms/sweep, IQR {:.6} ms over {} repeats of {} sweeps\n",
            instance_name(&args.graph),
            t.algo,
            t.median_ms,
            t.iqr_ms,
            t.repeats,
            t.sweeps
        )
    };
    write_output(None, &text)?;
    if t.max_field_drift >= 1e-9 || t.max_energy_drift >= 1e-9 {
        return Err(CliError::Numeric(format!(
            "field-cache audit failed: field drift {:e}, energy drift {:e}",
            t.max_field_drift, t.max_energy_drift
        )));
    }
    Ok(())
}

fn explore(args: ExploreArgs) -> Result<(), CliError> {
    let base = args.config.build()?;
    let reg = registry(args.registry.as_deref())?;
    let generated = args.instances.family.is_some();
    let mut instances = Vec::new();
    for (name, g) in args.instances.load()? {
        let reference = if generated {
            if g.n() > MAX_BRUTE_FORCE {
                return Err(CliError::Usage(format!(
                    "generated instances need n <= {MAX_BRUTE_FORCE} for a brute-force reference"
                )));
            }
            brute_force_maxcut(&g)?.value
        } else {
            args.best_known.or_else(|| reg.get(&name)).ok_or_else(|| {
                CliError::Usage(format!("no reference cut for {name}; pass --best-known"))
            })?
        };
        instances.push((g, reference));
    }
    let rows = explore_grid(&instances, args.param, &args.values, &base, args.trials)?;
    write_output(args.out.as_deref(), &explore_csv(&rows))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Tune(a) => tune(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
        Command::Explore(a) => explore(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
