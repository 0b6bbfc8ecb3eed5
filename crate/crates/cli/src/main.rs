use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use maxclique::bench::{
    goldilocks_filter, instance_name, render_machine_ratios, render_summary, run_benchmark, InstanceSource,
    ResultTable, TimeDisplay,
};
use maxclique::calibration::{audit_rescaling, compute_scaling_factor, empirical_ratio};
use maxclique::graph::RandomSpec;
use maxclique::{
    max_clique, read_dimacs_file, write_dimacs, Algorithm, CalibrationError, CalibrationProfile, DimacsError,
    ResultsError, ScalingFactor, SearchConfig, SolverError, Status,
};

#[derive(Parser)]
#[command(name = "maxclique", version, about = "Exact maximum clique search and benchmarking")]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a maximum clique, or decide whether one of size k exists.
    Solve(SolveArgs),
    /// Time algorithms over a set of instances.
    Bench(BenchArgs),
    /// Write a seeded random graph in DIMACS format.
    Gen(GenArgs),
    /// Scaling factor between two calibration profiles.
    Calibrate(CalibrateArgs),
    /// Compare rescaled predictions with measured reference times.
    Audit(AuditArgs),
    /// Print a saved results table.
    Report(ReportArgs),
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Alg::Bbmc)]
    algorithm: Alg,
    /// Seconds before giving up.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Stop once a clique of this size is found.
    #[arg(long, value_name = "K")]
    target: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// DIMACS files or directories of `.clq` files.
    #[arg(long, num_args = 1.., value_name = "PATH")]
    instances: Vec<PathBuf>,
    /// Seeded random instances as `n,p,seed`.
    #[arg(long, value_name = "N,P,SEED")]
    random: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Alg::Mcsa, Alg::Bbmc])]
    algorithms: Vec<Alg>,
    #[arg(long, default_value_t = 1)]
    repeats: u32,
    /// Lower edge of the displayed window, seconds.
    #[arg(long, default_value_t = 1.0, value_name = "SECONDS")]
    min_time: f64,
    /// Upper edge of the displayed window, seconds.
    #[arg(long, default_value_t = 14400.0, value_name = "SECONDS")]
    max_time: f64,
    /// Per-run limit, seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Where to save the unfiltered results (JSON).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Label for this machine; defaults to the hostname.
    #[arg(long)]
    machine: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Profile of the reference machine (JSON).
    #[arg(long)]
    reference: PathBuf,
    /// Profile of the machine whose times get rescaled.
    #[arg(long)]
    target: PathBuf,
    /// Leading workload entries to ignore.
    #[arg(long, default_value_t = 2)]
    drop: usize,
}

#[derive(Args)]
struct AuditArgs {
    /// Scaling factor to apply to target times.
    #[arg(long, conflicts_with_all = ["reference_profile", "target_profile"])]
    factor: Option<f64>,
    /// Derive the factor from calibration profiles instead.
    #[arg(long, requires = "target_profile")]
    reference_profile: Option<PathBuf>,
    #[arg(long, requires = "reference_profile")]
    target_profile: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    drop: usize,
    #[arg(long)]
    reference_results: PathBuf,
    #[arg(long)]
    target_results: PathBuf,
    #[arg(long, value_enum, default_value_t = Alg::Mcsa)]
    algorithm: Alg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ReportArgs {
    /// Results file: JSON, or CSV when it ends in `.csv`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Layout::Summary)]
    layout: Layout,
    /// Show times to the millisecond instead of whole seconds.
    #[arg(long)]
    precise: bool,
    /// Restrict to one machine.
    #[arg(long)]
    machine: Option<String>,
    /// Apply the time window before printing.
    #[arg(long, value_name = "SECONDS")]
    min_time: Option<f64>,
    #[arg(long, value_name = "SECONDS")]
    max_time: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Mcsa,
    Bbmc,
}

impl From<Alg> for Algorithm {
    fn from(a: Alg) -> Self {
        match a {
            Alg::Mcsa => Algorithm::Mcsa,
            Alg::Bbmc => Algorithm::Bbmc,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Layout {
    /// One row per instance and machine.
    Summary,
    /// MCSa/BBMC ratio per instance, one column per machine.
    Machines,
}

/// Failure carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Parse(anyhow::Error),
    Timeout,
    Internal(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Timeout => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) | Failure::Parse(e) | Failure::Internal(e) => {
                // library errors already embed their cause in the message
                let mut shown = e.to_string();
                for cause in e.chain().skip(1) {
                    let c = cause.to_string();
                    if !shown.contains(&c) {
                        shown = format!("{shown}: {c}");
                    }
                }
                f.write_str(&shown)
            }
            Failure::Timeout => f.write_str("time limit reached"),
        }
    }
}

impl From<DimacsError> for Failure {
    fn from(e: DimacsError) -> Self {
        match e {
            DimacsError::Io { .. } => Failure::Usage(e.into()),
            _ => Failure::Parse(e.into()),
        }
    }
}

impl From<ResultsError> for Failure {
    fn from(e: ResultsError) -> Self {
        match e {
            ResultsError::Malformed { .. }
            | ResultsError::VersionMismatch { .. }
            | ResultsError::DuplicateRecord { .. } => Failure::Parse(e.into()),
            ResultsError::Io { .. } | ResultsError::ZeroRepeats | ResultsError::InvalidWindow => {
                Failure::Usage(e.into())
            }
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<CalibrationError> for Failure {
    fn from(e: CalibrationError) -> Self {
        match e {
            CalibrationError::Malformed { .. } => Failure::Parse(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::TargetOutOfRange { .. } | SolverError::NonPositiveTimeLimit => Failure::Usage(e.into()),
            _ => Failure::Internal(e.into()),
        }
    }
}

fn usage(msg: impl fmt::Display) -> Failure {
    Failure::Usage(anyhow::anyhow!("{msg}"))
}

fn seconds(s: f64, flag: &str) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| usage(format!("{flag} must be a positive number of seconds, got {s}")))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .with_context(|| format!("cannot write {}", p.display()))
            .map_err(Failure::Usage),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Internal(e.into()))
        }
    }
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let parsed = read_dimacs_file(&a.file)?;
    let g = parsed.graph;
    let mut cfg = SearchConfig::new(a.algorithm.into());
    if let Some(s) = a.time_limit {
        cfg = cfg.with_time_limit(seconds(s, "--time-limit")?);
    }
    if let Some(k) = a.target {
        if k == 0 || k > g.n() {
            return Err(SolverError::TargetOutOfRange { k, n: g.n() }.into());
        }
        cfg = cfg.with_target(k);
    }
    let r = max_clique(&g, &cfg)?;
    let labels: Vec<String> = r.clique.iter().map(|&v| g.label(v).to_string()).collect();
    let mut out = String::new();
    out += &format!("instance {}\n", instance_name(&a.file));
    out += &format!("n {}\nm {}\n", g.n(), g.edge_count());
    out += &format!("algorithm {}\n", Algorithm::from(a.algorithm));
    out += &format!("omega {}\n", r.omega);
    out += &format!("clique {}\n", labels.join(" "));
    out += &format!("expand {}\n", r.expand_calls);
    out += &format!("time {:.3}\n", r.elapsed.as_secs_f64());
    out += &format!("status {}\n", r.status);
    if let Some(k) = a.target {
        match r.status {
            Status::TargetReached => out += &format!("clique of size {k} found\n"),
            Status::Complete => out += &format!("no clique of size {k}\n"),
            Status::Timeout => out += &format!("undecided: no clique of size {k} found before the time limit\n"),
        }
    }
    write_out(None, &out)?;
    if r.status == Status::Timeout {
        return Err(Failure::Timeout);
    }
    Ok(())
}

fn collect_instances(paths: &[PathBuf]) -> Result<Vec<InstanceSource>, Failure> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inside: Vec<PathBuf> = std::fs::read_dir(p)
                .with_context(|| format!("cannot read {}", p.display()))
                .map_err(Failure::Usage)?
                .filter_map(Result::ok)
                .map(|e| e.path())
                .filter(|f| f.extension().is_some_and(|e| e.eq_ignore_ascii_case("clq")))
                .collect();
            inside.sort();
            files.extend(inside);
        } else if p.exists() {
            files.push(p.clone());
        } else {
            return Err(usage(format!("{} does not exist", p.display())));
        }
    }
    Ok(files.into_iter().map(InstanceSource::File).collect())
}

fn parse_random(spec: &str) -> Result<RandomSpec, Failure> {
    let bad = || usage(format!("--random expects n,p,seed, got `{spec}`"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n, p, seed] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(RandomSpec {
        n: n.parse().map_err(|_| bad())?,
        p: p.parse().map_err(|_| bad())?,
        seed: seed.parse().map_err(|_| bad())?,
    })
}

fn hostname() -> String {
    std::fs::read_to_string("/proc/sys/kernel/hostname")
        .ok()
        .or_else(|| std::env::var("HOSTNAME").ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

fn print_table(t: &ResultTable, format: Format, display: TimeDisplay) -> Result<(), Failure> {
    match format {
        Format::Table => write_out(None, &render_summary(t, display)),
        Format::Csv => t.write_csv(std::io::stdout().lock()).map_err(Failure::from),
    }
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let mut sources = collect_instances(&a.instances)?;
    for spec in &a.random {
        sources.push(InstanceSource::Random(parse_random(spec)?));
    }
    if sources.is_empty() {
        return Err(usage("no instances found"));
    }
    let algorithms: Vec<Algorithm> = a.algorithms.iter().map(|&x| x.into()).collect();
    let mut limits = SearchConfig::new(algorithms[0]);
    if let Some(s) = a.time_limit {
        limits = limits.with_time_limit(seconds(s, "--time-limit")?);
    }
    let window = (seconds(a.min_time, "--min-time")?, seconds(a.max_time, "--max-time")?);
    let machine = a.machine.unwrap_or_else(hostname);
    let table = run_benchmark(&sources, &algorithms, a.repeats, &limits, &machine)?;
    if let Some(path) = &a.output {
        table.save(path)?;
        log::info!("saved {} records to {}", table.len(), path.display());
    }
    for s in &table.metadata.skipped {
        eprintln!("skipped {}: {}", s.source, s.error);
    }
    let shown = goldilocks_filter(&table, window.0, window.1)?;
    let hidden = table.instances().len() - shown.instances().len();
    print_table(&shown, a.format, TimeDisplay::WholeSeconds)?;
    if hidden > 0 {
        eprintln!(
            "{hidden} instance(s) outside the {}s..{}s window not shown",
            a.min_time, a.max_time
        );
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let spec = RandomSpec {
        n: a.n,
        p: a.p,
        seed: a.seed,
    };
    let g = spec.generate().map_err(|e| Failure::Usage(e.into()))?;
    let mut text = format!("c {} generated with n={} p={} seed={}\n", spec.name(), a.n, a.p, a.seed);
    text += &write_dimacs(&g);
    write_out(a.output.as_deref(), &text)
}

fn load_profile(path: &Path, drop: usize) -> Result<CalibrationProfile, Failure> {
    Ok(CalibrationProfile::load(path)?.with_drop_count(drop))
}

fn calibrate(a: CalibrateArgs) -> Result<(), Failure> {
    let reference = load_profile(&a.reference, a.drop)?;
    let target = load_profile(&a.target, a.drop)?;
    for w in reference.warnings().into_iter().chain(target.warnings()) {
        eprintln!("warning: {w}");
    }
    let f = compute_scaling_factor(&reference, &target)?;
    write_out(
        None,
        &format!(
            "{} -> {}: {:.2} ({})\n",
            f.target_label, f.reference_label, f.value, f.value
        ),
    )
}

fn single_machine(t: &ResultTable, path: &Path) -> Result<String, Failure> {
    match t.machines().as_slice() {
        [m] => Ok(m.clone()),
        [] => Err(usage(format!("{} has no results", path.display()))),
        many => Err(usage(format!("{} mixes machines {many:?}", path.display()))),
    }
}

fn audit(a: AuditArgs) -> Result<(), Failure> {
    let reference = ResultTable::load(&a.reference_results)?;
    let target = ResultTable::load(&a.target_results)?;
    let (rl, tl) = (
        single_machine(&reference, &a.reference_results)?,
        single_machine(&target, &a.target_results)?,
    );
    let algorithm = a.algorithm.into();
    let factor = match (a.factor, &a.reference_profile, &a.target_profile) {
        (Some(f), _, _) => ScalingFactor::given(f, rl, tl)?,
        (None, Some(r), Some(t)) => compute_scaling_factor(&load_profile(r, a.drop)?, &load_profile(t, a.drop)?)?,
        _ => {
            // no factor: report the empirical one
            let r: f64 = empirical_ratio(&reference, &target, algorithm)?;
            ScalingFactor::given(r, rl, tl)?
        }
    };
    let report = audit_rescaling(&factor, &reference, &target, algorithm)?;
    match a.format {
        Format::Table => write_out(None, &report.render()),
        Format::Csv => report
            .write_csv(std::io::stdout().lock())
            .map_err(|e| Failure::Internal(e.into())),
    }
}

fn report(a: ReportArgs) -> Result<(), Failure> {
    let mut t = ResultTable::load(&a.input)?;
    if let Some(m) = &a.machine {
        t = t.for_machine(m);
        if t.is_empty() {
            return Err(usage(format!("no results for machine `{m}`")));
        }
    }
    if a.min_time.is_some() || a.max_time.is_some() {
        let lo = a
            .min_time
            .map_or(Ok(Duration::from_nanos(1)), |s| seconds(s, "--min-time"))?;
        let hi = a.max_time.map_or(Ok(Duration::MAX), |s| seconds(s, "--max-time"))?;
        t = goldilocks_filter(&t, lo, hi)?;
    }
    let display = if a.precise {
        TimeDisplay::Seconds3
    } else {
        TimeDisplay::WholeSeconds
    };
    match (a.layout, a.format) {
        (Layout::Summary, f) => print_table(&t, f, display),
        (Layout::Machines, Format::Table) => {
            write_out(None, &render_machine_ratios(&t, Algorithm::Mcsa, Algorithm::Bbmc)?)
        }
        (Layout::Machines, Format::Csv) => Err(usage("--layout machines supports only --format table")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Gen(a) => gen(a),
        Command::Calibrate(a) => calibrate(a),
        Command::Audit(a) => audit(a),
        Command::Report(a) => report(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Timeout) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
