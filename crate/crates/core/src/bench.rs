//! Benchmark grids, result tables and their text renderings.
//!
//! Timed runs are strictly sequential. Each record covers one solver call;
//! parsing and graph preparation happen outside the timed region. When a grid
//! is repeated, downstream consumers (filters, ratios, renderings) use the
//! median time per `(instance, algorithm, machine)`.
//!
//! Result files are JSON with a `schema_version` field:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "metadata": { "tool_version": "...", "timing": "...", ... },
//!   "records": [
//!     { "instance": "brock200_1", "algorithm": "bbmc", "machine_label": "cyprus",
//!       "repeat": 0, "omega": 21, "expand_calls": 524723, "time_ms": 812.4,
//!       "status": "COMPLETE", "seed_info": null, "timestamp": "2024-01-01T00:00:00Z" }
//!   ]
//! }
//! ```
//!
//! CSV export/import uses the header
//! `instance,algorithm,machine,omega,expand_calls,time_ms,status`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::ResultsError;
use crate::graph::{read_dimacs_file, Graph, RandomSpec};
use crate::solver::{max_clique, Algorithm, SearchConfig, Status};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: [&str; 7] = [
    "instance",
    "algorithm",
    "machine",
    "omega",
    "expand_calls",
    "time_ms",
    "status",
];

/// Default lower bound of the "just right" window.
pub const DEFAULT_MIN_TIME: Duration = Duration::from_secs(1);
/// Default upper bound of the "just right" window.
pub const DEFAULT_MAX_TIME: Duration = Duration::from_secs(4 * 60 * 60);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub machine_label: String,
    #[serde(default)]
    pub repeat: u32,
    pub omega: usize,
    pub expand_calls: u64,
    pub time_ms: f64,
    pub status: Status,
    #[serde(default)]
    pub seed_info: Option<RandomSpec>,
    #[serde(default)]
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedInstance {
    pub source: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub timing: String,
    pub aggregation: String,
    #[serde(default)]
    pub repeats: u32,
    #[serde(default)]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub time_limit_ms: Option<u64>,
    #[serde(default)]
    pub skipped: Vec<SkippedInstance>,
}

impl Default for Metadata {
    fn default() -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timing: "wall-clock, monotonic clock, solver call only".to_string(),
            aggregation: "median of repeats".to_string(),
            repeats: 1,
            algorithms: Vec::new(),
            time_limit_ms: None,
            skipped: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub schema_version: u32,
    pub metadata: Metadata,
    records: Vec<BenchmarkRecord>,
}

impl Default for ResultTable {
    fn default() -> Self {
        Self::new(Metadata::default())
    }
}

type RecordKey = (String, Algorithm, String, u32);

fn key_of(r: &BenchmarkRecord) -> RecordKey {
    (r.instance.clone(), r.algorithm, r.machine_label.clone(), r.repeat)
}

impl ResultTable {
    pub fn new(metadata: Metadata) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            metadata,
            records: Vec::new(),
        }
    }

    pub fn from_records(metadata: Metadata, records: Vec<BenchmarkRecord>) -> Result<Self, ResultsError> {
        let t = Self {
            schema_version: SCHEMA_VERSION,
            metadata,
            records,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn records(&self) -> &[BenchmarkRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn push(&mut self, record: BenchmarkRecord) -> Result<(), ResultsError> {
        let key = key_of(&record);
        if self.records.iter().any(|r| key_of(r) == key) {
            return Err(duplicate(key));
        }
        self.records.push(record);
        Ok(())
    }

    /// Checks the `(instance, algorithm, machine, repeat)` uniqueness rule.
    pub fn validate(&self) -> Result<(), ResultsError> {
        let mut seen = HashSet::new();
        for r in &self.records {
            let key = key_of(r);
            if !seen.insert(key.clone()) {
                return Err(duplicate(key));
            }
        }
        Ok(())
    }

    /// Records whose machine label equals `machine`.
    pub fn for_machine(&self, machine: &str) -> Self {
        self.retain(|r| r.machine_label == machine)
    }

    pub fn machines(&self) -> Vec<String> {
        unique_in_order(self.records.iter().map(|r| r.machine_label.clone()))
    }

    pub fn instances(&self) -> Vec<String> {
        unique_in_order(self.records.iter().map(|r| r.instance.clone()))
    }

    pub fn algorithms(&self) -> Vec<Algorithm> {
        unique_in_order(self.records.iter().map(|r| r.algorithm))
    }

    fn retain(&self, keep: impl Fn(&BenchmarkRecord) -> bool) -> Self {
        Self {
            schema_version: self.schema_version,
            metadata: self.metadata.clone(),
            records: self.records.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    /// One row per `(instance, algorithm, machine)` with the median time.
    pub fn summaries(&self) -> Vec<Summary> {
        let mut order: Vec<(String, Algorithm, String)> = Vec::new();
        let mut groups: HashMap<(String, Algorithm, String), Vec<&BenchmarkRecord>> = HashMap::new();
        for r in &self.records {
            let key = (r.instance.clone(), r.algorithm, r.machine_label.clone());
            groups
                .entry(key.clone())
                .or_insert_with(|| {
                    order.push(key);
                    Vec::new()
                })
                .push(r);
        }
        order
            .into_iter()
            .map(|key| {
                let rs = &groups[&key];
                let times: Vec<f64> = rs.iter().map(|r| r.time_ms).collect();
                let status = if rs.iter().any(|r| r.status == Status::Timeout) {
                    Status::Timeout
                } else {
                    rs[0].status
                };
                Summary {
                    instance: key.0,
                    algorithm: key.1,
                    machine: key.2,
                    omega: rs.iter().map(|r| r.omega).max().unwrap_or(0),
                    expand_calls: rs[0].expand_calls,
                    time_ms: median(&times),
                    status,
                    runs: rs.len(),
                }
            })
            .collect()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ResultsError> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self).map_err(|e| malformed(path, e))?;
        std::fs::write(path, text + "\n").map_err(|source| io(path, source))
    }

    /// Loads a JSON results file, or imports a CSV export when the path ends
    /// in `.csv`.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ResultsError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| io(path, source))?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            Self::read_csv(file).map_err(|e| match e {
                ResultsError::Malformed { message, .. } => malformed(path, message),
                other => other,
            })
        } else {
            Self::from_json_reader(file).map_err(|e| match e {
                ResultsError::Malformed { message, .. } => malformed(path, message),
                other => other,
            })
        }
    }

    pub fn from_json_reader<R: Read>(reader: R) -> Result<Self, ResultsError> {
        let value: serde_json::Value =
            serde_json::from_reader(reader).map_err(|e| malformed(Path::new("<json>"), e))?;
        let found = value
            .get("schema_version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| malformed(Path::new("<json>"), "missing schema_version"))?;
        if found != SCHEMA_VERSION as u64 {
            return Err(ResultsError::VersionMismatch {
                found: found as u32,
                expected: SCHEMA_VERSION,
            });
        }
        let table: Self = serde_json::from_value(value).map_err(|e| malformed(Path::new("<json>"), e))?;
        table.validate()?;
        Ok(table)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), ResultsError> {
        let mut w = csv::Writer::from_writer(writer);
        let to_err = |e: csv::Error| malformed(Path::new("<csv>"), e);
        w.write_record(CSV_HEADER).map_err(to_err)?;
        for r in &self.records {
            w.write_record([
                r.instance.as_str(),
                serde_plain_algorithm(r.algorithm),
                r.machine_label.as_str(),
                &r.omega.to_string(),
                &r.expand_calls.to_string(),
                &format_ms(r.time_ms),
                &r.status.to_string(),
            ])
            .map_err(to_err)?;
        }
        w.flush().map_err(|e| malformed(Path::new("<csv>"), e))?;
        Ok(())
    }

    /// Imports rows in the export layout. Repeat indices are assigned by
    /// order of appearance; blank `omega`/`expand_calls` read as 0.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self, ResultsError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let bad = |msg: String| malformed(Path::new("<csv>"), msg);
        let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
            return Err(bad(format!("expected header `{}`", CSV_HEADER.join(","))));
        }
        let mut table = ResultTable::default();
        let mut repeats: HashMap<(String, Algorithm, String), u32> = HashMap::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| bad(e.to_string()))?;
            let line = i + 2;
            let field = |k: usize| row.get(k).unwrap_or("");
            let algorithm: Algorithm = field(1).parse().map_err(|e| bad(format!("line {line}: {e}")))?;
            let count = |k: usize| -> Result<u64, ResultsError> {
                let s = field(k);
                if s.is_empty() {
                    return Ok(0);
                }
                s.parse()
                    .map_err(|_| bad(format!("line {line}: malformed {} `{s}`", CSV_HEADER[k])))
            };
            let time_ms: f64 = field(5)
                .parse()
                .ok()
                .filter(|t: &f64| t.is_finite() && *t >= 0.0)
                .ok_or_else(|| bad(format!("line {line}: malformed time_ms `{}`", field(5))))?;
            let status: Status = field(6).parse().map_err(|e| bad(format!("line {line}: {e}")))?;
            let group = (field(0).to_string(), algorithm, field(2).to_string());
            let repeat = repeats.entry(group).or_insert(0);
            table.push(BenchmarkRecord {
                instance: field(0).to_string(),
                algorithm,
                machine_label: field(2).to_string(),
                repeat: *repeat,
                omega: count(3)? as usize,
                expand_calls: count(4)?,
                time_ms,
                status,
                seed_info: None,
                timestamp: String::new(),
            })?;
            *repeat += 1;
        }
        table.metadata.repeats = repeats.values().copied().max().unwrap_or(1);
        table.metadata.algorithms = table.algorithms();
        Ok(table)
    }
}

fn serde_plain_algorithm(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Mcsa => "mcsa",
        Algorithm::Bbmc => "bbmc",
    }
}

fn format_ms(ms: f64) -> String {
    // shortest representation that round-trips
    format!("{ms}")
}

fn duplicate(key: RecordKey) -> ResultsError {
    ResultsError::DuplicateRecord {
        instance: key.0,
        algorithm: key.1.to_string(),
        machine: key.2,
        repeat: key.3,
    }
}

fn malformed(path: &Path, e: impl ToString) -> ResultsError {
    ResultsError::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn io(path: &Path, source: std::io::Error) -> ResultsError {
    ResultsError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn unique_in_order<T: Clone + Eq + std::hash::Hash>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut seen = HashSet::new();
    items.filter(|x| seen.insert(x.clone())).collect()
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Aggregate of all repeats for one `(instance, algorithm, machine)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub instance: String,
    pub algorithm: Algorithm,
    pub machine: String,
    pub omega: usize,
    pub expand_calls: u64,
    pub time_ms: f64,
    pub status: Status,
    pub runs: usize,
}

/// Where an instance comes from.
#[derive(Debug, Clone)]
pub enum InstanceSource {
    File(PathBuf),
    Random(RandomSpec),
    Graph { name: String, graph: Graph },
}

impl InstanceSource {
    pub fn describe(&self) -> String {
        match self {
            InstanceSource::File(p) => p.display().to_string(),
            InstanceSource::Random(spec) => spec.name(),
            InstanceSource::Graph { name, .. } => name.clone(),
        }
    }

    /// Instance name and graph.
    pub fn load(&self) -> Result<(String, Graph, Option<RandomSpec>), String> {
        match self {
            InstanceSource::File(p) => {
                let parsed = read_dimacs_file(p).map_err(|e| e.to_string())?;
                Ok((instance_name(p), parsed.graph, None))
            }
            InstanceSource::Random(spec) => spec
                .generate()
                .map(|g| (spec.name(), g, Some(*spec)))
                .map_err(|e| e.to_string()),
            InstanceSource::Graph { name, graph } => Ok((name.clone(), graph.clone(), None)),
        }
    }
}

/// File stem, e.g. `brock200_1` for `dir/brock200_1.clq`.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Canonical spelling for matching instance names across sources:
/// lowercase, `_` folded to `-`, `.clq` dropped.
pub fn normalize_instance_name(name: &str) -> String {
    let lower = name.to_ascii_lowercase();
    let stem = lower.strip_suffix(".clq").unwrap_or(&lower);
    stem.replace('_', "-")
}

/// Runs every `(instance, algorithm)` pair `repeats` times, one after
/// another, timing only the solver call.
///
/// Instances that fail to load are skipped and listed in the metadata. Any
/// `target_size` in `limits` is ignored so runs always solve to optimality.
pub fn run_benchmark(
    sources: &[InstanceSource],
    algorithms: &[Algorithm],
    repeats: u32,
    limits: &SearchConfig,
    machine: &str,
) -> Result<ResultTable, ResultsError> {
    if repeats == 0 {
        return Err(ResultsError::ZeroRepeats);
    }
    limits.validate()?;
    let mut table = ResultTable::new(Metadata {
        repeats,
        algorithms: algorithms.to_vec(),
        time_limit_ms: limits.time_limit.map(|d| d.as_millis() as u64),
        ..Metadata::default()
    });
    for source in sources {
        let (name, graph, seed_info) = match source.load() {
            Ok(loaded) => loaded,
            Err(error) => {
                log::error!("skipping {}: {error}", source.describe());
                table.metadata.skipped.push(SkippedInstance {
                    source: source.describe(),
                    error,
                });
                continue;
            }
        };
        for &algorithm in algorithms {
            let cfg = SearchConfig {
                algorithm,
                target_size: None,
                ..limits.clone()
            };
            for repeat in 0..repeats {
                let start = Instant::now();
                let result = max_clique(&graph, &cfg)?;
                let elapsed = start.elapsed();
                log::info!(
                    "{name} {algorithm} #{repeat}: omega {} expand {} {:.3}s {}",
                    result.omega,
                    result.expand_calls,
                    elapsed.as_secs_f64(),
                    result.status
                );
                table.push(BenchmarkRecord {
                    instance: name.clone(),
                    algorithm,
                    machine_label: machine.to_string(),
                    repeat,
                    omega: result.omega,
                    expand_calls: result.expand_calls,
                    time_ms: elapsed.as_secs_f64() * 1e3,
                    status: result.status,
                    seed_info,
                    timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                })?;
            }
        }
    }
    Ok(table)
}

/// Outcome of an untimed run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub instance: String,
    pub algorithm: Algorithm,
    pub omega: usize,
    pub expand_calls: u64,
    pub status: Status,
}

/// Untimed correctness sweep that spreads instances over worker threads.
/// Never use its output as timing data.
pub fn correctness_sweep(
    sources: &[InstanceSource],
    algorithms: &[Algorithm],
    limits: &SearchConfig,
    threads: usize,
) -> Vec<Result<SweepOutcome, String>> {
    let threads = threads.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Vec<Result<SweepOutcome, String>>> = vec![Vec::new(); sources.len()];
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(source) = sources.get(i) else { break };
                let outcomes = match source.load() {
                    Ok((name, graph, _)) => algorithms
                        .iter()
                        .map(|&algorithm| {
                            let cfg = SearchConfig {
                                algorithm,
                                target_size: None,
                                ..limits.clone()
                            };
                            max_clique(&graph, &cfg)
                                .map(|r| SweepOutcome {
                                    instance: name.clone(),
                                    algorithm,
                                    omega: r.omega,
                                    expand_calls: r.expand_calls,
                                    status: r.status,
                                })
                                .map_err(|e| e.to_string())
                        })
                        .collect(),
                    Err(e) => vec![Err(format!("{}: {e}", source.describe()))],
                };
                let _ = tx.send((i, outcomes));
            });
        }
        drop(tx);
        for (i, outcomes) in rx {
            slots[i] = outcomes;
        }
    });
    slots.into_iter().flatten().collect()
}

/// Keeps only instances that every algorithm in the table solved within
/// `[min_time, max_time]` on every machine.
pub fn goldilocks_filter(t: &ResultTable, min_time: Duration, max_time: Duration) -> Result<ResultTable, ResultsError> {
    if min_time >= max_time {
        return Err(ResultsError::InvalidWindow);
    }
    let (lo, hi) = (min_time.as_secs_f64() * 1e3, max_time.as_secs_f64() * 1e3);
    let algorithms = t.algorithms();
    let summaries = t.summaries();
    let keep: HashSet<String> = t
        .instances()
        .into_iter()
        .filter(|inst| {
            let rows: Vec<&Summary> = summaries.iter().filter(|s| &s.instance == inst).collect();
            let has_all = algorithms.iter().all(|a| rows.iter().any(|s| s.algorithm == *a));
            has_all
                && rows
                    .iter()
                    .all(|s| s.status == Status::Complete && s.time_ms >= lo && s.time_ms <= hi)
        })
        .collect();
    Ok(t.retain(|r| keep.contains(&r.instance)))
}

/// A ratio of two times, undefined when the denominator is under 1 ms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Value(f64),
    Undefined,
}

impl Ratio {
    pub fn of(numerator_ms: f64, denominator_ms: f64) -> Self {
        if denominator_ms < 1.0 {
            Ratio::Undefined
        } else {
            Ratio::Value(numerator_ms / denominator_ms)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Ratio::Value(v) => Some(v),
            Ratio::Undefined => None,
        }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ratio::Value(v) => write!(f, "{v:.2}"),
            Ratio::Undefined => f.write_str("<1ms, ratio undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub instance: String,
    pub machine: String,
    pub numerator_ms: f64,
    pub denominator_ms: f64,
    pub ratio: Ratio,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    pub numerator: Algorithm,
    pub denominator: Algorithm,
    pub rows: Vec<RatioRow>,
    /// Sum of numerator times over sum of denominator times.
    pub total: Ratio,
}

/// Per `(instance, machine)` time ratio `numerator / denominator`.
pub fn ratio_table(t: &ResultTable, numerator: Algorithm, denominator: Algorithm) -> Result<RatioTable, ResultsError> {
    let summaries = t.summaries();
    let find = |inst: &str, machine: &str, alg: Algorithm| {
        summaries
            .iter()
            .find(|s| s.instance == inst && s.machine == machine && s.algorithm == alg)
    };
    let mut pairs: Vec<(String, String)> = Vec::new();
    for s in &summaries {
        let key = (s.instance.clone(), s.machine.clone());
        if !pairs.contains(&key) {
            pairs.push(key);
        }
    }
    let mut rows = Vec::with_capacity(pairs.len());
    for (instance, machine) in pairs {
        let get = |alg: Algorithm| {
            find(&instance, &machine, alg)
                .map(|s| s.time_ms)
                .ok_or_else(|| ResultsError::MissingAlgorithm {
                    instance: instance.clone(),
                    algorithm: alg.to_string(),
                })
        };
        let (num, den) = (get(numerator)?, get(denominator)?);
        rows.push(RatioRow {
            ratio: Ratio::of(num, den),
            instance,
            machine,
            numerator_ms: num,
            denominator_ms: den,
        });
    }
    let total_num: f64 = rows.iter().map(|r| r.numerator_ms).sum();
    let total_den: f64 = rows.iter().map(|r| r.denominator_ms).sum();
    Ok(RatioTable {
        numerator,
        denominator,
        total: Ratio::of(total_num, total_den),
        rows,
    })
}

/// How per-algorithm times are displayed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimeDisplay {
    #[default]
    WholeSeconds,
    Seconds3,
}

impl TimeDisplay {
    fn show(self, ms: f64) -> String {
        match self {
            TimeDisplay::WholeSeconds => format!("{:.0}", ms / 1e3),
            TimeDisplay::Seconds3 => format!("{:.3}", ms / 1e3),
        }
    }
}

/// Aligned rows: instance, expand, ω, one time column per algorithm and,
/// when both solvers are present, the MCSa/BBMC ratio. A machine column is
/// added when the table mixes machines.
pub fn render_summary(t: &ResultTable, display: TimeDisplay) -> String {
    let algorithms: Vec<Algorithm> = Algorithm::ALL
        .into_iter()
        .filter(|a| t.algorithms().contains(a))
        .collect();
    let multi_machine = t.machines().len() > 1;
    let summaries = t.summaries();

    let mut header = vec!["instance".to_string()];
    if multi_machine {
        header.push("machine".into());
    }
    header.extend(["expand".to_string(), "omega".to_string()]);
    header.extend(algorithms.iter().map(|a| a.label().to_string()));
    let with_ratio = algorithms.len() == 2;
    if with_ratio {
        header.push("MCSa/BBMC".into());
    }

    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for s in &summaries {
        if !seen.insert((s.instance.clone(), s.machine.clone())) {
            continue;
        }
        let group: Vec<&Summary> = summaries
            .iter()
            .filter(|x| x.instance == s.instance && x.machine == s.machine)
            .collect();
        let mut row = vec![s.instance.clone()];
        if multi_machine {
            row.push(s.machine.clone());
        }
        let expands: BTreeSet<u64> = group.iter().map(|x| x.expand_calls).collect();
        let mut expand = expands.iter().map(u64::to_string).collect::<Vec<_>>().join("/");
        if expands.len() > 1 {
            expand.push('*');
        }
        row.push(expand);
        row.push(group.iter().map(|x| x.omega).max().unwrap_or(0).to_string());
        let mut times = Vec::new();
        for a in &algorithms {
            let cell = group.iter().find(|x| x.algorithm == *a);
            times.push(cell.map(|x| x.time_ms));
            row.push(match cell {
                Some(x) if x.status == Status::Timeout => format!(">{}", display.show(x.time_ms)),
                Some(x) => display.show(x.time_ms),
                None => "-".into(),
            });
        }
        if with_ratio {
            row.push(match (times[0], times[1]) {
                (Some(a), Some(b)) => Ratio::of(a, b).to_string(),
                _ => "-".into(),
            });
        }
        rows.push(row);
    }
    align(&header, &rows)
}

/// Instances down, machines across, `numerator / denominator` in each cell.
pub fn render_machine_ratios(
    t: &ResultTable,
    numerator: Algorithm,
    denominator: Algorithm,
) -> Result<String, ResultsError> {
    let ratios = ratio_table(t, numerator, denominator)?;
    let machines = t.machines();
    let mut header = vec!["instance".to_string()];
    header.extend(machines.iter().cloned());
    let rows: Vec<Vec<String>> = t
        .instances()
        .into_iter()
        .map(|inst| {
            let mut row = vec![inst.clone()];
            for m in &machines {
                row.push(
                    ratios
                        .rows
                        .iter()
                        .find(|r| r.instance == inst && &r.machine == m)
                        .map(|r| r.ratio.to_string())
                        .unwrap_or_else(|| "-".into()),
                );
            }
            row
        })
        .collect();
    Ok(align(&header, &rows))
}

pub(crate) fn align(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate().take(cols) {
            if i == 0 {
                let _ = write!(s, "{c:<w$}", w = widths[i]);
            } else {
                let _ = write!(s, "  {c:>w$}", w = widths[i]);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    for r in rows {
        line(r);
    }
    out
}
