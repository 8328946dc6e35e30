//! Benchmark harness: best-of-k runs per (instance, variant), result records
//! in CSV and JSON, and plot-ready series for the grid and snark families.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::engine::{ce_run, select_best, CeParams, RunResult};
use crate::error::{IoError, SolveError};
use crate::generators::InstanceSpec;
use crate::graph::{Graph, NeighborhoodTables, Vertex};
use crate::io::{parse_instance, read_instance};
use crate::variants::VariantKind;

/// Instances shipped with the crate, by name.
pub const BUNDLED: [(&str, &str); 2] = [
    ("zachary", include_str!("../data/zachary.txt")),
    ("lesmis", include_str!("../data/lesmis.txt")),
];

const BUNDLED_OPTIMA: &str = include_str!("../data/optima.json");

/// Where an instance comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Bundled(String),
    Generated(InstanceSpec),
}

impl FromStr for InstanceSource {
    type Err = IoError;

    /// `bundled:NAME`, `file:PATH`, a generator spec such as `grid:5x5`, or
    /// otherwise a bare file path.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("bundled:") {
            if BUNDLED.iter().any(|(n, _)| *n == name) {
                return Ok(InstanceSource::Bundled(name.to_string()));
            }
            return Err(IoError::Spec(format!("no bundled instance named '{name}'")));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(InstanceSource::File(path.into()));
        }
        if let Ok(spec) = s.parse::<InstanceSpec>() {
            return Ok(InstanceSource::Generated(spec));
        }
        Ok(InstanceSource::File(s.into()))
    }
}

impl fmt::Display for InstanceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSource::File(p) => write!(f, "file:{}", p.display()),
            InstanceSource::Bundled(name) => write!(f, "bundled:{name}"),
            InstanceSource::Generated(spec) => write!(f, "{spec}"),
        }
    }
}

/// A graph ready for solving, with its display name and vertex labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedInstance {
    pub name: String,
    pub graph: Graph,
    pub labels: Vec<String>,
    /// `(family, x)` for instances drawn as curves.
    pub series: Option<(String, usize)>,
}

impl InstanceSource {
    pub fn load(&self) -> Result<LoadedInstance, IoError> {
        match self {
            InstanceSource::File(path) => {
                let parsed = read_instance(path)?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                Ok(LoadedInstance {
                    name,
                    graph: parsed.graph,
                    labels: parsed.labels,
                    series: None,
                })
            }
            InstanceSource::Bundled(name) => {
                let (_, text) = BUNDLED
                    .iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| IoError::Spec(format!("no bundled instance named '{name}'")))?;
                let parsed = parse_instance(text).map_err(|source| IoError::Parse {
                    path: format!("bundled:{name}"),
                    source,
                })?;
                Ok(LoadedInstance {
                    name: name.clone(),
                    graph: parsed.graph,
                    labels: parsed.labels,
                    series: None,
                })
            }
            InstanceSource::Generated(spec) => {
                let generated = spec.build()?;
                let labels = generated.graph.vertices().map(|v| v.to_string()).collect();
                Ok(LoadedInstance {
                    name: generated.name,
                    graph: generated.graph,
                    labels,
                    series: spec.series_x().map(|x| (spec.family().to_string(), x)),
                })
            }
        }
    }
}

/// One suite line: an instance source and an optional variant override.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteEntry {
    pub source: InstanceSource,
    pub variants: Option<Vec<VariantKind>>,
}

/// Parses a suite file: one instance per line, optionally followed by a
/// comma-separated variant list. `#` starts a comment. Relative file paths
/// resolve against `base_dir`.
pub fn parse_suite(text: &str, base_dir: &Path) -> Result<Vec<SuiteEntry>, IoError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut source: InstanceSource = tokens.next().unwrap().parse()?;
        if let InstanceSource::File(path) = &mut source {
            if path.is_relative() {
                *path = base_dir.join(&*path);
            }
        }
        let variants = tokens
            .next()
            .map(|list| {
                list.split(',')
                    .map(|v| v.parse::<VariantKind>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| IoError::Spec(format!("suite line {}: {e}", i + 1)))
            })
            .transpose()?;
        if tokens.next().is_some() {
            return Err(IoError::Spec(format!(
                "suite line {}: trailing tokens",
                i + 1
            )));
        }
        entries.push(SuiteEntry { source, variants });
    }
    Ok(entries)
}

/// Known optimal values: instance name → variant → value.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KnownOptima(BTreeMap<String, BTreeMap<VariantKind, usize>>);

impl KnownOptima {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Grid, flower snark and literature values shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_OPTIMA).expect("bundled optima are valid JSON")
    }

    pub fn get(&self, instance: &str, kind: VariantKind) -> Option<usize> {
        self.0.get(instance)?.get(&kind).copied()
    }

    pub fn insert(&mut self, instance: &str, kind: VariantKind, value: usize) {
        self.0
            .entry(instance.to_string())
            .or_default()
            .insert(kind, value);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    /// No satisfying set exists (total domination with an isolated vertex).
    Infeasible,
}

/// Outcome of best-of-k runs for one (instance, variant) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub variant: VariantKind,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub samples: usize,
    #[serde(rename = "M")]
    pub elite: usize,
    pub rho: f64,
    pub alpha: f64,
    pub r: usize,
    pub seeds: Vec<u64>,
    pub status: RunStatus,
    pub best_score: Option<usize>,
    pub optimum: Option<usize>,
    /// `best_score - optimum`, when both are known.
    pub gap: Option<i64>,
    pub best_seed: Option<u64>,
    pub best_set: Vec<Vertex>,
    pub best_set_labels: Vec<String>,
    pub per_seed_scores: Vec<usize>,
    pub iterations: Vec<usize>,
    /// Wall-clock seconds of each run, millisecond resolution.
    pub run_seconds: Vec<f64>,
    pub mean_seconds: f64,
}

/// Columns holding wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 2] = ["run_seconds", "mean_seconds"];

/// Marker written in place of a score when no satisfying set exists.
pub const INFEASIBLE_MARK: &str = "∞";

fn round_ms(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

/// Runs the solver once per seed, timing each run, and summarizes the best.
pub fn solve_instance(
    instance: &LoadedInstance,
    kind: VariantKind,
    params: &CeParams,
    seeds: &[u64],
    optimum: Option<usize>,
) -> Result<ResultRecord, SolveError> {
    params.validate()?;
    if seeds.is_empty() {
        return Err(SolveError::NoSeeds);
    }
    let graph = &instance.graph;
    let mut record = ResultRecord {
        instance: instance.name.clone(),
        variant: kind,
        n: graph.vertex_count(),
        m: graph.edge_count(),
        samples: params.samples,
        elite: params.elite,
        rho: params.rho,
        alpha: params.alpha,
        r: params.stagnation_limit,
        seeds: seeds.to_vec(),
        status: RunStatus::Infeasible,
        best_score: None,
        optimum,
        gap: None,
        best_seed: None,
        best_set: Vec::new(),
        best_set_labels: Vec::new(),
        per_seed_scores: Vec::new(),
        iterations: Vec::new(),
        run_seconds: Vec::new(),
        mean_seconds: 0.0,
    };
    if !kind.is_feasible(graph) {
        return Ok(record);
    }

    let tables = NeighborhoodTables::new(graph);
    let mut runs: Vec<RunResult> = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let start = Instant::now();
        let run = ce_run(graph, &tables, kind, params, seed)?;
        record
            .run_seconds
            .push(round_ms(start.elapsed().as_secs_f64()));
        runs.push(run);
    }
    let best = &runs[select_best(&runs).unwrap()];

    record.status = RunStatus::Ok;
    record.best_score = Some(best.best_score());
    record.gap = optimum.map(|opt| best.best_score() as i64 - opt as i64);
    record.best_seed = Some(best.seed);
    record.best_set = best.best.members.clone();
    record.best_set_labels = best
        .best
        .members
        .iter()
        .map(|&v| instance.labels[v].clone())
        .collect();
    record.per_seed_scores = runs.iter().map(RunResult::best_score).collect();
    record.iterations = runs.iter().map(|r| r.iterations).collect();
    record.mean_seconds =
        round_ms(record.run_seconds.iter().sum::<f64>() / record.run_seconds.len() as f64);
    Ok(record)
}

/// Flat CSV form of a [`ResultRecord`]; list fields are space-separated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CsvRow {
    instance: String,
    variant: String,
    n: usize,
    m: usize,
    #[serde(rename = "N")]
    samples: usize,
    #[serde(rename = "M")]
    elite: usize,
    rho: f64,
    alpha: f64,
    r: usize,
    seeds: String,
    status: String,
    best_score: String,
    optimum: String,
    gap: String,
    best_seed: String,
    best_set: String,
    best_set_labels: String,
    per_seed_scores: String,
    iterations: String,
    run_seconds: String,
    mean_seconds: String,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn split<T: FromStr>(text: &str) -> Result<Vec<T>, IoError> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| IoError::Spec(format!("bad list entry '{t}'")))
        })
        .collect()
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn parse_opt<T: FromStr>(text: &str) -> Result<Option<T>, IoError> {
    if text.is_empty() || text == INFEASIBLE_MARK {
        return Ok(None);
    }
    text.parse()
        .map(Some)
        .map_err(|_| IoError::Spec(format!("bad value '{text}'")))
}

impl ResultRecord {
    fn to_row(&self) -> CsvRow {
        CsvRow {
            instance: self.instance.clone(),
            variant: self.variant.to_string(),
            n: self.n,
            m: self.m,
            samples: self.samples,
            elite: self.elite,
            rho: self.rho,
            alpha: self.alpha,
            r: self.r,
            seeds: join(&self.seeds),
            status: match self.status {
                RunStatus::Ok => "ok".into(),
                RunStatus::Infeasible => "infeasible".into(),
            },
            best_score: match self.status {
                RunStatus::Infeasible => INFEASIBLE_MARK.into(),
                RunStatus::Ok => opt(self.best_score),
            },
            optimum: opt(self.optimum),
            gap: opt(self.gap),
            best_seed: opt(self.best_seed),
            best_set: join(&self.best_set),
            best_set_labels: self.best_set_labels.join(" "),
            per_seed_scores: join(&self.per_seed_scores),
            iterations: join(&self.iterations),
            run_seconds: self
                .run_seconds
                .iter()
                .map(|s| format!("{s:.3}"))
                .collect::<Vec<_>>()
                .join(" "),
            mean_seconds: format!("{:.3}", self.mean_seconds),
        }
    }

    fn from_row(row: CsvRow) -> Result<Self, IoError> {
        Ok(Self {
            instance: row.instance,
            variant: row.variant.parse().map_err(IoError::Spec)?,
            n: row.n,
            m: row.m,
            samples: row.samples,
            elite: row.elite,
            rho: row.rho,
            alpha: row.alpha,
            r: row.r,
            seeds: split(&row.seeds)?,
            status: match row.status.as_str() {
                "ok" => RunStatus::Ok,
                "infeasible" => RunStatus::Infeasible,
                other => return Err(IoError::Spec(format!("bad status '{other}'"))),
            },
            best_score: parse_opt(&row.best_score)?,
            optimum: parse_opt(&row.optimum)?,
            gap: parse_opt(&row.gap)?,
            best_seed: parse_opt(&row.best_seed)?,
            best_set: split(&row.best_set)?,
            best_set_labels: row
                .best_set_labels
                .split_whitespace()
                .map(String::from)
                .collect(),
            per_seed_scores: split(&row.per_seed_scores)?,
            iterations: split(&row.iterations)?,
            run_seconds: split(&row.run_seconds)?,
            mean_seconds: row
                .mean_seconds
                .parse()
                .map_err(|_| IoError::Spec(format!("bad time '{}'", row.mean_seconds)))?,
        })
    }
}

pub fn write_records_csv<W: Write>(records: &[ResultRecord], writer: W) -> Result<(), IoError> {
    let mut csv = csv::Writer::from_writer(writer);
    for record in records {
        csv.serialize(record.to_row())?;
    }
    csv.flush().map_err(|source| IoError::File {
        path: "<csv>".into(),
        source,
    })?;
    Ok(())
}

pub fn read_records_csv(text: &str) -> Result<Vec<ResultRecord>, IoError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize::<CsvRow>()
        .map(|row| ResultRecord::from_row(row?))
        .collect()
}

pub fn records_to_json(records: &[ResultRecord]) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(records)?)
}

/// One point of a plot-ready series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub family: String,
    pub variant: VariantKind,
    pub x: usize,
    pub ce_best: Option<usize>,
    pub optimum: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub records: Vec<ResultRecord>,
    pub series: Vec<SeriesPoint>,
}

/// Runs every (instance, variant) pair of the suite in order.
pub fn run_benchmark(
    suite: &[SuiteEntry],
    default_variants: &[VariantKind],
    params: &CeParams,
    seeds: &[u64],
    optima: Option<&KnownOptima>,
) -> Result<BenchReport, IoError> {
    let mut report = BenchReport::default();
    for entry in suite {
        let instance = entry.source.load()?;
        let variants = entry.variants.as_deref().unwrap_or(default_variants);
        for &kind in variants {
            let optimum = optima.and_then(|o| o.get(&instance.name, kind));
            let record = solve_instance(&instance, kind, params, seeds, optimum)?;
            if let Some((family, x)) = &instance.series {
                report.series.push(SeriesPoint {
                    family: family.clone(),
                    variant: kind,
                    x: *x,
                    ce_best: record.best_score,
                    optimum,
                });
            }
            report.records.push(record);
        }
    }
    Ok(report)
}

impl BenchReport {
    /// Writes `results.csv`, `results.json` and `series.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), IoError> {
        let io_err = |path: &Path| {
            let path = path.display().to_string();
            move |source| IoError::File { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;

        let csv_path = dir.join("results.csv");
        let file = std::fs::File::create(&csv_path).map_err(io_err(&csv_path))?;
        write_records_csv(&self.records, file)?;

        let json_path = dir.join("results.json");
        std::fs::write(&json_path, records_to_json(&self.records)?).map_err(io_err(&json_path))?;

        let series_path = dir.join("series.csv");
        let mut csv = csv::Writer::from_path(&series_path)?;
        for point in &self.series {
            csv.serialize(point)?;
        }
        csv.flush().map_err(io_err(&series_path))?;
        Ok(())
    }
}
