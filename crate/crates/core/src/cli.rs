//! Command-line front end: `compute`, `curve`, `experiment` and `bench`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{
    read_graph_file, run_experiment, runtime_benchmark, write_outputs, write_runtime_csv,
    ExperimentConfig, NamedLayout, RuntimeSpec, RuntimeTable, ScalePolicy,
};
use crate::graph::Graph;
use crate::layout::Layout;
use crate::metrics::{evaluate, stress_curve, MetricId, MetricOptions};

/// Replaces the directory that output files are written to.
pub const OUT_DIR_ENV: &str = "GRAPH_STRESS_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECKS: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "graph-stress",
    version,
    about = "Stress metrics for graph layouts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score layouts of one graph.
    Compute(ComputeArgs),
    /// Metric value over a grid of scale factors.
    Curve(CurveArgs),
    /// Run the ordering experiment over a corpus.
    Experiment(ExperimentArgs),
    /// Measure how metric runtime grows with graph size.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct MetricFlags {
    /// Kamada-Kawai L0 (defaults to the largest drawing distance).
    #[arg(long)]
    l0: Option<f64>,
    /// Evaluate distance ratio stress on large graphs.
    #[arg(long)]
    force: bool,
}

impl MetricFlags {
    fn options(&self) -> Result<MetricOptions> {
        if let Some(l0) = self.l0 {
            if !(l0 > 0.0 && l0.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "--l0 must be positive, got {l0}"
                )));
            }
        }
        Ok(MetricOptions {
            kk_l0: self.l0,
            force: self.force,
        })
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Edge list or Matrix Market (.mtx) file.
    graph: PathBuf,
    /// Layout CSV files with columns id,x,y.
    #[arg(required = true)]
    layouts: Vec<PathBuf>,
    #[arg(long, default_value = "all")]
    metrics: String,
    #[arg(long, default_value = "as-is")]
    scale_policy: String,
    #[command(flatten)]
    metric_flags: MetricFlags,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct CurveArgs {
    graph: PathBuf,
    layout: PathBuf,
    #[arg(long, default_value = "ns")]
    metric: String,
    /// start:stop:count[:log|lin]
    #[arg(long, default_value = "0.1:10:100:log")]
    alpha_grid: String,
    #[command(flatten)]
    metric_flags: MetricFlags,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// TOML config; built-in defaults when omitted.
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    scale_policy: Option<String>,
    #[arg(long)]
    metrics: Option<String>,
    #[arg(long)]
    force: bool,
    /// Output directory.
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated ascending vertex counts.
    #[arg(long, default_value = "100,200,400,800")]
    sizes: String,
    #[arg(long, default_value = "ns")]
    metrics: String,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// Scale factors sampled by `curve`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl AlphaGrid {
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for AlphaGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("alpha grid '{s}': {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad("expected start:stop:count[:log|lin]"));
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad("bad start"))?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad("bad stop"))?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad("bad count"))?;
        let log = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(_) => return Err(bad("spacing must be log or lin")),
        };
        if !(start > 0.0 && start.is_finite() && stop.is_finite()) {
            return Err(bad("bounds must be positive and finite"));
        }
        if stop <= start {
            return Err(bad("stop must exceed start"));
        }
        if count < 2 {
            return Err(bad("count must be at least 2"));
        }
        Ok(AlphaGrid {
            start,
            stop,
            count,
            log,
        })
    }
}

/// Error annotated with the file it came from.
struct InputError {
    path: Option<PathBuf>,
    source: Error,
}

impl From<Error> for InputError {
    fn from(source: Error) -> Self {
        InputError { path: None, source }
    }
}

fn at(path: &Path) -> impl FnOnce(Error) -> InputError + '_ {
    move |source| InputError {
        path: Some(path.to_path_buf()),
        source,
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{}: {}", p.display(), self.source),
            None => write!(f, "{}", self.source),
        }
    }
}

fn out_dir_override() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Applies the output-directory override to a file path.
fn resolve_file(path: &Path) -> PathBuf {
    match (out_dir_override(), path.file_name()) {
        (Some(dir), Some(name)) => dir.join(name),
        _ => path.to_path_buf(),
    }
}

fn open_output(path: Option<&Path>) -> Result<(Box<dyn Write>, Option<PathBuf>)> {
    match path {
        Some(p) => {
            let p = resolve_file(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            Ok((Box::new(BufWriter::new(File::create(&p)?)), Some(p)))
        }
        None => Ok((Box::new(io::stdout().lock()), None)),
    }
}

struct LoadedGraph {
    graph: Graph,
    original_vertices: usize,
    original_ids: Vec<usize>,
}

fn load_graph(path: &Path) -> std::result::Result<LoadedGraph, InputError> {
    let full = read_graph_file(path).map_err(at(path))?;
    let lcc = full.largest_connected_component().map_err(at(path))?;
    if !lcc.is_identity() {
        log::warn!(
            "{}: kept largest component ({} of {} vertices)",
            path.display(),
            lcc.graph.vertex_count(),
            full.vertex_count()
        );
    }
    Ok(LoadedGraph {
        graph: lcc.graph,
        original_vertices: full.vertex_count(),
        original_ids: lcc.original_ids,
    })
}

fn load_layout(path: &Path, ids: &[usize]) -> std::result::Result<Layout, InputError> {
    let file = File::open(path).map_err(|e| at(path)(e.into()))?;
    Layout::read_csv_for(file, ids).map_err(at(path))
}

fn source_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Serialize)]
struct ComputeConfig<'a> {
    command: &'static str,
    graph: &'a Path,
    layouts: &'a [PathBuf],
    metrics: &'a [MetricId],
    scale_policy: ScalePolicy,
    l0: Option<f64>,
    force: bool,
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
    original_vertices: usize,
}

#[derive(Serialize)]
struct ScoreEntry {
    value: f64,
    alpha_min: Option<f64>,
    seconds: f64,
}

#[derive(Serialize)]
struct LayoutReport {
    name: String,
    path: PathBuf,
    max_drawing_distance: f64,
    metrics: BTreeMap<MetricId, ScoreEntry>,
}

#[derive(Serialize)]
struct ComputeReport<'a> {
    config: ComputeConfig<'a>,
    graph: GraphSummary,
    /// `remap[k]` is the input id of scored vertex `k`.
    remap: &'a [usize],
    layouts: Vec<LayoutReport>,
}

fn cmd_compute(args: &ComputeArgs) -> std::result::Result<i32, InputError> {
    let metrics = MetricId::parse_list(&args.metrics)?;
    let policy: ScalePolicy = args.scale_policy.parse()?;
    let opts = args.metric_flags.options()?;
    let loaded = load_graph(&args.graph)?;
    let d = loaded.graph.apsp().map_err(at(&args.graph))?;

    let mut layouts = Vec::new();
    for path in &args.layouts {
        let layout = load_layout(path, &loaded.original_ids)?;
        let named = policy
            .apply(&NamedLayout::new(source_name(path), layout))
            .map_err(at(path))?;
        let e = named.layout.pairwise_distances().map_err(at(path))?;
        let mut scores = BTreeMap::new();
        for &metric in &metrics {
            let start = Instant::now();
            let v = evaluate(metric, &e, &d, &opts).map_err(at(path))?;
            scores.insert(
                metric,
                ScoreEntry {
                    value: v.value,
                    alpha_min: v.alpha_min,
                    seconds: start.elapsed().as_secs_f64(),
                },
            );
        }
        layouts.push(LayoutReport {
            name: named.source,
            path: path.clone(),
            max_drawing_distance: e.max(),
            metrics: scores,
        });
    }

    let report = ComputeReport {
        config: ComputeConfig {
            command: "compute",
            graph: &args.graph,
            layouts: &args.layouts,
            metrics: &metrics,
            scale_policy: policy,
            l0: args.metric_flags.l0,
            force: args.metric_flags.force,
        },
        graph: GraphSummary {
            vertices: loaded.graph.vertex_count(),
            edges: loaded.graph.edge_count(),
            original_vertices: loaded.original_vertices,
        },
        remap: &loaded.original_ids,
        layouts,
    };
    let (mut out, _) = open_output(args.out.as_deref())?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(Error::from)?;
            writeln!(out).map_err(Error::from)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["layout", "metric", "value", "alpha_min", "seconds"])
                .map_err(Error::from)?;
            for l in &report.layouts {
                for (m, s) in &l.metrics {
                    w.write_record([
                        l.name.clone(),
                        m.to_string(),
                        s.value.to_string(),
                        s.alpha_min.map(|a| a.to_string()).unwrap_or_default(),
                        s.seconds.to_string(),
                    ])
                    .map_err(Error::from)?;
                }
            }
            w.flush().map_err(Error::from)?;
        }
    }
    out.flush().map_err(Error::from)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CurvePointOut {
    alpha: f64,
    value: f64,
}

#[derive(Serialize)]
struct CurveReport<'a> {
    graph: &'a Path,
    layout: &'a Path,
    metric: MetricId,
    grid: AlphaGrid,
    l0: Option<f64>,
    points: Vec<CurvePointOut>,
}

fn cmd_curve(args: &CurveArgs) -> std::result::Result<i32, InputError> {
    let metric: MetricId = args.metric.trim().parse()?;
    let grid: AlphaGrid = args.alpha_grid.parse()?;
    let opts = args.metric_flags.options()?;
    let loaded = load_graph(&args.graph)?;
    let d = loaded.graph.apsp().map_err(at(&args.graph))?;
    let layout = load_layout(&args.layout, &loaded.original_ids)?;
    let points =
        stress_curve(&layout, &d, metric, &grid.values(), &opts).map_err(at(&args.layout))?;

    let (mut out, _) = open_output(args.out.as_deref())?;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["alpha", "value"]).map_err(Error::from)?;
            for p in &points {
                w.write_record([p.alpha.to_string(), p.value.to_string()])
                    .map_err(Error::from)?;
            }
            w.flush().map_err(Error::from)?;
        }
        Format::Json => {
            let report = CurveReport {
                graph: &args.graph,
                layout: &args.layout,
                metric,
                grid,
                l0: args.metric_flags.l0,
                points: points
                    .iter()
                    .map(|p| CurvePointOut {
                        alpha: p.alpha,
                        value: p.value,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut out, &report).map_err(Error::from)?;
            writeln!(out).map_err(Error::from)?;
        }
    }
    out.flush().map_err(Error::from)?;
    Ok(EXIT_OK)
}

fn cmd_experiment(args: &ExperimentArgs) -> std::result::Result<i32, InputError> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path).map_err(at(path))?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(p) = &args.scale_policy {
        config.policy = p.parse()?;
    }
    if let Some(m) = &args.metrics {
        config.metrics = MetricId::parse_list(m)?;
    }
    config.force |= args.force;

    let outcome = run_experiment(&config)?;
    let dir = out_dir_override().unwrap_or_else(|| args.out.clone());
    let written = write_outputs(&outcome, &dir)?;

    println!(
        "{} graphs scored, {} failed (seed {}, {})",
        outcome.records.len(),
        outcome.failures.len(),
        config.seed,
        config.policy
    );
    for f in &outcome.failures {
        println!("  failed {}: {}", f.graph_id, f.message);
    }
    for check in &outcome.checks {
        println!("{}", check.verdict());
    }
    if let Some(rt) = &outcome.runtime {
        print_slopes(rt);
    }
    for path in &written {
        println!("wrote {}", path.display());
    }
    if outcome.failure_rate() > crate::experiment::MAX_FAILURE_RATE {
        eprintln!(
            "error: {:.0}% of trials failed",
            100.0 * outcome.failure_rate()
        );
        return Ok(EXIT_CHECKS);
    }
    Ok(if outcome.checks_passed() {
        EXIT_OK
    } else {
        EXIT_CHECKS
    })
}

fn print_slopes(rt: &RuntimeTable) {
    for (m, s) in &rt.slopes {
        println!("slope {m}: {s:.3}");
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad size '{t}'")))
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> std::result::Result<i32, InputError> {
    let spec = RuntimeSpec {
        sizes: parse_sizes(&args.sizes)?,
        metrics: MetricId::parse_list(&args.metrics)?,
        repetitions: args.reps,
        force: args.force,
    };
    let table = runtime_benchmark(&spec, args.seed)?;
    let (mut out, path) = open_output(args.out.as_deref())?;
    match args.format {
        Format::Csv => write_runtime_csv(&table, &mut out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &table).map_err(Error::from)?;
            writeln!(out).map_err(Error::from)?;
        }
    }
    out.flush().map_err(Error::from)?;
    if path.is_some() {
        print_slopes(&table);
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.source {
                Error::UnknownMetric(_) | Error::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_INPUT,
            }
        }
    }
}
