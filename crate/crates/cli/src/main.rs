use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use domce_core::exact::{exact_min, ExactOutcome, DEFAULT_BUDGET};
use domce_core::harness::{
    parse_suite, records_to_json, run_benchmark, solve_instance, write_records_csv, InstanceSource,
    KnownOptima, LoadedInstance, RunStatus,
};
use domce_core::io::export_instance;
use domce_core::{CeParams, VariantKind};

#[derive(Parser)]
#[command(
    name = "domce",
    version,
    about = "Cross-entropy solver for domination variants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best-of-k cross-entropy runs on one instance.
    Solve(SolveArgs),
    /// Exact minimum by exhaustive search (small graphs only).
    Exact(ExactArgs),
    /// Run every instance of a suite file and write result tables.
    Bench(BenchArgs),
    /// Write a generated instance as an edge-list file.
    Gen(GenArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InstanceArgs {
    /// Instance file, or `bundled:zachary` / `bundled:lesmis`.
    #[arg(long)]
    instance: Option<String>,
    /// Generator spec: grid:RxC, snark:K, udg:C-R-M-N_S, er:N-P_S, random:N_D.
    #[arg(long)]
    generate: Option<String>,
}

impl InstanceArgs {
    fn load(&self) -> Result<LoadedInstance> {
        let source = match (&self.instance, &self.generate) {
            (Some(text), _) => text.parse::<InstanceSource>()?,
            (None, Some(spec)) => InstanceSource::Generated(spec.parse()?),
            (None, None) => unreachable!("clap enforces one instance argument"),
        };
        source.load().with_context(|| format!("loading {source}"))
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Sets generated per iteration.
    #[arg(long = "N", default_value_t = 100)]
    samples: usize,
    /// Elite set size.
    #[arg(long = "M", default_value_t = 10)]
    elite: usize,
    #[arg(long, default_value_t = 0.01)]
    rho: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    /// Stop after this many iterations without improvement.
    #[arg(long = "r", default_value_t = 20)]
    stagnation: usize,
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
    /// Comma-separated seed list; overrides --runs.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// Number of runs, using seeds 0..runs.
    #[arg(long, default_value_t = 10)]
    runs: u64,
}

impl ParamArgs {
    fn params(&self) -> CeParams {
        CeParams {
            samples: self.samples,
            elite: self.elite,
            rho: self.rho,
            alpha: self.alpha,
            stagnation_limit: self.stagnation,
            max_iterations: self.max_iterations,
        }
    }

    fn seeds(&self) -> Vec<u64> {
        self.seeds
            .clone()
            .unwrap_or_else(|| (0..self.runs).collect())
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value = "dom")]
    variant: VariantKind,
    #[command(flatten)]
    params: ParamArgs,
    /// Known-optima JSON (defaults to the bundled table).
    #[arg(long)]
    optima: Option<PathBuf>,
    /// CSV output path; a JSON copy is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value = "dom")]
    variant: VariantKind,
    /// Maximum number of subsets to test.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite file: one instance per line, optional variant list.
    #[arg(long)]
    suite: PathBuf,
    /// Known-optima JSON (defaults to the bundled table).
    #[arg(long)]
    optima: Option<PathBuf>,
    /// Variants for suite lines without their own list.
    #[arg(long, value_delimiter = ',', default_value = "dom,total,2dom,secure")]
    variants: Vec<VariantKind>,
    #[command(flatten)]
    params: ParamArgs,
    /// Output directory for results.csv, results.json and series.csv.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    generate: String,
    #[arg(long)]
    out: PathBuf,
}

fn load_optima(path: Option<&Path>) -> Result<KnownOptima> {
    match path {
        Some(p) => Ok(KnownOptima::read(p)?),
        None => Ok(KnownOptima::bundled()),
    }
}

fn solve(args: SolveArgs) -> Result<()> {
    let instance = args.instance.load()?;
    let optima = load_optima(args.optima.as_deref())?;
    let optimum = optima.get(&instance.name, args.variant);
    let record = solve_instance(
        &instance,
        args.variant,
        &args.params.params(),
        &args.params.seeds(),
        optimum,
    )?;
    if record.status == RunStatus::Infeasible {
        bail!(
            "{}: no {} set exists (the graph has an isolated vertex)",
            instance.name,
            args.variant
        );
    }

    let score = record.best_score.unwrap();
    match record.gap {
        Some(gap) => println!(
            "{} {}: best {} (optimum {}, gap {}) over {} runs, mean {:.3}s",
            record.instance,
            record.variant,
            score,
            record.optimum.unwrap(),
            gap,
            record.seeds.len(),
            record.mean_seconds
        ),
        None => println!(
            "{} {}: best {} over {} runs, mean {:.3}s",
            record.instance,
            record.variant,
            score,
            record.seeds.len(),
            record.mean_seconds
        ),
    }
    println!("set: {}", record.best_set_labels.join(" "));

    if let Some(out) = args.out {
        let file =
            std::fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
        write_records_csv(std::slice::from_ref(&record), file)?;
        let json = out.with_extension("json");
        std::fs::write(&json, records_to_json(&[record])?)
            .with_context(|| format!("writing {}", json.display()))?;
    }
    Ok(())
}

fn exact(args: ExactArgs) -> Result<()> {
    let instance = args.instance.load()?;
    match exact_min(&instance.graph, args.variant, args.budget)? {
        ExactOutcome::Optimal(result) => {
            println!(
                "{} {}: optimum {} ({} subsets tested)",
                instance.name, args.variant, result.optimum, result.explored
            );
            let labels: Vec<&str> = result
                .witness
                .iter()
                .map(|&v| instance.labels[v].as_str())
                .collect();
            println!("witness: {}", labels.join(" "));
        }
        ExactOutcome::Unknown {
            proven_lower_bound,
            upper_bound,
            explored,
        } => {
            println!(
                "{} {}: budget exhausted after {} subsets; optimum in [{}, {}]",
                instance.name,
                args.variant,
                explored,
                proven_lower_bound,
                upper_bound.score()
            );
        }
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.suite)
        .with_context(|| format!("reading {}", args.suite.display()))?;
    let base = args.suite.parent().unwrap_or(Path::new("."));
    let suite = parse_suite(&text, base)?;
    let optima = load_optima(args.optima.as_deref())?;
    let report = run_benchmark(
        &suite,
        &args.variants,
        &args.params.params(),
        &args.params.seeds(),
        Some(&optima),
    )?;
    for r in &report.records {
        let score = r
            .best_score
            .map_or_else(|| "inf".to_string(), |s| s.to_string());
        let opt = r.optimum.map_or_else(|| "-".to_string(), |s| s.to_string());
        let gap = r.gap.map_or_else(|| "-".to_string(), |s| s.to_string());
        println!(
            "{:<24} {:<7} CE {:>6} Sol {:>6} Gap {:>4}  {:.3}s",
            r.instance, r.variant, score, opt, gap, r.mean_seconds
        );
    }
    report.write(&args.out)?;
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    let spec = args
        .generate
        .parse::<domce_core::generators::InstanceSpec>()?;
    let generated = spec.build()?;
    let mut text = format!("# {}\n", generated.name);
    if let Some(seed) = generated.accepted_seed {
        text.push_str(&format!("# seed {seed}\n"));
    }
    text.push_str(&export_instance(&generated.graph));
    std::fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "{}: {} vertices, {} edges -> {}",
        generated.name,
        generated.graph.vertex_count(),
        generated.graph.edge_count(),
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Exact(args) => exact(args),
        Command::Bench(args) => bench(args),
        Command::Gen(args) => gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
