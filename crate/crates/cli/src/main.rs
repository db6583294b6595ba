//! `smartsort`: generate inputs, sort key files, run size sweeps and fit
//! growth models from the command line.
//!
//! Exit codes: 0 on success, 1 on a data or runtime error, 2 on a usage error
//! (bad flags or flag values).

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use smartsort::baselines::oracle_sort;
use smartsort::experiment::fit::MIN_POINTS;
use smartsort::experiment::report::{read_results_csv, report};
use smartsort::experiment::table::ColumnTable;
use smartsort::experiment::{
    fit_all, fit_empirical_o, run_with_progress, ExperimentPlan, ExperimentResult, FitReport, Response, SeriesFit,
};
use smartsort::input_gen::{generate, DistributionSpec, Keys, Seed};
use smartsort::metrics::{measure_keys, Algorithm, Measurement};
use smartsort::{Counters, SortConfig};

#[derive(Debug, Parser)]
#[command(
    name = "smartsort",
    version,
    about = "Smart Sort laboratory: inputs, sorting, sweeps and growth-model fits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded key sequence.
    Gen(GenArgs),
    /// Sort a key file and print operation counts.
    Sort(SortArgs),
    /// Run a size sweep and write results, fits and figure data.
    Bench(BenchArgs),
    /// Fit growth models to one column of an `n,...` CSV table.
    Fit(FitArgs),
    /// Re-fit a saved results.csv and write fits and figure data.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Binary,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Distribution name, optionally with parameters (`binomial:m=200,p=0.3`).
    #[arg(long)]
    dist: String,
    /// Number of keys.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = ExperimentPlan::DEFAULT_SEED.0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Binomial trials.
    #[arg(long)]
    m: Option<String>,
    /// Binomial success probability.
    #[arg(long)]
    p: Option<String>,
    /// Poisson mean.
    #[arg(long)]
    lambda: Option<String>,
    /// Discrete uniform upper bound (keys in 1..=k).
    #[arg(long)]
    k: Option<String>,
    /// Continuous uniform lower bound.
    #[arg(long)]
    lo: Option<String>,
    /// Continuous uniform upper bound.
    #[arg(long)]
    hi: Option<String>,
    /// Exponential mean.
    #[arg(long)]
    theta: Option<String>,
    /// Normal mean.
    #[arg(long)]
    mu: Option<String>,
    /// Normal standard deviation.
    #[arg(long)]
    sigma: Option<String>,
}

impl GenArgs {
    fn spec(&self) -> anyhow::Result<DistributionSpec> {
        let mut spec: DistributionSpec = self.dist.parse()?;
        let params = [
            ("m", &self.m),
            ("p", &self.p),
            ("lambda", &self.lambda),
            ("k", &self.k),
            ("lo", &self.lo),
            ("hi", &self.hi),
            ("theta", &self.theta),
            ("mu", &self.mu),
            ("sigma", &self.sigma),
        ];
        for (key, value) in params {
            if let Some(value) = value {
                spec.set_param(key, value)?;
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SortAlgorithm {
    Smart,
    Quick,
    Heap,
    /// Reference merge sort; reports no counters.
    Oracle,
}

#[derive(Debug, Args)]
struct Thresholds {
    /// Left skew threshold, in [0, 0.5].
    #[arg(long, default_value_t = 0.01)]
    t1: f64,
    /// Right skew threshold, in [0, 0.5].
    #[arg(long, default_value_t = 0.01)]
    t2: f64,
}

impl Thresholds {
    fn config(&self) -> anyhow::Result<SortConfig> {
        Ok(SortConfig::new(self.t1, self.t2)?)
    }
}

#[derive(Debug, Args)]
struct SortArgs {
    /// Key file (text or binary); `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = SortAlgorithm::Smart)]
    algorithm: SortAlgorithm,
    #[command(flatten)]
    thresholds: Thresholds,
    /// Output file. When omitted the keys go to standard output and the
    /// summary to standard error.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Plan file; flags below override its entries.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Comma-separated sizes, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Distribution (repeatable), e.g. `--dist poisson --dist normal:sigma=2`.
    #[arg(long = "dist")]
    distributions: Vec<String>,
    /// Algorithm (repeatable): smart, quick or heap.
    #[arg(long = "algorithm")]
    algorithms: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
    /// Quantity the growth models are fitted to.
    #[arg(long, default_value = "mean_time", value_parser = parse_response)]
    response: Response,
    #[arg(long, env = "SMARTSORT_OUT", default_value = "smartsort-out")]
    out_dir: PathBuf,
    /// No progress on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// CSV whose first column is `n`.
    #[arg(long)]
    input: PathBuf,
    /// Response column to fit.
    #[arg(long)]
    column: String,
    /// Leave out the row with this `n` (repeatable).
    #[arg(long = "exclude-n")]
    exclude_n: Vec<f64>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// A results.csv written by `bench`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "mean_time", value_parser = parse_response)]
    response: Response,
    #[arg(long, env = "SMARTSORT_OUT", default_value = "smartsort-out")]
    out_dir: PathBuf,
}

fn parse_response(s: &str) -> Result<Response, String> {
    s.parse()
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

trait UsageContext<T> {
    fn usage(self) -> Result<T, Failure>;
}

impl<T> UsageContext<T> for anyhow::Result<T> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(Failure::Usage)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Sort(args) => cmd_sort(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Fit(args) => cmd_fit(&args),
        Command::Report(args) => cmd_report(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("smartsort: usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            eprintln!("smartsort: error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn open_output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_keys(keys: &Keys, format: Format, path: Option<&Path>) -> anyhow::Result<()> {
    let mut out = open_output(path)?;
    match format {
        Format::Text => keys.write_text(&mut out)?,
        Format::Binary => keys.write_binary(&mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let spec = args.spec().usage()?;
    let keys = generate(&spec, args.n, Seed(args.seed)).map_err(anyhow::Error::from)?;
    write_keys(&keys, args.format, args.out.as_deref())?;
    Ok(())
}

fn read_keys(path: &Path) -> anyhow::Result<Keys> {
    let keys = if path == Path::new("-") {
        Keys::read(io::stdin().lock())
    } else {
        Keys::read(File::open(path).with_context(|| format!("cannot open {}", path.display()))?)
    };
    keys.with_context(|| format!("reading {}", path.display()))
}

fn run_sort(algorithm: SortAlgorithm, keys: &mut Keys, config: &SortConfig) -> Measurement {
    let algorithm = match algorithm {
        SortAlgorithm::Smart => Algorithm::SmartSort,
        SortAlgorithm::Quick => Algorithm::QuicksortClassic,
        SortAlgorithm::Heap => Algorithm::HeapsortFloyd,
        SortAlgorithm::Oracle => {
            let start = Instant::now();
            match keys {
                Keys::Int(v) => oracle_sort(v),
                Keys::Real(v) => oracle_sort(v),
            }
            return Measurement {
                elapsed_s: start.elapsed().as_secs_f64(),
                counters: Counters::default(),
            };
        }
    };
    measure_keys(algorithm, keys, config)
}

fn write_summary<W: Write>(mut out: W, algorithm: SortAlgorithm, n: usize, m: &Measurement) -> io::Result<()> {
    let c = &m.counters;
    writeln!(out, "algorithm: {}", format!("{algorithm:?}").to_lowercase())?;
    writeln!(out, "n: {n}")?;
    writeln!(out, "elapsed_s: {:.6}", m.elapsed_s)?;
    writeln!(out, "comparisons: {}", c.comparisons)?;
    writeln!(out, "assignments: {}", c.assignments)?;
    writeln!(out, "partition_calls: {}", c.partition_calls)?;
    writeln!(out, "balance_activations: {}", c.balance_activations)?;
    writeln!(out, "root_exchanges: {}", c.root_exchanges)?;
    writeln!(out, "max_recursion_depth: {}", c.max_recursion_depth)
}

fn cmd_sort(args: &SortArgs) -> Result<(), Failure> {
    let config = args.thresholds.config().usage()?;
    let mut keys = read_keys(&args.input)?;
    let m = run_sort(args.algorithm, &mut keys, &config);
    write_keys(&keys, args.format, args.out.as_deref())?;
    let summary = match args.out {
        Some(_) => write_summary(io::stdout().lock(), args.algorithm, keys.len(), &m),
        None => write_summary(io::stderr().lock(), args.algorithm, keys.len(), &m),
    };
    summary.map_err(anyhow::Error::from)?;
    Ok(())
}

fn bench_plan(args: &BenchArgs) -> Result<ExperimentPlan, Failure> {
    let mut plan = match &args.plan {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read plan {}", path.display()))?;
            text.parse::<ExperimentPlan>()
                .with_context(|| format!("plan {}", path.display()))?
        }
        None => ExperimentPlan::desk(),
    };
    if let Some(sizes) = &args.sizes {
        plan.sizes = sizes.clone();
    }
    if let Some(trials) = args.trials {
        plan.trials = trials;
    }
    if !args.distributions.is_empty() {
        plan.distributions = args
            .distributions
            .iter()
            .map(|d| d.parse::<DistributionSpec>().map_err(|e| Failure::Usage(e.into())))
            .collect::<Result<_, _>>()?;
    }
    if !args.algorithms.is_empty() {
        plan.algorithms = args
            .algorithms
            .iter()
            .map(|a| a.parse::<Algorithm>().map_err(|e| Failure::Usage(anyhow!(e))))
            .collect::<Result<_, _>>()?;
    }
    if let Some(seed) = args.seed {
        plan.base_seed = Seed(seed);
    }
    if args.t1.is_some() || args.t2.is_some() {
        let t1 = args.t1.unwrap_or(plan.config.t1());
        let t2 = args.t2.unwrap_or(plan.config.t2());
        plan.config = SortConfig::new(t1, t2).map_err(|e| Failure::Usage(e.into()))?;
    }
    Ok(plan)
}

/// Fits every series, or none when the sweep has too few sizes to fit.
fn fits_for(result: &ExperimentResult, sizes: usize, response: Response) -> anyhow::Result<Vec<SeriesFit>> {
    if sizes < MIN_POINTS {
        eprintln!("smartsort: {sizes} size(s) per series; growth models need at least {MIN_POINTS}, skipping fits");
        return Ok(Vec::new());
    }
    Ok(fit_all(result, response)?)
}

fn print_selections(fits: &[SeriesFit]) {
    for f in fits {
        println!("{} on {}: O({})", f.algorithm, f.distribution, f.report.selected);
    }
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let plan = bench_plan(args)?;
    let quiet = args.quiet;
    let result = run_with_progress(&plan, |done, total| {
        if !quiet {
            eprint!("\rcells {done}/{total}");
            if done == total {
                eprintln!();
            }
        }
    })
    .map_err(anyhow::Error::from)?;
    let fits = fits_for(&result, plan.sizes.len(), args.response)?;
    let written = report(&result, &fits, &args.out_dir).map_err(anyhow::Error::from)?;
    print_selections(&fits);
    println!("wrote {} files to {}", written.len(), args.out_dir.display());
    Ok(())
}

fn cmd_fit(args: &FitArgs) -> Result<(), Failure> {
    let mut text = String::new();
    File::open(&args.input)
        .and_then(|mut f| f.read_to_string(&mut text))
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let table = ColumnTable::from_reader(text.as_bytes()).with_context(|| args.input.display().to_string())?;
    let column = table.column(&args.column).map_err(|e| Failure::Usage(e.into()))?;
    let (sizes, values): (Vec<f64>, Vec<f64>) = table
        .sizes
        .iter()
        .zip(column)
        .filter(|(n, _)| !args.exclude_n.contains(n))
        .map(|(&n, &y)| (n, y))
        .unzip();
    let fit = fit_empirical_o(&sizes, &values).with_context(|| format!("column `{}`", args.column))?;
    if args.json {
        print_json(&fit)?;
    } else {
        println!("column: {}", args.column);
        println!("{fit}");
    }
    Ok(())
}

fn print_json(report: &FitReport) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_report(args: &ReportArgs) -> Result<(), Failure> {
    let file = File::open(&args.input).with_context(|| format!("cannot open {}", args.input.display()))?;
    let result = read_results_csv(file).with_context(|| args.input.display().to_string())?;
    let fits = fit_all(&result, args.response).with_context(|| args.input.display().to_string())?;
    let written = report(&result, &fits, &args.out_dir).map_err(anyhow::Error::from)?;
    print_selections(&fits);
    println!("wrote {} files to {}", written.len(), args.out_dir.display());
    Ok(())
}
