//! Computer experiments: sweep input sizes per distribution and algorithm,
//! summarise repeated trials, and fit growth models to the responses.

pub mod fit;
mod plan;
pub mod report;
pub mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counters::Counters;
use crate::input_gen::{generate, DistributionSpec, GenError, Seed};
use crate::metrics::{measure_keys, Algorithm, CostSample};
use crate::sort::SortConfig;

pub use fit::{fit_empirical_o, FitError, FitReport, GrowthModel, ModelFit};
pub use plan::PlanError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("cell ({algorithm}, {distribution}, n = {n}) failed: {source}")]
    CellFailed {
        algorithm: Algorithm,
        distribution: String,
        n: usize,
        #[source]
        source: GenError,
        /// Cells completed before the failure.
        partial: Box<ExperimentResult>,
    },
}

/// Fraction trimmed from each end of the timing sample before averaging.
pub const TIME_TRIM: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub distributions: Vec<DistributionSpec>,
    pub algorithms: Vec<Algorithm>,
    pub base_seed: Seed,
    pub config: SortConfig,
}

impl ExperimentPlan {
    pub const DEFAULT_SEED: Seed = Seed(20_120_101);

    /// 10 000 to 100 000 in steps of 10 000.
    pub fn default_sizes() -> Vec<usize> {
        (1..=10).map(|i| i * 10_000).collect()
    }

    /// Smart Sort over the six random distributions, 100 trials per cell.
    pub fn full() -> Self {
        Self {
            sizes: Self::default_sizes(),
            trials: 100,
            distributions: DistributionSpec::RANDOM_DEFAULTS.to_vec(),
            algorithms: vec![Algorithm::SmartSort],
            base_seed: Self::DEFAULT_SEED,
            config: SortConfig::default(),
        }
    }

    /// Same grid as [`ExperimentPlan::full`] with 20 trials per cell.
    pub fn desk() -> Self {
        Self {
            trials: 20,
            ..Self::full()
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::InvalidPlan(msg));
        if self.sizes.is_empty() {
            return bad("no sizes".into());
        }
        if let Some(w) = self.sizes.windows(2).find(|w| w[0] >= w[1]) {
            return bad(format!("sizes must be strictly increasing ({} then {})", w[0], w[1]));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.distributions.is_empty() {
            return bad("no distributions".into());
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms".into());
        }
        for d in &self.distributions {
            d.validate().map_err(|e| ExperimentError::InvalidPlan(e.to_string()))?;
        }
        Ok(())
    }

    /// Seed of one trial. Algorithms share it, so they sort identical inputs.
    pub fn trial_seed(&self, distribution: &DistributionSpec, n: usize, trial: usize) -> Seed {
        self.base_seed
            .derive(&[distribution.stream_id(), n as u64, trial as u64])
    }

    pub fn cell_count(&self) -> usize {
        self.sizes.len() * self.distributions.len() * self.algorithms.len()
    }
}

/// Mean counter values over the trials of a cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanCounters {
    pub comparisons: f64,
    pub assignments: f64,
    pub balance_activations: f64,
    pub root_exchanges: f64,
    pub max_depth: f64,
}

impl MeanCounters {
    fn of(counters: &[Counters]) -> Self {
        let m = counters.len().max(1) as f64;
        let mean = |f: fn(&Counters) -> u64| counters.iter().map(|c| f(c) as f64).sum::<f64>() / m;
        Self {
            comparisons: mean(|c| c.comparisons),
            assignments: mean(|c| c.assignments),
            balance_activations: mean(|c| c.balance_activations),
            root_exchanges: mean(|c| c.root_exchanges),
            max_depth: mean(|c| c.max_recursion_depth),
        }
    }
}

/// Summary of one (algorithm, distribution, n) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub algorithm: Algorithm,
    pub distribution: DistributionSpec,
    pub n: usize,
    pub trials: usize,
    /// 5% trimmed mean of the sort time.
    pub mean_elapsed_s: f64,
    /// Standard deviation of the trimmed timing sample.
    pub sd_elapsed_s: f64,
    pub mean_counters: MeanCounters,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    pub cells: Vec<CellSummary>,
    pub samples: Vec<CostSample>,
}

/// Which per-cell quantity a growth model is fitted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Response {
    MeanTime,
    Comparisons,
    Assignments,
}

impl Response {
    pub fn of(&self, cell: &CellSummary) -> f64 {
        match self {
            Self::MeanTime => cell.mean_elapsed_s,
            Self::Comparisons => cell.mean_counters.comparisons,
            Self::Assignments => cell.mean_counters.assignments,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::MeanTime => "mean_time",
            Self::Comparisons => "comparisons",
            Self::Assignments => "assignments",
        }
    }
}

impl std::str::FromStr for Response {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean_time" | "time" => Ok(Self::MeanTime),
            "comparisons" => Ok(Self::Comparisons),
            "assignments" => Ok(Self::Assignments),
            other => Err(format!("unknown response `{other}`")),
        }
    }
}

impl ExperimentResult {
    pub fn cell(&self, algorithm: Algorithm, distribution: &DistributionSpec, n: usize) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.distribution == *distribution && c.n == n)
    }

    /// `(n, response)` pairs of one series, ordered by n.
    pub fn series(
        &self,
        algorithm: Algorithm,
        distribution: &DistributionSpec,
        response: Response,
    ) -> (Vec<f64>, Vec<f64>) {
        let mut cells: Vec<&CellSummary> = self
            .cells
            .iter()
            .filter(|c| c.algorithm == algorithm && c.distribution == *distribution)
            .collect();
        cells.sort_by_key(|c| c.n);
        cells.iter().map(|c| (c.n as f64, response.of(c))).unzip()
    }

    /// Distinct (algorithm, distribution) pairs in first-seen order.
    pub fn series_keys(&self) -> Vec<(Algorithm, DistributionSpec)> {
        let mut keys: Vec<(Algorithm, DistributionSpec)> = Vec::new();
        for c in &self.cells {
            if !keys.iter().any(|(a, d)| *a == c.algorithm && *d == c.distribution) {
                keys.push((c.algorithm, c.distribution));
            }
        }
        keys
    }
}

/// A fitted series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFit {
    pub algorithm: Algorithm,
    pub distribution: DistributionSpec,
    pub response: Response,
    pub sizes: Vec<f64>,
    pub values: Vec<f64>,
    pub report: FitReport,
}

/// Fits every series of `result` on `response`.
pub fn fit_all(result: &ExperimentResult, response: Response) -> Result<Vec<SeriesFit>, FitError> {
    result
        .series_keys()
        .into_iter()
        .map(|(algorithm, distribution)| {
            let (sizes, values) = result.series(algorithm, &distribution, response);
            let report = fit_empirical_o(&sizes, &values)?;
            Ok(SeriesFit {
                algorithm,
                distribution,
                response,
                sizes,
                values,
                report,
            })
        })
        .collect()
}

/// Runs every cell of `plan` sequentially, so timings do not compete for cores.
pub fn run(plan: &ExperimentPlan) -> Result<ExperimentResult, ExperimentError> {
    run_with_progress(plan, |_, _| {})
}

/// [`run`], calling `progress(done, total)` after each cell.
pub fn run_with_progress(
    plan: &ExperimentPlan,
    mut progress: impl FnMut(usize, usize),
) -> Result<ExperimentResult, ExperimentError> {
    plan.validate()?;
    let total = plan.cell_count();
    let mut result = ExperimentResult::default();
    for &algorithm in &plan.algorithms {
        for distribution in &plan.distributions {
            for &n in &plan.sizes {
                match run_cell(plan, algorithm, distribution, n) {
                    Ok((cell, samples)) => {
                        result.cells.push(cell);
                        result.samples.extend(samples);
                    }
                    Err(source) => {
                        return Err(ExperimentError::CellFailed {
                            algorithm,
                            distribution: distribution.to_string(),
                            n,
                            source,
                            partial: Box::new(result),
                        })
                    }
                }
                progress(result.cells.len(), total);
            }
        }
    }
    Ok(result)
}

fn run_cell(
    plan: &ExperimentPlan,
    algorithm: Algorithm,
    distribution: &DistributionSpec,
    n: usize,
) -> Result<(CellSummary, Vec<CostSample>), GenError> {
    let mut samples = Vec::with_capacity(plan.trials);
    for trial in 0..plan.trials {
        let seed = plan.trial_seed(distribution, n, trial);
        let mut keys = generate(distribution, n, seed)?;
        let m = measure_keys(algorithm, &mut keys, &plan.config);
        samples.push(CostSample {
            algorithm,
            distribution: distribution.to_string(),
            n,
            trial,
            seed: seed.0,
            elapsed_s: m.elapsed_s,
            counters: m.counters,
        });
    }
    let times: Vec<f64> = samples.iter().map(|s| s.elapsed_s).collect();
    let (mean_elapsed_s, sd_elapsed_s) = trimmed_mean_sd(&times, TIME_TRIM);
    let counters: Vec<Counters> = samples.iter().map(|s| s.counters).collect();
    let cell = CellSummary {
        algorithm,
        distribution: *distribution,
        n,
        trials: plan.trials,
        mean_elapsed_s,
        sd_elapsed_s,
        mean_counters: MeanCounters::of(&counters),
    };
    Ok((cell, samples))
}

/// Mean and sample standard deviation after dropping `floor(trim·len)` values
/// from each end.
pub fn trimmed_mean_sd(values: &[f64], trim: f64) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let cut = (trim * sorted.len() as f64).floor() as usize;
    let kept = &sorted[cut..sorted.len() - cut];
    let m = kept.len() as f64;
    let mean = kept.iter().sum::<f64>() / m;
    let sd = if kept.len() > 1 {
        (kept.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, sd)
}
