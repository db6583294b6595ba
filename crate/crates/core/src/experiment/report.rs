//! Result files.
//!
//! `report` writes into one directory:
//!
//! * `results.csv`: one row per cell ([`RESULTS_CSV_HEADER`]).
//! * `samples.csv`: one row per trial (metrics schema).
//! * `fit_<algorithm>_<distribution>.txt` / `.json`: the fit report.
//! * `fig_<algorithm>_<distribution>.dat`: two whitespace-separated columns
//!   `n value`; the first block holds observed means, the second block (after
//!   one blank line) samples the selected fitted curve.

use std::fs::{self, File};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CellSummary, ExperimentResult, FitReport, MeanCounters, Response, SeriesFit};
use crate::input_gen::DistributionSpec;
use crate::metrics::{write_samples_csv, Algorithm};

pub const RESULTS_CSV_HEADER: &str = "algorithm,distribution,n,trials,mean_elapsed_s,sd_elapsed_s,mean_comparisons,mean_assignments,mean_balance_activations,mean_root_exchanges,mean_max_depth";

const CURVE_POINTS: usize = 50;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("results row {row}: {detail}")]
    Row { row: usize, detail: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct CellRecord {
    algorithm: Algorithm,
    distribution: String,
    n: usize,
    trials: usize,
    mean_elapsed_s: f64,
    sd_elapsed_s: f64,
    mean_comparisons: f64,
    mean_assignments: f64,
    mean_balance_activations: f64,
    mean_root_exchanges: f64,
    mean_max_depth: f64,
}

impl From<&CellSummary> for CellRecord {
    fn from(c: &CellSummary) -> Self {
        Self {
            algorithm: c.algorithm,
            distribution: c.distribution.to_string(),
            n: c.n,
            trials: c.trials,
            mean_elapsed_s: c.mean_elapsed_s,
            sd_elapsed_s: c.sd_elapsed_s,
            mean_comparisons: c.mean_counters.comparisons,
            mean_assignments: c.mean_counters.assignments,
            mean_balance_activations: c.mean_counters.balance_activations,
            mean_root_exchanges: c.mean_counters.root_exchanges,
            mean_max_depth: c.mean_counters.max_depth,
        }
    }
}

/// Cell table as CSV; header only for an empty result.
pub fn write_results_csv<W: Write>(out: W, result: &ExperimentResult) -> Result<(), ReportError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(RESULTS_CSV_HEADER.split(','))?;
    for c in &result.cells {
        w.serialize(CellRecord::from(c))?;
    }
    w.flush().map_err(|source| ReportError::Io {
        path: PathBuf::from("<results>"),
        source,
    })?;
    Ok(())
}

/// Reads a table written by [`write_results_csv`]. Samples are not restored.
pub fn read_results_csv<R: Read>(input: R) -> Result<ExperimentResult, ReportError> {
    let mut reader = csv::Reader::from_reader(input);
    let mut result = ExperimentResult::default();
    for (i, record) in reader.deserialize::<CellRecord>().enumerate() {
        let r = record?;
        let distribution: DistributionSpec =
            r.distribution
                .parse()
                .map_err(|e: crate::input_gen::GenError| ReportError::Row {
                    row: i + 1,
                    detail: e.to_string(),
                })?;
        result.cells.push(CellSummary {
            algorithm: r.algorithm,
            distribution,
            n: r.n,
            trials: r.trials,
            mean_elapsed_s: r.mean_elapsed_s,
            sd_elapsed_s: r.sd_elapsed_s,
            mean_counters: MeanCounters {
                comparisons: r.mean_comparisons,
                assignments: r.mean_assignments,
                balance_activations: r.mean_balance_activations,
                root_exchanges: r.mean_root_exchanges,
                max_depth: r.mean_max_depth,
            },
        });
    }
    Ok(result)
}

#[derive(Serialize)]
struct FitDocument<'a> {
    algorithm: Algorithm,
    distribution: String,
    response: Response,
    sizes: &'a [f64],
    values: &'a [f64],
    report: &'a FitReport,
}

pub fn write_fit_text<W: Write>(mut out: W, fit: &SeriesFit) -> io::Result<()> {
    writeln!(out, "algorithm: {}", fit.algorithm)?;
    writeln!(out, "distribution: {}", fit.distribution)?;
    writeln!(out, "response: {}", fit.response.name())?;
    writeln!(out, "{}", fit.report)
}

pub fn write_fit_json<W: Write>(out: W, fit: &SeriesFit) -> Result<(), ReportError> {
    let doc = FitDocument {
        algorithm: fit.algorithm,
        distribution: fit.distribution.to_string(),
        response: fit.response,
        sizes: &fit.sizes,
        values: &fit.values,
        report: &fit.report,
    };
    serde_json::to_writer_pretty(out, &doc)?;
    Ok(())
}

pub fn write_figure<W: Write>(mut out: W, fit: &SeriesFit) -> io::Result<()> {
    writeln!(
        out,
        "# {} on {}: n vs {}",
        fit.algorithm,
        fit.distribution,
        fit.response.name()
    )?;
    for (n, y) in fit.sizes.iter().zip(&fit.values) {
        writeln!(out, "{n} {y:e}")?;
    }
    writeln!(out)?;
    writeln!(out, "# fitted O({})", fit.report.selected)?;
    let model = fit.report.selected_fit();
    if let (Some(&lo), Some(&hi)) = (fit.sizes.first(), fit.sizes.last()) {
        for i in 0..CURVE_POINTS {
            let n = lo + (hi - lo) * i as f64 / (CURVE_POINTS - 1) as f64;
            writeln!(out, "{n} {:e}", model.predict(n))?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> Result<File, ReportError> {
    File::create(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stems(fits: &[SeriesFit]) -> Vec<String> {
    let mut stems: Vec<String> = Vec::with_capacity(fits.len());
    for f in fits {
        let base = format!("{}_{}", f.algorithm, f.distribution.tag());
        let mut stem = base.clone();
        let mut k = 2;
        while stems.contains(&stem) {
            stem = format!("{base}_{k}");
            k += 1;
        }
        stems.push(stem);
    }
    stems
}

/// Writes every report file into `dir` (created if missing) and returns the
/// paths written.
pub fn report(result: &ExperimentResult, fits: &[SeriesFit], dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();

    let path = dir.join("results.csv");
    write_results_csv(create(&path)?, result)?;
    written.push(path);

    let path = dir.join("samples.csv");
    write_samples_csv(create(&path)?, &result.samples)?;
    written.push(path);

    for (fit, stem) in fits.iter().zip(stems(fits)) {
        let path = dir.join(format!("fit_{stem}.txt"));
        write_fit_text(create(&path)?, fit).map_err(|source| ReportError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);

        let path = dir.join(format!("fit_{stem}.json"));
        write_fit_json(create(&path)?, fit)?;
        written.push(path);

        let path = dir.join(format!("fig_{stem}.dat"));
        write_figure(create(&path)?, fit).map_err(|source| ReportError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
