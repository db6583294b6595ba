//! Growth-model fitting ("empirical O").
//!
//! Each candidate `y = a + b·g(n)` is fitted by ordinary least squares and
//! scored with the small-sample corrected Akaike criterion
//!
//! ```text
//! AICc = m·ln(RSS/m) + 2k + 2k(k+1)/(m-k-1),   k = 2
//! ```
//!
//! All candidates carry the same number of parameters, so the ranking is the
//! RSS ranking; the criterion value is still reported for comparison across
//! series. The lowest score wins and exact ties go to the slower-growing model.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const PARAMS: f64 = 2.0;
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least {MIN_POINTS} points to fit, got {0}")]
    InsufficientData(usize),
    #[error("{xs} sizes but {ys} responses")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("sizes must be positive and strictly increasing (index {0})")]
    NotIncreasing(usize),
    #[error("response at index {0} is not a finite non-negative number")]
    BadResponse(usize),
}

/// Candidate growth terms, ordered from slowest to fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthModel {
    Linear,
    NLogN,
    NLogSquaredN,
    Quadratic,
}

impl GrowthModel {
    pub const ALL: [GrowthModel; 4] = [Self::Linear, Self::NLogN, Self::NLogSquaredN, Self::Quadratic];

    pub fn term(&self, n: f64) -> f64 {
        match self {
            Self::Linear => n,
            Self::NLogN => n * n.log2(),
            Self::NLogSquaredN => n * n.log2().powi(2),
            Self::Quadratic => n * n,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Linear => "n",
            Self::NLogN => "n log2 n",
            Self::NLogSquaredN => "n log2^2 n",
            Self::Quadratic => "n^2",
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::NLogN => "n_log_n",
            Self::NLogSquaredN => "n_log2_n",
            Self::Quadratic => "quadratic",
        }
    }
}

impl fmt::Display for GrowthModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GrowthModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.id() == s || m.label() == s)
            .ok_or_else(|| format!("unknown growth model `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFit {
    pub model: GrowthModel,
    pub intercept: f64,
    pub slope: f64,
    pub slope_se: f64,
    pub rss: f64,
    pub aicc: f64,
    pub r_squared: f64,
}

impl ModelFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.intercept + self.slope * self.model.term(n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub points: usize,
    pub candidates: Vec<ModelFit>,
    pub selected: GrowthModel,
}

impl FitReport {
    pub fn fit_for(&self, model: GrowthModel) -> &ModelFit {
        self.candidates
            .iter()
            .find(|f| f.model == model)
            .expect("every model is fitted")
    }

    pub fn selected_fit(&self) -> &ModelFit {
        self.fit_for(self.selected)
    }
}

impl fmt::Display for FitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points: {}", self.points)?;
        writeln!(
            f,
            "{:<12} {:>14} {:>14} {:>12} {:>14} {:>12} {:>9}",
            "model", "intercept", "slope", "slope_se", "rss", "aicc", "r^2"
        )?;
        for c in &self.candidates {
            writeln!(
                f,
                "{:<12} {:>14.6e} {:>14.6e} {:>12.4e} {:>14.6e} {:>12.4} {:>9.6}{}",
                c.model.label(),
                c.intercept,
                c.slope,
                c.slope_se,
                c.rss,
                c.aicc,
                c.r_squared,
                if c.model == self.selected { "  *" } else { "" }
            )?;
        }
        let s = self.selected_fit();
        write!(
            f,
            "empirical O: O({})  slope = {:.6e} ± {:.3e}",
            s.model, s.slope, s.slope_se
        )
    }
}

/// Fits every [`GrowthModel`] to `(xs, ys)` and selects one.
pub fn fit_empirical_o(xs: &[f64], ys: &[f64]) -> Result<FitReport, FitError> {
    if xs.len() != ys.len() {
        return Err(FitError::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    if xs.len() < MIN_POINTS {
        return Err(FitError::InsufficientData(xs.len()));
    }
    for (i, &x) in xs.iter().enumerate() {
        let ok = x.is_finite() && x > 0.0 && (i == 0 || x > xs[i - 1]);
        if !ok {
            return Err(FitError::NotIncreasing(i));
        }
    }
    if let Some(i) = ys.iter().position(|y| !(y.is_finite() && *y >= 0.0)) {
        return Err(FitError::BadResponse(i));
    }

    let candidates: Vec<ModelFit> = GrowthModel::ALL.iter().map(|&m| fit_model(m, xs, ys)).collect();
    let mut selected = &candidates[0];
    for c in &candidates[1..] {
        if c.aicc < selected.aicc {
            selected = c;
        }
    }
    Ok(FitReport {
        points: xs.len(),
        selected: selected.model,
        candidates,
    })
}

fn fit_model(model: GrowthModel, xs: &[f64], ys: &[f64]) -> ModelFit {
    let m = xs.len() as f64;
    let g: Vec<f64> = xs.iter().map(|&x| model.term(x)).collect();
    let g_mean = g.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sgg: f64 = g.iter().map(|gi| (gi - g_mean).powi(2)).sum();
    let sgy: f64 = g.iter().zip(ys).map(|(gi, yi)| (gi - g_mean) * (yi - y_mean)).sum();
    let slope = sgy / sgg;
    let intercept = y_mean - slope * g_mean;
    let rss: f64 = g
        .iter()
        .zip(ys)
        .map(|(gi, yi)| (yi - intercept - slope * gi).powi(2))
        .sum();
    let tss: f64 = ys.iter().map(|yi| (yi - y_mean).powi(2)).sum();

    let aicc = if rss > 0.0 {
        m * (rss / m).ln() + 2.0 * PARAMS + 2.0 * PARAMS * (PARAMS + 1.0) / (m - PARAMS - 1.0)
    } else {
        f64::NEG_INFINITY
    };
    let slope_se = (rss / (m - 2.0) / sgg).sqrt();
    let r_squared = if tss > 0.0 { 1.0 - rss / tss } else { 1.0 };
    ModelFit {
        model,
        intercept,
        slope,
        slope_se,
        rss,
        aicc,
        r_squared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (1..=10).map(|i| (i * 10_000) as f64).collect()
    }

    #[test]
    fn exact_linear_recovery() {
        let xs = grid();
        let r = fit_empirical_o(&xs, &xs).unwrap();
        assert_eq!(r.selected, GrowthModel::Linear);
        let s = r.selected_fit();
        assert!((s.slope - 1.0).abs() < 1e-9 && s.intercept.abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn exact_n_log_n_recovery() {
        let xs = grid();
        let ys: Vec<f64> = xs.iter().map(|n| 3.0 * n * n.log2()).collect();
        let r = fit_empirical_o(&xs, &ys).unwrap();
        assert_eq!(r.selected, GrowthModel::NLogN);
        assert!((r.selected_fit().slope - 3.0).abs() < 1e-6);
    }

    #[test]
    fn quadratic_and_log_squared_recovery() {
        let xs: Vec<f64> = (8..=14).map(|k| (1u64 << k) as f64).collect();
        let q: Vec<f64> = xs.iter().map(|n| 0.5 * n * n + 7.0).collect();
        assert_eq!(fit_empirical_o(&xs, &q).unwrap().selected, GrowthModel::Quadratic);
        let l: Vec<f64> = xs.iter().map(|n| 2.0 * n * n.log2().powi(2)).collect();
        assert_eq!(fit_empirical_o(&xs, &l).unwrap().selected, GrowthModel::NLogSquaredN);
    }

    #[test]
    fn constant_response_ties_to_slowest() {
        let xs = grid();
        let r = fit_empirical_o(&xs, &[2.0; 10]).unwrap();
        assert_eq!(r.selected, GrowthModel::Linear);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            fit_empirical_o(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]),
            Err(FitError::InsufficientData(3))
        );
        assert!(matches!(
            fit_empirical_o(&[1.0, 2.0], &[1.0]),
            Err(FitError::LengthMismatch { .. })
        ));
        assert_eq!(
            fit_empirical_o(&[1.0, 3.0, 2.0, 4.0], &[1.0; 4]),
            Err(FitError::NotIncreasing(2))
        );
        assert_eq!(
            fit_empirical_o(&[1.0, 2.0, 3.0, 4.0], &[1.0, f64::NAN, 1.0, 1.0]),
            Err(FitError::BadResponse(1))
        );
        assert_eq!(
            fit_empirical_o(&[1.0, 2.0, 3.0, 4.0], &[1.0, -1.0, 1.0, 1.0]),
            Err(FitError::BadResponse(1))
        );
    }

    #[test]
    fn aicc_matches_hand_computation() {
        // four points on y = n + noise; compare against the formula directly
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.1, 1.9, 3.2, 3.8];
        let r = fit_empirical_o(&xs, &ys).unwrap();
        let lin = r.fit_for(GrowthModel::Linear);
        // slope = 0.94, intercept = 0.15, residuals 0.01, -0.13, 0.23, -0.11
        assert!((lin.slope - 0.94).abs() < 1e-12);
        assert!((lin.intercept - 0.15).abs() < 1e-12);
        let rss = 0.082;
        assert!((lin.rss - rss).abs() < 1e-12);
        let aicc = 4.0 * (rss / 4.0).ln() + 4.0 + 12.0;
        assert!((lin.aicc - aicc).abs() < 1e-9);
    }

    #[test]
    fn model_names_round_trip() {
        for m in GrowthModel::ALL {
            assert_eq!(m.id().parse::<GrowthModel>(), Ok(m));
            assert_eq!(m.label().parse::<GrowthModel>(), Ok(m));
        }
    }
}
