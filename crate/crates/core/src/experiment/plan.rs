//! Plan files: TOML key-value text. Every key is optional and defaults to the
//! desk-scale plan.
//!
//! ```toml
//! sizes = [10000, 20000, 40000]          # or { start = 10000, stop = 100000, step = 10000 }
//! trials = 20
//! distributions = ["binomial", "poisson:lambda=1", "uniform01"]
//! algorithms = ["smart_sort", "quicksort_classic"]
//! seed = 7
//! t1 = 0.01
//! t2 = 0.01
//! ```

use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use super::ExperimentPlan;
use crate::input_gen::{DistributionSpec, Seed};
use crate::metrics::Algorithm;
use crate::sort::SortConfig;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("plan syntax: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("plan value: {0}")]
    Value(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Sizes {
    List(Vec<usize>),
    Range { start: usize, stop: usize, step: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    sizes: Option<Sizes>,
    trials: Option<usize>,
    distributions: Option<Vec<String>>,
    algorithms: Option<Vec<String>>,
    seed: Option<u64>,
    t1: Option<f64>,
    t2: Option<f64>,
}

impl FromStr for ExperimentPlan {
    type Err = PlanError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let file: PlanFile = toml::from_str(text)?;
        let mut plan = ExperimentPlan::desk();
        let value_err = |e: String| PlanError::Value(e);

        match file.sizes {
            Some(Sizes::List(v)) => plan.sizes = v,
            Some(Sizes::Range { start, stop, step }) => {
                if step == 0 {
                    return Err(value_err("sizes.step must be positive".into()));
                }
                plan.sizes = (start..=stop).step_by(step).collect();
            }
            None => {}
        }
        if let Some(t) = file.trials {
            plan.trials = t;
        }
        if let Some(ds) = file.distributions {
            plan.distributions = ds
                .iter()
                .map(|d| d.parse::<DistributionSpec>().map_err(|e| value_err(e.to_string())))
                .collect::<Result<_, _>>()?;
        }
        if let Some(algs) = file.algorithms {
            plan.algorithms = algs
                .iter()
                .map(|a| a.parse::<Algorithm>())
                .collect::<Result<_, _>>()
                .map_err(value_err)?;
        }
        if let Some(seed) = file.seed {
            plan.base_seed = Seed(seed);
        }
        let defaults = SortConfig::default();
        plan.config = SortConfig::new(file.t1.unwrap_or(defaults.t1()), file.t2.unwrap_or(defaults.t2()))
            .map_err(|e| value_err(e.to_string()))?;
        plan.validate().map_err(|e| value_err(e.to_string()))?;
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_desk_plan() {
        assert_eq!("".parse::<ExperimentPlan>().unwrap(), ExperimentPlan::desk());
    }

    #[test]
    fn full_file() {
        let plan: ExperimentPlan = r#"
            # comment
            sizes = { start = 1000, stop = 5000, step = 2000 }
            trials = 3
            distributions = ["binomial:m=10,p=0.25", "sorted"]
            algorithms = ["smart", "heapsort"]
            seed = 9
            t1 = 0.1
            t2 = 0.2
        "#
        .parse()
        .unwrap();
        assert_eq!(plan.sizes, vec![1000, 3000, 5000]);
        assert_eq!(plan.trials, 3);
        assert_eq!(
            plan.distributions,
            vec![
                DistributionSpec::Binomial { m: 10, p: 0.25 },
                DistributionSpec::SortedAscending
            ]
        );
        assert_eq!(plan.algorithms, vec![Algorithm::SmartSort, Algorithm::HeapsortFloyd]);
        assert_eq!(plan.base_seed, Seed(9));
        assert_eq!(plan.config, SortConfig::new(0.1, 0.2).unwrap());
    }

    #[test]
    fn rejects_bad_values() {
        for text in [
            "sizes = [3, 2]",
            "trials = 0",
            "t1 = 0.7",
            "distributions = [\"gamma\"]",
            "algorithms = [\"bogo\"]",
            "sizes = { start = 1, stop = 5, step = 0 }",
        ] {
            assert!(
                matches!(text.parse::<ExperimentPlan>(), Err(PlanError::Value(_))),
                "{text}"
            );
        }
        assert!(matches!(
            "trails = 3".parse::<ExperimentPlan>(),
            Err(PlanError::Syntax(_))
        ));
        assert!(matches!(
            "sizes = [".parse::<ExperimentPlan>(),
            Err(PlanError::Syntax(_))
        ));
    }
}
