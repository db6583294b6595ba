//! Cost measurement: counters plus monotonic wall-clock timing of a single
//! sort call.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{heapsort_floyd, quicksort_classic};
use crate::counters::Counters;
use crate::input_gen::Keys;
use crate::sort::{smart_sort, SortConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    SmartSort,
    QuicksortClassic,
    HeapsortFloyd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Self::SmartSort, Self::QuicksortClassic, Self::HeapsortFloyd];

    pub fn name(&self) -> &'static str {
        match self {
            Self::SmartSort => "smart_sort",
            Self::QuicksortClassic => "quicksort_classic",
            Self::HeapsortFloyd => "heapsort_floyd",
        }
    }

    /// Runs the algorithm on `buf`. `config` only matters for Smart Sort.
    pub fn sort<T: PartialOrd>(&self, buf: &mut [T], config: &SortConfig, counters: &mut Counters) {
        match self {
            Self::SmartSort => smart_sort(buf, config, counters),
            Self::QuicksortClassic => quicksort_classic(buf, counters),
            Self::HeapsortFloyd => heapsort_floyd(buf, counters),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "smart_sort" | "smart" => Ok(Self::SmartSort),
            "quicksort_classic" | "quicksort" | "quick" => Ok(Self::QuicksortClassic),
            "heapsort_floyd" | "heapsort" | "heap" => Ok(Self::HeapsortFloyd),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Result of timing one sort call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub elapsed_s: f64,
    pub counters: Counters,
}

/// Sorts `buf` in place and reports elapsed time of the sort call alone.
pub fn measure<T: PartialOrd>(algorithm: Algorithm, buf: &mut [T], config: &SortConfig) -> Measurement {
    let mut counters = Counters::new();
    let start = Instant::now();
    algorithm.sort(buf, config, &mut counters);
    let elapsed_s = start.elapsed().as_secs_f64();
    Measurement { elapsed_s, counters }
}

pub fn measure_keys(algorithm: Algorithm, keys: &mut Keys, config: &SortConfig) -> Measurement {
    match keys {
        Keys::Int(v) => measure(algorithm, v, config),
        Keys::Real(v) => measure(algorithm, v, config),
    }
}

/// One timed trial of one algorithm on one generated input.
#[derive(Debug, Clone, PartialEq)]
pub struct CostSample {
    pub algorithm: Algorithm,
    /// Canonical text form of the distribution spec.
    pub distribution: String,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub elapsed_s: f64,
    pub counters: Counters,
}

/// Flat CSV row for a [`CostSample`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRecord {
    pub algorithm: Algorithm,
    pub distribution: String,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub elapsed_s: f64,
    pub comparisons: u64,
    pub assignments: u64,
    pub balance_activations: u64,
    pub root_exchanges: u64,
    pub max_depth: u64,
}

pub const COST_CSV_HEADER: &str =
    "algorithm,distribution,n,trial,seed,elapsed_s,comparisons,assignments,balance_activations,root_exchanges,max_depth";

impl From<&CostSample> for CostRecord {
    fn from(s: &CostSample) -> Self {
        Self {
            algorithm: s.algorithm,
            distribution: s.distribution.clone(),
            n: s.n,
            trial: s.trial,
            seed: s.seed,
            elapsed_s: s.elapsed_s,
            comparisons: s.counters.comparisons,
            assignments: s.counters.assignments,
            balance_activations: s.counters.balance_activations,
            root_exchanges: s.counters.root_exchanges,
            max_depth: s.counters.max_recursion_depth,
        }
    }
}

/// Writes samples as CSV. The header is written even when there are no rows.
pub fn write_samples_csv<W: io::Write>(out: W, samples: &[CostSample]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(COST_CSV_HEADER.split(','))?;
    for s in samples {
        w.serialize(CostRecord::from(s))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input_gen::{generate, DistributionSpec, Seed};

    #[test]
    fn single_element() {
        let m = measure(Algorithm::SmartSort, &mut [1.5], &SortConfig::default());
        assert!(m.elapsed_s >= 0.0);
        assert_eq!(m.counters.comparisons, 0);
    }

    #[test]
    fn counts_repeat_exactly() {
        let keys = generate(&DistributionSpec::CONTINUOUS_UNIFORM, 5000, Seed(4)).unwrap();
        for alg in Algorithm::ALL {
            let mut a = keys.clone();
            let mut b = keys.clone();
            let ma = measure_keys(alg, &mut a, &SortConfig::default());
            let mb = measure_keys(alg, &mut b, &SortConfig::default());
            assert_eq!(ma.counters, mb.counters, "{alg}");
            assert_eq!(a, b);
        }
    }

    #[test]
    fn smart_sort_uniform_band() {
        let n = 10_000usize;
        let Keys::Real(mut v) = generate(&DistributionSpec::CONTINUOUS_UNIFORM, n, Seed(2024)).unwrap() else {
            unreachable!()
        };
        let m = measure(Algorithm::SmartSort, &mut v, &SortConfig::default());
        let ratio = m.counters.comparisons as f64 / (n as f64 * (n as f64).log2());
        assert!((0.5..=4.0).contains(&ratio), "ratio = {ratio}");
        assert!(m.counters.assignments >= 3 * m.counters.root_exchanges);
    }

    #[test]
    fn hundred_thousand_smoke() {
        let keys = generate(&DistributionSpec::CONTINUOUS_UNIFORM, 100_000, Seed(1)).unwrap();
        let mut keys = keys;
        let m = measure_keys(Algorithm::SmartSort, &mut keys, &SortConfig::default());
        assert!(m.elapsed_s < 1.0, "elapsed {}", m.elapsed_s);
    }

    #[test]
    fn algorithm_names_parse() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>(), Ok(alg));
        }
        assert_eq!("quick".parse::<Algorithm>(), Ok(Algorithm::QuicksortClassic));
        assert!("bogo".parse::<Algorithm>().is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let mut out = Vec::new();
        write_samples_csv(&mut out, &[]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{COST_CSV_HEADER}\n"));

        let sample = CostSample {
            algorithm: Algorithm::SmartSort,
            distribution: DistributionSpec::BINOMIAL.to_string(),
            n: 10,
            trial: 0,
            seed: 9,
            elapsed_s: 0.5,
            counters: Counters {
                comparisons: 30,
                max_recursion_depth: 4,
                ..Counters::default()
            },
        };
        let mut out = Vec::new();
        write_samples_csv(&mut out, &[sample]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "smart_sort,\"binomial:m=1000,p=0.5\",10,0,9,0.5,30,0,0,0,4"
        );
    }
}
