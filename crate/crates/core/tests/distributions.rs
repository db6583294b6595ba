//! Chi-square goodness of fit for every generator at n = 100 000, α = 0.001.

use statrs::distribution::{
    Binomial, ChiSquared, Continuous, ContinuousCDF, Discrete, DiscreteCDF, Exp, Normal, Poisson, Uniform,
};

use smartsort::input_gen::{generate, DistributionSpec, Keys, Seed};

const N: usize = 100_000;
const ALPHA: f64 = 0.001;
const SEED: Seed = Seed(0xC41);
const CONTINUOUS_BINS: usize = 100;

/// Pearson statistic and degrees of freedom for observed vs expected counts.
fn chi_square(observed: &[f64], expected: &[f64]) -> (f64, f64) {
    let stat = observed.iter().zip(expected).map(|(o, e)| (o - e).powi(2) / e).sum();
    (stat, (observed.len() - 1) as f64)
}

fn assert_fits(name: &str, observed: &[f64], expected: &[f64]) {
    let total: f64 = expected.iter().sum();
    assert!(
        (total - N as f64).abs() < 1e-6 * N as f64,
        "{name}: expected counts sum to {total}"
    );
    assert!(expected.iter().all(|&e| e >= 5.0), "{name}: a bin expects fewer than 5");
    let (stat, df) = chi_square(observed, expected);
    let critical = ChiSquared::new(df).unwrap().inverse_cdf(1.0 - ALPHA);
    assert!(stat < critical, "{name}: chi^2 = {stat:.1} ≥ {critical:.1} (df = {df})");
}

/// Bins single integer values, folding tails into the neighbouring bin until
/// every bin expects at least 5.
fn discrete_bins(keys: &[i64], lo: i64, hi: i64, pmf: impl Fn(i64) -> f64) -> (Vec<f64>, Vec<f64>) {
    let mut bins: Vec<(i64, f64, f64)> = Vec::new();
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    let mut counts = std::collections::HashMap::new();
    for &k in keys {
        assert!((lo..=hi).contains(&k), "key {k} outside [{lo}, {hi}]");
        *counts.entry(k).or_insert(0.0) += 1.0;
    }
    for x in lo..=hi {
        acc_obs += counts.get(&x).copied().unwrap_or(0.0);
        acc_exp += N as f64 * pmf(x);
        if acc_exp >= 5.0 {
            bins.push((x, acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if let Some(last) = bins.last_mut() {
        last.1 += acc_obs;
        last.2 += acc_exp;
    }
    bins.into_iter().map(|(_, o, e)| (o, e)).unzip()
}

/// Equiprobable bins from the inverse CDF.
fn continuous_bins<D: ContinuousCDF<f64, f64>>(keys: &[f64], dist: &D) -> (Vec<f64>, Vec<f64>) {
    let mut observed = vec![0.0; CONTINUOUS_BINS];
    for &x in keys {
        let bin = ((dist.cdf(x) * CONTINUOUS_BINS as f64) as usize).min(CONTINUOUS_BINS - 1);
        observed[bin] += 1.0;
    }
    (observed, vec![N as f64 / CONTINUOUS_BINS as f64; CONTINUOUS_BINS])
}

fn ints(spec: &DistributionSpec) -> Vec<i64> {
    match generate(spec, N, SEED).unwrap() {
        Keys::Int(v) => v,
        Keys::Real(_) => panic!("{spec} should be discrete"),
    }
}

fn reals(spec: &DistributionSpec) -> Vec<f64> {
    match generate(spec, N, SEED).unwrap() {
        Keys::Real(v) => v,
        Keys::Int(_) => panic!("{spec} should be continuous"),
    }
}

#[test]
fn binomial() {
    for (m, p) in [(1000u32, 0.5), (50, 0.2)] {
        let dist = Binomial::new(p, m as u64).unwrap();
        let keys = ints(&DistributionSpec::Binomial { m, p });
        let (o, e) = discrete_bins(&keys, 0, m as i64, |x| dist.pmf(x as u64));
        assert_fits(&format!("binomial({m}, {p})"), &o, &e);
    }
}

#[test]
fn poisson() {
    for lambda in [1.0, 30.0] {
        let dist = Poisson::new(lambda).unwrap();
        let keys = ints(&DistributionSpec::Poisson { lambda });
        let hi = *keys.iter().max().unwrap();
        let (o, mut e) = discrete_bins(&keys, 0, hi, |x| dist.pmf(x as u64));
        // Upper tail beyond the largest key drawn.
        *e.last_mut().unwrap() += N as f64 * dist.sf(hi as u64);
        assert_fits(&format!("poisson({lambda})"), &o, &e);
    }
}

#[test]
fn discrete_uniform() {
    let k = 1000;
    let keys = ints(&DistributionSpec::DiscreteUniform { k });
    let (o, e) = discrete_bins(&keys, 1, k as i64, |_| 1.0 / k as f64);
    assert_eq!(o.len(), 1000);
    assert_fits("discrete_uniform(1000)", &o, &e);
}

#[test]
fn continuous_uniform() {
    let keys = reals(&DistributionSpec::CONTINUOUS_UNIFORM);
    let (o, e) = continuous_bins(&keys, &Uniform::new(0.0, 1.0).unwrap());
    assert_fits("uniform(0, 1)", &o, &e);
    let keys = reals(&DistributionSpec::ContinuousUniform { lo: -3.0, hi: 5.0 });
    let (o, e) = continuous_bins(&keys, &Uniform::new(-3.0, 5.0).unwrap());
    assert_fits("uniform(-3, 5)", &o, &e);
}

#[test]
fn exponential() {
    for theta in [1.0, 4.0] {
        let dist = Exp::new(1.0 / theta).unwrap();
        let keys = reals(&DistributionSpec::Exponential { theta });
        assert!(keys.iter().all(|&x| x >= 0.0 && dist.pdf(x).is_finite()));
        let (o, e) = continuous_bins(&keys, &dist);
        assert_fits(&format!("exponential({theta})"), &o, &e);
    }
}

#[test]
fn normal() {
    for (mu, sigma) in [(0.0, 1.0), (10.0, 2.5)] {
        let keys = reals(&DistributionSpec::StandardNormal { mu, sigma });
        let (o, e) = continuous_bins(&keys, &Normal::new(mu, sigma).unwrap());
        assert_fits(&format!("normal({mu}, {sigma})"), &o, &e);
    }
}

#[test]
fn wrong_model_is_rejected() {
    // The same statistic must notice a mismatched distribution.
    let keys = reals(&DistributionSpec::STANDARD_NORMAL);
    let (o, e) = continuous_bins(&keys, &Normal::new(0.0, 1.05).unwrap());
    let (stat, df) = chi_square(&o, &e);
    assert!(stat > ChiSquared::new(df).unwrap().inverse_cdf(1.0 - ALPHA));
}
