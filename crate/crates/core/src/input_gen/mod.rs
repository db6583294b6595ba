//! Seeded input generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with
//! `SeedableRng::seed_from_u64`. Uniform variates take the top 53 bits of a
//! 64-bit output, giving `u` in `[0, 1)`. Each distribution uses one fixed
//! method so outputs stay bit-identical across platforms and releases:
//!
//! | distribution        | method                                     |
//! |---------------------|--------------------------------------------|
//! | binomial(m, p)      | sum of `m` Bernoulli(p) draws              |
//! | poisson(lambda)     | Knuth's multiplicative method              |
//! | discrete_uniform(k) | `floor(u * k) + 1`                         |
//! | continuous_uniform  | `lo + (hi - lo) * u`                       |
//! | exponential(theta)  | inverse transform `-theta * ln(1 - u)`     |
//! | standard_normal     | Marsaglia polar method, both outputs used  |

mod keys;

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use keys::{Keys, BINARY_MAGIC};

use DistributionSpec as Spec;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid {dist} parameter: {detail}")]
    InvalidParameter { dist: &'static str, detail: String },
    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),
    #[error("cannot allocate {n} keys")]
    Allocation { n: usize },
    #[error("line {line}: cannot parse `{content}` as a key")]
    Parse { line: usize, content: String },
    #[error("malformed binary key file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Seed for one generated sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Derives an independent child seed from this one and `parts`, used to
    /// split streams per (distribution, size, trial).
    pub fn derive(self, parts: &[u64]) -> Seed {
        let mut state = splitmix64(self.0);
        for &p in parts {
            state = splitmix64(state ^ p);
        }
        Seed(state)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Input distribution or deterministic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Binomial { m: u32, p: f64 },
    Poisson { lambda: f64 },
    DiscreteUniform { k: u64 },
    ContinuousUniform { lo: f64, hi: f64 },
    Exponential { theta: f64 },
    StandardNormal { mu: f64, sigma: f64 },
    SortedAscending,
    SortedDescending,
    AllEqual,
}

/// Deterministic patterns handled by [`pattern`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    SortedAscending,
    SortedDescending,
    AllEqual,
}

/// Key used by the `all_equal` pattern.
pub const ALL_EQUAL_KEY: i64 = 1;

// Knuth's method needs exp(-lambda) to stay a normal f64.
const MAX_POISSON_LAMBDA: f64 = 700.0;

impl DistributionSpec {
    pub const BINOMIAL: Self = Self::Binomial { m: 1000, p: 0.5 };
    pub const POISSON: Self = Self::Poisson { lambda: 1.0 };
    pub const DISCRETE_UNIFORM: Self = Self::DiscreteUniform { k: 1000 };
    pub const CONTINUOUS_UNIFORM: Self = Self::ContinuousUniform { lo: 0.0, hi: 1.0 };
    pub const EXPONENTIAL: Self = Self::Exponential { theta: 1.0 };
    pub const STANDARD_NORMAL: Self = Self::StandardNormal { mu: 0.0, sigma: 1.0 };

    /// The six random distributions with their default parameters.
    pub const RANDOM_DEFAULTS: [Self; 6] = [
        Self::BINOMIAL,
        Self::POISSON,
        Self::DISCRETE_UNIFORM,
        Self::CONTINUOUS_UNIFORM,
        Self::EXPONENTIAL,
        Self::STANDARD_NORMAL,
    ];

    /// Every kind, random ones with default parameters.
    pub const ALL_KINDS: [Self; 9] = [
        Self::BINOMIAL,
        Self::POISSON,
        Self::DISCRETE_UNIFORM,
        Self::CONTINUOUS_UNIFORM,
        Self::EXPONENTIAL,
        Self::STANDARD_NORMAL,
        Self::SortedAscending,
        Self::SortedDescending,
        Self::AllEqual,
    ];

    /// Short stable name of the kind (parameters excluded).
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Binomial { .. } => "binomial",
            Self::Poisson { .. } => "poisson",
            Self::DiscreteUniform { .. } => "discrete_uniform",
            Self::ContinuousUniform { .. } => "continuous_uniform",
            Self::Exponential { .. } => "exponential",
            Self::StandardNormal { .. } => "standard_normal",
            Self::SortedAscending => "sorted_ascending",
            Self::SortedDescending => "sorted_descending",
            Self::AllEqual => "all_equal",
        }
    }

    /// Integer-valued kinds produce [`Keys::Int`].
    pub fn is_discrete(&self) -> bool {
        !matches!(
            self,
            Self::ContinuousUniform { .. } | Self::Exponential { .. } | Self::StandardNormal { .. }
        )
    }

    pub fn as_pattern(&self) -> Option<Pattern> {
        match self {
            Self::SortedAscending => Some(Pattern::SortedAscending),
            Self::SortedDescending => Some(Pattern::SortedDescending),
            Self::AllEqual => Some(Pattern::AllEqual),
            _ => None,
        }
    }

    /// Stable 64-bit identifier of the spec including its parameters.
    pub fn stream_id(&self) -> u64 {
        // FNV-1a over the canonical text form
        self.to_string().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        })
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |detail: String| {
            Err(GenError::InvalidParameter {
                dist: self.tag(),
                detail,
            })
        };
        match *self {
            Self::Binomial { m, p } => {
                if m < 1 {
                    return bad(format!("m = {m} must be at least 1"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("p = {p} must lie in [0, 1]"));
                }
            }
            Self::Poisson { lambda } => {
                if !(lambda > 0.0 && lambda <= MAX_POISSON_LAMBDA) {
                    return bad(format!("lambda = {lambda} must lie in (0, {MAX_POISSON_LAMBDA}]"));
                }
            }
            Self::DiscreteUniform { k } => {
                if k < 1 || k > i64::MAX as u64 {
                    return bad(format!("k = {k} must lie in [1, {}]", i64::MAX));
                }
            }
            Self::ContinuousUniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return bad(format!("need finite lo < hi, got lo = {lo}, hi = {hi}"));
                }
            }
            Self::Exponential { theta } => {
                if !(theta > 0.0 && theta.is_finite()) {
                    return bad(format!("theta = {theta} must be positive"));
                }
            }
            Self::StandardNormal { mu, sigma } => {
                if !mu.is_finite() {
                    return bad(format!("mu = {mu} must be finite"));
                }
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return bad(format!("sigma = {sigma} must be positive"));
                }
            }
            Self::SortedAscending | Self::SortedDescending | Self::AllEqual => {}
        }
        Ok(())
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.tag();
        match *self {
            Self::Binomial { m, p } => write!(f, "{tag}:m={m},p={p}"),
            Self::Poisson { lambda } => write!(f, "{tag}:lambda={lambda}"),
            Self::DiscreteUniform { k } => write!(f, "{tag}:k={k}"),
            Self::ContinuousUniform { lo, hi } => write!(f, "{tag}:lo={lo},hi={hi}"),
            Self::Exponential { theta } => write!(f, "{tag}:theta={theta}"),
            Self::StandardNormal { mu, sigma } => write!(f, "{tag}:mu={mu},sigma={sigma}"),
            _ => f.write_str(tag),
        }
    }
}

/// Parses `name` or `name:key=value,...`, e.g. `binomial:m=200,p=0.3`.
/// Omitted parameters take their defaults.
impl FromStr for DistributionSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), p.trim()),
            None => (s.trim(), ""),
        };
        let mut spec = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "binomial" => Self::BINOMIAL,
            "poisson" => Self::POISSON,
            "discrete_uniform" | "discrete" => Self::DISCRETE_UNIFORM,
            "continuous_uniform" | "uniform" | "uniform01" => Self::CONTINUOUS_UNIFORM,
            "exponential" | "exp" => Self::EXPONENTIAL,
            "standard_normal" | "normal" => Self::STANDARD_NORMAL,
            "sorted_ascending" | "ascending" | "sorted" => Self::SortedAscending,
            "sorted_descending" | "descending" | "reversed" => Self::SortedDescending,
            "all_equal" | "constant" => Self::AllEqual,
            _ => return Err(GenError::UnknownDistribution(s.to_string())),
        };
        for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair.split_once('=').ok_or_else(|| GenError::InvalidParameter {
                dist: spec.tag(),
                detail: format!("expected key=value, got `{pair}`"),
            })?;
            spec.set_param(key.trim(), value.trim())?;
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl DistributionSpec {
    /// Overrides one named parameter from its text form.
    pub fn set_param(&mut self, key: &str, value: &str) -> Result<(), GenError> {
        let tag = self.tag();
        let bad = || GenError::InvalidParameter {
            dist: tag,
            detail: format!("cannot set `{key}` to `{value}`"),
        };
        let real = || value.parse::<f64>().map_err(|_| bad());
        match (self, key) {
            (Self::Binomial { m, .. }, "m") => *m = value.parse().map_err(|_| bad())?,
            (Self::Binomial { p, .. }, "p") => *p = real()?,
            (Self::Poisson { lambda }, "lambda") => *lambda = real()?,
            (Self::DiscreteUniform { k }, "k") => *k = value.parse().map_err(|_| bad())?,
            (Self::ContinuousUniform { lo, .. }, "lo") => *lo = real()?,
            (Self::ContinuousUniform { hi, .. }, "hi") => *hi = real()?,
            (Self::Exponential { theta }, "theta" | "mean") => *theta = real()?,
            (Self::StandardNormal { mu, .. }, "mu" | "mean") => *mu = real()?,
            (Self::StandardNormal { sigma, .. }, "sigma" | "sd") => *sigma = real()?,
            _ => return Err(bad()),
        }
        Ok(())
    }
}

/// Uniform variates and friends over ChaCha8.
struct Variates {
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl Variates {
    fn new(seed: Seed) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed.0),
            spare_normal: None,
        }
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn bernoulli_sum(&mut self, m: u32, p: f64) -> i64 {
        if p == 0.5 {
            // each random bit is one fair Bernoulli draw
            let mut left = m;
            let mut total = 0;
            while left > 0 {
                let take = left.min(64);
                let bits = self.rng.next_u64();
                let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
                total += (bits & mask).count_ones() as i64;
                left -= take;
            }
            total
        } else {
            (0..m).filter(|_| self.unit() < p).count() as i64
        }
    }

    fn poisson_knuth(&mut self, lambda: f64) -> i64 {
        let limit = (-lambda).exp();
        let mut k = 0;
        let mut product = self.unit();
        while product > limit {
            k += 1;
            product *= self.unit();
        }
        k
    }

    fn polar_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let x = 2.0 * self.unit() - 1.0;
            let y = 2.0 * self.unit() - 1.0;
            let s = x * x + y * y;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(y * factor);
                return x * factor;
            }
        }
    }
}

fn reserve<T>(n: usize) -> Result<Vec<T>, GenError> {
    let mut v = Vec::new();
    v.try_reserve_exact(n).map_err(|_| GenError::Allocation { n })?;
    Ok(v)
}

/// Draws `n` keys from `spec`. Same `(spec, n, seed)` gives identical output.
pub fn generate(spec: &DistributionSpec, n: usize, seed: Seed) -> Result<Keys, GenError> {
    spec.validate()?;
    if let Some(p) = spec.as_pattern() {
        return pattern(p, n);
    }
    let mut v = Variates::new(seed);
    let keys = match *spec {
        Spec::Binomial { m, p } => Keys::Int(fill(n, || v.bernoulli_sum(m, p))?),
        Spec::Poisson { lambda } => Keys::Int(fill(n, || v.poisson_knuth(lambda))?),
        Spec::DiscreteUniform { k } => Keys::Int(fill(n, || ((v.unit() * k as f64) as u64).min(k - 1) as i64 + 1)?),
        Spec::ContinuousUniform { lo, hi } => Keys::Real(fill(n, || lo + (hi - lo) * v.unit())?),
        Spec::Exponential { theta } => Keys::Real(fill(n, || -theta * (1.0 - v.unit()).ln())?),
        Spec::StandardNormal { mu, sigma } => Keys::Real(fill(n, || mu + sigma * v.polar_normal())?),
        Spec::SortedAscending | Spec::SortedDescending | Spec::AllEqual => unreachable!(),
    };
    Ok(keys)
}

fn fill<T>(n: usize, mut draw: impl FnMut() -> T) -> Result<Vec<T>, GenError> {
    let mut out = reserve(n)?;
    out.extend((0..n).map(|_| draw()));
    Ok(out)
}

/// `1..=n`, `n..=1` or `n` copies of [`ALL_EQUAL_KEY`].
pub fn pattern(kind: Pattern, n: usize) -> Result<Keys, GenError> {
    let mut out = reserve(n)?;
    let n_key = n as i64;
    match kind {
        Pattern::SortedAscending => out.extend(1..=n_key),
        Pattern::SortedDescending => out.extend((1..=n_key).rev()),
        Pattern::AllEqual => out.resize(n, ALL_EQUAL_KEY),
    }
    Ok(Keys::Int(out))
}
