//! Statistical inference procedures treated as acceptance rules: level-α
//! binomial tests, Student-t intervals, exact binomial confidence intervals,
//! the `3/√(4n)` proportion bound with its exact coverage, and default-rule
//! reliability intervals.
//!
//! This module works in `f64`; transcendental functions are unavoidable for
//! the t distribution.

pub mod special;

use std::io::Read;

use serde::Serialize;

use crate::error::{Error, Result};
use special::{binomial_lower_tail, binomial_pmf, binomial_upper_tail, inv_reg_inc_beta, student_t_critical};

/// Tolerance on the `|k/n − p| ≤ half_width` comparison: frequencies this
/// close to the boundary count as inside.
const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RealSample {
    values: Vec<f64>,
}

impl RealSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SampleTooSmall(values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        Ok(RealSample { values })
    }

    /// One number per line; blank lines are skipped.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut values = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let Some(field) = record.get(0) else { continue };
            if field.is_empty() {
                continue;
            }
            let v: f64 = field.parse().map_err(|_| {
                Error::InvalidArgument(format!("line {}: `{field}` is not a number", line + 1))
            })?;
            values.push(v);
        }
        RealSample::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample standard deviation with `N − 1` in the denominator.
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        (ss / (self.values.len() - 1) as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomialData {
    pub n: u64,
    pub k: u64,
}

impl BinomialData {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidBinomial { n, k });
        }
        Ok(BinomialData { n, k })
    }

    /// A single header-less `n,k` record.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let record = rdr
            .records()
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty binomial file".into()))?
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if record.len() != 2 {
            return Err(Error::InvalidArgument(format!(
                "expected `n,k`, got {} field(s)",
                record.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("`{s}` is not a count")))
        };
        BinomialData::new(parse(&record[0])?, parse(&record[1])?)
    }

    pub fn frequency(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

/// A level strictly inside `(0, 1)`: a confidence level, a test size, or a
/// fiducial index depending on the caller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceSpec(f64);

impl ConfidenceSpec {
    pub fn new(level: f64) -> Result<Self> {
        if level > 0.0 && level < 1.0 {
            Ok(ConfidenceSpec(level))
        } else {
            Err(Error::InvalidLevel(level))
        }
    }

    pub fn level(&self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealInterval {
    pub lower: f64,
    pub upper: f64,
}

impl RealInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TInterval {
    pub lower: f64,
    pub upper: f64,
    pub mean: f64,
    pub std_dev: f64,
    pub critical: f64,
    pub df: u64,
}

impl TInterval {
    pub fn interval(&self) -> RealInterval {
        RealInterval { lower: self.lower, upper: self.upper }
    }
}

pub fn t_critical(level: ConfidenceSpec, df: u64) -> f64 {
    student_t_critical(level.level(), df as f64)
}

/// `X̄ ± t·s/√N` with `t` the two-sided critical value on `N − 1` degrees of
/// freedom.
pub fn t_interval(sample: &RealSample, level: ConfidenceSpec) -> Result<TInterval> {
    let s = sample.std_dev();
    if s == 0.0 {
        return Err(Error::DegenerateSample);
    }
    let n = sample.len() as u64;
    let mean = sample.mean();
    let critical = t_critical(level, n - 1);
    let half = critical * s / (n as f64).sqrt();
    Ok(TInterval { lower: mean - half, upper: mean + half, mean, std_dev: s, critical, df: n - 1 })
}

/// Exact (Clopper-Pearson) interval for the binomial parameter: each side
/// holds at most `(1 − level)/2` of tail probability, so coverage is at
/// least `level` whatever the true value.
pub fn binomial_ci(data: BinomialData, level: ConfidenceSpec) -> RealInterval {
    let alpha = 1.0 - level.level();
    let BinomialData { n, k } = data;
    let lower = if k == 0 {
        0.0
    } else {
        inv_reg_inc_beta(k as f64, (n - k + 1) as f64, alpha / 2.0)
    };
    let upper = if k == n {
        1.0
    } else {
        inv_reg_inc_beta((k + 1) as f64, (n - k) as f64, 1.0 - alpha / 2.0)
    };
    RealInterval { lower, upper }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProportionBound {
    pub half_width: f64,
    /// The half-width is at least 1, so the bound says nothing.
    pub vacuous: bool,
}

/// Half-width `3/√(4n)` within which the true proportion lies with
/// probability at least 0.91.
pub fn proportion_bound(n: u64) -> Result<ProportionBound> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    let half_width = 3.0 / (4.0 * n as f64).sqrt();
    Ok(ProportionBound { half_width, vacuous: half_width >= 1.0 })
}

/// Probability that the observed frequency of `n` Bernoulli(`p`) trials
/// falls within `half_width` of `p`, by summing the binomial pmf.
pub fn exact_coverage(n: u64, p: f64, half_width: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!("p = {p} must lie in (0, 1)")));
    }
    if half_width.is_nan() || half_width <= 0.0 {
        return Err(Error::InvalidArgument(format!("half-width {half_width} must be positive")));
    }
    let nf = n as f64;
    let total: f64 = (0..=n)
        .filter(|&k| (k as f64 / nf - p).abs() <= half_width + BOUNDARY_EPS)
        .map(|k| binomial_pmf(n, k, p))
        .sum();
    Ok(total.min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tail {
    Upper,
    Lower,
    TwoSided,
}

impl std::str::FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Tail::Upper),
            "lower" => Ok(Tail::Lower),
            "two-sided" | "two" | "both" => Ok(Tail::TwoSided),
            other => Err(Error::InvalidArgument(format!("unknown tail `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum TestOutcome {
    Reject { p_value: f64 },
    FailToReject { p_value: f64 },
}

impl TestOutcome {
    pub fn p_value(&self) -> f64 {
        match self {
            TestOutcome::Reject { p_value } | TestOutcome::FailToReject { p_value } => *p_value,
        }
    }

    pub fn rejects(&self) -> bool {
        matches!(self, TestOutcome::Reject { .. })
    }
}

pub fn binomial_p_value(data: BinomialData, null_p: f64, tail: Tail) -> f64 {
    let BinomialData { n, k } = data;
    match tail {
        Tail::Upper => binomial_upper_tail(n, k, null_p),
        Tail::Lower => binomial_lower_tail(n, k, null_p),
        Tail::TwoSided => {
            let m = binomial_upper_tail(n, k, null_p).min(binomial_lower_tail(n, k, null_p));
            (2.0 * m).min(1.0)
        }
    }
}

/// Exact binomial test: rejects iff the p-value is at most `alpha`, so the
/// false-rejection rate under `null_p` never exceeds `alpha`.
pub fn hypothesis_test(
    data: BinomialData,
    null_p: f64,
    alpha: ConfidenceSpec,
    tail: Tail,
) -> Result<TestOutcome> {
    if !(null_p > 0.0 && null_p < 1.0) {
        return Err(Error::InvalidArgument(format!("null proportion {null_p} must lie in (0, 1)")));
    }
    let p_value = binomial_p_value(data, null_p, tail);
    Ok(if p_value <= alpha.level() {
        TestOutcome::Reject { p_value }
    } else {
        TestOutcome::FailToReject { p_value }
    })
}

/// Reliability interval for a default rule that succeeded `successes` times
/// in `applications` uses. Gullibility `g` sets the confidence level to
/// `1 − g`; the interval itself is exact.
pub fn default_rule_reliability(successes: u64, applications: u64, gullibility: f64) -> Result<RealInterval> {
    if !(gullibility > 0.0 && gullibility < 1.0) {
        return Err(Error::InvalidGullibility(gullibility));
    }
    let data = BinomialData::new(applications, successes)?;
    Ok(binomial_ci(data, ConfidenceSpec::new(1.0 - gullibility)?))
}
