//! Monotone metrics on density matrices.
//!
//! Each metric is given by an operator monotone function `f` with `f(1) = 1`
//! and its Morozova–Chentsov function `c(x, y) = 1 / (y f(x/y))`. The
//! eigenvalue weight used as the integrand is the Bures volume-element
//! factor with `c_bures` swapped for the metric's `c`:
//!
//! ```text
//! w(λ) = (Π λ_i)^(-1/2) · Π_{i<j} (λ_i - λ_j)^2 · c(λ_i, λ_j) / 2
//! ```
//!
//! For `N = 2` this reproduces the Bloch-ball radial elements of the minimal
//! and maximal metrics exactly; for `N = 4` it is a working hypothesis.
//!
//! All `c` are evaluated through the symmetric variables
//! `m = (x + y) / 2` and `δ = (x - y) / (x + y)`, where every metric has the
//! form `c = R(δ) / m` and `R ≡ 1` for Bures. `R` is even in `δ`, which makes
//! `c(x, y) == c(y, x)` hold bit-for-bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("argument {0} is outside the domain (must be positive and finite)")]
    Domain(f64),
    #[error("spectrum must be nonempty")]
    EmptySpectrum,
    #[error("spectrum entries must be positive, got {0}")]
    NonPositiveEigenvalue(f64),
    #[error("spectrum must sum to 1, got {0}")]
    NotNormalized(f64),
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// Minimal monotone metric, `f(t) = (1 + t) / 2`.
    Bures,
    /// Kubo–Mori, `c(x, y) = (ln x - ln y) / (x - y)`.
    Km,
    /// Maximal monotone metric, `f(t) = 2t / (1 + t)`.
    Max,
    /// Mean of the minimal and maximal `f`.
    Average,
    /// Wigner–Yanase, `f(t) = (√t + 1)² / 4`.
    Wy,
    /// Grosse–Krattenthaler–Slater, `f(t) = t^(t/(t-1)) / e`.
    Gks,
    /// Noninformative, `f(t) = 2 (t-1)² / ((1+t) ln² t)`.
    Ni,
}

impl MetricKind {
    pub const ALL: [MetricKind; 7] = [
        MetricKind::Bures,
        MetricKind::Km,
        MetricKind::Max,
        MetricKind::Average,
        MetricKind::Wy,
        MetricKind::Gks,
        MetricKind::Ni,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Bures => "bures",
            MetricKind::Km => "km",
            MetricKind::Max => "max",
            MetricKind::Average => "average",
            MetricKind::Wy => "wy",
            MetricKind::Gks => "gks",
            MetricKind::Ni => "ni",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| MetricError::UnknownMetric(s.to_string()))
    }
}

/// Relative separation below which `c` switches to its diagonal series.
pub const DIAGONAL_THRESHOLD: f64 = 1e-8;

fn check_arg(x: f64) -> Result<f64, MetricError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(MetricError::Domain(x))
    }
}

// ln(t) / (t - 1), with its limit at t = 1.
fn ln_over_shift(t: f64) -> f64 {
    let s = t - 1.0;
    if s.abs() < DIAGONAL_THRESHOLD {
        1.0 - s / 2.0 + s * s / 3.0
    } else if s.abs() < 0.5 {
        s.ln_1p() / s
    } else {
        // t - 1 has dropped the low bits of a small t.
        t.ln() / s
    }
}

/// Operator monotone function of `metric`, normalized to `f(1) = 1`.
pub fn f(metric: MetricKind, t: f64) -> Result<f64, MetricError> {
    let t = check_arg(t)?;
    Ok(match metric {
        MetricKind::Bures => (1.0 + t) / 2.0,
        MetricKind::Km => 1.0 / ln_over_shift(t),
        MetricKind::Max => 2.0 * t / (1.0 + t),
        MetricKind::Average => (1.0 + 6.0 * t + t * t) / (4.0 + 4.0 * t),
        MetricKind::Wy => (t.sqrt() + 1.0).powi(2) / 4.0,
        MetricKind::Gks => (t * ln_over_shift(t) - 1.0).exp(),
        MetricKind::Ni => 2.0 / ((1.0 + t) * ln_over_shift(t).powi(2)),
    })
}

/// Symmetric coordinates of an eigenvalue pair.
#[derive(Debug, Clone, Copy)]
struct Pair {
    /// (x - y) / (x + y)
    delta: f64,
    /// 1 - δ² = 4xy / (x + y)², computed without cancellation
    one_minus_delta_sq: f64,
    near_diagonal: bool,
    /// ln(2x / (x+y)) and ln(2y / (x+y))
    ln_a: f64,
    ln_b: f64,
}

impl Pair {
    fn new(x: f64, y: f64) -> Self {
        let sum = x + y;
        let diff = x - y;
        let delta = diff / sum;
        let near_diagonal = diff.abs() < DIAGONAL_THRESHOLD * x.max(y);
        Pair {
            delta,
            one_minus_delta_sq: 4.0 * (x * y) / (sum * sum),
            near_diagonal,
            ln_a: ln_scaled(x, sum, delta),
            ln_b: ln_scaled(y, sum, -delta),
        }
    }

    // artanh(δ) / δ
    fn artanh_ratio(&self) -> f64 {
        if self.near_diagonal {
            let d2 = self.delta * self.delta;
            1.0 + d2 / 3.0
        } else {
            0.5 * (self.ln_a - self.ln_b) / self.delta
        }
    }

    // g(δ) = ((1+δ) ln(1+δ) - (1-δ) ln(1-δ)) / (2δ)
    fn gks_exponent(&self) -> f64 {
        if self.near_diagonal {
            let d2 = self.delta * self.delta;
            1.0 - d2 / 6.0
        } else {
            let a = 1.0 + self.delta;
            let b = 1.0 - self.delta;
            (a * self.ln_a - b * self.ln_b) / (2.0 * self.delta)
        }
    }

    fn ln_ratio(&self, metric: MetricKind) -> f64 {
        match metric {
            MetricKind::Bures => 0.0,
            MetricKind::Km => self.artanh_ratio().ln(),
            MetricKind::Max => -self.one_minus_delta_sq.ln(),
            MetricKind::Average => {
                std::f64::consts::LN_2 - (1.0 + self.one_minus_delta_sq).ln()
            }
            MetricKind::Wy => std::f64::consts::LN_2 - (1.0 + self.one_minus_delta_sq.sqrt()).ln(),
            MetricKind::Gks => 1.0 - self.gks_exponent(),
            MetricKind::Ni => 2.0 * self.artanh_ratio().ln(),
        }
    }

    fn ratio(&self, metric: MetricKind) -> f64 {
        match metric {
            MetricKind::Bures => 1.0,
            MetricKind::Km => self.artanh_ratio(),
            MetricKind::Max => 1.0 / self.one_minus_delta_sq,
            MetricKind::Average => 2.0 / (1.0 + self.one_minus_delta_sq),
            MetricKind::Wy => 2.0 / (1.0 + self.one_minus_delta_sq.sqrt()),
            MetricKind::Gks => (1.0 - self.gks_exponent()).exp(),
            MetricKind::Ni => self.artanh_ratio().powi(2),
        }
    }
}

// ln(2v / sum) where δ_v = (2v - sum) / sum; ln_1p when the ratio is near 1.
fn ln_scaled(v: f64, sum: f64, delta_v: f64) -> f64 {
    if delta_v.abs() < 0.5 {
        delta_v.ln_1p()
    } else {
        (2.0 * v / sum).ln()
    }
}

/// Morozova–Chentsov function `c(x, y)` of `metric`.
///
/// Symmetric in its arguments, with `mc(m, x, x) == 1 / x`.
pub fn mc(metric: MetricKind, x: f64, y: f64) -> Result<f64, MetricError> {
    let x = check_arg(x)?;
    let y = check_arg(y)?;
    let mean = (x + y) / 2.0;
    Ok(Pair::new(x, y).ratio(metric) / mean)
}

/// `ln(c_metric(x, y) / c_bures(x, y))`, the per-pair log factor by which the
/// metric's weight exceeds the Bures weight. Arguments must be positive.
pub fn ln_ratio_to_bures(metric: MetricKind, x: f64, y: f64) -> f64 {
    Pair::new(x, y).ln_ratio(metric)
}

/// Eigenvalues of a density matrix: positive and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

/// Tolerance on `Σ λ = 1`.
pub const SPECTRUM_SUM_TOLERANCE: f64 = 1e-12;

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self, MetricError> {
        if values.is_empty() {
            return Err(MetricError::EmptySpectrum);
        }
        if let Some(&bad) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(MetricError::NonPositiveEigenvalue(bad));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_SUM_TOLERANCE {
            return Err(MetricError::NotNormalized(sum));
        }
        Ok(Spectrum(values))
    }

    pub(crate) fn new_unchecked(values: Vec<f64>) -> Self {
        Spectrum(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Log of the Bures eigenvalue weight; `-inf` when two eigenvalues coincide.
pub fn ln_bures_weight(values: &[f64]) -> f64 {
    let mut acc = -0.5 * values.iter().map(|v| v.ln()).sum::<f64>();
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            // (x - y)^2 * (2 / (x + y)) / 2
            acc += 2.0 * (x - y).abs().ln() - (x + y).ln();
        }
    }
    acc
}

/// Log of the ansatz weight for `metric`; `-inf` for degenerate spectra.
pub fn ln_weight(metric: MetricKind, values: &[f64]) -> f64 {
    let base = ln_bures_weight(values);
    if base == f64::NEG_INFINITY || metric == MetricKind::Bures {
        return base;
    }
    let mut acc = base;
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            acc += ln_ratio_to_bures(metric, x, y);
        }
    }
    acc
}

/// Log weights of several metrics on one spectrum, sharing the pair terms.
/// Writes `ln w_m` into `out[i]` for `metrics[i]` and returns `ln w_bures`.
pub fn ln_weights(values: &[f64], metrics: &[MetricKind], out: &mut [f64]) -> f64 {
    let base = ln_bures_weight(values);
    out[..metrics.len()].fill(base);
    if base == f64::NEG_INFINITY || metrics.iter().all(|&m| m == MetricKind::Bures) {
        return base;
    }
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            let pair = Pair::new(x, y);
            for (acc, &m) in out.iter_mut().zip(metrics) {
                *acc += pair.ln_ratio(m);
            }
        }
    }
    base
}

/// Ansatz eigenvalue weight
/// `(Π λ)^(-1/2) Π_{i<j} (λ_i - λ_j)² c(λ_i, λ_j) / 2`, accumulated in log
/// space. Degenerate spectra give 0.
pub fn eigenvalue_weight(metric: MetricKind, spectrum: &Spectrum) -> f64 {
    ln_weight(metric, spectrum.values()).exp()
}

/// Eigenvalue weight of the qubit spectrum `((1+r)/2, (1-r)/2)`.
pub fn bloch_radial_profile(metric: MetricKind, r: f64) -> f64 {
    let s = Spectrum::new_unchecked(vec![(1.0 + r) / 2.0, (1.0 - r) / 2.0]);
    eigenvalue_weight(metric, &s)
}

// Γ(k / 2) for a positive integer k.
fn gamma_half(k: u32) -> f64 {
    if k % 2 == 0 {
        (1..k / 2).map(f64::from).product()
    } else {
        // Γ(1/2) = √π, Γ(z + 1) = z Γ(z)
        (0..k / 2).fold(std::f64::consts::PI.sqrt(), |g, i| g * (i as f64 + 0.5))
    }
}

/// Hall/Bures normalization constant
/// `C_N = 2^(N²-N) Γ(N²/2) / (π^(N/2) Γ(1) ⋯ Γ(N+1))`,
/// i.e. the reciprocal of `∫ (Π λ)^(-1/2) Q_N dλ_1 ⋯ dλ_{N-1}` over the simplex.
///
/// # Panics
/// If `n < 2` or `n > 12`.
pub fn hall_constant(n: usize) -> f64 {
    assert!((2..=12).contains(&n), "hall_constant defined here for 2 <= N <= 12");
    let n = n as u32;
    let numerator = 2f64.powi((n * n - n) as i32) * gamma_half(n * n);
    let denominator = std::f64::consts::PI.powf(n as f64 / 2.0)
        * (1..=n + 1).map(|k| gamma_half(2 * k)).product::<f64>();
    numerator / denominator
}
