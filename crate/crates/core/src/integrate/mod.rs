//! Blockwise quasi-Monte Carlo estimation of metric volumes and separability
//! probabilities.
//!
//! Points of the 15-dimensional cube are split as `u[0..3]` → spectrum and
//! `u[3..15]` → flag unitary. The integrand is the eigenvalue weight; the
//! flag part only decides separability. Spectra are drawn either uniformly
//! or from Dirichlet(½), see [`SimplexSampling`]; every reported ratio has the
//! same limit under both, the second with far smaller replicate variance. Absolute volumes are anchored to the
//! statistical-distinguishability total `π⁸/1680` through the ratio
//! `Σ w_metric / Σ w_bures` on the same points, so the Bures total is exact by
//! construction.
//!
//! A run is cut into `blocks` index blocks, each cut into fixed chunks of
//! [`CHUNK`] points. Chunks are evaluated in parallel and merged in index
//! order, so the result does not depend on the number of worker threads.

mod accumulate;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{self, hall_constant, MetricKind};
use crate::qmc::{derive_seed, CubePoint, PointGenerator, QmcError, SequenceKind};
use crate::states::{self, jacobi_eigenvalues, partial_transpose, Matrix4, SEPARABILITY_TOLERANCE};

pub use accumulate::{merge, BlockResult, CompensatedSum};
use accumulate::Accumulator;

/// `V_SD^{s+n} = π⁸/1680`, the statistical-distinguishability volume of
/// two-qubit states.
pub const SD_TOTAL_VOLUME: f64 = std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    / 1680.0;

/// Points per parallel work unit.
pub const CHUNK: u64 = 1 << 14;

/// A single point carrying more than this fraction of the total metric
/// weight marks the estimate as heavy-tailed.
pub const HEAVY_TAIL_FRACTION: f64 = 0.01;

/// Cube dimension of the full problem.
pub const FULL_DIM: usize = 15;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SEPVOL_THREADS";

#[derive(Debug, Error)]
pub enum IntegrateError {
    #[error("points ({points}) must be a positive multiple of blocks ({blocks})")]
    Partition { points: u64, blocks: u64 },
    #[error("full-15d mode requires N = 4, got N = {0}")]
    FullModeDimension(usize),
    #[error("simplex-only mode supports N in 2..=4, got N = {0}")]
    SimplexDimension(usize),
    #[error("simplex-only configurations are evaluated by run_simplex")]
    SimplexOnlyRun,
    #[error("expected a {expected}-dimensional point, got {got}")]
    PointDimension { expected: usize, got: usize },
    #[error("no metrics requested")]
    NoMetrics,
    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },
    #[error(transparent)]
    Qmc(#[from] QmcError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedPolicy {
    /// Block `b` uses seed `derive_seed(seed, b)` over indices `1..=points/blocks`.
    DistinctPerBlock,
    /// Every block uses `seed`, over disjoint consecutive index ranges.
    Shared,
}

impl SeedPolicy {
    pub fn name(self) -> &'static str {
        match self {
            SeedPolicy::DistinctPerBlock => "distinct-per-block",
            SeedPolicy::Shared => "shared",
        }
    }
}

impl fmt::Display for SeedPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeedPolicy {
    type Err = IntegrateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [SeedPolicy::DistinctPerBlock, SeedPolicy::Shared]
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| IntegrateError::UnknownName {
                what: "seed policy",
                value: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "full-15d")]
    Full15d,
    #[serde(rename = "simplex-only")]
    SimplexOnly,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Full15d => "full-15d",
            Mode::SimplexOnly => "simplex-only",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub metric: MetricKind,
    pub sequence: SequenceKind,
    pub points: u64,
    pub blocks: u64,
    pub seed: u64,
    pub seed_policy: SeedPolicy,
    pub mode: Mode,
    pub n: usize,
    /// How the spectrum coordinates `u[0..3]` are mapped to the simplex.
    #[serde(default)]
    pub sampling: SimplexSampling,
}

impl RunConfig {
    /// Full 15-dimensional two-qubit run with distinct per-block seeds and
    /// Dirichlet(½) spectrum sampling.
    pub fn full(metric: MetricKind, sequence: SequenceKind, points: u64, blocks: u64, seed: u64) -> Self {
        RunConfig {
            metric,
            sequence,
            points,
            blocks,
            seed,
            seed_policy: SeedPolicy::DistinctPerBlock,
            mode: Mode::Full15d,
            n: 4,
            sampling: SimplexSampling::DirichletHalf,
        }
    }

    /// Simplex-only run in dimension `n - 1` with a single block.
    pub fn simplex(metric: MetricKind, n: usize, sequence: SequenceKind, points: u64, seed: u64) -> Self {
        RunConfig {
            metric,
            sequence,
            points,
            blocks: 1,
            seed,
            seed_policy: SeedPolicy::Shared,
            mode: Mode::SimplexOnly,
            n,
            sampling: SimplexSampling::DirichletHalf,
        }
    }

    pub fn validate(&self) -> Result<(), IntegrateError> {
        if self.blocks == 0 || self.points == 0 || self.points % self.blocks != 0 {
            return Err(IntegrateError::Partition {
                points: self.points,
                blocks: self.blocks,
            });
        }
        match self.mode {
            Mode::Full15d if self.n != 4 => Err(IntegrateError::FullModeDimension(self.n)),
            Mode::SimplexOnly if !(2..=4).contains(&self.n) => {
                Err(IntegrateError::SimplexDimension(self.n))
            }
            _ => Ok(()),
        }
    }

    pub fn points_per_block(&self) -> u64 {
        self.points / self.blocks
    }

    pub fn dim(&self) -> usize {
        match self.mode {
            Mode::Full15d => FULL_DIM,
            Mode::SimplexOnly => self.n - 1,
        }
    }

    /// Seed and first index of block `b`.
    pub fn block_stream(&self, b: u64) -> (u64, u64) {
        let per = self.points_per_block();
        match self.seed_policy {
            // Unscrambled Halton ignores the seed; fall back to disjoint ranges
            // so that blocks are not copies of each other.
            SeedPolicy::DistinctPerBlock if self.sequence.is_seeded() => {
                (derive_seed(self.seed, b), 1)
            }
            _ => (self.seed, b * per + 1),
        }
    }
}

/// Result of one integration, for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub metric: MetricKind,
    /// Total volume of the ×4-scaled metric.
    pub v_total_tilde: f64,
    /// Separable volume of the ×4-scaled metric.
    pub v_sep_tilde: f64,
    pub p_sep: f64,
    /// Between-block standard errors; absent with a single block.
    pub se_v_total: Option<f64>,
    pub se_v_sep: Option<f64>,
    pub se_p: Option<f64>,
    pub heavy_tail_flag: bool,
    pub points_used: u64,
    /// Seconds.
    pub wall_time: f64,
    pub blocks: Vec<BlockResult>,
}

impl Estimate {
    /// Estimate from per-block sums, merged in the given order.
    pub fn from_blocks(metric: MetricKind, blocks: Vec<BlockResult>, wall_time: f64) -> Self {
        let total = merge(&blocks);
        let (v_total_tilde, v_sep_tilde, p_sep) = ratios(&total);
        let per_block: Vec<(f64, f64, f64)> = blocks.iter().map(ratios).collect();
        let se = |pick: fn(&(f64, f64, f64)) -> f64| {
            standard_error(&per_block.iter().map(pick).collect::<Vec<_>>())
        };
        Estimate {
            metric,
            v_total_tilde,
            v_sep_tilde,
            p_sep,
            se_v_total: se(|t| t.0),
            se_v_sep: se(|t| t.1),
            se_p: se(|t| t.2),
            heavy_tail_flag: total.max_single_weight > HEAVY_TAIL_FRACTION * total.sum_w_metric,
            points_used: total.count,
            wall_time,
            blocks,
        }
    }
}

fn ratios(r: &BlockResult) -> (f64, f64, f64) {
    (
        // Ratio first, so Bures gives exactly the anchor.
        SD_TOTAL_VOLUME * (r.sum_w_metric / r.sum_w_bures),
        SD_TOTAL_VOLUME * (r.sum_w_metric_sep / r.sum_w_bures),
        r.sum_w_metric_sep / r.sum_w_metric,
    )
}

/// Standard error of the mean of replicate values; `None` below two values.
pub fn standard_error(values: &[f64]) -> Option<f64> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Some((var / n as f64).sqrt())
}

/// Weights and separability of one cube point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEval {
    pub w_metric: f64,
    pub w_bures: f64,
    pub separable: bool,
}

/// Scratch space for evaluating points.
struct Evaluator {
    sampling: SimplexSampling,
    metrics: Vec<MetricKind>,
    ln_w: Vec<f64>,
    lambda: [f64; 4],
    flag: Matrix4,
    rho: Matrix4,
}

impl Evaluator {
    fn new(metrics: &[MetricKind], sampling: SimplexSampling) -> Self {
        let zero = num_complex::Complex64::new(0.0, 0.0);
        Evaluator {
            sampling,
            metrics: metrics.to_vec(),
            ln_w: vec![0.0; metrics.len()],
            lambda: [0.0; 4],
            flag: [[zero; 4]; 4],
            rho: [[zero; 4]; 4],
        }
    }

    /// Fills `weights[i]` for `metrics[i]`; returns `(w_bures, separable)`.
    fn eval(&mut self, u: &[f64], weights: &mut [f64]) -> (f64, bool) {
        let shift = match self.sampling {
            SimplexSampling::Uniform => {
                states::stick_breaking(&u[..3], &mut self.lambda);
                0.0
            }
            SimplexSampling::DirichletHalf => {
                states::dirichlet_half_into(&u[..3], &mut self.lambda);
                0.5 * self.lambda.iter().map(|l| l.ln()).sum::<f64>()
            }
        };
        let ln_b = metrics::ln_weights(&self.lambda, &self.metrics, &mut self.ln_w) + shift;
        for (w, lw) in weights.iter_mut().zip(&self.ln_w) {
            *w = (lw + shift).exp();
        }
        states::flag_into(&u[3..FULL_DIM], &mut self.flag);
        states::assemble_into(&self.lambda, &self.flag, &mut self.rho);
        let min = jacobi_eigenvalues(&partial_transpose(&self.rho))[0];
        (ln_b.exp(), min >= SEPARABILITY_TOLERANCE)
    }
}

/// Weights for `metric` and Bures at a 15-dimensional cube point, and
/// whether the corresponding density matrix is separable. The spectrum is
/// the uniform stick-breaking image of `u[0..3]`.
pub fn evaluate_point(u: &CubePoint, metric: MetricKind) -> Result<PointEval, IntegrateError> {
    if u.dim() != FULL_DIM {
        return Err(IntegrateError::PointDimension {
            expected: FULL_DIM,
            got: u.dim(),
        });
    }
    let mut ev = Evaluator::new(&[metric], SimplexSampling::Uniform);
    let mut w = [0.0];
    let (w_bures, separable) = ev.eval(u.coords(), &mut w);
    Ok(PointEval {
        w_metric: w[0],
        w_bures,
        separable,
    })
}

/// Progress report emitted after each completed block.
#[derive(Debug, Clone, Copy)]
pub struct BlockProgress {
    pub block: u64,
    pub blocks: u64,
    pub points: u64,
    pub elapsed: f64,
}

/// Worker count from `SEPVOL_THREADS`, else the machine's parallelism.
pub fn worker_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool() -> Result<rayon::ThreadPool, IntegrateError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(worker_threads())
        .build()
        .map_err(|e| IntegrateError::Pool(e.to_string()))
}

fn chunk_ranges(start: u64, count: u64) -> Vec<(u64, u64)> {
    (0..count.div_ceil(CHUNK))
        .map(|c| {
            let lo = start + c * CHUNK;
            (lo, (lo + CHUNK).min(start + count))
        })
        .collect()
}

/// Integrates the configured metric. Deterministic in `config`.
pub fn run(config: &RunConfig) -> Result<Estimate, IntegrateError> {
    let mut out = run_many(config, &[config.metric], |_| {})?;
    Ok(out.remove(0))
}

/// Integrates several metrics on one shared point set (the `metric` field
/// of `config` is ignored). `progress` is called after every block.
pub fn run_many(
    config: &RunConfig,
    metrics: &[MetricKind],
    progress: impl Fn(BlockProgress),
) -> Result<Vec<Estimate>, IntegrateError> {
    config.validate()?;
    if config.mode == Mode::SimplexOnly {
        return Err(IntegrateError::SimplexOnlyRun);
    }
    if metrics.is_empty() {
        return Err(IntegrateError::NoMetrics);
    }
    let started = Instant::now();
    let pool = pool()?;
    let per = config.points_per_block();
    let mut blocks: Vec<Vec<BlockResult>> = vec![Vec::new(); metrics.len()];
    for b in 0..config.blocks {
        let (seed, start) = config.block_stream(b);
        let generator = PointGenerator::new(config.sequence, FULL_DIM, seed)?;
        let chunks = chunk_ranges(start, per);
        let partials: Vec<Vec<Accumulator>> = pool.install(|| {
            chunks
                .par_iter()
                .map(|&(lo, hi)| {
                    let mut ev = Evaluator::new(metrics, config.sampling);
                    let mut acc = vec![Accumulator::default(); metrics.len()];
                    let mut u = [0.0; FULL_DIM];
                    let mut w = vec![0.0; metrics.len()];
                    for index in lo..hi {
                        generator.fill(index, &mut u);
                        let (w_bures, sep) = ev.eval(&u, &mut w);
                        for (a, &wm) in acc.iter_mut().zip(&w) {
                            a.push(wm, w_bures, sep);
                        }
                    }
                    acc
                })
                .collect()
        });
        for (m, out) in blocks.iter_mut().enumerate() {
            let mut acc = Accumulator::default();
            for p in &partials {
                acc.absorb(&p[m]);
            }
            out.push(acc.finish());
        }
        progress(BlockProgress {
            block: b,
            blocks: config.blocks,
            points: per,
            elapsed: started.elapsed().as_secs_f64(),
        });
    }
    let wall = started.elapsed().as_secs_f64();
    Ok(metrics
        .iter()
        .zip(blocks)
        .map(|(&m, bl)| Estimate::from_blocks(m, bl, wall))
        .collect())
}

/// How `run_simplex` places its points on the simplex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplexSampling {
    /// Uniform stick breaking; the estimate is `mean(w) / (N-1)!`.
    Uniform,
    /// Dirichlet(½, …, ½) points; the estimate is
    /// `π^(N/2)/Γ(N/2) · mean(w · (Π λ)^(1/2))`. The `(Π λ)^(-1/2)` factor
    /// common to every weight is absorbed by the sampling law, leaving a
    /// bounded Bures integrand.
    #[default]
    DirichletHalf,
}

/// Integrals over the eigenvalue simplex alone (no separability).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexEstimate {
    pub n: usize,
    pub metric: MetricKind,
    pub sampling: SimplexSampling,
    pub points: u64,
    /// `∫ w_metric dλ_1 … dλ_{N-1}` over the simplex.
    pub metric_integral: f64,
    /// `∫ w_bures dλ_1 … dλ_{N-1}`; `1 / C_N` in the limit.
    pub bures_integral: f64,
}

impl SimplexEstimate {
    pub fn ratio(&self) -> f64 {
        self.metric_integral / self.bures_integral
    }

    /// `C_N ∫ w_bures`, which tends to 1.
    pub fn hall_normalized(&self) -> f64 {
        hall_constant(self.n) * self.bures_integral
    }
}

/// Integrates the eigenvalue weight over the `(N-1)`-simplex from the
/// `(N-1)`-cube.
pub fn run_simplex(config: &RunConfig, sampling: SimplexSampling) -> Result<SimplexEstimate, IntegrateError> {
    config.validate()?;
    let n = match config.mode {
        Mode::SimplexOnly => config.n,
        Mode::Full15d => return Err(IntegrateError::SimplexDimension(config.n)),
    };
    let pool = pool()?;
    let metrics = [config.metric, MetricKind::Bures];
    let mut metric_sum = CompensatedSum::default();
    let mut bures_sum = CompensatedSum::default();
    let per = config.points_per_block();
    for b in 0..config.blocks {
        let (seed, start) = config.block_stream(b);
        let generator = PointGenerator::new(config.sequence, n - 1, seed)?;
        let partials: Vec<(CompensatedSum, CompensatedSum)> = pool.install(|| {
            chunk_ranges(start, per)
                .par_iter()
                .map(|&(lo, hi)| {
                    let mut u = [0.0; 3];
                    let mut lambda = [0.0; 4];
                    let mut ln_w = [0.0; 2];
                    let (mut sm, mut sb) = (CompensatedSum::default(), CompensatedSum::default());
                    for index in lo..hi {
                        generator.fill(index, &mut u[..n - 1]);
                        let lambda = &mut lambda[..n];
                        let shift = match sampling {
                            SimplexSampling::Uniform => {
                                states::stick_breaking(&u[..n - 1], lambda);
                                0.0
                            }
                            SimplexSampling::DirichletHalf => {
                                states::dirichlet_half_into(&u[..n - 1], lambda);
                                0.5 * lambda.iter().map(|l| l.ln()).sum::<f64>()
                            }
                        };
                        metrics::ln_weights(lambda, &metrics, &mut ln_w);
                        sm.add((ln_w[0] + shift).exp());
                        sb.add((ln_w[1] + shift).exp());
                    }
                    (sm, sb)
                })
                .collect()
        });
        for (sm, sb) in &partials {
            metric_sum.absorb(sm);
            bures_sum.absorb(sb);
        }
    }
    let volume = match sampling {
        // Uniform simplex density is (N-1)!.
        SimplexSampling::Uniform => 1.0 / (1..n).map(|k| k as f64).product::<f64>(),
        SimplexSampling::DirichletHalf => states::dirichlet_half_normalizer(n),
    };
    let scale = volume / config.points as f64;
    Ok(SimplexEstimate {
        n,
        metric: config.metric,
        sampling,
        points: config.points,
        metric_integral: metric_sum.value() * scale,
        bures_integral: bures_sum.value() * scale,
    })
}

/// `C_N ∫ (Π λ)^(-1/2) Q_N dλ`, which should approach 1. Uses
/// Dirichlet(½) sampling.
pub fn hall_check(n: usize, points: u64, sequence: SequenceKind, seed: u64) -> Result<f64, IntegrateError> {
    let cfg = RunConfig::simplex(MetricKind::Bures, n, sequence, points, seed);
    Ok(run_simplex(&cfg, SimplexSampling::DirichletHalf)?.hall_normalized())
}

/// Ratio of the Kubo–Mori to the Bures simplex integral on shared points;
/// approaches `2^(N(N-1)/2)`. Uses Dirichlet(½) sampling.
pub fn km_ratio_check(n: usize, points: u64, sequence: SequenceKind, seed: u64) -> Result<f64, IntegrateError> {
    let cfg = RunConfig::simplex(MetricKind::Km, n, sequence, points, seed);
    Ok(run_simplex(&cfg, SimplexSampling::DirichletHalf)?.ratio())
}
