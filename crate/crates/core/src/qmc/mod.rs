//! Low-discrepancy and pseudo-random point streams on the open unit cube.
//!
//! Every generator is a pure function of `(kind, dim, seed, index)`, so a
//! stream can be cut into index blocks that are generated independently and
//! concatenate bit-exactly to the single long stream.

mod faure;
mod halton;
mod primes;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faure::FaureScrambler;
pub use halton::{permuted_radical_inverse, radical_inverse, HaltonScrambler};
pub use primes::{digits_for_double, smallest_prime_at_least, PRIMES};

/// Largest supported dimension (size of the prime table).
pub const MAX_DIM: usize = PRIMES.len();

/// Coordinates closer than this to 0 or 1 are moved inward to it.
pub const EDGE_NUDGE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QmcError {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("sequence index must be at least 1")]
    ZeroIndex,
    #[error("stream count must be positive")]
    EmptyStream,
    #[error("unknown sequence kind `{0}`")]
    UnknownKind(String),
    #[error("coordinate {index} = {value} is not inside (0, 1)")]
    OutsideCube { index: usize, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    Halton,
    ScrambledHalton,
    ScrambledFaure,
    Pseudo,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [
        SequenceKind::Halton,
        SequenceKind::ScrambledHalton,
        SequenceKind::ScrambledFaure,
        SequenceKind::Pseudo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Halton => "halton",
            SequenceKind::ScrambledHalton => "scrambled-halton",
            SequenceKind::ScrambledFaure => "scrambled-faure",
            SequenceKind::Pseudo => "pseudo",
        }
    }

    /// Whether the seed changes the generated points.
    pub fn is_seeded(self) -> bool {
        !matches!(self, SequenceKind::Halton)
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = QmcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| QmcError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamConfig {
    pub kind: SequenceKind,
    pub dim: usize,
    pub seed: u64,
    /// First index emitted; index 0 is never used.
    pub start_index: u64,
    pub count: u64,
}

/// A point strictly inside the unit cube.
#[derive(Debug, Clone, PartialEq)]
pub struct CubePoint(Vec<f64>);

impl CubePoint {
    /// Checks that every coordinate lies strictly inside `(0, 1)`.
    pub fn new(coords: Vec<f64>) -> Result<Self, QmcError> {
        if coords.is_empty() {
            return Err(QmcError::ZeroDimension);
        }
        if let Some((index, v)) = coords.iter().enumerate().find(|(_, v)| !(**v > 0.0 && **v < 1.0)) {
            return Err(QmcError::OutsideCube { index, value: v.to_string() });
        }
        Ok(CubePoint(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<CubePoint> for Vec<f64> {
    fn from(p: CubePoint) -> Self {
        p.0
    }
}

impl std::ops::Index<usize> for CubePoint {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// SplitMix64 finalizer over `seed ^ tag`-derived state; used to derive
/// independent child seeds (per base, per coordinate, per block).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(tag.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A constructed generator for one `(kind, dim, seed)`.
///
/// Construction does the expensive setup (permutations, scrambling
/// matrices); [`PointGenerator::fill`] is then a pure function of the index.
#[derive(Debug, Clone)]
pub struct PointGenerator {
    kind: SequenceKind,
    dim: usize,
    seed: u64,
    inner: Inner,
}

#[derive(Debug, Clone)]
enum Inner {
    Halton,
    ScrambledHalton(HaltonScrambler),
    ScrambledFaure(FaureScrambler),
    Pseudo(ChaCha8Rng),
}

impl PointGenerator {
    pub fn new(kind: SequenceKind, dim: usize, seed: u64) -> Result<Self, QmcError> {
        if dim == 0 {
            return Err(QmcError::ZeroDimension);
        }
        if dim > MAX_DIM {
            return Err(QmcError::DimensionTooLarge { dim, max: MAX_DIM });
        }
        let inner = match kind {
            SequenceKind::Halton => Inner::Halton,
            SequenceKind::ScrambledHalton => Inner::ScrambledHalton(HaltonScrambler::new(dim, seed)),
            SequenceKind::ScrambledFaure => Inner::ScrambledFaure(FaureScrambler::new(dim, seed)?),
            SequenceKind::Pseudo => Inner::Pseudo(ChaCha8Rng::seed_from_u64(seed)),
        };
        Ok(Self {
            kind,
            dim,
            seed,
            inner,
        })
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Writes point `index` into `out[..dim]`, nudged into the open cube.
    pub fn fill(&self, index: u64, out: &mut [f64]) {
        let out = &mut out[..self.dim];
        match &self.inner {
            Inner::Halton => {
                for (x, &p) in out.iter_mut().zip(&PRIMES) {
                    *x = radical_inverse(index, p);
                }
            }
            Inner::ScrambledHalton(s) => s.fill(index, out),
            Inner::ScrambledFaure(f) => f.fill(index, out),
            Inner::Pseudo(base) => {
                // Counter-based: each index owns a fixed window of the keystream.
                let mut rng = base.clone();
                rng.set_word_pos(index as u128 * self.dim as u128 * 2);
                for x in out.iter_mut() {
                    *x = rng.random::<f64>();
                }
            }
        }
        for x in out.iter_mut() {
            *x = x.clamp(EDGE_NUDGE, 1.0 - EDGE_NUDGE);
        }
    }

    pub fn point(&self, index: u64) -> Result<CubePoint, QmcError> {
        if index == 0 {
            return Err(QmcError::ZeroIndex);
        }
        let mut v = vec![0.0; self.dim];
        self.fill(index, &mut v);
        Ok(CubePoint(v))
    }
}

/// Plain Halton point: coordinate `j` is the radical inverse in the `j`-th prime.
pub fn halton_point(index: u64, dim: usize) -> Result<CubePoint, QmcError> {
    PointGenerator::new(SequenceKind::Halton, dim, 0)?.point(index)
}

pub fn scrambled_halton_point(index: u64, dim: usize, seed: u64) -> Result<CubePoint, QmcError> {
    PointGenerator::new(SequenceKind::ScrambledHalton, dim, seed)?.point(index)
}

pub fn scrambled_faure_point(index: u64, dim: usize, seed: u64) -> Result<CubePoint, QmcError> {
    PointGenerator::new(SequenceKind::ScrambledFaure, dim, seed)?.point(index)
}

/// Iterator over the points of a [`StreamConfig`].
#[derive(Debug, Clone)]
pub struct Stream {
    generator: PointGenerator,
    next: u64,
    end: u64,
}

impl Iterator for Stream {
    type Item = CubePoint;

    fn next(&mut self) -> Option<CubePoint> {
        if self.next >= self.end {
            return None;
        }
        let mut v = vec![0.0; self.generator.dim];
        self.generator.fill(self.next, &mut v);
        self.next += 1;
        Some(CubePoint(v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Stream {}

pub fn stream(config: StreamConfig) -> Result<Stream, QmcError> {
    if config.start_index == 0 {
        return Err(QmcError::ZeroIndex);
    }
    if config.count == 0 {
        return Err(QmcError::EmptyStream);
    }
    let generator = PointGenerator::new(config.kind, config.dim, config.seed)?;
    Ok(Stream {
        generator,
        next: config.start_index,
        end: config.start_index + config.count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_examples() {
        assert_eq!(halton_point(1, 2).unwrap().coords(), &[0.5, 1.0 / 3.0]);
        assert_eq!(halton_point(2, 1).unwrap().coords(), &[0.25]);
        assert_eq!(halton_point(3, 1).unwrap().coords(), &[0.75]);
    }

    #[test]
    fn halton_stream_example() {
        let cfg = StreamConfig {
            kind: SequenceKind::Halton,
            dim: 1,
            seed: 0,
            start_index: 1,
            count: 3,
        };
        let xs: Vec<f64> = stream(cfg).unwrap().map(|p| p[0]).collect();
        assert_eq!(xs, vec![0.5, 0.25, 0.75]);
    }

    #[test]
    fn configuration_errors() {
        assert_eq!(
            halton_point(1, 65),
            Err(QmcError::DimensionTooLarge { dim: 65, max: 64 })
        );
        assert_eq!(halton_point(0, 2), Err(QmcError::ZeroIndex));
        assert!(halton_point(1, 64).is_ok());
        assert!(scrambled_faure_point(1, 64, 3).is_ok());
        let cfg = StreamConfig {
            kind: SequenceKind::Pseudo,
            dim: 2,
            seed: 0,
            start_index: 0,
            count: 3,
        };
        assert!(stream(cfg).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in SequenceKind::ALL {
            assert_eq!(k.name().parse::<SequenceKind>().unwrap(), k);
        }
        assert!("sobol".parse::<SequenceKind>().is_err());
    }

    #[test]
    fn seeds_change_scrambled_points() {
        for kind in [
            SequenceKind::ScrambledHalton,
            SequenceKind::ScrambledFaure,
            SequenceKind::Pseudo,
        ] {
            let a = PointGenerator::new(kind, 15, 1).unwrap();
            let b = PointGenerator::new(kind, 15, 2).unwrap();
            let differing = (1..=100)
                .filter(|&i| a.point(i).unwrap() != b.point(i).unwrap())
                .count();
            assert_eq!(differing, 100, "{kind}");
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|t| derive_seed(42, t)).collect();
        assert_eq!(s.len(), 1000);
    }
}
