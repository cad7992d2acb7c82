use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::derive_seed;
use super::primes::{digits_for_double, smallest_prime_at_least};
use super::QmcError;

/// Generalized Faure sequence in a prime base `b >= dim`.
///
/// Coordinate `j` maps the digit vector of the index through `L_j * P^j`
/// over GF(b), where `P` is the upper-triangular Pascal matrix and `L_j` is a
/// seeded random nonsingular lower-triangular matrix. The product is
/// precomputed, so each point costs `digits * index_digits` multiply-adds per
/// coordinate.
#[derive(Debug, Clone)]
pub struct FaureScrambler {
    base: u32,
    digits: usize,
    dim: usize,
    // generators[j][r * digits + k]
    generators: Vec<Vec<u32>>,
}

impl FaureScrambler {
    pub fn new(dim: usize, seed: u64) -> Result<Self, QmcError> {
        Self::build(dim, Some(seed))
    }

    /// The plain Faure sequence (all scrambling matrices set to the identity).
    pub fn unscrambled(dim: usize) -> Result<Self, QmcError> {
        Self::build(dim, None)
    }

    fn build(dim: usize, seed: Option<u64>) -> Result<Self, QmcError> {
        if dim == 0 {
            return Err(QmcError::ZeroDimension);
        }
        let base = smallest_prime_at_least(dim).ok_or(QmcError::DimensionTooLarge {
            dim,
            max: super::MAX_DIM,
        })?;
        let digits = digits_for_double(base);
        let b = base as u64;
        let binom = pascal_mod(digits, base);
        let generators = (0..dim)
            .map(|j| {
                // C_j[r][k] = C(k, r) * j^(k-r) mod b
                let mut gen_j = vec![0u32; digits * digits];
                let pow: Vec<u64> = std::iter::successors(Some(1u64), |p| Some(p * j as u64 % b))
                    .take(digits)
                    .collect();
                for r in 0..digits {
                    for k in r..digits {
                        let c = binom[k * digits + r] as u64;
                        // 0^0 = 1 keeps coordinate 0 as the identity map
                        let p = if j == 0 { u64::from(k == r) } else { pow[k - r] };
                        gen_j[r * digits + k] = (c * p % b) as u32;
                    }
                }
                match seed {
                    Some(seed) => {
                        let l = lower_triangular(digits, base, derive_seed(seed, j as u64));
                        mat_mul_mod(&l, &gen_j, digits, base)
                    }
                    None => gen_j,
                }
            })
            .collect();
        Ok(Self {
            base,
            digits,
            dim,
            generators,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Indices are taken modulo `base^digits`.
    pub fn fill(&self, index: u64, out: &mut [f64]) {
        let b = self.base as u64;
        let mut a = [0u32; 64];
        let mut n = index;
        let mut nd = 0;
        while n > 0 && nd < self.digits {
            a[nd] = (n % b) as u32;
            n /= b;
            nd += 1;
        }
        let inv = 1.0 / self.base as f64;
        for (x, gen) in out.iter_mut().zip(&self.generators) {
            let mut acc = 0.0;
            for r in (0..self.digits).rev() {
                let row = &gen[r * self.digits..r * self.digits + nd];
                let y: u32 = row.iter().zip(&a[..nd]).map(|(g, d)| g * d).sum::<u32>() % self.base;
                acc = (acc + y as f64) * inv;
            }
            *x = acc;
        }
    }
}

// binom[k * n + r] = C(k, r) mod p
fn pascal_mod(n: usize, p: u32) -> Vec<u32> {
    let mut t = vec![0u32; n * n];
    for k in 0..n {
        t[k * n] = 1;
        for r in 1..=k {
            t[k * n + r] = (t[(k - 1) * n + r - 1] + t[(k - 1) * n + r]) % p;
        }
    }
    t
}

fn lower_triangular(n: usize, p: u32, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l = vec![0u32; n * n];
    for r in 0..n {
        for k in 0..r {
            l[r * n + k] = rng.random_range(0..p);
        }
        l[r * n + r] = rng.random_range(1..p);
    }
    l
}

fn mat_mul_mod(a: &[u32], b: &[u32], n: usize, p: u32) -> Vec<u32> {
    let mut c = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: u64 = (0..n).map(|k| a[i * n + k] as u64 * b[k * n + j] as u64).sum();
            c[i * n + j] = (s % p as u64) as u32;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_selection() {
        assert_eq!(FaureScrambler::new(15, 1).unwrap().base(), 17);
        assert_eq!(FaureScrambler::new(1, 1).unwrap().base(), 2);
        assert_eq!(FaureScrambler::new(3, 1).unwrap().base(), 3);
        assert!(FaureScrambler::new(0, 1).is_err());
    }

    #[test]
    fn unscrambled_first_coordinate_is_van_der_corput() {
        let f = FaureScrambler::unscrambled(3).unwrap();
        let mut p = [0.0; 3];
        for i in 1..50u64 {
            f.fill(i, &mut p);
            let vdc = super::super::halton::radical_inverse(i, 3);
            assert!((p[0] - vdc).abs() < 1e-15);
        }
    }

    #[test]
    fn unscrambled_known_points_base_two() {
        // Faure in base 2, dim 2: second coordinate uses the Pascal matrix mod 2.
        let f = FaureScrambler::unscrambled(2).unwrap();
        let mut p = [0.0; 2];
        let expect = [(1, 0.5, 0.5), (2, 0.25, 0.75), (3, 0.75, 0.25)];
        for (i, x, y) in expect {
            f.fill(i, &mut p);
            assert_eq!((p[0], p[1]), (x, y), "index {i}");
        }
    }

    #[test]
    fn pascal_rows() {
        let t = pascal_mod(6, 17);
        assert_eq!(&t[5 * 6..6 * 6], &[1, 5, 10, 10, 5, 1]);
        let t = pascal_mod(5, 2);
        assert_eq!(&t[4 * 5..5 * 5], &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn scrambling_matrices_are_nonsingular_lower_triangular() {
        let l = lower_triangular(13, 17, 5);
        for r in 0..13 {
            assert_ne!(l[r * 13 + r], 0);
            for k in r + 1..13 {
                assert_eq!(l[r * 13 + k], 0);
            }
        }
    }
}
