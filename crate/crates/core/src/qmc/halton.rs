use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::derive_seed;
use super::primes::{digits_for_double, PRIMES};

/// Radical inverse of `index` in `base`: the base-`b` digits of `index`
/// mirrored about the radix point.
pub fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut x = 0.0;
    while index > 0 {
        x += (index % b) as f64 * scale;
        index /= b;
        scale *= inv;
    }
    x
}

/// Digit-permuted radical inverse. The permutation is applied to every digit
/// position, including the leading zeros of `index`, up to `digits` places.
pub fn permuted_radical_inverse(mut index: u64, base: u32, perm: &[u32], digits: usize) -> f64 {
    let b = base as u64;
    let mut buf = [0u32; 64];
    for slot in buf.iter_mut().take(digits) {
        *slot = perm[(index % b) as usize];
        index /= b;
    }
    // Horner from the least significant output digit keeps the sum exact
    // until the final rounding steps.
    let inv = 1.0 / base as f64;
    buf[..digits]
        .iter()
        .rev()
        .fold(0.0, |acc, &d| (acc + d as f64) * inv)
}

/// Per-base digit permutations for a scrambled Halton sequence.
#[derive(Debug, Clone)]
pub struct HaltonScrambler {
    perms: Vec<Vec<u32>>,
    digits: Vec<usize>,
}

impl HaltonScrambler {
    pub fn new(dim: usize, seed: u64) -> Self {
        let mut perms = Vec::with_capacity(dim);
        let mut digits = Vec::with_capacity(dim);
        for &base in &PRIMES[..dim] {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, base as u64));
            let mut perm: Vec<u32> = (0..base).collect();
            perm.shuffle(&mut rng);
            perms.push(perm);
            digits.push(digits_for_double(base));
        }
        Self { perms, digits }
    }

    pub fn dim(&self) -> usize {
        self.perms.len()
    }

    pub fn fill(&self, index: u64, out: &mut [f64]) {
        for (j, x) in out.iter_mut().enumerate() {
            *x = permuted_radical_inverse(index, PRIMES[j], &self.perms[j], self.digits[j]);
        }
    }

    pub fn permutation(&self, coord: usize) -> &[u32] {
        &self.perms[coord]
    }
}
