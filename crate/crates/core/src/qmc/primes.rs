/// The first 64 primes. Coordinate `j` of a Halton point uses `PRIMES[j]`.
pub const PRIMES: [u32; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311,
];

/// Smallest prime `>= n` from the table (`n <= 311`).
pub fn smallest_prime_at_least(n: usize) -> Option<u32> {
    PRIMES.iter().copied().find(|&p| p as usize >= n)
}

/// Number of base-`b` digits needed so that `b^-digits < 2^-52`.
pub fn digits_for_double(base: u32) -> usize {
    let mut digits = 0;
    let mut scale = 1.0_f64;
    while scale >= f64::EPSILON {
        scale /= base as f64;
        digits += 1;
    }
    digits
}
