//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use sepvol::states::Matrix4;

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// `sup_x |F_n(x) - x|` for a sample on (0,1).
pub fn ks_uniform(sample: &[f64]) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max)
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar unitary of size `n`: Gram–Schmidt on Gaussian columns, which fixes
/// the phases of R's diagonal to be positive.
pub fn haar_unitary<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|_| (0..n).map(|_| gaussian_complex(rng)).collect()).collect();
    for k in 0..n {
        for j in 0..k {
            let proj: Complex64 = (0..n).map(|i| cols[j][i].conj() * cols[k][i]).sum();
            for i in 0..n {
                let v = cols[j][i];
                cols[k][i] -= proj * v;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[k].iter_mut() {
            *z /= norm;
        }
    }
    // rows[i][j] = cols[j][i]
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

pub fn haar4<R: Rng>(rng: &mut R) -> Matrix4 {
    let u = haar_unitary(rng, 4);
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = u[i][j];
        }
    }
    m
}

pub fn haar2<R: Rng>(rng: &mut R) -> [[Complex64; 2]; 2] {
    let u = haar_unitary(rng, 2);
    [[u[0][0], u[0][1]], [u[1][0], u[1][1]]]
}

/// Uniform point of the `(n-1)`-simplex by rejection from the unit cube.
pub fn simplex_by_rejection<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let head: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>()).collect();
        let s: f64 = head.iter().sum();
        if s < 1.0 {
            let mut v = head;
            v.push(1.0 - s);
            return v;
        }
    }
}

/// Dirichlet(½, …, ½) point from normalized Gamma(½) variates.
pub fn dirichlet_half_oracle<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let g = Gamma::new(0.5, 1.0).unwrap();
    let v: Vec<f64> = (0..n).map(|_| g.sample(rng)).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// Gauss–Legendre nodes and weights on [a, b] (Newton on the Legendre
/// recurrence).
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w));
    }
    out
}

/// `Π_{i<j} (λ_i - λ_j)² c(λ_i, λ_j) / 2` with c given directly.
pub fn pair_product(lambda: &[f64], c: impl Fn(f64, f64) -> f64) -> f64 {
    let mut p = 1.0;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            p *= (lambda[i] - lambda[j]).powi(2) * c(lambda[i], lambda[j]) / 2.0;
        }
    }
    p
}

pub fn c_bures(x: f64, y: f64) -> f64 {
    2.0 / (x + y)
}
