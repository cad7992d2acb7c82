//! Cube → Dirichlet(½, …, ½) spectra, the simplex law with density
//! proportional to `(Π λ)^(-1/2)`.
//!
//! Stick breaking with `B_k ~ Beta(1/2, m/2)`, `m = N-1-k`. Writing
//! `x = sin²θ` turns that Beta law into density `∝ cos^(m-1) θ` on `[0, π/2]`,
//! which inverts in closed form for `m = 1, 2` and by Newton for `m = 3`.
//! Both `x` and `1 - x = cos²θ` are formed directly, so no component loses
//! precision near a face of the simplex.

use std::f64::consts::FRAC_PI_2;

/// Largest spectrum length supported.
pub const MAX_N: usize = 4;

/// Returns `(sin²θ, cos²θ)` for the `u`-quantile of `Beta(1/2, m/2)`.
fn beta_half_quantile(u: f64, m: usize) -> (f64, f64) {
    match m {
        1 => {
            let (s, c) = (FRAC_PI_2 * u).sin_cos();
            (s * s, c * c)
        }
        // CDF is √x.
        2 => (u * u, (1.0 - u) * (1.0 + u)),
        3 => {
            // CDF (θ + sinθ cosθ) / (π/2); solve for whichever of θ and
            // ε = π/2 - θ is small, to keep the far end accurate.
            if u <= 0.5 {
                let theta = newton(|t| t + 0.5 * (2.0 * t).sin(), |t| 2.0 * t.cos().powi(2), FRAC_PI_2 * u, 0.5 * FRAC_PI_2 * u);
                let (s, c) = theta.sin_cos();
                (s * s, c * c)
            } else {
                let target = FRAC_PI_2 * (1.0 - u);
                let eps = newton(
                    |e| 0.5 * two_t_minus_sin(2.0 * e),
                    |e| 2.0 * e.sin().powi(2),
                    target,
                    (1.5 * target).cbrt(),
                );
                let (s, c) = eps.sin_cos();
                (c * c, s * s)
            }
        }
        _ => panic!("Beta(1/2, {m}/2) quantile is only needed for m ≤ 3"),
    }
}

/// `t - sin t` without cancellation for small `t`.
fn two_t_minus_sin(t: f64) -> f64 {
    if t < 0.1 {
        let t2 = t * t;
        t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)))
    } else {
        t - t.sin()
    }
}

/// Root of the increasing `f(x) = target` on `[0, π/2]`, Newton steps kept
/// inside a shrinking bracket.
fn newton(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, target: f64, start: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    let mut x = start.clamp(lo, hi);
    for _ in 0..100 {
        let r = f(x) - target;
        if r == 0.0 {
            return x;
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = r / df(x);
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-17 * x.abs().max(f64::MIN_POSITIVE) || hi - lo <= f64::EPSILON * hi {
            return next;
        }
        x = next;
    }
    x
}

/// Writes the Dirichlet(½, …, ½) point for `u` (length `N - 1`) into
/// `out[..N]`.
pub(crate) fn dirichlet_half_into(u: &[f64], out: &mut [f64]) {
    let n = u.len() + 1;
    assert!(n <= MAX_N, "Dirichlet map supports N ≤ {MAX_N}");
    let mut remainder = 1.0;
    for (k, &uk) in u.iter().enumerate() {
        let (x, one_minus_x) = beta_half_quantile(uk, n - 1 - k);
        out[k] = remainder * x;
        remainder *= one_minus_x;
    }
    out[n - 1] = remainder;
}

/// `∫_simplex (Π λ)^(-1/2) dλ_1 … dλ_{N-1} = π^(N/2) / Γ(N/2)`.
pub fn dirichlet_half_normalizer(n: usize) -> f64 {
    let gamma_half_n = match n {
        2 => 1.0,
        3 => 0.5 * std::f64::consts::PI.sqrt(),
        4 => 1.0,
        _ => panic!("normalizer is tabulated for N in 2..=4"),
    };
    std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half_n
}
