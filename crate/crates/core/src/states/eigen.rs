//! Cyclic Jacobi eigenvalues for 4×4 complex Hermitian matrices.

use num_complex::Complex64;

use super::Matrix4;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of a Hermitian matrix, ascending. Only the upper triangle
/// and the real part of the diagonal are read.
pub fn jacobi_eigenvalues(m: &Matrix4) -> [f64; 4] {
    let mut a = *m;
    let mut diag = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    for i in 0..4 {
        for j in 0..i {
            a[i][j] = a[j][i].conj();
        }
    }

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off == 0.0 {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // After a few sweeps, drop elements below the diagonal's resolution.
                let g = 100.0 * mag;
                if sweep > 3 && diag[p].abs() + g == diag[p].abs() && diag[q].abs() + g == diag[q].abs() {
                    a[p][q] = Complex64::new(0.0, 0.0);
                    a[q][p] = a[p][q];
                    continue;
                }
                // Phase the pair so the pivot is real, then a real rotation.
                let phase = apq / mag;
                let tau = (diag[q] - diag[p]) / (2.0 * mag);
                let t = if tau.abs() > 1e150 {
                    0.5 / tau
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..4 {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q] * phase.conj();
                    let new_rp = arp * c - arq * s;
                    let new_rq = arq * c + arp * s;
                    a[r][p] = new_rp;
                    a[p][r] = new_rp.conj();
                    a[r][q] = new_rq;
                    a[q][r] = new_rq.conj();
                }
                diag[p] -= t * mag;
                diag[q] += t * mag;
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = a[p][q];
            }
        }
    }
    diag.sort_by(f64::total_cmp);
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for (i, v) in [0.4, 0.1, 0.3, 0.2].into_iter().enumerate() {
            m[i][i] = c(v, 0.0);
        }
        assert_eq!(jacobi_eigenvalues(&m), [0.1, 0.2, 0.3, 0.4]);
    }

    #[test]
    fn real_symmetric_known_spectrum() {
        // Tridiagonal (2, -1) matrix of size 4: eigenvalues 2 - 2 cos(kπ/5).
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            m[i][i] = c(2.0, 0.0);
            if i + 1 < 4 {
                m[i][i + 1] = c(-1.0, 0.0);
                m[i + 1][i] = c(-1.0, 0.0);
            }
        }
        let ev = jacobi_eigenvalues(&m);
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 5.0).cos();
            assert!((v - exact).abs() < 1e-14, "{v} vs {exact}");
        }
    }

    #[test]
    fn complex_two_by_two_block() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let mut m = [[c(0.0, 0.0); 4]; 4];
        m[0][0] = c(1.0, 0.0);
        m[1][1] = c(1.0, 0.0);
        m[0][1] = c(0.0, 1.0);
        m[1][0] = c(0.0, -1.0);
        m[2][2] = c(5.0, 0.0);
        m[3][3] = c(-1.0, 0.0);
        let ev = jacobi_eigenvalues(&m);
        let expect = [-1.0, 0.0, 2.0, 5.0];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
