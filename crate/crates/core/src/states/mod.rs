//! Two-qubit density matrices from cube points, and the partial-transpose
//! separability test.
//!
//! A density matrix is built as `ρ = U diag(λ) U†` with `λ` uniform on the
//! eigenvalue simplex and `U` distributed by the invariant measure on the
//! flag manifold `U(4)/U(1)^4`. Under this pushforward the volume element of
//! every monotone metric reduces to the eigenvalue weight alone.

mod dirichlet;
mod eigen;

use num_complex::Complex64;
use thiserror::Error;

use crate::metrics::Spectrum;

pub(crate) use dirichlet::dirichlet_half_into;
pub use dirichlet::dirichlet_half_normalizer;
pub use eigen::jacobi_eigenvalues;

pub type Matrix4 = [[Complex64; 4]; 4];

/// Number of cube coordinates consumed by [`flag_from_cube`].
pub const FLAG_DIM: usize = 12;
/// Cube coordinates consumed by [`simplex_from_cube`].
pub const SIMPLEX_DIM: usize = 3;
/// Minimum partial-transpose eigenvalue still counted as separable.
pub const SEPARABILITY_TOLERANCE: f64 = -1e-13;

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-12;
const PSD_TOLERANCE: f64 = -1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatesError {
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("expected {expected} cube coordinates, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("cube coordinate {0} is outside the open unit interval")]
    OutsideCube(f64),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn identity() -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

fn hermitian_deviation(m: &Matrix4) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            dev = dev.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    dev
}

fn frobenius(m: &Matrix4) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_cube(u: &[f64], expected: usize) -> Result<(), StatesError> {
    if u.len() != expected {
        return Err(StatesError::WrongDimension {
            expected,
            got: u.len(),
        });
    }
    match u.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        Some(&bad) => Err(StatesError::OutsideCube(bad)),
        None => Ok(()),
    }
}

/// 4×4 Hermitian, unit-trace, positive semidefinite matrix on `C² ⊗ C²`,
/// indexed `2a + b` with `a` the first qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(Matrix4);

impl DensityMatrix {
    pub fn new(entries: Matrix4) -> Result<Self, StatesError> {
        let dev = hermitian_deviation(&entries);
        if dev > HERMITIAN_TOLERANCE {
            return Err(StatesError::NotHermitian(dev));
        }
        let tr = trace(&entries);
        if (tr - 1.0).abs() > TRACE_TOLERANCE {
            return Err(StatesError::BadTrace(tr));
        }
        let min = jacobi_eigenvalues(&entries)[0];
        if min < PSD_TOLERANCE {
            return Err(StatesError::NotPositive(min));
        }
        Ok(DensityMatrix(entries))
    }

    /// `I / 4`.
    pub fn maximally_mixed() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        DensityMatrix(m)
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self, StatesError> {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j].conj();
            }
        }
        Self::new(m)
    }

    /// `p |Φ+⟩⟨Φ+| + (1 - p) I/4` for `p ∈ [0, 1]`.
    pub fn werner(p: f64) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new((1.0 - p) / 4.0, 0.0);
        }
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                m[i][j] += Complex64::new(p / 2.0, 0.0);
            }
        }
        DensityMatrix(m)
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        trace(&self.0)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        jacobi_eigenvalues(&self.0)
    }

    /// `V ρ V†` for a unitary `V`.
    pub fn conjugate_by(&self, v: &Matrix4) -> Self {
        let vr = mul(v, &self.0);
        let mut out = mul(&vr, &adjoint(v));
        symmetrize(&mut out);
        DensityMatrix(out)
    }
}

/// Coset representative of the flag manifold, unitary by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagUnitary(Matrix4);

impl FlagUnitary {
    pub fn identity() -> Self {
        FlagUnitary(identity())
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.0
    }

    /// `max |(U U†)_ij - δ_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = mul(&self.0, &adjoint(&self.0));
        let mut worst: f64 = 0.0;
        for (i, row) in p.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((z - target).norm());
            }
        }
        worst
    }
}

pub fn trace(m: &Matrix4) -> f64 {
    (0..4).map(|i| m[i][i].re).sum()
}

pub fn mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn adjoint(a: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Kronecker product of two 2×2 matrices, first factor on the first qubit.
pub fn kron2(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (ar, ac, br, bc) in (0..2)
        .flat_map(|ar| (0..2).map(move |ac| (ar, ac)))
        .flat_map(|(ar, ac)| (0..2).flat_map(move |br| (0..2).map(move |bc| (ar, ac, br, bc))))
    {
        out[2 * ar + br][2 * ac + bc] = a[ar][ac] * b[br][bc];
    }
    out
}

// Copies the upper triangle onto the lower one and zeroes imaginary diagonals.
fn symmetrize(m: &mut Matrix4) {
    for i in 0..4 {
        m[i][i].im = 0.0;
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
}

/// Stick-breaking map from `(0,1)^(N-1)` to the uniform measure on the
/// `(N-1)`-simplex:
/// `λ_k = (1 - λ_1 - … - λ_{k-1}) (1 - u_k^(1/(N-k)))`, last entry the remainder.
pub fn simplex_point(u: &[f64]) -> Spectrum {
    let n = u.len() + 1;
    let mut values = vec![0.0; n];
    stick_breaking(u, &mut values);
    Spectrum::new_unchecked(values)
}

pub(crate) fn stick_breaking(u: &[f64], out: &mut [f64]) {
    let n = u.len() + 1;
    let mut remainder = 1.0;
    for (k, &uk) in u.iter().enumerate() {
        let log_root = uk.ln() / (n - 1 - k) as f64;
        out[k] = remainder * -log_root.exp_m1();
        remainder *= log_root.exp();
    }
    out[n - 1] = remainder;
}

/// Map from `(0,1)^(N-1)` to the Dirichlet(½, …, ½) law on the simplex,
/// whose density is `(Π λ)^(-1/2)` over [`dirichlet_half_normalizer`].
/// Supports `N ≤ 4`.
pub fn dirichlet_half_point(u: &[f64]) -> Spectrum {
    let mut values = vec![0.0; u.len() + 1];
    dirichlet_half_into(u, &mut values);
    Spectrum::new_unchecked(values)
}

/// Eigenvalues of a two-qubit state from three cube coordinates.
pub fn simplex_from_cube(u: &[f64]) -> Result<Spectrum, StatesError> {
    check_cube(u, SIMPLEX_DIM)?;
    Ok(simplex_point(u))
}

// (first index, second index, level k) of each two-level rotation, applied
// as successive right multiplications. The first three send e_4 to a
// uniformly random unit vector; the rest recurse on the complement.
const ROTATIONS: [(usize, usize, i32); 6] = [
    (0, 3, 1),
    (1, 3, 2),
    (2, 3, 3),
    (0, 2, 1),
    (1, 2, 2),
    (0, 1, 1),
];

pub(crate) fn flag_into(u: &[f64], m: &mut Matrix4) {
    *m = identity();
    for (k, &(r, s, level)) in ROTATIONS.iter().enumerate() {
        let xi = u[2 * k];
        let psi = std::f64::consts::TAU * u[2 * k + 1];
        // θ = arcsin(ξ^(1/(2k))): sin θ on the diagonal, cos θ off it.
        let sin_sq = xi.powf(1.0 / level as f64);
        let sin = sin_sq.sqrt();
        let cos = (1.0 - sin_sq).sqrt();
        let (sp, cp) = psi.sin_cos();
        let diag = Complex64::new(sin * cp, sin * sp);
        for row in m.iter_mut() {
            let cr = row[r];
            let cs = row[s];
            row[r] = cr * diag - cs * cos;
            row[s] = cr * cos + cs * diag.conj();
        }
    }
}

/// Flag-manifold representative from twelve cube coordinates: six two-level
/// rotations, each taking `(ξ, u)` to `θ = arcsin(ξ^(1/(2k)))`, `φ = 2πu`.
/// Uniform inputs give the invariant measure on `U(4)/U(1)^4`.
pub fn flag_from_cube(u: &[f64]) -> Result<FlagUnitary, StatesError> {
    check_cube(u, FLAG_DIM)?;
    let mut m = [[ZERO; 4]; 4];
    flag_into(u, &mut m);
    Ok(FlagUnitary(m))
}

pub(crate) fn assemble_into(lambda: &[f64], u: &Matrix4, out: &mut Matrix4) {
    for i in 0..4 {
        for j in i..4 {
            out[i][j] = (0..4).map(|k| u[i][k] * u[j][k].conj() * lambda[k]).sum();
        }
    }
    symmetrize(out);
}

/// `ρ = U diag(λ) U†`.
pub fn assemble(lambda: &Spectrum, u: &FlagUnitary) -> DensityMatrix {
    let mut out = [[ZERO; 4]; 4];
    assemble_into(lambda.values(), &u.0, &mut out);
    DensityMatrix(out)
}

/// Transpose over the second qubit: `((a,b),(c,d)) → ((a,d),(c,b))`.
pub fn partial_transpose(m: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[2 * a + b][2 * c + d] = m[2 * a + d][2 * c + b];
                }
            }
        }
    }
    out
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &Matrix4) -> Result<[f64; 4], StatesError> {
    let dev = hermitian_deviation(m);
    if dev > 1e-10 * frobenius(m).max(1.0) {
        return Err(StatesError::NotHermitian(dev));
    }
    Ok(jacobi_eigenvalues(m))
}

/// Smallest eigenvalue of the partial transpose.
pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> f64 {
    jacobi_eigenvalues(&partial_transpose(&rho.0))[0]
}

/// Peres–Horodecki test, exact for two qubits.
pub fn is_separable(rho: &DensityMatrix) -> bool {
    min_pt_eigenvalue(rho) >= SEPARABILITY_TOLERANCE
}
