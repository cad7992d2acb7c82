//! Metric volumes and separability probabilities of two-qubit states.
//!
//! The volume of the 15-dimensional set of 4×4 density matrices under a
//! monotone Riemannian metric factors into an eigenvalue-simplex part and a
//! metric-independent flag-manifold part. This crate estimates both the total
//! volume and the volume of the separable (PPT) subset by quasi-Monte Carlo
//! integration over the unit cube, for seven monotone metrics, anchored to the
//! known total statistical-distinguishability volume `π⁸/1680`.
//!
//! Modules, bottom-up:
//!
//! * [`qmc`] : Halton, scrambled Halton, scrambled Faure and pseudo-random
//!   point streams with a bit-exact block partition property.
//! * [`metrics`] : operator monotone functions, Morozova–Chentsov functions
//!   and the eigenvalue weight.
//! * [`states`] : cube → (spectrum, flag unitary) → density matrix, partial
//!   transpose and a fixed-size Hermitian eigensolver.
//! * [`integrate`] : the blockwise estimator plus simplex self-checks.
//! * [`numbertheory`] : divisor-power / totient scan.
//! * [`cli`] : the `sepvol` command line: `run`, `table`, `check`.

pub mod cli;
pub mod integrate;
pub mod metrics;
pub mod numbertheory;
pub mod qmc;
pub mod states;

pub use integrate::{run, Estimate, RunConfig};
pub use metrics::MetricKind;
pub use qmc::SequenceKind;
