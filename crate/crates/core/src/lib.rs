//! Covariance-based correlation and entanglement measures for
//! finite-dimensional bipartite quantum systems.
//!
//! - [`qmat`]: dense complex matrices (Kronecker products, partial traces,
//!   Hermitian eigensystems, unitary exponentials).
//! - [`states`]: density matrices with checked invariants and the named
//!   two-qubit states used throughout.
//! - [`correlation`]: the ordinary covariance `cov` and the commutator-based
//!   alternative covariance `C`, with their inequalities.
//! - [`entangle`]: local operators, maximization over local unitaries,
//!   Kraus channels and parameter sweeps.
//! - [`majorana`]: symmetric spin states as polynomials and root
//!   constellations on the sphere.
//! - [`invariants`]: local-unitary invariants of 2x2 density matrices and
//!   singlet counting.

pub mod correlation;
pub mod entangle;
mod error;
pub mod invariants;
pub mod majorana;
pub mod qmat;
pub mod random;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use qmat::ComplexMatrix;
pub use states::{Bipartition, DensityMatrix, PureState};

/// Absolute entrywise tolerance for matrix equality, Hermiticity and the
/// trace/positivity checks on density matrices.
pub const MATRIX_TOL: f64 = 1e-10;
