//! Dense complex square matrices.
//!
//! Composite indices of a bipartite space are first-factor-slow: entry
//! `(i*d2 + k, j*d2 + l)` of `kron(a, b)` holds `a[i,j] * b[k,l]`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::linalg::Schur;
use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64, MATRIX_TOL};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Which tensor factor of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::First => Factor::Second,
            Factor::Second => Factor::First,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.inner)
    }
}

fn check_finite(z: C64) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self { inner: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self { inner: DMatrix::identity(dim, dim) }
    }

    /// Builds a matrix from rows, rejecting ragged, empty or non-finite input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut m = DMatrix::zeros(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = check_finite(z)?;
            }
        }
        Ok(Self { inner: m })
    }

    /// Row-major real entries; convenient for the many real matrices in tests.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let rows: Vec<Vec<C64>> = entries.chunks(dim).map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        assert!(!diag.is_empty(), "matrix dimension must be positive");
        Self { inner: DMatrix::from_diagonal(&DVector::from_column_slice(diag)) }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        let n = u.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = check_finite(u[i])? * check_finite(v[j])?.conj();
            }
        }
        Ok(Self { inner: m })
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect()).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.inner[(i, i)]).collect()
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { inner: &self.inner * s }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self { inner: &self.inner * &other.inner })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self { inner: &self.inner + &other.inner })
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        self.check_same_dim(other)?;
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.inner[(i, k)] * other.inner[(k, i)];
            }
        }
        Ok(acc)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.inner.iter().zip(other.inner.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).approx_eq(&Self::identity(self.dim()), tol)
    }

    /// `m * self * m^dagger`.
    pub fn conjugate_by(&self, m: &Self) -> Result<Self> {
        self.check_same_dim(m)?;
        Ok(Self { inner: &m.inner * &self.inner * m.inner.adjoint() })
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let out = &self.inner * DVector::from_column_slice(v);
        Ok(out.iter().copied().collect())
    }

    /// General matrix exponential `exp(self)`.
    pub fn expm(&self) -> Self {
        Self { inner: self.inner.clone().exp() }
    }

    /// Complex eigenvalues of a general matrix (Schur form), unordered.
    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        let n = self.dim().max(1);
        let attempt = |m: DMatrix<C64>| {
            Schur::try_new(m, f64::EPSILON, 1000 * n).and_then(|s| s.eigenvalues()).map(|v| v.iter().copied().collect())
        };
        if let Some(v) = attempt(self.inner.clone()) {
            return Ok(v);
        }
        // Shifted QR can stall on highly symmetric inputs such as companion
        // matrices of z^n + c; a unitary similarity breaks the symmetry.
        for seed in 0..4 {
            let u = crate::random::random_unitary(&mut crate::random::seeded(seed), self.dim());
            if let Some(v) = attempt(self.conjugate_by(&u.adjoint())?.inner) {
                return Ok(v);
            }
        }
        Err(Error::Numerical("Schur decomposition did not converge".into()))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.inner[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut C64 {
        &mut self.inner[idx]
    }
}

// The operator impls panic on mismatched dimensions, like nalgebra's; the
// `checked_*` methods are the fallible entry points.
impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner * &rhs.inner }
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner + &rhs.inner }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner - &rhs.inner }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { inner: -&self.inner }
    }
}

/// Kronecker product, first factor slow.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix { inner: a.inner.kronecker(&b.inner) }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_dim(b)?;
    Ok(ComplexMatrix { inner: &a.inner * &b.inner - &b.inner * &a.inner })
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_dim(b)?;
    Ok(ComplexMatrix { inner: &a.inner * &b.inner + &b.inner * &a.inner })
}

/// Traces out `trace_out` from a matrix on a `d1 x d2` space. The result
/// lives on the remaining factor.
pub fn partial_trace(m: &ComplexMatrix, dims: (usize, usize), trace_out: Factor) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != m.dim() {
        return Err(Error::BadBipartition { d1, d2, dim: m.dim() });
    }
    let out = match trace_out {
        Factor::Second => DMatrix::from_fn(d1, d1, |i, j| (0..d2).map(|k| m.inner[(i * d2 + k, j * d2 + k)]).sum()),
        Factor::First => DMatrix::from_fn(d2, d2, |k, l| (0..d1).map(|i| m.inner[(i * d2 + k, i * d2 + l)]).sum()),
    };
    Ok(ComplexMatrix { inner: out })
}

/// Spectrum (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let lam: Vec<C64> = self.values.iter().map(|&x| C64::new(x, 0.0)).collect();
        ComplexMatrix::from_diag(&lam).conjugate_by(&self.vectors).expect("square factors")
    }
}

pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    let defect = m.hermiticity_defect();
    if defect > MATRIX_TOL {
        return Err(Error::NotHermitian(defect));
    }
    // Symmetrize so round-off below the tolerance does not leak into the solver.
    let sym = (&m.inner + m.inner.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    Ok(HermEig { values, vectors: ComplexMatrix { inner: vectors } })
}

/// `exp(i h)` for Hermitian `h`, via its eigensystem; the result is unitary.
pub fn expm_hermitian_generator(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(h)?;
    let phases: Vec<C64> = eig.values.iter().map(|&x| C64::from_polar(1.0, x)).collect();
    ComplexMatrix::from_diag(&phases).conjugate_by(&eig.vectors)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, -1.0])
}

pub fn inner_product(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect()
}
