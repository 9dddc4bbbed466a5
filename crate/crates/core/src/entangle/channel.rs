//! Kraus channels `rho -> sum_i V_i rho V_i^dagger` and the local general
//! measurement that raises the alternative covariance of a product state.

use std::f64::consts::SQRT_2;

use crate::correlation::alt_cov;
use crate::qmat::{kron, kron_vec, ComplexMatrix, ONE};
use crate::states::{basis_ket, ket_uu};
use crate::{Bipartition, DensityMatrix, Error, Result, MATRIX_TOL};

/// Trace error tolerated by [`apply_channel`] without renormalization.
pub const CHANNEL_TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    gamma: f64,
}

impl KrausChannel {
    /// Validates that all operators share a dimension and that
    /// `sum V^dagger V = gamma I` for some `gamma > 0`.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| Error::InvalidArgument("channel has no operators".into()))?;
        let d = first.dim();
        let mut sum = ComplexMatrix::zeros(d);
        for v in &ops {
            if v.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
            }
            sum = &sum + &(&v.adjoint() * v);
        }
        let gamma = sum.trace().re / d as f64;
        if gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidArgument("completeness factor is not positive".into()));
        }
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(d).scale_real(gamma));
        if defect > MATRIX_TOL {
            return Err(Error::InvalidArgument(format!("sum V^dagger V is not proportional to I (defect {defect:e})")));
        }
        Ok(Self { ops, gamma })
    }

    pub fn identity(d: usize) -> Self {
        Self { ops: vec![ComplexMatrix::identity(d)], gamma: 1.0 }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    /// The factor in `sum V^dagger V = gamma I`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `sum_i V_i rho V_i^dagger`, divided by its trace when `renormalize` is set.
/// Without renormalization a trace off from 1 by more than
/// [`CHANNEL_TRACE_TOL`] is an error.
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel, renormalize: bool) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: ch.dim() });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for v in ch.ops() {
        out = &out + &rho.matrix().conjugate_by(v)?;
    }
    let tr = out.trace().re;
    if tr.abs() < 1e-300 {
        return Err(Error::InvalidState("channel output has zero trace".into()));
    }
    if renormalize {
        out = out.scale_real(1.0 / tr);
    } else if (tr - 1.0).abs() > CHANNEL_TRACE_TOL {
        return Err(Error::InvalidState(format!("channel output has trace {tr}; pass renormalize to rescale")));
    }
    DensityMatrix::new(out, rho.bipartition())
}

/// Eight product operators on two qubits: for each basis bra `<b|`,
/// `|uu><b| / sqrt(2)` and `|(u+d)(u+d)><b| / (2 sqrt(2))`.
pub fn lgm_channel() -> KrausChannel {
    let plus = [ONE, ONE];
    let ss = kron_vec(&plus, &plus);
    let uu = ket_uu();
    let mut ops = Vec::with_capacity(8);
    for b in 0..4 {
        let bra = basis_ket(4, b);
        ops.push(ComplexMatrix::outer(&uu, &bra).expect("4-dim").scale_real(1.0 / SQRT_2));
        ops.push(ComplexMatrix::outer(&ss, &bra).expect("4-dim").scale_real(1.0 / (2.0 * SQRT_2)));
    }
    KrausChannel::new(ops).expect("complete measurement")
}

/// One term `w P1 (x) P2` of a separable mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorTerm {
    pub weight: f64,
    pub p1: ComplexMatrix,
    pub p2: ComplexMatrix,
}

/// `|C(A (x) 1, 1 (x) B)|` of `sum_n w_n P1_n (x) P2_n`. Vanishes when the
/// projectors on each side are mutually orthogonal.
pub fn separable_mixture_altcov_audit(terms: &[ProjectorTerm], a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let first = terms.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
    let bip = Bipartition::new(first.p1.dim(), first.p2.dim())?;
    let mut acc = ComplexMatrix::zeros(bip.dim());
    for t in terms {
        if t.p1.dim() != bip.d1 || t.p2.dim() != bip.d2 {
            return Err(Error::DimensionMismatch { expected: bip.dim(), found: t.p1.dim() * t.p2.dim() });
        }
        acc = acc.checked_add(&kron(&t.p1, &t.p2).scale_real(t.weight))?;
    }
    let rho = DensityMatrix::new(acc, Some(bip))?;
    let ea = kron(a, &ComplexMatrix::identity(bip.d2));
    let eb = kron(&ComplexMatrix::identity(bip.d1), b);
    Ok(alt_cov(&rho, &ea, &eb)?.norm())
}
