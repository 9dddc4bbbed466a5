use std::f64::consts::PI;

use crate::qmat::{kron, pauli_z, ComplexMatrix, Factor};
use crate::{Bipartition, Error, Result, C64};

/// An operator on one tensor factor together with its embedding
/// `A (x) 1` or `1 (x) B` into the composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    side: Factor,
    local: ComplexMatrix,
    embedded: ComplexMatrix,
}

impl LocalOperator {
    pub fn new(side: Factor, local: ComplexMatrix, bip: Bipartition) -> Result<Self> {
        let d = bip.factor_dim(side);
        if local.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: local.dim() });
        }
        let embedded = match side {
            Factor::First => kron(&local, &ComplexMatrix::identity(bip.d2)),
            Factor::Second => kron(&ComplexMatrix::identity(bip.d1), &local),
        };
        Ok(Self { side, local, embedded })
    }

    pub fn side(&self) -> Factor {
        self.side
    }

    pub fn local(&self) -> &ComplexMatrix {
        &self.local
    }

    pub fn embedded(&self) -> &ComplexMatrix {
        &self.embedded
    }
}

/// `diag(..., +1 at i, ..., -1 at j, ...)` with zeros elsewhere.
pub fn pair_discrimination_operator(d: usize, slots: (usize, usize)) -> Result<ComplexMatrix> {
    let (i, j) = slots;
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} < 2")));
    }
    if i == j || i >= d || j >= d {
        return Err(Error::InvalidArgument(format!("slots ({i}, {j}) invalid for dimension {d}")));
    }
    let mut diag = vec![0.0; d];
    diag[i] = 1.0;
    diag[j] = -1.0;
    Ok(ComplexMatrix::from_real_diag(&diag))
}

/// `diag(exp(2 pi i k / d))` for `k = 1..=d`: the `d`-th roots of unity,
/// ending with 1.
pub fn equal_weight_operator(d: usize) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} < 2")));
    }
    let diag: Vec<C64> = (1..=d).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)).collect();
    Ok(ComplexMatrix::from_diag(&diag))
}

/// The local operator families selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorFamily {
    /// `diag(1, -1)`; two-dimensional factors only.
    Sigma3,
    /// `diag(1, -1, 0, ...)`.
    Pair,
    EqualWeight,
}

impl OperatorFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sigma3" => Some(Self::Sigma3),
            "pair" => Some(Self::Pair),
            "equal-weight" => Some(Self::EqualWeight),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Sigma3 => "sigma3",
            Self::Pair => "pair",
            Self::EqualWeight => "equal-weight",
        }
    }

    pub fn local(self, d: usize) -> Result<ComplexMatrix> {
        match self {
            Self::Sigma3 if d == 2 => Ok(pauli_z()),
            Self::Sigma3 => Err(Error::InvalidArgument(format!("sigma3 needs a 2-dimensional factor, got {d}"))),
            Self::Pair => pair_discrimination_operator(d, (0, 1)),
            Self::EqualWeight => equal_weight_operator(d),
        }
    }

    /// The pair `(A (x) 1, 1 (x) B)` for a bipartition.
    pub fn pair(self, bip: Bipartition) -> Result<(LocalOperator, LocalOperator)> {
        Ok((
            LocalOperator::new(Factor::First, self.local(bip.d1)?, bip)?,
            LocalOperator::new(Factor::Second, self.local(bip.d2)?, bip)?,
        ))
    }
}
