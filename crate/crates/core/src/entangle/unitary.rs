use serde::Serialize;

use crate::qmat::{expm_hermitian_generator, kron, ComplexMatrix};
use crate::{Bipartition, Error, Result, C64};

/// Hermitian `d x d` matrix from `d^2` real coordinates: the `d` diagonal
/// entries first, then `(re, im)` pairs for the upper triangle in row order.
pub fn hermitian_from_params(d: usize, params: &[f64]) -> Result<ComplexMatrix> {
    if params.len() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, found: params.len() });
    }
    let mut h = ComplexMatrix::zeros(d);
    for i in 0..d {
        h[(i, i)] = C64::new(params[i], 0.0);
    }
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let z = C64::new(params[k], params[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    Ok(h)
}

/// `exp(i H(params))`.
pub fn unitary_from_params(d: usize, params: &[f64]) -> Result<ComplexMatrix> {
    expm_hermitian_generator(&hermitian_from_params(d, params)?)
}

/// `U1 (x) U2` together with the generator coordinates it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
    pub params: Vec<f64>,
}

impl LocalUnitary {
    pub fn param_count(bip: Bipartition) -> usize {
        bip.d1 * bip.d1 + bip.d2 * bip.d2
    }

    pub fn identity(bip: Bipartition) -> Self {
        Self {
            u1: ComplexMatrix::identity(bip.d1),
            u2: ComplexMatrix::identity(bip.d2),
            params: vec![0.0; Self::param_count(bip)],
        }
    }

    pub fn from_params(bip: Bipartition, params: &[f64]) -> Result<Self> {
        let n1 = bip.d1 * bip.d1;
        if params.len() != Self::param_count(bip) {
            return Err(Error::DimensionMismatch { expected: Self::param_count(bip), found: params.len() });
        }
        Ok(Self {
            u1: unitary_from_params(bip.d1, &params[..n1])?,
            u2: unitary_from_params(bip.d2, &params[n1..])?,
            params: params.to_vec(),
        })
    }

    pub fn composite(&self) -> ComplexMatrix {
        kron(&self.u1, &self.u2)
    }

    pub fn record(&self) -> LocalUnitaryRecord {
        let rows = |m: &ComplexMatrix| m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        LocalUnitaryRecord { u1: rows(&self.u1), u2: rows(&self.u2), params: self.params.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalUnitaryRecord {
    pub u1: Vec<Vec<[f64; 2]>>,
    pub u2: Vec<Vec<[f64; 2]>>,
    pub params: Vec<f64>,
}
