//! Identity-orientation parameter sweeps of `|cov|` and `|C|` on two-qubit
//! families. None of these maximize over local unitaries.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::measure::LocalPairEvaluator;
use super::operators::OperatorFamily;
use crate::qmat::{expm_hermitian_generator, pauli_x, pauli_y, ComplexMatrix, Factor};
use crate::states::{bell, mix, pure_family, BellKind};
use crate::{Error, Result};

/// A rectangular numeric table with named columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ScanTable {
    fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 grid points, got {n}")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|k| if k == n - 1 { hi } else { lo + step * k as f64 }).collect())
}

fn rotation(axis: &ComplexMatrix, angle: f64) -> ComplexMatrix {
    // exp(-i angle axis / 2)
    expm_hermitian_generator(&axis.scale_real(-angle / 2.0)).expect("2x2 generator")
}

fn rotated(op: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    op.conjugate_by(u).expect("2x2")
}

/// `cos(x)|uu> + sin(x)|dd>` for `x` on `[0, pi/2]`, with the first-factor
/// operator rotated about the y axis by `y`. Columns: `x`, `cov`, `altcov`,
/// `var_a`.
pub fn pure_family_scan(points: usize, y: f64, family: OperatorFamily) -> Result<ScanTable> {
    let a = rotated(&family.local(2)?, &rotation(&pauli_y(), y));
    let b = family.local(2)?;
    let mut t = ScanTable::new(&["x", "cov", "altcov", "var_a"]);
    for x in grid(0.0, FRAC_PI_2, points)? {
        let rho = pure_family(x).projector();
        let ev = LocalPairEvaluator::new(&rho)?;
        let red = rho.reduced(Factor::First)?;
        let m1 = red.matrix().trace_product(&a)?;
        let var = (red.matrix().trace_product(&(&a * &a))? - m1 * m1).re;
        t.rows.push(vec![x, ev.cov(&a, &b)?.norm(), ev.alt_cov(&a, &b)?.norm(), var]);
    }
    Ok(t)
}

/// `x P_b1 + (1 - x) P_b2` for `x` on `[0, 1]`. Columns: `x`, `cov`, `altcov`.
pub fn bell_mixture_scan(b1: BellKind, b2: BellKind, points: usize, family: OperatorFamily) -> Result<ScanTable> {
    let (p1, p2) = (bell(b1).projector(), bell(b2).projector());
    let a = family.local(2)?;
    let b = family.local(2)?;
    let mut t = ScanTable::new(&["x", "cov", "altcov"]);
    for x in grid(0.0, 1.0, points)? {
        let rho = mix(&[(x, &p1), (1.0 - x, &p2)])?;
        let ev = LocalPairEvaluator::new(&rho)?;
        t.rows.push(vec![x, ev.cov(&a, &b)?.norm(), ev.alt_cov(&a, &b)?.norm()]);
    }
    Ok(t)
}

/// The Bell state `|uu + dd>/sqrt(2)` with both local operators rotated
/// together by `exp(-i tx sigma_x / 2) exp(-i ty sigma_y / 2)`, over
/// `[0, pi]^2`. Columns: `theta_x`, `theta_y`, `cov`, `altcov`.
pub fn bell_rotation_scan(points: usize, family: OperatorFamily) -> Result<ScanTable> {
    let rho = bell(BellKind::PhiPlus).projector();
    let ev = LocalPairEvaluator::new(&rho)?;
    let op = family.local(2)?;
    let g = grid(0.0, PI, points)?;
    let mut t = ScanTable::new(&["theta_x", "theta_y", "cov", "altcov"]);
    for &tx in &g {
        for &ty in &g {
            let u = &rotation(&pauli_x(), tx) * &rotation(&pauli_y(), ty);
            let r = rotated(&op, &u);
            t.rows.push(vec![tx, ty, ev.cov(&r, &r)?.norm(), ev.alt_cov(&r, &r)?.norm()]);
        }
    }
    Ok(t)
}
