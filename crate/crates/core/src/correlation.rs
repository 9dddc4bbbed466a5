//! The ordinary covariance and the alternative (commutator) covariance.
//!
//! For a state `rho` and operators `A`, `B`:
//!
//! ```text
//! cov(A, B) = tr(rho A B) - tr(rho A) tr(rho B)
//! C(A, B)   = tr([rho, A][B, rho]) / 2 = tr(rho^2 {A, B}/2 - rho A rho B)
//! ```
//!
//! `C` treats the state and the operators on the same footing. It agrees
//! with `cov` on pure states for commuting operators, never exceeds the
//! variance for `A = B`, and vanishes identically on the maximally mixed
//! state.

use serde::Serialize;

use crate::qmat::{anticommutator, commutator, ComplexMatrix};
use crate::{DensityMatrix, Error, Result, C64, MATRIX_TOL};

/// Slack allowed on every inequality check.
pub const INEQUALITY_SLACK: f64 = 1e-9;

fn check_dims(rho: &DensityMatrix, ops: &[&ComplexMatrix]) -> Result<()> {
    for op in ops {
        if op.dim() != rho.dim() {
            return Err(Error::DimensionMismatch { expected: rho.dim(), found: op.dim() });
        }
    }
    Ok(())
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let d = a.hermiticity_defect();
    if d > MATRIX_TOL {
        Err(Error::NotHermitian(d))
    } else {
        Ok(())
    }
}

pub fn expectation(rho: &DensityMatrix, a: &ComplexMatrix) -> Result<C64> {
    check_dims(rho, &[a])?;
    rho.matrix().trace_product(a)
}

pub fn cov(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_dims(rho, &[a, b])?;
    let r = rho.matrix();
    let ab = r.trace_product(&(a * b))?;
    Ok(ab - r.trace_product(a)? * r.trace_product(b)?)
}

/// `C(A, B)`, evaluated through both the commutator and the expanded form;
/// a disagreement beyond round-off is reported as an error.
pub fn alt_cov(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_dims(rho, &[a, b])?;
    let r = rho.matrix();
    let via_commutators = commutator(r, a)?.trace_product(&commutator(b, r)?)? * 0.5;
    let r2 = r * r;
    let via_expansion = r2.trace_product(&anticommutator(a, b)?)? * 0.5 - (r * a).trace_product(&(r * b))?;
    let scale = 1.0 + a.max_abs() * b.max_abs() * rho.dim() as f64;
    if (via_commutators - via_expansion).norm() > 1e-12 * scale {
        return Err(Error::Numerical(format!(
            "alternative covariance forms disagree: {via_commutators} vs {via_expansion}"
        )));
    }
    Ok(via_commutators)
}

pub fn variance(rho: &DensityMatrix, a: &ComplexMatrix) -> Result<f64> {
    check_dims(rho, &[a])?;
    check_hermitian(a)?;
    Ok(cov(rho, a, a)?.re)
}

/// `tr([A, rho][A, rho]^dagger) / 2`, which equals `C(A, A)` for Hermitian `A`.
pub fn alt_variance(rho: &DensityMatrix, a: &ComplexMatrix) -> Result<f64> {
    check_dims(rho, &[a])?;
    check_hermitian(a)?;
    let k = commutator(a, rho.matrix())?;
    Ok(0.5 * k.trace_product(&k.adjoint())?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceReport {
    pub cov: C64,
    pub alt_cov: C64,
    pub var_a: f64,
    pub var_b: f64,
    pub alt_var_a: f64,
    pub alt_var_b: f64,
}

pub fn report(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<CovarianceReport> {
    Ok(CovarianceReport {
        cov: cov(rho, a, b)?,
        alt_cov: alt_cov(rho, a, b)?,
        var_a: variance(rho, a)?,
        var_b: variance(rho, b)?,
        alt_var_a: alt_variance(rho, a)?,
        alt_var_b: alt_variance(rho, b)?,
    })
}

/// Lower bounds on the variance product of two Hermitian operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityAudit {
    pub var_a: f64,
    pub var_b: f64,
    pub alt_var_a: f64,
    pub alt_var_b: f64,
    pub var_product: f64,
    pub cov_sq: f64,
    pub alt_var_product: f64,
    pub alt_cov_sq: f64,
    /// `|tr(rho [A, B])|^2 / 4`
    pub heisenberg: f64,
    /// `var >= C(A, A)` for both operators.
    pub variance_dominates: bool,
    /// `var(A) var(B) >= |cov(A, B)|^2`
    pub cov_cauchy_schwarz: bool,
    /// `C(A, A) C(B, B) >= |C(A, B)|^2`
    pub alt_cauchy_schwarz: bool,
    /// `var(A) var(B) >= C(A, A) C(B, B)`
    pub variance_product_dominates: bool,
    /// `var(A) var(B) >= |tr(rho [A, B])|^2 / 4`
    pub heisenberg_holds: bool,
}

impl InequalityAudit {
    pub fn all_hold(&self) -> bool {
        self.variance_dominates
            && self.cov_cauchy_schwarz
            && self.alt_cauchy_schwarz
            && self.variance_product_dominates
            && self.heisenberg_holds
    }
}

pub fn inequality_audit(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityAudit> {
    let r = report(rho, a, b)?;
    let comm = expectation(rho, &commutator(a, b)?)?;
    let var_product = r.var_a * r.var_b;
    let alt_var_product = r.alt_var_a * r.alt_var_b;
    let cov_sq = r.cov.norm_sqr();
    let alt_cov_sq = r.alt_cov.norm_sqr();
    let heisenberg = comm.norm_sqr() / 4.0;
    let ge = |lhs: f64, rhs: f64| lhs - rhs >= -INEQUALITY_SLACK;
    Ok(InequalityAudit {
        var_a: r.var_a,
        var_b: r.var_b,
        alt_var_a: r.alt_var_a,
        alt_var_b: r.alt_var_b,
        var_product,
        cov_sq,
        alt_var_product,
        alt_cov_sq,
        heisenberg,
        variance_dominates: ge(r.var_a, r.alt_var_a) && ge(r.var_b, r.alt_var_b),
        cov_cauchy_schwarz: ge(var_product, cov_sq),
        alt_cauchy_schwarz: ge(alt_var_product, alt_cov_sq),
        variance_product_dominates: ge(var_product, alt_var_product),
        heisenberg_holds: ge(var_product, heisenberg),
    })
}

/// `(C(A, A^dagger) C(B, B^dagger), |C(A, B^dagger)|^2)` for arbitrary
/// operators; the first never falls below the second.
pub fn alt_cauchy_schwarz_sides(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(f64, f64)> {
    let ad = a.adjoint();
    let bd = b.adjoint();
    let lhs = alt_cov(rho, a, &ad)?.re * alt_cov(rho, b, &bd)?.re;
    let rhs = alt_cov(rho, a, &bd)?.norm_sqr();
    Ok((lhs, rhs))
}

/// `tr([A1, rho][A2, rho] ... [Ak, rho])` for any number of operators.
pub fn commutator_chain_trace(rho: &DensityMatrix, ops: &[ComplexMatrix]) -> Result<C64> {
    let first = ops.first().ok_or_else(|| Error::InvalidArgument("no operators".into()))?;
    check_dims(rho, &ops.iter().collect::<Vec<_>>())?;
    let mut acc = commutator(first, rho.matrix())?;
    for op in &ops[1..] {
        acc = &acc * &commutator(op, rho.matrix())?;
    }
    Ok(acc.trace())
}

/// The commutator chain for an odd number of operators on a pure state,
/// where it vanishes identically.
pub fn odd_commutator_trace(rho: &DensityMatrix, ops: &[ComplexMatrix]) -> Result<C64> {
    if ops.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("need an odd number of operators, got {}", ops.len())));
    }
    if !rho.is_pure(1e-8) {
        return Err(Error::InvalidArgument("state is not pure".into()));
    }
    commutator_chain_trace(rho, ops)
}

/// Symmetrized-sum form of `cov` for operators diagonal in the basis of
/// `rho_in_basis`, with eigenvalues `a` and `b`:
/// `sum_ij (a_i - a_j)(b_i - b_j) rho_ii rho_jj / 2`.
pub fn cov_eigenbasis(rho_in_basis: &ComplexMatrix, a: &[C64], b: &[C64]) -> Result<C64> {
    eigenbasis_sum(rho_in_basis, a, b, |r, i, j| r[(i, i)] * r[(j, j)])
}

/// `sum_ij (a_i - a_j)(b_i - b_j) rho_ij rho_ji / 2`, the same for `C`.
pub fn alt_cov_eigenbasis(rho_in_basis: &ComplexMatrix, a: &[C64], b: &[C64]) -> Result<C64> {
    eigenbasis_sum(rho_in_basis, a, b, |r, i, j| r[(i, j)] * r[(j, i)])
}

fn eigenbasis_sum(
    r: &ComplexMatrix,
    a: &[C64],
    b: &[C64],
    weight: impl Fn(&ComplexMatrix, usize, usize) -> C64,
) -> Result<C64> {
    let n = r.dim();
    for v in [a, b] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += (a[i] - a[j]) * (b[i] - b[j]) * weight(r, i, j);
        }
    }
    Ok(acc * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{kron, pauli_z, ComplexMatrix};
    use crate::random::{random_complex, random_hermitian, random_mixed, random_pure, random_unitary, seeded};
    use crate::states::{bell, named_state, pure_family, BellKind, Bipartition};

    fn sz1() -> ComplexMatrix {
        kron(&pauli_z(), &ComplexMatrix::identity(2))
    }
    fn sz2() -> ComplexMatrix {
        kron(&ComplexMatrix::identity(2), &pauli_z())
    }

    #[test]
    fn counterexample_values() {
        let rho = named_state("counterexample").unwrap();
        assert!(cov(&rho, &sz1(), &sz2()).unwrap().norm() < 1e-15);
        assert!((alt_cov(&rho, &sz1(), &sz2()).unwrap() - C64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_state_has_zero_covariance() {
        let mut rng = seeded(20);
        let b = Bipartition::qubits();
        let ra = random_mixed(&mut rng, Bipartition::new(2, 1).unwrap());
        let rb = random_mixed(&mut rng, Bipartition::new(2, 1).unwrap());
        let rho = DensityMatrix::new(kron(ra.matrix(), rb.matrix()), Some(b)).unwrap();
        let a = kron(&random_hermitian(&mut rng, 2), &ComplexMatrix::identity(2));
        let bb = kron(&ComplexMatrix::identity(2), &random_hermitian(&mut rng, 2));
        assert!(cov(&rho, &a, &bb).unwrap().norm() < 1e-12);
    }

    #[test]
    fn pure_family_cov_is_sin_squared() {
        let x = std::f64::consts::PI / 6.0;
        let rho = pure_family(x).projector();
        let v = cov(&rho, &sz1(), &sz2()).unwrap();
        assert!((v - C64::new(0.75, 0.0)).norm() < 1e-12);
        assert!(((2.0 * x).sin().powi(2) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_alt_cov_vanishes() {
        let mut rng = seeded(21);
        let rho = DensityMatrix::maximally_mixed(5, None).unwrap();
        let a = random_complex(&mut rng, 5);
        let b = random_complex(&mut rng, 5);
        assert!(alt_cov(&rho, &a, &b).unwrap().norm() < 1e-12);
    }

    #[test]
    fn variances_on_eigenstates_and_mixtures() {
        let uu = named_state("uu").unwrap();
        assert!(variance(&uu, &sz1()).unwrap().abs() < 1e-15);
        assert!(alt_variance(&uu, &sz1()).unwrap().abs() < 1e-15);
        let rho1 = named_state("rho1").unwrap();
        assert!((variance(&rho1, &sz1()).unwrap() - 1.0).abs() < 1e-15);
        assert!(alt_variance(&rho1, &sz1()).unwrap().abs() < 1e-15);
        let phi = bell(BellKind::PhiPlus).projector();
        assert!((variance(&phi, &sz1()).unwrap() - 1.0).abs() < 1e-15);
        let non_herm = ComplexMatrix::from_real(4, &[0.0; 16]).unwrap();
        let mut nh = non_herm.clone();
        nh[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(variance(&phi, &nh), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn report_matches_comparison_table() {
        let expect = [("rho1", 1.0, 0.0), ("rho2", 0.75, 0.25), ("rho3", 0.0, 0.0), ("rho4", 1.0, 1.0)];
        for (label, c, alt) in expect {
            let r = report(&named_state(label).unwrap(), &sz1(), &sz2()).unwrap();
            assert!((r.cov.re - c).abs() < 1e-12 && r.cov.im.abs() < 1e-15, "{label}");
            assert!((r.alt_cov.re - alt).abs() < 1e-12 && r.alt_cov.im.abs() < 1e-15, "{label}");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let rho = DensityMatrix::maximally_mixed(3, None).unwrap();
        assert!(matches!(cov(&rho, &sz1(), &sz2()), Err(Error::DimensionMismatch { .. })));
        assert!(alt_cov(&rho, &sz1(), &sz2()).is_err());
    }

    #[test]
    fn odd_commutator_traces() {
        let mut rng = seeded(22);
        let b = Bipartition::qubits();
        let pure = random_pure(&mut rng, b).projector();
        let single = vec![random_complex(&mut rng, 4)];
        assert!(odd_commutator_trace(&pure, &single).unwrap().norm() < 1e-12);
        let three: Vec<_> = (0..3).map(|_| random_complex(&mut rng, 4)).collect();
        assert!(odd_commutator_trace(&pure, &three).unwrap().norm() < 1e-9);
        assert!(odd_commutator_trace(&pure, &three[..2]).is_err());
        let rho1 = named_state("rho1").unwrap();
        assert!(odd_commutator_trace(&rho1, &three).is_err());
        // The chain does not vanish for mixed states in general; compare
        // against a direct product of explicit commutators.
        let mixed = random_mixed(&mut rng, b);
        let direct = {
            let r = mixed.matrix();
            let k: Vec<ComplexMatrix> = three.iter().map(|a| &(a * r) - &(r * a)).collect();
            (&(&k[0] * &k[1]) * &k[2]).trace()
        };
        let chain = commutator_chain_trace(&mixed, &three).unwrap();
        assert!((chain - direct).norm() < 1e-10);
        assert!(chain.norm() > 1e-3);
    }

    #[test]
    fn shift_scale_and_bilinearity() {
        let mut rng = seeded(23);
        let b = Bipartition::new(2, 3).unwrap();
        for _ in 0..20 {
            let rho = random_mixed(&mut rng, b);
            let a = random_complex(&mut rng, 6);
            let bb = random_complex(&mut rng, 6);
            let a2 = random_complex(&mut rng, 6);
            let base = alt_cov(&rho, &a, &bb).unwrap();
            let alpha = C64::new(0.7, -1.3);
            let beta = C64::new(-2.1, 0.4);
            let id = ComplexMatrix::identity(6);
            let shifted = alt_cov(&rho, &(&a - &id.scale(alpha)), &(&bb - &id.scale(beta))).unwrap();
            assert!((shifted - base).norm() < 1e-12);
            let scaled = alt_cov(&rho, &a.scale(alpha), &bb.scale(beta)).unwrap();
            assert!((scaled - alpha * beta * base).norm() < 1e-12);
            let sum = alt_cov(&rho, &(&a + &a2), &bb).unwrap();
            assert!((sum - base - alt_cov(&rho, &a2, &bb).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn basis_change_duality_and_reality() {
        let mut rng = seeded(24);
        let b = Bipartition::new(3, 2).unwrap();
        for _ in 0..20 {
            let rho = random_mixed(&mut rng, b);
            let u = random_unitary(&mut rng, 6);
            let a = random_complex(&mut rng, 6);
            let bb = random_complex(&mut rng, 6);
            let lhs = alt_cov(&rho.conjugate_by(&u).unwrap(), &a, &bb).unwrap();
            let ud = u.adjoint();
            let rhs = alt_cov(&rho, &a.conjugate_by(&ud).unwrap(), &bb.conjugate_by(&ud).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
            assert!(alt_cov(&rho, &a, &a.adjoint()).unwrap().im.abs() < 1e-12);
            let (l, r) = alt_cauchy_schwarz_sides(&rho, &a, &bb).unwrap();
            assert!(l - r >= -INEQUALITY_SLACK);
        }
    }

    #[test]
    fn variance_dominates_alt_variance_with_pure_equality() {
        let mut rng = seeded(25);
        let b = Bipartition::new(2, 2).unwrap();
        for _ in 0..50 {
            let a = random_hermitian(&mut rng, 4);
            let mixed = random_mixed(&mut rng, b);
            assert!(variance(&mixed, &a).unwrap() >= alt_variance(&mixed, &a).unwrap() - 1e-10);
            let pure = random_pure(&mut rng, b).projector();
            assert!((variance(&pure, &a).unwrap() - alt_variance(&pure, &a).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_alt_cov_bounded_by_purity() {
        let mut rng = seeded(26);
        let b = Bipartition::new(3, 3).unwrap();
        for _ in 0..50 {
            let rho = random_mixed(&mut rng, b);
            let u = random_unitary(&mut rng, 9);
            let v = alt_cov(&rho, &u, &u.adjoint()).unwrap().re;
            assert!(v <= rho.purity() + 1e-10 && rho.purity() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn symmetrized_sums_match_definitions() {
        let mut rng = seeded(27);
        let b = Bipartition::new(2, 3).unwrap();
        for _ in 0..20 {
            let rho = random_mixed(&mut rng, b);
            // commuting normal pair: diagonal in a random common basis
            let u = random_unitary(&mut rng, 6);
            let da: Vec<C64> = crate::random::random_vector(&mut rng, 6);
            let db: Vec<C64> = crate::random::random_vector(&mut rng, 6);
            let a = ComplexMatrix::from_diag(&da).conjugate_by(&u).unwrap();
            let bb = ComplexMatrix::from_diag(&db).conjugate_by(&u).unwrap();
            let in_basis = rho.matrix().conjugate_by(&u.adjoint()).unwrap();
            let c1 = cov(&rho, &a, &bb).unwrap();
            let c2 = cov_eigenbasis(&in_basis, &da, &db).unwrap();
            assert!((c1 - c2).norm() < 1e-12 * (1.0 + c1.norm()));
            let k1 = alt_cov(&rho, &a, &bb).unwrap();
            let k2 = alt_cov_eigenbasis(&in_basis, &da, &db).unwrap();
            assert!((k1 - k2).norm() < 1e-12 * (1.0 + k1.norm()));
        }
    }

    #[test]
    fn vanishing_alt_variance_means_commuting() {
        let mut rng = seeded(28);
        let b = Bipartition::qubits();
        for _ in 0..20 {
            let rho = random_mixed(&mut rng, b);
            // operator diagonal in rho's eigenbasis commutes with rho
            let e = crate::qmat::herm_eig(rho.matrix()).unwrap();
            let diag: Vec<f64> = (0..4).map(|_| rand::Rng::random::<f64>(&mut rng)).collect();
            let a = ComplexMatrix::from_real_diag(&diag).conjugate_by(&e.vectors).unwrap();
            let av = alt_variance(&rho, &a).unwrap();
            assert!(av < 1e-12);
            assert!(commutator(&a, rho.matrix()).unwrap().frobenius_norm() < 1e-6);
        }
    }
}
