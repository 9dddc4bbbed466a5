//! Covariance entanglement: the largest covariance magnitude of a local
//! operator pair over all local unitary conjugations of the state.

use serde::Serialize;

use super::operators::LocalOperator;
use super::optimizer::{multistart_maximize, uniform_start, OptimizerConfig};
use super::unitary::{unitary_from_params, LocalUnitary, LocalUnitaryRecord};
use crate::qmat::{kron, partial_trace, ComplexMatrix, Factor, ZERO};
use crate::{Bipartition, DensityMatrix, Error, PureState, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Ordinary covariance.
    Cov,
    /// Alternative (commutator) covariance.
    AltCov,
}

impl Measure {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cov" => Some(Self::Cov),
            "altcov" | "alt-cov" => Some(Self::AltCov),
            _ => None,
        }
    }
}

/// Evaluates `cov` and `C` of `(A (x) 1, 1 (x) B)` for many local pairs on
/// one fixed state without forming composite-space products.
#[derive(Debug, Clone)]
pub struct LocalPairEvaluator {
    d1: usize,
    d2: usize,
    rho: Vec<C64>,
    rho_sq: Vec<C64>,
    red1: ComplexMatrix,
    red2: ComplexMatrix,
}

impl LocalPairEvaluator {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        let bip = rho.require_bipartition()?;
        let m = rho.matrix();
        let sq = m * m;
        let flat = |x: &ComplexMatrix| x.rows().into_iter().flatten().collect::<Vec<_>>();
        Ok(Self {
            d1: bip.d1,
            d2: bip.d2,
            rho: flat(m),
            rho_sq: flat(&sq),
            red1: partial_trace(m, bip.as_tuple(), Factor::Second)?,
            red2: partial_trace(m, bip.as_tuple(), Factor::First)?,
        })
    }

    fn n(&self) -> usize {
        self.d1 * self.d2
    }

    /// `tr(M (A (x) B))`.
    fn trace_with_product(&self, m: &[C64], a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
        let (d1, d2, n) = (self.d1, self.d2, self.n());
        let mut acc = ZERO;
        for i in 0..d1 {
            for k in 0..d2 {
                let row = (i * d2 + k) * n;
                for j in 0..d1 {
                    let aji = a[(j, i)];
                    if aji == ZERO {
                        continue;
                    }
                    for l in 0..d2 {
                        acc += m[row + j * d2 + l] * aji * b[(l, k)];
                    }
                }
            }
        }
        acc
    }

    fn check(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
        if a.dim() != self.d1 {
            return Err(Error::DimensionMismatch { expected: self.d1, found: a.dim() });
        }
        if b.dim() != self.d2 {
            return Err(Error::DimensionMismatch { expected: self.d2, found: b.dim() });
        }
        Ok(())
    }

    pub fn cov(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
        self.check(a, b)?;
        let joint = self.trace_with_product(&self.rho, a, b);
        Ok(joint - self.red1.trace_product(a)? * self.red2.trace_product(b)?)
    }

    pub fn alt_cov(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
        self.check(a, b)?;
        let (d1, d2, n) = (self.d1, self.d2, self.n());
        let first = self.trace_with_product(&self.rho_sq, a, b);
        // X = rho (A (x) 1), Y = rho (1 (x) B); second term is tr(XY).
        let mut x = vec![ZERO; n * n];
        let mut y = vec![ZERO; n * n];
        for p in 0..n {
            for jp in 0..d1 {
                for l in 0..d2 {
                    let mut sx = ZERO;
                    for j in 0..d1 {
                        sx += self.rho[p * n + j * d2 + l] * a[(j, jp)];
                    }
                    x[p * n + jp * d2 + l] = sx;
                }
            }
            for m in 0..d1 {
                for nn in 0..d2 {
                    let mut sy = ZERO;
                    for np in 0..d2 {
                        sy += self.rho[p * n + m * d2 + np] * b[(np, nn)];
                    }
                    y[p * n + m * d2 + nn] = sy;
                }
            }
        }
        let mut second = ZERO;
        for p in 0..n {
            for q in 0..n {
                second += x[p * n + q] * y[q * n + p];
            }
        }
        Ok(first - second)
    }

    pub fn eval(&self, measure: Measure, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
        match measure {
            Measure::Cov => self.cov(a, b),
            Measure::AltCov => self.alt_cov(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub max_value: f64,
    pub optimizer: LocalUnitary,
    pub restarts: usize,
    pub converged: bool,
    /// Best value reached by each restart.
    pub history: Vec<f64>,
    pub best_restart: usize,
    /// Objective at the identity orientation.
    pub identity_value: f64,
    /// Schmidt weights of the maximizing state, for searches over pure states.
    pub schmidt_weights: Option<Vec<f64>>,
}

impl OptimizationResult {
    pub fn record(&self) -> OptimizationRecord {
        OptimizationRecord {
            max_value: self.max_value,
            optimizer: self.optimizer.record(),
            restarts: self.restarts,
            converged: self.converged,
            history: self.history.clone(),
            best_restart: self.best_restart,
            identity_value: self.identity_value,
            schmidt_weights: self.schmidt_weights.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationRecord {
    pub max_value: f64,
    pub optimizer: LocalUnitaryRecord,
    pub restarts: usize,
    pub converged: bool,
    pub history: Vec<f64>,
    pub best_restart: usize,
    pub identity_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_weights: Option<Vec<f64>>,
}

fn rotated(local: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    // U^dagger A U
    local.conjugate_by(&u.adjoint()).expect("matching local dims")
}

fn check_pair(bip: Bipartition, a: &LocalOperator, b: &LocalOperator) -> Result<()> {
    if a.side() != Factor::First || b.side() != Factor::Second {
        return Err(Error::InvalidArgument("expected A on the first factor and B on the second".into()));
    }
    if a.local().dim() != bip.d1 {
        return Err(Error::DimensionMismatch { expected: bip.d1, found: a.local().dim() });
    }
    if b.local().dim() != bip.d2 {
        return Err(Error::DimensionMismatch { expected: bip.d2, found: b.local().dim() });
    }
    Ok(())
}

/// `max_U |m_{U rho U^dagger}(A (x) 1, 1 (x) B)|` over `U = U1 (x) U2`, by
/// multi-start local search. The state rotation is applied to the
/// operators instead: `m_{U rho U^dagger}(A, B) = m_rho(U^dagger A U, U^dagger B U)`.
pub fn covariance_entanglement(
    rho: &DensityMatrix,
    a: &LocalOperator,
    b: &LocalOperator,
    measure: Measure,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    let bip = rho.require_bipartition()?;
    check_pair(bip, a, b)?;
    let eval = LocalPairEvaluator::new(rho)?;
    let n1 = bip.d1 * bip.d1;
    let objective = |p: &[f64]| -> f64 {
        let u1 = unitary_from_params(bip.d1, &p[..n1]).expect("param layout");
        let u2 = unitary_from_params(bip.d2, &p[n1..]).expect("param layout");
        eval.eval(measure, &rotated(a.local(), &u1), &rotated(b.local(), &u2)).expect("dims checked").norm()
    };
    let n = LocalUnitary::param_count(bip);
    let identity_value = objective(&vec![0.0; n]);
    let out = multistart_maximize(n, objective, uniform_start(n), cfg);
    Ok(OptimizationResult {
        max_value: out.best.value.max(identity_value),
        optimizer: LocalUnitary::from_params(bip, &out.best.params)?,
        restarts: cfg.restarts.max(1),
        converged: out.best.converged,
        history: out.history,
        best_restart: out.best.index,
        identity_value,
        schmidt_weights: None,
    })
}

/// Schmidt weights from hyperspherical angles: `p_k` are the squared
/// coordinates of a point on the unit `(r-1)`-sphere.
pub fn schmidt_weights_from_angles(angles: &[f64]) -> Vec<f64> {
    let mut amps = Vec::with_capacity(angles.len() + 1);
    let mut carry = 1.0;
    for t in angles {
        amps.push(carry * t.cos());
        carry *= t.sin();
    }
    amps.push(carry);
    amps.iter().map(|a| a * a).collect()
}

/// The pure state `(U1 (x) U2) sum_k sqrt(p_k) |k, k>`.
pub fn schmidt_state(bip: Bipartition, weights: &[f64], lu: &LocalUnitary) -> Result<PureState> {
    let r = bip.d1.min(bip.d2);
    if weights.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: weights.len() });
    }
    let mut psi = vec![ZERO; bip.dim()];
    for (k, w) in weights.iter().enumerate() {
        psi[k * bip.d2 + k] = C64::new(w.max(0.0).sqrt(), 0.0);
    }
    let psi = lu.composite().apply(&psi)?;
    PureState::normalized(psi, Some(bip))
}

/// `|cov_psi(A (x) 1, 1 (x) B)|` for a state vector.
pub fn pure_state_cov(psi: &[C64], a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    let bip = Bipartition::new(a.dim(), b.dim())?;
    if psi.len() != bip.dim() {
        return Err(Error::DimensionMismatch { expected: bip.dim(), found: psi.len() });
    }
    let ea = kron(a, &ComplexMatrix::identity(bip.d2));
    let eb = kron(&ComplexMatrix::identity(bip.d1), b);
    let expect = |m: &ComplexMatrix| -> Result<C64> {
        let v = m.apply(psi)?;
        Ok(crate::qmat::inner_product(psi, &v))
    };
    Ok(expect(&(&ea * &eb))? - expect(&ea)? * expect(&eb)?)
}

/// Largest `|cov|` of the local pair over all pure states of the bipartite
/// space. Every pure state is a local unitary image of a Schmidt form, so
/// the search runs over local unitaries and Schmidt weights together.
pub fn max_cov_over_pure_states(
    bip: Bipartition,
    a: &LocalOperator,
    b: &LocalOperator,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    check_pair(bip, a, b)?;
    let r = bip.d1.min(bip.d2);
    let nu = LocalUnitary::param_count(bip);
    let n = nu + r - 1;
    let objective = |p: &[f64]| -> f64 {
        let lu = LocalUnitary::from_params(bip, &p[..nu]).expect("param layout");
        let w = schmidt_weights_from_angles(&p[nu..]);
        let psi = schmidt_state(bip, &w, &lu).expect("valid Schmidt state");
        pure_state_cov(psi.amplitudes(), a.local(), b.local()).expect("dims checked").norm()
    };
    let identity_value = objective(&vec![0.0; n]);
    let out = multistart_maximize(n, objective, uniform_start(n), cfg);
    Ok(OptimizationResult {
        max_value: out.best.value.max(identity_value),
        optimizer: LocalUnitary::from_params(bip, &out.best.params[..nu])?,
        restarts: cfg.restarts.max(1),
        converged: out.best.converged,
        history: out.history,
        best_restart: out.best.index,
        identity_value,
        schmidt_weights: Some(schmidt_weights_from_angles(&out.best.params[nu..])),
    })
}

/// The unequal-dimension case with equal-weight operators on both sides.
pub fn max_cov_unequal_dims(d1: usize, d2: usize, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    let bip = Bipartition::new(d1, d2)?;
    let (a, b) = super::OperatorFamily::EqualWeight.pair(bip)?;
    max_cov_over_pure_states(bip, &a, &b, cfg)
}

/// Smallest variance of `A (x) 1` over local unitary conjugations of the
/// state.
pub fn min_local_variance(
    rho: &DensityMatrix,
    a: &LocalOperator,
    cfg: &OptimizerConfig,
) -> Result<(f64, LocalUnitary)> {
    let bip = rho.require_bipartition()?;
    if a.side() != Factor::First || a.local().dim() != bip.d1 {
        return Err(Error::InvalidArgument("expected an operator on the first factor".into()));
    }
    let red = rho.reduced(Factor::First)?;
    let n = bip.d1 * bip.d1;
    let objective = |p: &[f64]| -> f64 {
        let u = unitary_from_params(bip.d1, p).expect("param layout");
        let ar = rotated(a.local(), &u);
        let sq = &ar * &ar;
        let m1 = red.matrix().trace_product(&ar).expect("dims");
        -(red.matrix().trace_product(&sq).expect("dims") - m1 * m1).re
    };
    let out = multistart_maximize(n, objective, uniform_start(n), cfg);
    let mut params = out.best.params.clone();
    params.extend(std::iter::repeat_n(0.0, bip.d2 * bip.d2));
    Ok((-out.best.value, LocalUnitary::from_params(bip, &params)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{alt_cov, cov};
    use crate::entangle::OperatorFamily;
    use crate::random::{random_complex, random_mixed, seeded};

    #[test]
    fn evaluator_matches_full_space_definitions() {
        let mut rng = seeded(50);
        for (d1, d2) in [(2, 2), (2, 3), (3, 2), (3, 4)] {
            let bip = Bipartition::new(d1, d2).unwrap();
            let rho = random_mixed(&mut rng, bip);
            let ev = LocalPairEvaluator::new(&rho).unwrap();
            let a = random_complex(&mut rng, d1);
            let b = random_complex(&mut rng, d2);
            let ea = kron(&a, &ComplexMatrix::identity(d2));
            let eb = kron(&ComplexMatrix::identity(d1), &b);
            assert!((ev.cov(&a, &b).unwrap() - cov(&rho, &ea, &eb).unwrap()).norm() < 1e-12);
            assert!((ev.alt_cov(&a, &b).unwrap() - alt_cov(&rho, &ea, &eb).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn schmidt_weights_sum_to_one() {
        for angles in [vec![], vec![0.3], vec![1.0, -2.0], vec![0.1, 0.2, 0.3]] {
            let w = schmidt_weights_from_angles(&angles);
            assert_eq!(w.len(), angles.len() + 1);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn side_mismatch_is_rejected() {
        let bip = Bipartition::qubits();
        let (a, b) = OperatorFamily::Sigma3.pair(bip).unwrap();
        let rho = crate::states::named_state("rho1").unwrap();
        let cfg = OptimizerConfig { restarts: 1, ..Default::default() };
        assert!(covariance_entanglement(&rho, &b, &a, Measure::Cov, &cfg).is_err());
        let big = DensityMatrix::maximally_mixed(6, Some(Bipartition::new(2, 3).unwrap())).unwrap();
        assert!(covariance_entanglement(&big, &a, &b, Measure::Cov, &cfg).is_err());
    }
}
