//! Local-unitary invariants of bipartite density matrices and the count of
//! independent invariants at each order.

use serde::Serialize;

use crate::qmat::Factor;
use crate::{DensityMatrix, Error, Result};

/// Quadratic local-unitary invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSet {
    /// `tr[(tr_2 rho)^2]`.
    pub chi1: f64,
    /// `tr[(tr_1 rho)^2]`.
    pub chi2: f64,
    pub purity: f64,
    /// The doubly antisymmetric contraction; `2 (x) 2` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

const EPS2: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

pub fn chi_invariants(rho: &DensityMatrix) -> Result<InvariantSet> {
    let bip = rho.require_bipartition()?;
    let chi1 = rho.reduced(Factor::First)?.purity();
    let chi2 = rho.reduced(Factor::Second)?.purity();
    let eps = if (bip.d1, bip.d2) == (2, 2) { Some(eps_contraction(rho)) } else { None };
    Ok(InvariantSet { chi1, chi2, purity: rho.purity(), eps })
}

/// `eps_{aa'} eps^{bb'} eps_{ii'} eps^{jj'} rho^{ai}_{bj} rho^{a'i'}_{b'j'}`
/// with `rho^{ai}_{bj} = <a,i| rho |b,j>`, summed term by term.
#[allow(clippy::needless_range_loop)]
fn eps_contraction(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let r = |a: usize, i: usize, b: usize, j: usize| m[(2 * a + i, 2 * b + j)];
    let mut acc = crate::qmat::ZERO;
    for a in 0..2 {
        for ap in 0..2 {
            for b in 0..2 {
                for bp in 0..2 {
                    let w1 = EPS2[a][ap] * EPS2[b][bp];
                    if w1 == 0.0 {
                        continue;
                    }
                    for i in 0..2 {
                        for ip in 0..2 {
                            for j in 0..2 {
                                for jp in 0..2 {
                                    let w = w1 * EPS2[i][ip] * EPS2[j][jp];
                                    if w != 0.0 {
                                        acc += r(a, i, b, j) * r(ap, ip, bp, jp) * w;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    acc.re
}

/// `E(rho) = F(chi1, chi2) + tr(rho^2) G(chi1, chi2)` for caller-supplied
/// `F` and `G`.
pub fn local_invariant_measure<F, G>(set: &InvariantSet, f: F, g: G) -> f64
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    f(set.chi1, set.chi2) + set.purity * g(set.chi1, set.chi2)
}

/// Number of partitions of `n` into at most `parts` parts.
pub fn partitions_at_most(n: usize, parts: usize) -> u128 {
    // Conjugation: at most `parts` parts <=> every part at most `parts`.
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for size in 1..=parts.min(n) {
        for total in size..=n {
            ways[total] += ways[total - size];
        }
    }
    ways[n]
}

/// Independent invariants of order `n` under `U(d1) x U(d2)`.
pub fn singlet_count(n: usize, d1: usize, d2: usize) -> Result<u128> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument("dimensions must be at least 1".into()));
    }
    Ok(partitions_at_most(n, d1) * partitions_at_most(n, d2))
}

/// First `terms` Taylor coefficients of `(1 + q^2) / ((1 - q^2)^2 (1 - q))`.
pub fn generating_series(terms: usize) -> Result<Vec<i128>> {
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let num = [1i128, 0, 1];
    // (1 - 2q^2 + q^4)(1 - q)
    let den = [1i128, -1, -2, 2, 1, -1];
    let mut c = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut v = num.get(n).copied().unwrap_or(0);
        for k in 1..den.len().min(n + 1) {
            v -= den[k] * c[n - k];
        }
        c.push(v);
    }
    Ok(c)
}
