//! Derivative-free multi-start maximization.
//!
//! Each restart runs Nelder-Mead with dimension-adaptive coefficients. When
//! the simplex collapses (value spread below `tol`) the simplex is rebuilt
//! around the incumbent; the restart ends once a rebuilt pass improves the
//! incumbent by less than `tol`, or the iteration cap is hit.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::random::{substream, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 32, seed: 0, tol: 1e-9, max_iters: 5000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub index: usize,
    pub params: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartOutcome {
    pub best: RestartOutcome,
    /// Best value of each restart, in restart order.
    pub history: Vec<f64>,
}

const INITIAL_STEP: f64 = 0.6;
const MIN_STEP: f64 = 1e-3;

struct Simplex {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    fn around(x0: &[f64], step: f64, f: &dyn Fn(&[f64]) -> f64) -> Self {
        let n = x0.len();
        let mut points = Vec::with_capacity(n + 1);
        points.push(x0.to_vec());
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += step;
            points.push(p);
        }
        let values = points.iter().map(|p| f(p)).collect();
        Self { points, values }
    }

    fn order(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }
}

/// Minimizes `f` from `x0`. Returns `(x, f(x), iterations, converged)`.
pub fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], tol: f64, max_iters: usize) -> (Vec<f64>, f64, usize, bool) {
    let n = x0.len();
    if n == 0 {
        return (Vec::new(), f(x0), 0, true);
    }
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), (1.0 - 1.0 / nf).max(0.5));

    let mut iters = 0;
    let mut best_x = x0.to_vec();
    let mut best_f = f(x0);
    let mut step = INITIAL_STEP;

    loop {
        let mut s = Simplex::around(&best_x, step, f);
        let pass_start = best_f;
        let pass_iters = iters;
        let mut collapsed = false;
        while iters < max_iters {
            s.order();
            if s.values[n] - s.values[0] <= tol {
                collapsed = true;
                break;
            }
            iters += 1;
            let mut centroid = vec![0.0; n];
            for p in &s.points[..n] {
                for (c, x) in centroid.iter_mut().zip(p) {
                    *c += x / nf;
                }
            }
            let along =
                |t: f64| -> Vec<f64> { centroid.iter().zip(&s.points[n]).map(|(c, w)| c + t * (c - w)).collect() };
            let xr = along(alpha);
            let fr = f(&xr);
            if fr < s.values[0] {
                let xe = along(gamma);
                let fe = f(&xe);
                if fe < fr {
                    s.points[n] = xe;
                    s.values[n] = fe;
                } else {
                    s.points[n] = xr;
                    s.values[n] = fr;
                }
                continue;
            }
            if fr < s.values[n - 1] {
                s.points[n] = xr;
                s.values[n] = fr;
                continue;
            }
            let (xc, fc) = if fr < s.values[n] {
                let xc = along(alpha * rho);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-rho);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < fr.min(s.values[n]) {
                s.points[n] = xc;
                s.values[n] = fc;
                continue;
            }
            let x_best = s.points[0].clone();
            for k in 1..=n {
                let p: Vec<f64> = x_best.iter().zip(&s.points[k]).map(|(b, x)| b + sigma * (x - b)).collect();
                s.values[k] = f(&p);
                s.points[k] = p;
            }
        }
        s.order();
        if s.values[0] < best_f {
            best_f = s.values[0];
            best_x = s.points[0].clone();
        }
        if !collapsed {
            return (best_x, best_f, iters, false);
        }
        // A simplex that starts flat says nothing about the incumbent; retry
        // smaller before accepting it.
        let degenerate = iters == pass_iters && step > MIN_STEP;
        if pass_start - best_f < tol && !degenerate {
            return (best_x, best_f, iters, true);
        }
        step = (step * 0.5).max(MIN_STEP);
    }
}

/// Maximizes `objective` from `cfg.restarts` starting points. Restart 0
/// starts at the origin; restart `k > 0` draws its start from `start`
/// using an RNG stream derived from `(cfg.seed, k)`. The outcome does not
/// depend on whether restarts run in parallel.
pub fn multistart_maximize<F, S>(n: usize, objective: F, start: S, cfg: &OptimizerConfig) -> MultiStartOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&mut SeededRng) -> Vec<f64> + Sync,
{
    let restarts = cfg.restarts.max(1);
    let run = |index: usize| -> RestartOutcome {
        let x0 = if index == 0 {
            vec![0.0; n]
        } else {
            let mut rng = substream(cfg.seed, index as u64);
            start(&mut rng)
        };
        let neg = |x: &[f64]| -objective(x);
        let (params, fx, iterations, converged) = nelder_mead(&neg, &x0, cfg.tol, cfg.max_iters);
        RestartOutcome { index, params, value: -fx, iterations, converged }
    };

    #[cfg(feature = "parallel")]
    let outcomes: Vec<RestartOutcome> = {
        use rayon::prelude::*;
        (0..restarts).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<RestartOutcome> = (0..restarts).map(run).collect();

    let history = outcomes.iter().map(|o| o.value).collect();
    // Highest value wins; ties go to the lowest restart index.
    let best = outcomes.into_iter().reduce(|a, b| if b.value > a.value { b } else { a }).expect("at least one restart");
    MultiStartOutcome { best, history }
}

/// Uniform start in `[-pi, pi]^n`.
pub fn uniform_start(n: usize) -> impl Fn(&mut SeededRng) -> Vec<f64> + Sync {
    move |rng: &mut SeededRng| (0..n).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, fx, _, converged) = nelder_mead(&f, &[-1.2, 1.0], 1e-14, 5000);
        assert!(converged);
        assert!(fx < 1e-9, "{fx}");
        assert!((x[0] - 1.0).abs() < 1e-3 && (x[1] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn flat_initial_simplex_is_not_mistaken_for_convergence() {
        // every initial vertex has the same value
        let f = |x: &[f64]| x.iter().map(|v| (v - 0.3).powi(2)).sum::<f64>();
        let (_, fx, _, _) = nelder_mead(&f, &[0.0; 4], 1e-12, 5000);
        assert!(fx < 1e-8, "{fx}");
    }

    #[test]
    fn minimizes_quadratic_in_many_dimensions() {
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (1.0 + i as f64) * (v - 0.25).powi(2)).sum::<f64>();
        let (_, fx, _, _) = nelder_mead(&f, &[0.0; 16], 1e-12, 20000);
        assert!(fx < 1e-8, "{fx}");
    }

    #[test]
    fn multistart_is_deterministic_and_never_loses_to_origin() {
        // two bumps; the higher one is away from the origin
        let f = |x: &[f64]| (-(x[0] - 2.0).powi(2)).exp() + 0.5 * (-(x[0] + 1.0).powi(2)).exp();
        let cfg = OptimizerConfig { restarts: 8, seed: 7, ..Default::default() };
        let a = multistart_maximize(1, f, uniform_start(1), &cfg);
        let b = multistart_maximize(1, f, uniform_start(1), &cfg);
        assert_eq!(a, b);
        let grid_max = (0..=40000).map(|k| f(&[1.0 + k as f64 * 5e-5])).fold(f64::MIN, f64::max);
        assert!((a.best.value - grid_max).abs() < 1e-8);
        assert!(a.best.value >= f(&[0.0]) - 1e-9);
        assert_eq!(a.history.len(), 8);
    }
}
