//! Symmetric spin-`j` states as polynomials of degree `2j` and their root
//! constellations on the sphere.
//!
//! The state `sum_m psi_m |j, m>` maps to `p(z) = sum_k a_k z^k` with
//! `k = j + m` and `a_k = sqrt(C(2j, k)) psi_m`. Amplitude vectors are
//! ordered `m = -j, ..., j`, so amplitude index and polynomial power agree.
//! A root `z = x + iy` lands on the sphere at
//! `(2x, 2y, 1 - |z|^2) / (1 + |z|^2)`: `z = 0` is the North pole, and each
//! unit of degree deficit is a root at infinity on the South pole.

use serde::Serialize;

use crate::qmat::{inner_product, vec_norm, ComplexMatrix, ONE, ZERO};
use crate::{Error, Result, C64};

/// Leading coefficients below this fraction of the largest one count as
/// roots at infinity.
pub const DEGREE_DEFICIT_TOL: f64 = 1e-12;

/// Spin quantum number `j`, stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Spin(u32);

impl Spin {
    pub const fn from_twice(twice_j: u32) -> Self {
        Self(twice_j)
    }

    /// Accepts integers and half-integers.
    pub fn from_f64(j: f64) -> Result<Self> {
        let t = 2.0 * j;
        if !t.is_finite() || t < 0.0 || (t - t.round()).abs() > 1e-9 || t > 4096.0 {
            return Err(Error::InvalidArgument(format!("j = {j} is not a nonnegative half-integer")));
        }
        Ok(Self(t.round() as u32))
    }

    pub fn twice_j(self) -> u32 {
        self.0
    }

    pub fn j(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `2j + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `m` for amplitude index `k`.
    pub fn m(self, k: usize) -> f64 {
        k as f64 - self.j()
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `C(n, k)` in floating point.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    spin: Spin,
    amplitudes: Vec<C64>,
}

impl SpinState {
    /// Requires `2j + 1` amplitudes of unit norm (within 1e-10).
    pub fn new(spin: Spin, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(spin, amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = vec_norm(&amplitudes);
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("spin state has norm {n}")));
        }
        Ok(Self { spin, amplitudes })
    }

    pub fn normalized(spin: Spin, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(spin, amplitudes.len())?;
        let n = vec_norm(&amplitudes);
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self { spin, amplitudes: amplitudes.into_iter().map(|z| z / n).collect() })
    }

    /// `|j, m>`.
    pub fn basis(spin: Spin, twice_m: i32) -> Result<Self> {
        let k = twice_m + spin.0 as i32;
        if k < 0 || k % 2 != 0 || k / 2 >= spin.dim() as i32 {
            return Err(Error::InvalidArgument(format!("2m = {twice_m} invalid for j = {spin}")));
        }
        let mut v = vec![ZERO; spin.dim()];
        v[(k / 2) as usize] = ONE;
        Self::new(spin, v)
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    /// Amplitudes `psi_m` for `m = -j, ..., j`.
    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SpinState) -> C64 {
        inner_product(&self.amplitudes, &other.amplitudes)
    }

    /// `1 - |<self|other>|`: zero iff equal up to global phase.
    pub fn phase_distance(&self, other: &SpinState) -> f64 {
        if self.spin != other.spin {
            return f64::INFINITY;
        }
        1.0 - self.inner(other).norm()
    }
}

fn check_len(spin: Spin, n: usize) -> Result<()> {
    if n != spin.dim() {
        return Err(Error::DimensionMismatch { expected: spin.dim(), found: n });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial {
    spin: Spin,
    coeffs: Vec<C64>,
}

impl MajoranaPolynomial {
    /// Coefficients `a_0, ..., a_{2j}` in increasing powers of `z`.
    pub fn new(spin: Spin, coeffs: Vec<C64>) -> Result<Self> {
        check_len(spin, coeffs.len())?;
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if coeffs.iter().all(|z| z.norm() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { spin, coeffs })
    }

    /// Real coefficients in increasing powers; `2j` is the vector length
    /// minus one.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroVector);
        }
        Self::new(Spin::from_twice(coeffs.len() as u32 - 1), coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Index of the highest coefficient above the deficit threshold.
    pub fn degree(&self) -> usize {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs.iter().rposition(|c| c.norm() > DEGREE_DEFICIT_TOL * scale).unwrap_or(0)
    }

    /// Largest `|a_k - s b_k|` over `k`, minimized over the scalar `s` by
    /// least squares, relative to `max |a_k|`. Zero when the polynomials
    /// are proportional.
    pub fn proportionality_defect(&self, other: &MajoranaPolynomial) -> f64 {
        if self.spin != other.spin {
            return f64::INFINITY;
        }
        let bb: f64 = other.coeffs.iter().map(|c| c.norm_sqr()).sum();
        let s = inner_product(&other.coeffs, &self.coeffs) / bb;
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - s * b).norm()).fold(0.0, f64::max) / scale
    }
}

pub fn state_to_polynomial(s: &SpinState) -> MajoranaPolynomial {
    let n = s.spin.0;
    let coeffs = s.amplitudes.iter().enumerate().map(|(k, a)| a * binomial(n, k as u32).sqrt()).collect();
    MajoranaPolynomial { spin: s.spin, coeffs }
}

/// Inverse of [`state_to_polynomial`] up to scale. The result is normalized
/// and its largest-magnitude amplitude is made real positive.
pub fn polynomial_to_state(p: &MajoranaPolynomial) -> Result<SpinState> {
    let n = p.spin.0;
    let amps: Vec<C64> = p.coeffs.iter().enumerate().map(|(k, a)| a / binomial(n, k as u32).sqrt()).collect();
    let s = SpinState::normalized(p.spin, amps)?;
    Ok(fix_phase(s))
}

fn fix_phase(mut s: SpinState) -> SpinState {
    let lead = s.amplitudes.iter().copied().fold(ZERO, |best, z| if z.norm() > best.norm() + 1e-14 { z } else { best });
    if lead.norm() > 0.0 {
        let ph = lead.conj() / lead.norm();
        for z in &mut s.amplitudes {
            *z *= ph;
        }
    }
    s
}

/// Inverse stereographic projection of a finite root.
pub fn sphere_point(z: C64) -> [f64; 3] {
    let r2 = z.norm_sqr();
    if !r2.is_finite() {
        return SOUTH_POLE;
    }
    let d = 1.0 + r2;
    [2.0 * z.re / d, 2.0 * z.im / d, (1.0 - r2) / d]
}

pub const NORTH_POLE: [f64; 3] = [0.0, 0.0, 1.0];
pub const SOUTH_POLE: [f64; 3] = [0.0, 0.0, -1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub spin: Spin,
    /// Finite roots, in solver order.
    pub roots: Vec<C64>,
    /// All `2j` points: finite roots first, then one South-pole point per
    /// root at infinity.
    pub points: Vec<[f64; 3]>,
    pub roots_at_infinity: usize,
}

impl Constellation {
    pub fn record(&self) -> ConstellationRecord {
        ConstellationRecord { j: self.spin.j(), points: self.points.clone(), roots_at_infinity: self.roots_at_infinity }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstellationRecord {
    pub j: f64,
    pub points: Vec<[f64; 3]>,
    pub roots_at_infinity: usize,
}

/// Roots of `p` through the eigenvalues of its companion matrix.
pub fn roots(p: &MajoranaPolynomial) -> Result<Constellation> {
    let deg = p.degree();
    let total = p.spin.0 as usize;
    let lead = p.coeffs[deg];
    let mut finite = Vec::with_capacity(deg);
    if deg > 0 {
        let mut comp = ComplexMatrix::zeros(deg);
        for i in 1..deg {
            comp[(i, i - 1)] = ONE;
        }
        for k in 0..deg {
            comp[(k, deg - 1)] = -p.coeffs[k] / lead;
        }
        finite = comp.eigenvalues()?;
    }
    let mut points: Vec<[f64; 3]> = finite.iter().map(|&z| sphere_point(z)).collect();
    points.extend(std::iter::repeat_n(SOUTH_POLE, total - deg));
    Ok(Constellation { spin: p.spin, roots: finite, points, roots_at_infinity: total - deg })
}

/// `J_x, J_y, J_z, J_+, J_-` in the `m = -j, ..., j` basis.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
    pub jp: ComplexMatrix,
    pub jm: ComplexMatrix,
}

pub fn spin_matrices(spin: Spin) -> SpinMatrices {
    let d = spin.dim();
    let j = spin.j();
    let mut jp = ComplexMatrix::zeros(d);
    let mut jz = ComplexMatrix::zeros(d);
    for k in 0..d {
        let m = spin.m(k);
        jz[(k, k)] = C64::new(m, 0.0);
        if k + 1 < d {
            jp[(k + 1, k)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm).scale_real(0.5);
    let jy = (&jp - &jm).scale(C64::new(0.0, -0.5));
    SpinMatrices { jx, jy, jz, jp, jm }
}

/// `<J>` for a spin state.
pub fn mean_spin(s: &SpinState) -> [f64; 3] {
    let m = spin_matrices(s.spin);
    let ev = |op: &ComplexMatrix| inner_product(&s.amplitudes, &op.apply(&s.amplitudes).expect("dims")).re;
    [ev(&m.jx), ev(&m.jy), ev(&m.jz)]
}

/// `<J.J> - <J>.<J> = j(j+1) - |<J>|^2`.
pub fn dispersion(s: &SpinState) -> f64 {
    let j = s.spin.j();
    let v = mean_spin(s);
    j * (j + 1.0) - v.iter().map(|x| x * x).sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Jz,
    JPlus,
    JMinus,
    Jx,
    Jy,
}

impl Generator {
    pub fn matrix(self, spin: Spin) -> ComplexMatrix {
        let m = spin_matrices(spin);
        match self {
            Self::Jz => m.jz,
            Self::JPlus => m.jp,
            Self::JMinus => m.jm,
            Self::Jx => m.jx,
            Self::Jy => m.jy,
        }
    }
}

/// `exp(xi J)` in the spin-`j` representation.
pub fn su2_matrix(spin: Spin, generator: Generator, xi: C64) -> ComplexMatrix {
    generator.matrix(spin).scale(xi).expm()
}

/// `exp(xi J) |s>`, renormalized. Unitary only for `J_x, J_y, J_z` with
/// imaginary `xi`.
pub fn su2_action(s: &SpinState, generator: Generator, xi: C64) -> Result<SpinState> {
    let v = su2_matrix(s.spin, generator, xi).apply(&s.amplitudes)?;
    SpinState::normalized(s.spin, v)
}

/// `exp(-xi j) p(z e^xi)`: the action of `exp(xi J_z)`.
pub fn poly_scale(p: &MajoranaPolynomial, xi: C64) -> MajoranaPolynomial {
    let j = p.spin.j();
    let coeffs = p.coeffs.iter().enumerate().map(|(k, a)| a * (xi * (k as f64 - j)).exp()).collect();
    MajoranaPolynomial { spin: p.spin, coeffs }
}

/// `p(z + xi)`: the action of `exp(xi J_-)`.
pub fn poly_shift(p: &MajoranaPolynomial, xi: C64) -> MajoranaPolynomial {
    let n = p.coeffs.len();
    let mut out = vec![ZERO; n];
    for (k, a) in p.coeffs.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate().take(k + 1) {
            *o += a * binomial(k as u32, i as u32) * xi.powu((k - i) as u32);
        }
    }
    MajoranaPolynomial { spin: p.spin, coeffs: out }
}

/// `(1 + xi z)^{2j} p(z / (1 + xi z))`: the action of `exp(xi J_+)`.
pub fn poly_mobius(p: &MajoranaPolynomial, xi: C64) -> MajoranaPolynomial {
    let n = p.spin.0;
    let mut out = vec![ZERO; p.coeffs.len()];
    for (k, a) in p.coeffs.iter().enumerate() {
        // a_k z^k (1 + xi z)^{2j - k}
        for r in 0..=(n - k as u32) {
            out[k + r as usize] += a * binomial(n - k as u32, r) * xi.powu(r);
        }
    }
    MajoranaPolynomial { spin: p.spin, coeffs: out }
}

/// `<psi'|psi> = sum_k a_k conj(a'_k) / C(2j, k)`.
pub fn overlap_from_polynomials(p: &MajoranaPolynomial, p_prime: &MajoranaPolynomial) -> Result<C64> {
    if p.spin != p_prime.spin {
        return Err(Error::InvalidArgument(format!("spin mismatch: j = {} vs j = {}", p.spin, p_prime.spin)));
    }
    let n = p.spin.0;
    Ok(p.coeffs.iter().zip(&p_prime.coeffs).enumerate().map(|(k, (a, b))| a * b.conj() / binomial(n, k as u32)).sum())
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub polynomial: MajoranaPolynomial,
    pub constellation: Constellation,
    pub dispersion: f64,
}

/// Maximal-dispersion constellations for `j` in `{1, 3/2, 2, 5/2}`.
pub fn max_dispersion_catalog(spin: Spin) -> Result<Vec<CatalogEntry>> {
    let s3 = 3f64.sqrt();
    let table: Vec<(&'static str, Vec<f64>)> = match spin.0 {
        2 => vec![("antipodal", vec![1.0, 0.0, 1.0])],
        3 => vec![("triangle", vec![1.0, 0.0, 0.0, 1.0])],
        4 => vec![("tetrahedron", vec![0.0, 2.0 * 2f64.sqrt(), 0.0, 0.0, 1.0])],
        5 => vec![
            ("square-pyramid", vec![0.0, 5.0 / s3, 0.0, 0.0, 0.0, 1.0]),
            ("triangular-bipyramid", vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0]),
        ],
        _ => return Err(Error::InvalidArgument(format!("no catalog entry for j = {spin}"))),
    };
    table
        .into_iter()
        .map(|(label, c)| {
            let polynomial = MajoranaPolynomial::from_real(&c)?;
            let constellation = roots(&polynomial)?;
            let dispersion = dispersion(&polynomial_to_state(&polynomial)?);
            Ok(CatalogEntry { label, polynomial, constellation, dispersion })
        })
        .collect()
}

/// Rotation of a point about the y axis by `theta` (right-handed).
pub fn rotate_y(p: [f64; 3], theta: f64) -> [f64; 3] {
    let (s, c) = theta.sin_cos();
    [c * p[0] + s * p[2], p[1], -s * p[0] + c * p[2]]
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Bottleneck distance between two point multisets: the smallest, over
/// all pairings, of the largest paired distance. Infinite when the sizes
/// differ. Exhaustive with pruning; meant for constellations of a few
/// points.
pub fn point_set_distance(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn search(i: usize, a: &[[f64; 3]], b: &[[f64; 3]], used: &mut [bool], cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for k in 0..b.len() {
            if !used[k] {
                used[k] = true;
                search(i + 1, a, b, used, cur.max(dist(&a[i], &b[k])), best);
                used[k] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    search(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    if a.is_empty() {
        0.0
    } else {
        best
    }
}
