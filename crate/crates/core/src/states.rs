//! Density matrices with checked physical invariants, and the named states.
//!
//! Two-qubit basis order is `|uu>, |ud>, |du>, |dd>` (first factor slow),
//! with `|u> = (1, 0)` and `|d> = (0, 1)`.

use serde::{Deserialize, Serialize};

use crate::qmat::{self, herm_eig, kron_vec, ComplexMatrix, Factor, ONE, ZERO};
use crate::{Error, Result, C64, MATRIX_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub d1: usize,
    pub d2: usize,
}

impl Bipartition {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidArgument(format!("factor dimensions must be positive, got {d1}x{d2}")));
        }
        Ok(Self { d1, d2 })
    }

    pub const fn qubits() -> Self {
        Self { d1: 2, d2: 2 }
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn factor_dim(&self, f: Factor) -> usize {
        match f {
            Factor::First => self.d1,
            Factor::Second => self.d2,
        }
    }

    pub fn as_tuple(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.d1 * self.d2 == dim {
            Ok(())
        } else {
            Err(Error::BadBipartition { d1: self.d1, d2: self.d2, dim })
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    bipartition: Option<Bipartition>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues down to
    /// `-1e-10`) before accepting `mat`.
    pub fn new(mat: ComplexMatrix, bipartition: Option<Bipartition>) -> Result<Self> {
        if let Some(b) = bipartition {
            b.check(mat.dim())?;
        }
        let defect = mat.hermiticity_defect();
        if defect > MATRIX_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {defect:.3e})")));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > MATRIX_TOL {
            return Err(Error::InvalidState(format!("trace is {} + {}i, expected 1", tr.re, tr.im)));
        }
        let min = herm_eig(&mat)?.values[0];
        if min < -MATRIX_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { mat, bipartition })
    }

    /// Skips validation; callers guarantee the invariants (e.g. unitary
    /// conjugation of an already valid state).
    pub(crate) fn new_unchecked(mat: ComplexMatrix, bipartition: Option<Bipartition>) -> Self {
        Self { mat, bipartition }
    }

    pub fn maximally_mixed(dim: usize, bipartition: Option<Bipartition>) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64), bipartition)
    }

    /// Sum of `w |v><v|` over literal (possibly unnormalized) kets. The trace
    /// check catches transcription errors in the prefactors.
    pub fn from_ket_terms(terms: &[(f64, Vec<C64>)], bipartition: Option<Bipartition>) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        let mut acc = ComplexMatrix::zeros(first.1.len());
        for (w, ket) in terms {
            if *w < 0.0 {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
            acc = acc.checked_add(&ComplexMatrix::outer(ket, ket)?.scale_real(*w))?;
        }
        Self::new(acc, bipartition)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        self.bipartition
    }

    pub fn require_bipartition(&self) -> Result<Bipartition> {
        self.bipartition.ok_or(Error::MissingBipartition)
    }

    pub fn with_bipartition(self, b: Bipartition) -> Result<Self> {
        b.check(self.dim())?;
        Ok(Self { bipartition: Some(b), ..self })
    }

    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).expect("square").re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eig(&self.mat).expect("validated Hermitian").values
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.purity() - 1.0).abs() <= tol
    }

    /// Reduced state on `keep`.
    pub fn reduced(&self, keep: Factor) -> Result<DensityMatrix> {
        let b = self.require_bipartition()?;
        let m = qmat::partial_trace(&self.mat, b.as_tuple(), keep.other())?;
        Ok(Self::new_unchecked(m, None))
    }

    /// `u rho u^dagger` for unitary `u`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if !u.is_unitary(1e-9) {
            return Err(Error::InvalidArgument("conjugating matrix is not unitary".into()));
        }
        Ok(Self::new_unchecked(self.mat.conjugate_by(u)?, self.bipartition))
    }

    pub fn to_record(&self) -> DensityMatrixRecord {
        let (d1, d2) = self.bipartition.map(|b| b.as_tuple()).unwrap_or((self.dim(), 1));
        DensityMatrixRecord {
            dims: [d1, d2],
            matrix: self.mat.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }

    pub fn from_record(rec: &DensityMatrixRecord) -> Result<Self> {
        let rows: Vec<Vec<C64>> =
            rec.matrix.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
        let mat = ComplexMatrix::from_rows(&rows)?;
        let b = Bipartition::new(rec.dims[0], rec.dims[1])?;
        Self::new(mat, Some(b))
    }
}

/// JSON wire form: `{"dims": [d1, d2], "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixRecord {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    bipartition: Option<Bipartition>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, bipartition: Option<Bipartition>) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = qmat::vec_norm(&amplitudes);
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (n - 1.0).abs() > MATRIX_TOL {
            return Err(Error::InvalidState(format!("state norm is {n}, expected 1")));
        }
        if let Some(b) = bipartition {
            b.check(amplitudes.len())?;
        }
        Ok(Self { amplitudes, bipartition })
    }

    pub fn normalized(amplitudes: Vec<C64>, bipartition: Option<Bipartition>) -> Result<Self> {
        let n = qmat::vec_norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(if n == 0.0 { Error::ZeroVector } else { Error::NonFinite });
        }
        Self::new(amplitudes.iter().map(|z| z / n).collect(), bipartition)
    }

    /// Normalized product state `u (x) v`.
    pub fn product(u: &[C64], v: &[C64]) -> Result<Self> {
        let b = Bipartition::new(u.len(), v.len())?;
        Self::normalized(kron_vec(u, v), Some(b))
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        self.bipartition
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        qmat::inner_product(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> DensityMatrix {
        let m = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("equal lengths");
        DensityMatrix::new_unchecked(m, self.bipartition)
    }
}

pub fn projector(s: &PureState) -> DensityMatrix {
    s.projector()
}

pub const UP: [C64; 2] = [ONE, ZERO];
pub const DOWN: [C64; 2] = [ZERO, ONE];

/// Computational basis ket `|i j>` on a two-qubit space, unnormalized
/// linear combinations are built from these.
pub fn basis_ket(dim: usize, index: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[index] = ONE;
    v
}

fn add_kets(a: &[C64], b: &[C64], sign: f64) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y * sign).collect()
}

pub fn ket_uu() -> Vec<C64> {
    basis_ket(4, 0)
}
pub fn ket_ud() -> Vec<C64> {
    basis_ket(4, 1)
}
pub fn ket_du() -> Vec<C64> {
    basis_ket(4, 2)
}
pub fn ket_dd() -> Vec<C64> {
    basis_ket(4, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    /// `(|uu> + |dd>)/sqrt 2`
    PhiPlus,
    /// `(|uu> - |dd>)/sqrt 2`
    PhiMinus,
    /// `(|ud> + |du>)/sqrt 2`
    PsiPlus,
    /// `(|ud> - |du>)/sqrt 2`, the singlet
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    pub fn label(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        }
    }

    pub fn parse(s: &str) -> Option<BellKind> {
        BellKind::ALL.into_iter().find(|k| k.label() == s)
    }
}

pub fn bell(kind: BellKind) -> PureState {
    let v = match kind {
        BellKind::PhiPlus => add_kets(&ket_uu(), &ket_dd(), 1.0),
        BellKind::PhiMinus => add_kets(&ket_uu(), &ket_dd(), -1.0),
        BellKind::PsiPlus => add_kets(&ket_ud(), &ket_du(), 1.0),
        BellKind::PsiMinus => add_kets(&ket_ud(), &ket_du(), -1.0),
    };
    PureState::normalized(v, Some(Bipartition::qubits())).expect("nonzero")
}

/// `cos(x)|uu> + sin(x)|dd>`.
pub fn pure_family(x: f64) -> PureState {
    let mut v = vec![ZERO; 4];
    v[0] = C64::new(x.cos(), 0.0);
    v[3] = C64::new(x.sin(), 0.0);
    PureState::normalized(v, Some(Bipartition::qubits())).expect("unit norm")
}

/// Convex combination. Weights must be nonnegative and sum to 1.
pub fn mix(terms: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
    let (_, first) = terms.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
    let mut acc = ComplexMatrix::zeros(first.dim());
    let mut total = 0.0;
    for (w, rho) in terms {
        if *w < 0.0 || !w.is_finite() {
            return Err(Error::InvalidArgument(format!("invalid weight {w}")));
        }
        if rho.bipartition() != first.bipartition() {
            return Err(Error::InvalidArgument("mixture terms have different bipartitions".into()));
        }
        acc = acc.checked_add(&rho.matrix().scale_real(*w))?;
        total += w;
    }
    if (total - 1.0).abs() > MATRIX_TOL {
        return Err(Error::InvalidArgument(format!("weights sum to {total}, expected 1")));
    }
    DensityMatrix::new(acc, first.bipartition())
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

#[derive(Debug, Clone)]
pub struct NamedState {
    pub label: &'static str,
    pub description: &'static str,
    pub rho: DensityMatrix,
}

/// The two-qubit states used in the comparisons of the two covariances,
/// each encoded with its literal prefactors.
pub fn named_mixtures() -> Vec<NamedState> {
    let q = Some(Bipartition::qubits());
    let bell_ket = add_kets(&ket_uu(), &ket_dd(), 1.0);
    let plus = [ONE, ONE];
    let plus_plus = kron_vec(&plus, &plus);
    let build = |terms: Vec<(f64, Vec<C64>)>| DensityMatrix::from_ket_terms(&terms, q).expect("catalog state");
    vec![
        NamedState {
            label: "rho1",
            description: "(|uu><uu| + |dd><dd|)/2",
            rho: build(vec![(0.5, ket_uu()), (0.5, ket_dd())]),
        },
        NamedState {
            label: "rho2",
            description: "|uu><uu|/2 + |uu+dd><uu+dd|/4",
            rho: build(vec![(0.5, ket_uu()), (0.25, bell_ket.clone())]),
        },
        NamedState { label: "rho3", description: "|uu><uu|", rho: build(vec![(1.0, ket_uu())]) },
        NamedState { label: "rho4", description: "|uu+dd><uu+dd|/2", rho: build(vec![(0.5, bell_ket.clone())]) },
        NamedState {
            label: "counterexample",
            description: "|uu+dd><uu+dd|/4 + |ud><ud|/4 + |du><du|/4",
            rho: build(vec![(0.25, bell_ket), (0.25, ket_ud()), (0.25, ket_du())]),
        },
        NamedState {
            label: "nonorthogonal-mixture",
            description: "|uu><uu|/2 + |(u+d)(u+d)><(u+d)(u+d)|/8",
            rho: build(vec![(0.5, ket_uu()), (0.125, plus_plus)]),
        },
    ]
}

pub fn named_state(label: &str) -> Option<DensityMatrix> {
    if let Some(kind) = BellKind::parse(label) {
        return Some(bell(kind).projector());
    }
    match label {
        "uu" => return Some(projector(&PureState::product(&UP, &UP).unwrap())),
        "maximally-mixed" => {
            return DensityMatrix::maximally_mixed(4, Some(Bipartition::qubits())).ok();
        }
        _ => {}
    }
    named_mixtures().into_iter().find(|n| n.label == label).map(|n| n.rho)
}

pub const NAMED_STATE_LABELS: &[&str] = &[
    "rho1",
    "rho2",
    "rho3",
    "rho4",
    "counterexample",
    "nonorthogonal-mixture",
    "phi+",
    "phi-",
    "psi+",
    "psi-",
    "uu",
    "maximally-mixed",
];
