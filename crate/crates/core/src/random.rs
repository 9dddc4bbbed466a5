//! Seeded samplers for random matrices and states.
//!
//! Hermitian samples are `(M + M^dagger)/2` with Gaussian `M`; unitaries are
//! exponentials of random Hermitian generators; mixed states are normalized
//! Ginibre products `G G^dagger`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmat::{expm_hermitian_generator, ComplexMatrix};
use crate::states::{Bipartition, DensityMatrix, PureState};
use crate::C64;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for restart `index` of a run seeded with `seed`.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian_c64(rng)).collect()
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let rows: Vec<Vec<C64>> = (0..dim).map(|_| random_vector(rng, dim)).collect();
    ComplexMatrix::from_rows(&rows).expect("finite Gaussian entries")
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let m = random_complex(rng, dim);
    (&m + &m.adjoint()).scale_real(0.5)
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    // Scale the generator so the spectrum wraps the circle several times.
    let h = random_hermitian(rng, dim).scale_real(std::f64::consts::PI);
    expm_hermitian_generator(&h).expect("Hermitian by construction")
}

pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, bip: Bipartition) -> PureState {
    PureState::normalized(random_vector(rng, bip.dim()), Some(bip)).expect("nonzero sample")
}

pub fn random_mixed<R: Rng + ?Sized>(rng: &mut R, bip: Bipartition) -> DensityMatrix {
    let g = random_complex(rng, bip.dim());
    let w = &g * &g.adjoint();
    let t = w.trace().re;
    DensityMatrix::new(w.scale_real(1.0 / t), Some(bip)).expect("Ginibre sample is a state")
}
