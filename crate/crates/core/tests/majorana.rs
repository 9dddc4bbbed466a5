use std::f64::consts::{FRAC_1_SQRT_2, PI};

use covent::majorana::{
    dispersion, max_dispersion_catalog, overlap_from_polynomials, point_set_distance, polynomial_to_state, roots,
    rotate_y, state_to_polynomial, su2_action, Generator, MajoranaPolynomial, Spin, SpinState, NORTH_POLE, SOUTH_POLE,
};
use covent::random::{random_vector, seeded, SeededRng};
use covent::C64;
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn random_state(rng: &mut SeededRng, twice_j: u32) -> SpinState {
    let spin = Spin::from_twice(twice_j);
    SpinState::normalized(spin, random_vector(rng, spin.dim())).unwrap()
}

fn angle(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.clamp(-1.0, 1.0).acos()
}

#[test]
fn ghz_like_state_gives_z_cubed_plus_one() {
    let spin = Spin::from_twice(3);
    let s = SpinState::new(spin, vec![c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap();
    let p = state_to_polynomial(&s);
    let want = MajoranaPolynomial::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(p.proportionality_defect(&want) < 1e-15);
    let con = roots(&p).unwrap();
    assert_eq!(con.points.len(), 3);
    for i in 0..3 {
        for k in (i + 1)..3 {
            assert!((angle(&con.points[i], &con.points[k]) - 2.0 * PI / 3.0).abs() < 1e-9);
        }
    }
}

#[test]
fn tetrahedral_polynomial_maps_to_the_expected_state() {
    let p = MajoranaPolynomial::from_real(&[0.0, 2.0 * 2f64.sqrt(), 0.0, 0.0, 1.0]).unwrap();
    let s = polynomial_to_state(&p).unwrap();
    let n = 3f64.sqrt();
    // (|2,2> + sqrt(2)|2,-1>) / sqrt(3), amplitudes ordered m = -2..2
    let want =
        SpinState::new(Spin::from_twice(4), vec![c(0.0), c(2f64.sqrt() / n), c(0.0), c(0.0), c(1.0 / n)]).unwrap();
    assert!(s.phase_distance(&want) < 1e-12);
    let con = roots(&p).unwrap();
    for i in 0..4 {
        for k in (i + 1)..4 {
            assert!((angle(&con.points[i], &con.points[k]) - (-1.0f64 / 3.0).acos()).abs() < 1e-9);
        }
    }
    assert!((dispersion(&s) - 6.0).abs() < 1e-10);
}

#[test]
fn bipyramid_has_poles_and_an_equatorial_triangle() {
    let p = MajoranaPolynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
    let con = roots(&p).unwrap();
    assert_eq!(con.roots_at_infinity, 1);
    assert_eq!(con.points.len(), 5);
    let north = con.points.iter().filter(|q| point_set_distance(&[**q], &[NORTH_POLE]) < 1e-9).count();
    let south = con.points.iter().filter(|q| point_set_distance(&[**q], &[SOUTH_POLE]) < 1e-9).count();
    let equator: Vec<_> = con.points.iter().filter(|q| q[2].abs() < 1e-9).collect();
    assert_eq!((north, south, equator.len()), (1, 1, 3));
    for i in 0..3 {
        for k in (i + 1)..3 {
            assert!((angle(equator[i], equator[k]) - 2.0 * PI / 3.0).abs() < 1e-9);
        }
    }
}

#[test]
fn powers_of_a_linear_factor_give_repeated_points() {
    let mut rng = seeded(10);
    for n in 1..=6u32 {
        let (a, b) = (C64::new(rng.random(), rng.random()), C64::new(rng.random(), rng.random()));
        let coeffs = (0..=n).map(|k| a.powu(k) * b.powu(n - k) * covent::majorana::binomial(n, k)).collect();
        let con = roots(&MajoranaPolynomial::new(Spin::from_twice(n), coeffs).unwrap()).unwrap();
        let target = covent::majorana::sphere_point(-b / a);
        // repeated roots are only accurate to about eps^(1/n)
        let tol = 10.0 * f64::EPSILON.powf(1.0 / n as f64);
        assert!(point_set_distance(&con.points, &vec![target; n as usize]) < tol, "n = {n}");
    }
}

#[test]
fn dispersion_examples() {
    let spin = Spin::from_twice(2);
    let s = SpinState::new(spin, vec![c(FRAC_1_SQRT_2), c(0.0), c(FRAC_1_SQRT_2)]).unwrap();
    assert!((dispersion(&s) - 2.0).abs() < 1e-12);
    assert!((dispersion(&SpinState::basis(spin, 2).unwrap()) - 1.0).abs() < 1e-12);
}

#[test]
fn flow_examples() {
    let mut rng = seeded(11);
    let s = random_state(&mut rng, 3);
    let same = su2_action(&s, Generator::JMinus, c(0.0)).unwrap();
    assert!(s.phase_distance(&same) < 1e-14);

    // exp(xi J-) z^2 = (z + xi)^2
    let xi = C64::new(0.4, -0.7);
    let z2 = polynomial_to_state(&MajoranaPolynomial::from_real(&[0.0, 0.0, 1.0]).unwrap()).unwrap();
    let moved = state_to_polynomial(&su2_action(&z2, Generator::JMinus, xi).unwrap());
    let want = MajoranaPolynomial::new(Spin::from_twice(2), vec![xi * xi, xi * 2.0, c(1.0)]).unwrap();
    assert!(moved.proportionality_defect(&want) < 1e-12);

    // exp(xi Jz) multiplies a_k by exp(xi (k - j))
    let p = state_to_polynomial(&s);
    let q = state_to_polynomial(&su2_action(&s, Generator::Jz, xi).unwrap());
    let scaled: Vec<C64> = p.coeffs().iter().enumerate().map(|(k, a)| a * (xi * (k as f64 - 1.5)).exp()).collect();
    assert!(q.proportionality_defect(&MajoranaPolynomial::new(p.spin(), scaled).unwrap()) < 1e-12);
}

#[test]
fn overlap_examples() {
    let p = MajoranaPolynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
    let q = MajoranaPolynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
    assert!(overlap_from_polynomials(&p, &q).unwrap().norm() < 1e-15);
    let s = polynomial_to_state(&p).unwrap();
    let ps = state_to_polynomial(&s);
    assert!((overlap_from_polynomials(&ps, &ps).unwrap() - c(1.0)).norm() < 1e-14);
    let r = MajoranaPolynomial::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(overlap_from_polynomials(&p, &r).is_err());
}

#[test]
fn catalog_rejects_unsupported_spins() {
    assert!(max_dispersion_catalog(Spin::from_twice(1)).is_err());
    assert!(max_dispersion_catalog(Spin::from_twice(6)).is_err());
    assert_eq!(max_dispersion_catalog(Spin::from_twice(5)).unwrap().len(), 2);
}

#[test]
fn coherent_states_have_the_smallest_dispersion() {
    let mut rng = seeded(12);
    for t in 1..=6u32 {
        let j = t as f64 / 2.0;
        let smallest = (0..1000).map(|_| dispersion(&random_state(&mut rng, t))).fold(f64::INFINITY, f64::min);
        assert!(smallest >= j - 1e-10, "j = {j}: {smallest}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn round_trip_up_to_phase(seed in any::<u64>(), t in 0u32..=8) {
        let s = random_state(&mut seeded(seed), t);
        let back = polynomial_to_state(&state_to_polynomial(&s)).unwrap();
        prop_assert!(s.phase_distance(&back) < 1e-8);
    }

    #[test]
    fn overlap_matches_amplitudes(seed in any::<u64>(), t in 0u32..=6) {
        let mut rng = seeded(seed);
        let (s, r) = (random_state(&mut rng, t), random_state(&mut rng, t));
        let via_poly = overlap_from_polynomials(&state_to_polynomial(&s), &state_to_polynomial(&r)).unwrap();
        prop_assert!((via_poly - r.inner(&s)).norm() < 1e-12);
    }

    #[test]
    fn rotations_preserve_dispersion(seed in any::<u64>(), t in 1u32..=6, theta in -PI..PI, g in 0usize..3) {
        let generator = [Generator::Jx, Generator::Jy, Generator::Jz][g];
        let s = random_state(&mut seeded(seed), t);
        let moved = su2_action(&s, generator, C64::new(0.0, theta)).unwrap();
        prop_assert!((dispersion(&moved) - dispersion(&s)).abs() < 1e-8);
    }

    #[test]
    fn constellations_rotate_with_the_state(seed in any::<u64>(), t in 1u32..=6, theta in -PI..PI) {
        // exp(i theta Jy) turns the points by theta about the y axis
        let s = random_state(&mut seeded(seed), t);
        let moved = su2_action(&s, Generator::Jy, C64::new(0.0, theta)).unwrap();
        let before = roots(&state_to_polynomial(&s)).unwrap();
        let after = roots(&state_to_polynomial(&moved)).unwrap();
        let rotated: Vec<[f64; 3]> = before.points.iter().map(|p| rotate_y(*p, theta)).collect();
        prop_assert!(point_set_distance(&rotated, &after.points) < 1e-6);
    }
}
