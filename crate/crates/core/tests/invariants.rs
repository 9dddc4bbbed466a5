use covent::invariants::{chi_invariants, generating_series, partitions_at_most, singlet_count};
use covent::qmat::{kron, partial_trace, Factor};
use covent::random::{random_mixed, random_unitary, seeded};
use covent::states::named_state;
use covent::Bipartition;
use proptest::prelude::*;

#[test]
fn rho1_values_match_index_summation() {
    let rho = named_state("rho1").unwrap();
    let inv = chi_invariants(&rho).unwrap();
    let m = rho.matrix();
    // (tr_2 rho)_{ab} = sum_i rho_{(a,i),(b,i)}
    let mut chi1 = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let r_ab: covent::C64 = (0..2).map(|i| m[(2 * a + i, 2 * b + i)]).sum();
            let r_ba: covent::C64 = (0..2).map(|i| m[(2 * b + i, 2 * a + i)]).sum();
            chi1 += (r_ab * r_ba).re;
        }
    }
    assert!((inv.chi1 - chi1).abs() < 1e-15);
    assert!((inv.chi1 - 0.5).abs() < 1e-15 && (inv.chi2 - 0.5).abs() < 1e-15);
    assert!((inv.purity - 0.5).abs() < 1e-15);
    assert!((inv.eps.unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn eps_is_only_defined_for_qubit_pairs() {
    let rho = random_mixed(&mut seeded(1), Bipartition::new(2, 3).unwrap());
    assert!(chi_invariants(&rho).unwrap().eps.is_none());
}

#[test]
fn series_matches_partition_products() {
    let series = generating_series(21).unwrap();
    for (n, c) in series.iter().enumerate() {
        assert_eq!(*c, singlet_count(n, 2, 2).unwrap() as i128);
        let k = (n / 2) as i128;
        assert_eq!(*c, (k + 1) * (k + 1));
    }
}

#[test]
fn partition_counts_for_larger_dims() {
    // partitions of 6 into at most 3 parts: 6, 51, 42, 411, 33, 321, 222
    assert_eq!(partitions_at_most(6, 3), 7);
    assert_eq!(singlet_count(6, 3, 2).unwrap(), 7 * 4);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn invariants_are_local_unitary_invariant(seed in any::<u64>(), (d1, d2) in prop::sample::select(vec![(2, 2), (2, 3), (3, 3)])) {
        let mut rng = seeded(seed);
        let bip = Bipartition::new(d1, d2).unwrap();
        let rho = random_mixed(&mut rng, bip);
        let v = kron(&random_unitary(&mut rng, d1), &random_unitary(&mut rng, d2));
        let (a, b) = (chi_invariants(&rho).unwrap(), chi_invariants(&rho.conjugate_by(&v).unwrap()).unwrap());
        prop_assert!((a.chi1 - b.chi1).abs() < 1e-10);
        prop_assert!((a.chi2 - b.chi2).abs() < 1e-10);
        prop_assert!((a.purity - b.purity).abs() < 1e-10);
        if let (Some(x), Some(y)) = (a.eps, b.eps) {
            prop_assert!((x - y).abs() < 1e-10);
            prop_assert!((x - (1.0 - a.chi1 - a.chi2 + a.purity)).abs() < 1e-10);
        }
        prop_assert!(a.chi1 >= 1.0 / d1 as f64 - 1e-12 && a.chi1 <= 1.0 + 1e-12);
        prop_assert!(a.chi2 >= 1.0 / d2 as f64 - 1e-12 && a.chi2 <= 1.0 + 1e-12);
        let red = partial_trace(rho.matrix(), (d1, d2), Factor::Second).unwrap();
        prop_assert!((red.trace_product(&red).unwrap().re - a.chi1).abs() < 1e-12);
    }
}
