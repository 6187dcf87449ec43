use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heiscat::daha::PolyN;
use heiscat::diagram_engine::{lift, morphism_expr, normalize, parse_morphism, Morphism};
use heiscat::{q, HeisElem, Partition, PermAlgElem, SymElem};

fn partition() -> impl Strategy<Value = Partition> {
    (0usize..=5).prop_flat_map(|n| {
        let all = Partition::all_of_size(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn sym() -> impl Strategy<Value = SymElem> {
    prop::collection::vec((partition(), -3i64..=3), 0..3).prop_map(|ts| {
        let mut f = SymElem::zero();
        for (l, c) in ts {
            f.add_term(l, q(c));
        }
        f
    })
}

fn heis(k: i64) -> impl Strategy<Value = HeisElem> {
    prop::collection::vec((partition(), partition(), -2i64..=2), 0..3).prop_map(move |ts| {
        let mut x = HeisElem::zero(k);
        for (m, l, c) in ts {
            x.add_term(m, l, q(c));
        }
        x
    })
}

fn term(seed: u64, k: i64) -> Morphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    normalize(&lift::random_term(&mut rng, k, 5)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_is_an_involution(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn sym_product_commutes_and_associates(a in sym(), b in sym(), c in sym()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn sym_omega_is_a_ring_involution(a in sym(), b in sym()) {
        prop_assert_eq!(a.omega_invol().omega_invol(), a.clone());
        prop_assert_eq!(a.mul(&b).omega_invol(), a.omega_invol().mul(&b.omega_invol()));
    }

    #[test]
    fn pairing_is_symmetric(a in sym(), b in sym(), k in -3i64..=3) {
        prop_assert_eq!(a.pairing_k(&b, k), b.pairing_k(&a, k));
    }

    #[test]
    fn heis_product_associates(x in heis(1), y in heis(1), z in heis(1)) {
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(x.omega().omega(), x);
    }

    #[test]
    fn young_symmetrizers_are_idempotent(l in partition()) {
        let e = PermAlgElem::young_symmetrizer(&l);
        prop_assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn demazure_kills_symmetric_polynomials(a in 0u32..4, b in 0u32..4) {
        let mut f = PolyN::zero(2);
        f.add_term(vec![a, b], q(1));
        f.add_term(vec![b, a], q(1));
        prop_assert!(f.demazure(1).unwrap().is_zero());
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>(), k in -1i64..=1) {
        let m = term(seed, k);
        prop_assert_eq!(lift::renormalize(&m).unwrap(), m);
    }

    #[test]
    fn star_and_omega_are_involutions(seed in any::<u64>(), k in -1i64..=1) {
        let m = term(seed, k);
        prop_assert_eq!(m.star().unwrap().star().unwrap(), m.clone());
        prop_assert_eq!(m.omega().unwrap().omega().unwrap(), m);
    }

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>(), k in -1i64..=1) {
        let m = term(seed, k);
        prop_assume!(!m.is_zero());
        prop_assert_eq!(parse_morphism(&morphism_expr(&m), k).unwrap(), m);
    }
}
