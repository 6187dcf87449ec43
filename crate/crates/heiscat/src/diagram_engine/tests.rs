use super::*;

#[test]
fn dot_squared() {
    let t = GenTerm::compose(&GenTerm::dot(0), &GenTerm::dot(0)).unwrap();
    let m = normalize(&t).unwrap();
    assert_eq!(m, dot_power(2, 0));
}

#[test]
fn crossing_squared() {
    for k in -2..=2 {
        let x = GenTerm::up_crossing(k);
        let m = normalize(&GenTerm::compose(&x, &x).unwrap()).unwrap();
        assert_eq!(m, Morphism::identity(&[Ori::Up, Ori::Up], k));
    }
}

#[test]
fn bubbles_from_generators() {
    for k in -2..=2 {
        for d in 0..4 {
            for ccw in [true, false] {
                let m = normalize(&bubble_term(ccw, d, k)).unwrap();
                assert_eq!(m.beta_inverse().unwrap(), bubble(ccw, d as i64, k), "k={} d={} ccw={}", k, d, ccw);
            }
        }
    }
}

#[test]
fn defining_relations() {
    for k in -2..=2 {
        for (name, ok) in relations::defining_suite(k) {
            assert!(ok, "k={} {}", k, name);
        }
    }
}

#[test]
fn derived_relations() {
    for k in -2..=2 {
        let bad: Vec<String> = relations::derived_suite(k).into_iter().filter(|r| !r.1).map(|r| r.0).collect();
        assert!(bad.is_empty(), "k={} {:?}", k, bad);
    }
}

#[test]
fn lift_round_trip() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for i in 0..60 {
        let k = [-1, 0, 1][i % 3];
        let t = lift::random_term(&mut rng, k, 5);
        let m = normalize(&t).unwrap();
        let again = lift::renormalize(&m).unwrap();
        assert_eq!(m, again, "{:?}", t);
        let s = m.star().unwrap();
        assert_eq!(s.star().unwrap(), m);
        let o = m.omega().unwrap();
        assert_eq!(o.omega().unwrap(), m);
    }
}

#[test]
fn functoriality() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let k = [-1, 0, 1][i % 3];
        let g = lift::random_term(&mut rng, k, 3);
        let f = lift::random_term_on(&mut rng, k, &g.target, 3);
        let whole = normalize(&GenTerm::compose(&f, &g).unwrap()).unwrap();
        let parts = Morphism::compose(&normalize(&f).unwrap(), &normalize(&g).unwrap()).unwrap();
        assert_eq!(whole, parts);
    }
}

#[test]
fn symmetries_on_generators() {
    for k in -2..=2 {
        let x = normalize(&GenTerm::up_crossing(k)).unwrap();
        let dx = normalize(&relations::down_crossing_term(k)).unwrap();
        assert_eq!(x.star().unwrap(), dx);
        let dx_neg = normalize(&relations::down_crossing_term(-k)).unwrap();
        assert_eq!(x.omega().unwrap(), dx_neg.scale(&q(-1)));
        let d = normalize(&GenTerm::dot(k)).unwrap();
        assert_eq!(d.star().unwrap(), normalize(&GenTerm::down_dot(k)).unwrap());
        let sr = normalize(&GenTerm::sideways_right(k)).unwrap();
        let sl = normalize(&GenTerm::sideways_left(k)).unwrap();
        assert_eq!(sr.star().unwrap(), sl);
        assert_eq!(sl.star().unwrap(), sr);
    }
}

#[test]
fn affine_hecke_embedding() {
    for n in 1..=3 {
        assert!(relations::check_ah_hom(n, 3, 0, true).unwrap(), "n={}", n);
        assert!(relations::check_ah_injective(n, 2, 1).unwrap(), "n={}", n);
    }
    assert!(relations::check_ah_hom(2, 2, -1, false).unwrap());
}

#[test]
fn beta_and_unit_endomorphisms() {
    for k in -2..=2 {
        assert!(relations::check_beta(5, k).unwrap(), "k={}", k);
        assert_eq!(relations::end_unit_ranks(5, k).unwrap(), vec![1, 1, 2, 3, 5, 7], "k={}", k);
    }
}

#[test]
fn printed_expressions_parse_back() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for i in 0..40 {
        let k = [-1, 0, 1][i % 3];
        let m = normalize(&lift::random_term(&mut rng, k, 4)).unwrap();
        if m.is_zero() {
            continue;
        }
        let s = morphism_expr(&m);
        assert_eq!(parse_morphism(&s, k).unwrap(), m, "{}", s);
    }
}

#[test]
fn parse_errors_carry_columns() {
    let e = parse_morphism("x . foo", 0).unwrap_err().to_string();
    assert!(e.contains("column 5"), "{}", e);
    let e = parse_morphism("x . (x", 0).unwrap_err().to_string();
    assert!(e.contains("column 7"), "{}", e);
}
