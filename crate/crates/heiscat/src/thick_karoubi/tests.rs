use super::*;

#[test]
fn idempotents() {
    for k in -1..=1 {
        for n in 0..=3 {
            assert!(h_plus(n, k).unwrap().check_idempotents().unwrap());
            assert!(e_minus(n, k).unwrap().check_idempotents().unwrap());
        }
    }
}

#[test]
fn merge_split() {
    for n in 0..=3 {
        for r in 0..=n {
            assert!(verify_merge_split(n, r, 1).unwrap(), "n={} r={}", n, r);
        }
    }
}

#[test]
fn thick_crossing_invertible() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        assert!(verify_thick_crossing(m, n, 0).unwrap());
    }
}

#[test]
fn dotted_caps_match_thick_cap() {
    for lam in [vec![1, 0], vec![2, 0], vec![3, 1], vec![0, 1], vec![2, 1, 0]] {
        assert!(verify_thick_cap_diagram(&lam, 1).unwrap(), "{:?}", lam);
    }
}

#[test]
fn invrel() {
    for k in -2..=2 {
        let r = verify_invrel(k, 4).unwrap();
        assert!(r.ok && r.classes_match, "k={}", k);
    }
}

#[test]
fn theta_one_one_is_invrel_column() {
    for k in 0..=2 {
        let th = theta(1, 1, k).unwrap();
        let inv = invrel_morphism(k).unwrap();
        assert!(th.equal(&inv).unwrap(), "k={}", k);
    }
}

#[test]
#[ignore]
fn t3_timing() {
    for (m, n, k) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 0), (2, 2, 1), (1, 1, 2), (2, 1, 2), (2, 2, 2), (1, 1, -1), (2, 2, -1), (2, 2, -2)] {
        let t = std::time::Instant::now();
        let r = verify_t3(m, n, k, 6).unwrap();
        println!("m={} n={} k={} ok={} classes={} D={} {:?}", m, n, k, r.ok, r.classes_match, r.d_used, t.elapsed());
    }
}
