use num_bigint::BigInt;
use num_traits::{One, Zero};

use heiscat::daha::{cyclotomic_span_dim, sample_points, verify_lemma_wow, verify_sandwich, verify_thick_cap, PolyN};
use heiscat::diagram_engine::relations;
use heiscat::group_algebra::verify_trivial_split;
use heiscat::heis_ring::verify_upper;
use heiscat::thick_karoubi::{decat_class, verify_invrel, verify_t3};
use heiscat::{FockState, HeisElem, Partition, SymElem, Q};

/// Partition counts by the standard recursion on the largest part.
fn partition_count(n: usize) -> usize {
    fn go(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| go(n - p, p)).sum()
    }
    go(n, n)
}

/// `k (k-1) ... (k-r+1) / r!` for any integer `k`.
fn gen_binom(k: i64, r: usize) -> Q {
    let mut num = Q::one();
    for i in 0..r as i64 {
        num = num * Q::from_integer(BigInt::from(k - i)) / Q::from_integer(BigInt::from(i + 1));
    }
    num
}

fn criterion_1() -> bool {
    (-2..=2).all(|k| {
        let d = relations::defining_suite(k);
        let e = relations::derived_suite(k);
        let bad: Vec<&String> = d.iter().chain(&e).filter(|r| !r.1).map(|r| &r.0).collect();
        if !bad.is_empty() {
            eprintln!("criterion 1, k={}: {:?}", k, bad);
        }
        bad.is_empty()
    })
}

fn criterion_2() -> bool {
    let mut ok = true;
    for n in 1..=3 {
        ok &= relations::check_ah_injective(n, 2, 0).unwrap_or(false);
        ok &= relations::check_ah_hom(n, 2, 0, true).unwrap_or(false);
    }
    let want: Vec<usize> = (0..=5).map(partition_count).collect();
    for k in -2..=2 {
        ok &= relations::check_beta(5, k).unwrap_or(false);
        ok &= relations::end_unit_ranks(5, k).map(|r| r == want).unwrap_or(false);
    }
    ok
}

fn criterion_3() -> bool {
    let mut ok = true;
    for k in -3..=3 {
        for m in 0..=5 {
            for n in 0..=5 {
                ok &= verify_upper(m, n, k);
            }
        }
    }
    for k in -3..=3 {
        for m in 0..=6 {
            for n in 0..=6 {
                let p = SymElem::complete(m).pairing_k(&SymElem::complete(n), k);
                ok &= p.is_integer();
            }
        }
        for r in 0..=5 {
            let p = SymElem::complete(r).pairing_k(&SymElem::elementary(r), k);
            ok &= p == gen_binom(k, r);
        }
    }
    let lits = ["h+1", "e-1", "h+2", "s-[2,1]", "h+1*e-2 + 3"];
    for (l, m) in [(1, 1), (2, -1), (0, 2), (-1, 0)] {
        let k = l + m;
        for a in &lits {
            for b in &lits {
                let x = HeisElem::parse(a, k).unwrap();
                let y = HeisElem::parse(b, k).unwrap();
                let lhs = x.mul(&y).unwrap().delta_lm(l, m).unwrap();
                let rhs = x.delta_lm(l, m).unwrap().mul(&y.delta_lm(l, m).unwrap()).unwrap();
                ok &= lhs == rhs;
            }
        }
    }
    for (l, m) in [(1usize, 0usize), (0, 1), (1, 1), (2, 1)] {
        let k = m as i64 - l as i64;
        let states: Vec<FockState> = vec![
            FockState::vacuum(l, m),
            FockState::basis(l, m, (0..l + m).map(|i| Partition::new(vec![1 + i % 2])).collect()).unwrap(),
        ];
        for v in &states {
            ok &= HeisElem::one(k).fock_act(v).unwrap() == *v;
            for a in &lits {
                for b in &lits {
                    let x = HeisElem::parse(a, k).unwrap();
                    let y = HeisElem::parse(b, k).unwrap();
                    let lhs = x.mul(&y).unwrap().fock_act(v).unwrap();
                    let rhs = x.fock_act(&y.fock_act(v).unwrap()).unwrap();
                    ok &= lhs == rhs;
                }
            }
        }
    }
    ok
}

fn criterion_4() -> bool {
    let mut ok = true;
    for k in [0, 1, 2, -1, -2] {
        for m in 0..=2 {
            for n in 0..=2 {
                let r = verify_t3(m, n, k, 4);
                let good = r.as_ref().map(|r| r.ok && r.classes_match).unwrap_or(false);
                if good {
                    let r = r.unwrap();
                    ok &= decat_class(&r.theta.source).unwrap() == decat_class(&r.theta.target).unwrap();
                } else {
                    eprintln!("criterion 4: t3 m={} n={} k={} failed", m, n, k);
                }
                ok &= good;
            }
        }
    }
    for k in -2..=2 {
        ok &= verify_invrel(k, 4).map(|r| r.ok && r.classes_match).unwrap_or(false);
    }
    ok
}

fn monomials(n: usize, max_deg: u32) -> Vec<PolyN> {
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|v| (0..=max_deg).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    exps.retain(|v| v.iter().sum::<u32>() <= max_deg);
    exps.into_iter()
        .map(|a| {
            let mut p = PolyN::zero(n);
            p.add_term(a, Q::one());
            p
        })
        .collect()
}

fn criterion_5() -> bool {
    let mut ok = (1..=4).all(verify_trivial_split);
    for n in 1..=3 {
        for f in monomials(n, 3) {
            ok &= verify_sandwich(&f, false) && verify_sandwich(&f, true);
        }
    }
    for n in 1..=3usize {
        let mut lams: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..n {
            lams = lams.into_iter().flat_map(|v| (0..=3).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        for lam in lams {
            ok &= verify_thick_cap(&lam);
        }
    }
    for n in 0..=4 {
        let pts = sample_points(n, 5, 2024);
        for r in 0..=n {
            ok &= verify_lemma_wow(r, n, &pts).unwrap_or(false);
        }
    }
    let polys: Vec<Vec<Q>> = vec![
        vec![Q::zero(), Q::one()],
        vec![Q::from_integer(BigInt::from(-3)), Q::one()],
        vec![Q::from_integer(BigInt::from(-1)), Q::zero(), Q::one()],
        vec![Q::from_integer(BigInt::from(2)), Q::from_integer(BigInt::from(-3)), Q::one()],
    ];
    for f in &polys {
        let l = f.len() - 1;
        for n in 1..=2u32 {
            let want = l.pow(n) * (1..=n as usize).product::<usize>();
            ok &= cyclotomic_span_dim(n as usize, f, l as u32 + 2).map(|d| d == want).unwrap_or(false);
        }
    }
    ok
}

fn criterion_6() -> bool {
    match relations::engine_health(200, 0, 5) {
        Ok(h) => h.idempotent && h.functorial && h.star_involution && h.omega_involution,
        Err(e) => {
            eprintln!("criterion 6: {}", e);
            false
        }
    }
}

#[test]
fn acceptance() {
    let checks: [(&str, fn() -> bool); 6] = [
        ("relation suites for k in -2..2", criterion_1),
        ("affine Hecke embedding and End(1) dimensions", criterion_2),
        ("ring layer", criterion_3),
        ("t3 isomorphisms and inversion relation", criterion_4),
        ("symmetrizer, sandwich, thick cap and cyclotomic identities", criterion_5),
        ("engine health on 200 random terms", criterion_6),
    ];
    let mut all = true;
    for (i, (name, f)) in checks.iter().enumerate() {
        let t = std::time::Instant::now();
        let ok = f();
        println!("criterion {}: {} ({}) [{:.1?}]", i + 1, if ok { "PASS" } else { "FAIL" }, name, t.elapsed());
        all &= ok;
    }
    assert!(all);
}
