//! The defining and derived relations, each built from generators and compared in normal form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lift::{random_term, random_term_on};
use super::{ah_embed_down, ah_embed_up, bubble, bubble_term, dot_power, normalize, Gen, GenTerm, Morphism, Ori, Slice};
use crate::daha::AHElem;
use crate::group_algebra::all_perms;
use crate::partitions::Partition;
use crate::symfunc::SymElem;
use crate::{q, Error, Q};

use Ori::{Down as D, Up as U};

type R = Result<Morphism, Error>;

fn nm(t: &GenTerm) -> R {
    normalize(t)
}

fn id(w: &[Ori], k: i64) -> Morphism {
    Morphism::identity(w, k)
}

fn comp(ms: &[&Morphism]) -> R {
    let mut acc = ms[ms.len() - 1].clone();
    for m in ms[..ms.len() - 1].iter().rev() {
        acc = Morphism::compose(m, &acc)?;
    }
    Ok(acc)
}

fn tens(ms: &[&Morphism]) -> R {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = Morphism::tensor(&acc, m)?;
    }
    Ok(acc)
}

fn gen(g: Gen, k: i64) -> R {
    nm(&GenTerm::gen(g, k))
}

/// `n` dots on the upward strand at `pos` of `w`.
fn dots_at(w: &[Ori], pos: usize, n: u32, k: i64) -> R {
    tens(&[&id(&w[..pos], k), &dot_power(n, k), &id(&w[pos + 1..], k)])
}

fn down_dots(n: u32, k: i64) -> R {
    let d = nm(&GenTerm::down_dot(k))?;
    let mut acc = id(&[D], k);
    for _ in 0..n {
        acc = Morphism::compose(&d, &acc)?;
    }
    Ok(acc)
}

/// A bubble as a morphism; fake bubbles by value.
pub fn bubble_morphism(ccw: bool, dots: i64, k: i64) -> R {
    if dots >= 0 {
        nm(&bubble_term(ccw, dots as u32, k))
    } else {
        Ok(Morphism::beta_map(&bubble(ccw, dots, k), k))
    }
}

/// The downward crossing through right cups and caps around a rightward crossing.
pub fn down_crossing_term(k: i64) -> GenTerm {
    let sr = GenTerm::sideways_right(k);
    let mut slices = vec![Slice { left: vec![], gen: Gen::RCup, right: vec![D, D] }];
    for s in &sr.slices {
        slices.push(Slice { left: [vec![D], s.left.clone()].concat(), gen: s.gen, right: [s.right.clone(), vec![D]].concat() });
    }
    slices.push(Slice { left: vec![D, D], gen: Gen::RCap, right: vec![] });
    GenTerm { k, source: vec![D, D], target: vec![D, D], slices }
}

fn check(name: &str, lhs: R, rhs: R) -> (String, bool) {
    let ok = match (lhs, rhs) {
        (Ok(a), Ok(b)) => a.equal(&b).unwrap_or(false),
        _ => false,
    };
    (name.to_string(), ok)
}

fn sum(terms: Vec<Morphism>, source: &[Ori], target: &[Ori], k: i64) -> R {
    let mut acc = Morphism::zero(source, target, k);
    for t in terms {
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

/// Defining relations at charge `k`.
pub fn defining_suite(k: i64) -> Vec<(String, bool)> {
    let mut out = vec![];
    let x = gen(Gen::UpCross, k).unwrap();
    let uu = id(&[U, U], k);
    let x1 = tens(&[&x, &id(&[U], k)]).unwrap();
    let x2 = tens(&[&id(&[U], k), &x]).unwrap();
    out.push(check("crossing squared", comp(&[&x, &x]), Ok(uu.clone())));
    out.push(check("braid", comp(&[&x1, &x2, &x1]), comp(&[&x2, &x1, &x2])));
    let xl = dots_at(&[U, U], 0, 1, k).unwrap();
    let xr = dots_at(&[U, U], 1, 1, k).unwrap();
    out.push(check("dot slide left to right", comp(&[&x, &xl]), comp(&[&xr, &x]).and_then(|m| m.add(&uu))));
    out.push(check("dot slide right to left", comp(&[&x, &xr]), comp(&[&xl, &x]).and_then(|m| m.sub(&uu))));
    let rcup = gen(Gen::RCup, k).unwrap();
    let rcap = gen(Gen::RCap, k).unwrap();
    let up = id(&[U], k);
    let dn = id(&[D], k);
    out.push(check(
        "right zigzag up",
        comp(&[&tens(&[&rcap, &up]).unwrap(), &tens(&[&up, &rcup]).unwrap()]),
        Ok(up.clone()),
    ));
    out.push(check(
        "right zigzag down",
        comp(&[&tens(&[&dn, &rcap]).unwrap(), &tens(&[&rcup, &dn]).unwrap()]),
        Ok(dn.clone()),
    ));
    for a in (1 - k)..=0 {
        let d = a + k - 1;
        let want = if a == 0 { -&SymElem::one() } else { SymElem::zero() };
        out.push(check(&format!("clockwise bubble {} dots", d), bubble_morphism(false, d, k), Ok(Morphism::beta_map(&want, k))));
    }
    for a in (k + 1)..=0 {
        let d = a - k - 1;
        let want = if a == 0 { SymElem::one() } else { SymElem::zero() };
        out.push(check(&format!("counterclockwise bubble {} dots", d), bubble_morphism(true, d, k), Ok(Morphism::beta_map(&want, k))));
    }
    let delta = if k == 0 { up.clone() } else { Morphism::zero(&[U], &[U], k) };
    if k >= 0 {
        out.push(check("right curl", right_curl(0, k), Ok(delta.clone())));
    }
    if k <= 0 {
        out.push(check("left curl", left_curl(0, k), Ok(delta.clone())));
    }
    out.push(check("rightward then leftward", sideways_lhs_down_up(k), sideways_rhs_down_up(k)));
    out.push(check("leftward then rightward", sideways_lhs_up_down(k), sideways_rhs_up_down(k)));
    out
}

/// Loop on the right of an upward strand with `a` dots on the loop.
pub fn right_curl(a: u32, k: i64) -> R {
    let t = GenTerm {
        k,
        source: vec![U],
        target: vec![U],
        slices: vec![
            Slice { left: vec![U], gen: Gen::LCup, right: vec![] },
            Slice { left: vec![], gen: Gen::UpCross, right: vec![D] },
            Slice { left: vec![U], gen: Gen::RCap, right: vec![] },
        ],
    };
    let body = nm(&t)?;
    if a == 0 {
        return Ok(body);
    }
    let lcup = tens(&[&id(&[U], k), &gen(Gen::LCup, k)?])?;
    let lcup_d = comp(&[&dots_at(&[U, U, D], 1, a, k)?, &lcup])?;
    let x = tens(&[&gen(Gen::UpCross, k)?, &id(&[D], k)])?;
    let cap = tens(&[&id(&[U], k), &gen(Gen::RCap, k)?])?;
    comp(&[&cap, &x, &lcup_d])
}

/// Loop on the left of an upward strand with `a` dots on the loop.
pub fn left_curl(a: u32, k: i64) -> R {
    let cup = tens(&[&gen(Gen::RCup, k)?, &id(&[U], k)])?;
    let cup_d = comp(&[&dots_at(&[D, U, U], 1, a, k)?, &cup])?;
    let x = tens(&[&id(&[D], k), &gen(Gen::UpCross, k)?])?;
    let cap = tens(&[&gen(Gen::LCap, k)?, &id(&[U], k)])?;
    comp(&[&cap, &x, &cup_d])
}

fn sideways_lhs_down_up(k: i64) -> R {
    comp(&[&nm(&GenTerm::sideways_right(k))?, &nm(&GenTerm::sideways_left(k))?])
}

fn sideways_lhs_up_down(k: i64) -> R {
    comp(&[&nm(&GenTerm::sideways_left(k))?, &nm(&GenTerm::sideways_right(k))?])
}

/// `RCUP` with `a` dots on its upward leg.
fn rcup_dots(a: u32, k: i64) -> R {
    comp(&[&dots_at(&[D, U], 1, a, k)?, &gen(Gen::RCup, k)?])
}

fn lcup_dots(a: u32, k: i64) -> R {
    comp(&[&dots_at(&[U, D], 0, a, k)?, &gen(Gen::LCup, k)?])
}

fn rcap_dots(a: u32, k: i64) -> R {
    comp(&[&gen(Gen::RCap, k)?, &dots_at(&[U, D], 0, a, k)?])
}

fn lcap_dots(a: u32, k: i64) -> R {
    comp(&[&gen(Gen::LCap, k)?, &dots_at(&[D, U], 1, a, k)?])
}

fn sideways_rhs_down_up(k: i64) -> R {
    let mut terms = vec![id(&[D, U], k)];
    for n in 0..=(-k - 1).max(-1) {
        for a in 0..=n {
            let b = n - a;
            let bub = bubble_morphism(false, -n - 2, k)?;
            let body = comp(&[&rcup_dots(a as u32, k)?, &lcap_dots(b as u32, k)?])?;
            terms.push(tens(&[&bub, &body])?);
        }
    }
    sum(terms, &[D, U], &[D, U], k)
}

fn sideways_rhs_up_down(k: i64) -> R {
    let mut terms = vec![id(&[U, D], k)];
    for n in 0..=(k - 1).max(-1) {
        for a in 0..=n {
            let b = n - a;
            let bub = bubble_morphism(true, -n - 2, k)?;
            let body = comp(&[&lcup_dots(a as u32, k)?, &rcap_dots(b as u32, k)?])?;
            terms.push(tens(&[&body, &bub])?);
        }
    }
    sum(terms, &[U, D], &[U, D], k)
}

/// Downward curl with the loop on the right (`right = true`) or left.
fn down_curl(right: bool, k: i64) -> R {
    let dx = nm(&down_crossing_term(k))?;
    if right {
        let cup = tens(&[&id(&[D], k), &gen(Gen::RCup, k)?])?;
        let x = tens(&[&dx, &id(&[U], k)])?;
        let cap = tens(&[&id(&[D], k), &gen(Gen::LCap, k)?])?;
        comp(&[&cap, &x, &cup])
    } else {
        let cup = tens(&[&gen(Gen::LCup, k)?, &id(&[D], k)])?;
        let x = tens(&[&id(&[U], k), &dx])?;
        let cap = tens(&[&gen(Gen::RCap, k)?, &id(&[D], k)])?;
        comp(&[&cap, &x, &cup])
    }
}

/// Middle downward strand passing left (`left = true`) or right of an upward crossing.
pub fn alt_triangle(left: bool, k: i64) -> R {
    let sr = nm(&GenTerm::sideways_right(k))?;
    let sl = nm(&GenTerm::sideways_left(k))?;
    let x = gen(Gen::UpCross, k)?;
    let u = id(&[U], k);
    let d = id(&[D], k);
    if left {
        comp(&[&tens(&[&sl, &u])?, &tens(&[&d, &x])?, &tens(&[&sr, &u])?])
    } else {
        comp(&[&tens(&[&u, &sr])?, &tens(&[&x, &d])?, &tens(&[&u, &sl])?])
    }
}

fn altbraid_rhs(k: i64) -> R {
    let w = [U, D, U];
    let mut terms = vec![];
    for n in 0..=(k - 2).max(-k - 2).max(-1) {
        for a in 0..=n {
            for b in 0..=(n - a) {
                let c = (n - a - b) as u32;
                let (a, b) = (a as u32, b as u32);
                let b1 = bubble_morphism(true, -n - 3, k)?;
                let body1 = tens(&[&comp(&[&lcup_dots(a, k)?, &rcap_dots(b, k)?])?, &dot_power(c, k)])?;
                terms.push(tens(&[&b1, &body1])?);
                let b2 = bubble_morphism(false, -n - 3, k)?;
                let body2 = tens(&[&dot_power(c, k), &comp(&[&rcup_dots(a, k)?, &lcap_dots(b, k)?])?])?;
                terms.push(tens(&[&body2, &b2])?);
            }
        }
    }
    sum(terms, &w, &w, k)
}

/// Derived relations at charge `k`.
pub fn derived_suite(k: i64) -> Vec<(String, bool)> {
    let mut out = vec![];
    let up = id(&[U], k);
    let dn = id(&[D], k);
    let lcup = gen(Gen::LCup, k).unwrap();
    let lcap = gen(Gen::LCap, k).unwrap();
    out.push(check(
        "left zigzag up",
        comp(&[&tens(&[&up, &lcap]).unwrap(), &tens(&[&lcup, &up]).unwrap()]),
        Ok(up.clone()),
    ));
    out.push(check(
        "left zigzag down",
        comp(&[&tens(&[&lcap, &dn]).unwrap(), &tens(&[&dn, &lcup]).unwrap()]),
        Ok(dn.clone()),
    ));
    let dx = nm(&down_crossing_term(k)).unwrap();
    let dd = id(&[D, D], k);
    out.push(check("down crossing squared", comp(&[&dx, &dx]), Ok(dd.clone())));
    let dx1 = tens(&[&dx, &dn]).unwrap();
    let dx2 = tens(&[&dn, &dx]).unwrap();
    out.push(check("down braid", comp(&[&dx1, &dx2, &dx1]), comp(&[&dx2, &dx1, &dx2])));
    let ddot = down_dots(1, k).unwrap();
    let dl = tens(&[&ddot, &dn]).unwrap();
    let dr = tens(&[&dn, &ddot]).unwrap();
    out.push(check("down dot slide", comp(&[&dr, &dx]), comp(&[&dx, &dl]).and_then(|m| m.add(&dd))));
    let delta = if k == 0 { dn.clone() } else { Morphism::zero(&[D], &[D], k) };
    if k <= 0 {
        out.push(check("down right curl", down_curl(true, k), Ok(delta.clone())));
    }
    if k >= 0 {
        out.push(check("down left curl", down_curl(false, k), Ok(delta.clone())));
    }
    for a in -6..=6 {
        if a < -k {
            let want = if a == -k - 1 { SymElem::one() } else { SymElem::zero() };
            out.push(check(&format!("counterclockwise low bubble {}", a), bubble_morphism(true, a, k), Ok(Morphism::beta_map(&want, k))));
        }
        if a < k {
            let want = if a == k - 1 { -&SymElem::one() } else { SymElem::zero() };
            out.push(check(&format!("clockwise low bubble {}", a), bubble_morphism(false, a, k), Ok(Morphism::beta_map(&want, k))));
        }
        let mut s = SymElem::zero();
        for b in (k - 1)..=(a - 1 + k + 1) {
            s = &s + &(&bubble(false, b, k) * &bubble(true, a - b - 2, k));
        }
        let want = if a == 0 { -&SymElem::one() } else { SymElem::zero() };
        out.push((format!("grassmannian sum {}", a), s == want));
    }
    for j in 0..=5i64 {
        let mut s = SymElem::zero();
        for n1 in (-k - 1)..=(j - 2 - (k - 1)) {
            let n2 = j - 2 - n1;
            s = &s - &(&bubble(true, n1, k) * &bubble(false, n2, k));
        }
        let want = if j == 0 { SymElem::one() } else { SymElem::zero() };
        out.push((format!("generating series coefficient {}", j), s == want));
    }
    for a in 0..=3u32 {
        let mut terms = vec![];
        for b in 0..=(a as i64 + k).max(-1) {
            let bub = bubble_morphism(true, a as i64 - b - 1, k).unwrap();
            terms.push(tens(&[&bub, &dot_power(b as u32, k)]).unwrap());
        }
        out.push(check(&format!("left curl {} dots", a), left_curl(a, k), sum(terms, &[U], &[U], k)));
        let mut terms = vec![];
        for b in 0..=(a as i64 - k).max(-1) {
            let bub = bubble_morphism(false, a as i64 - b - 1, k).unwrap();
            terms.push(tens(&[&dot_power(b as u32, k), &bub]).unwrap().scale(&q(-1)));
        }
        out.push(check(&format!("right curl {} dots", a), right_curl(a, k), sum(terms, &[U], &[U], k)));
    }
    out.push(check(
        "alternating braid",
        alt_triangle(true, k).and_then(|l| l.sub(&alt_triangle(false, k)?)),
        altbraid_rhs(k),
    ));
    for a in -2..=3i64 {
        let b = bubble_morphism(true, a, k).unwrap();
        let mut terms = vec![tens(&[&b, &up]).unwrap()];
        for n in 0..=(a + k - 1).max(-1) {
            let bb = bubble_morphism(true, a - n - 2, k).unwrap();
            let t = tens(&[&bb, &dot_power(n as u32, k)]).unwrap();
            terms.push(t.scale(&q(-(n + 1))));
        }
        out.push(check(&format!("counterclockwise bubble slide {}", a), tens(&[&up, &b]), sum(terms, &[U], &[U], k)));
        let b = bubble_morphism(false, a, k).unwrap();
        let mut terms = vec![tens(&[&up, &b]).unwrap()];
        for n in 0..=(a - k - 1).max(-1) {
            let bb = bubble_morphism(false, a - n - 2, k).unwrap();
            let t = tens(&[&dot_power(n as u32, k), &bb]).unwrap();
            terms.push(t.scale(&q(-(n + 1))));
        }
        out.push(check(&format!("clockwise bubble slide {}", a), tens(&[&b, &up]), sum(terms, &[U], &[U], k)));
    }
    out
}

/// `x^a π` with `|a| ≤ max_deg`.
pub fn ah_basis(n: usize, max_deg: u32) -> Vec<AHElem> {
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|e| (0..=max_deg).map(move |v| [e.clone(), vec![v]].concat())).collect();
    }
    exps.retain(|e| e.iter().sum::<u32>() <= max_deg);
    let mut out = vec![];
    for e in &exps {
        for p in all_perms(n) {
            out.push(AHElem::basis(e.clone(), p));
        }
    }
    out
}

/// `ı(g)∘ı(b) = ı(gb)` for generators `g` and basis elements `b` with `|b| < max_deg`.
pub fn check_ah_hom(n: usize, max_deg: u32, k: i64, up: bool) -> Result<bool, Error> {
    let emb = |a: &AHElem| if up { ah_embed_up(a, k) } else { ah_embed_down(a, k) };
    let mut gens: Vec<AHElem> = (1..=n).map(|j| AHElem::x(n, j)).collect();
    gens.extend((1..n).map(|i| AHElem::s(n, i)));
    for b in ah_basis(n, max_deg.saturating_sub(1)) {
        let ib = emb(&b)?;
        for g in &gens {
            let lhs = Morphism::compose(&emb(g)?, &ib)?;
            if !lhs.equal(&emb(&g.mul(&b)?)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Distinct basis elements of `AH_n` have distinct images.
pub fn check_ah_injective(n: usize, max_deg: u32, k: i64) -> Result<bool, Error> {
    let mut seen = std::collections::BTreeSet::new();
    for b in ah_basis(n, max_deg) {
        let m = ah_embed_up(&b, k)?;
        if m.is_zero() || !seen.insert(m.to_json().to_string()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `β(e_n)` as a diagram, fake bubbles by value.
fn beta_e(n: usize, k: i64) -> R {
    bubble_morphism(true, n as i64 - k - 1, k)
}

fn beta_h(n: usize, k: i64) -> R {
    let m = bubble_morphism(false, n as i64 + k - 1, k)?;
    Ok(if n % 2 == 0 { m.scale(&q(-1)) } else { m })
}

/// `β(e_i)∘β(h_j) = β(e_i h_j)` and `β(e_i)∘β(e_j) = β(e_i e_j)` for `i + j ≤ max_deg`, and `β⁻¹β(s_λ) = s_λ`.
pub fn check_beta(max_deg: usize, k: i64) -> Result<bool, Error> {
    for i in 0..=max_deg {
        for j in 0..=(max_deg - i) {
            let eh = Morphism::compose(&beta_e(i, k)?, &beta_h(j, k)?)?.beta_inverse()?;
            if eh != &SymElem::elementary(i) * &SymElem::complete(j) {
                return Ok(false);
            }
            let ee = Morphism::compose(&beta_e(i, k)?, &beta_e(j, k)?)?.beta_inverse()?;
            if ee != &SymElem::elementary(i) * &SymElem::elementary(j) {
                return Ok(false);
            }
        }
    }
    for lam in Partition::up_to_size(max_deg) {
        let s = SymElem::schur(lam);
        if super::lift::renormalize(&Morphism::beta_map(&s, k))?.beta_inverse()? != s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the degree-`d` span of products of genuine dotted bubbles in `End(𝟙)`, for each `d ≤ max_deg`.
pub fn end_unit_ranks(max_deg: usize, k: i64) -> Result<Vec<usize>, Error> {
    // Genuine bubbles by degree: (ccw, dots).
    let mut gens: Vec<(usize, bool, u32)> = vec![];
    for n in 1..=max_deg as i64 {
        if n - k - 1 >= 0 {
            gens.push((n as usize, true, (n - k - 1) as u32));
        }
        if n + k - 1 >= 0 {
            gens.push((n as usize, false, (n + k - 1) as u32));
        }
    }
    let mut out = vec![];
    for d in 0..=max_deg {
        let basis = Partition::all_of_size(d);
        let mut rows = vec![];
        let mut stack: Vec<(usize, usize, GenTerm)> = vec![(0, 0, GenTerm::id(&[], k))];
        while let Some((deg, from, t)) = stack.pop() {
            if deg == d {
                let f = normalize(&t)?.beta_inverse()?;
                rows.push(basis.iter().map(|l| f.coeff(l)).collect::<Vec<Q>>());
                continue;
            }
            for (gi, &(n, ccw, dots)) in gens.iter().enumerate().skip(from) {
                if deg + n <= d {
                    let t2 = GenTerm::tensor(&t, &bubble_term(ccw, dots, k))?;
                    stack.push((deg + n, gi, t2));
                }
            }
        }
        out.push(crate::linalg::rank(&rows));
    }
    Ok(out)
}

/// Outcomes of the engine health checks on `count` seeded random terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Health {
    pub idempotent: bool,
    pub functorial: bool,
    pub star_involution: bool,
    pub omega_involution: bool,
}

pub fn engine_health(count: usize, seed: u64, max_slices: usize) -> Result<Health, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Health { idempotent: true, functorial: true, star_involution: true, omega_involution: true };
    for i in 0..count {
        let k = [-1, 0, 1][i % 3];
        let g = random_term(&mut rng, k, max_slices);
        let m = normalize(&g)?;
        h.idempotent &= super::lift::renormalize(&m)? == m;
        h.star_involution &= m.star()?.star()? == m;
        h.omega_involution &= m.omega()?.omega()? == m;
        let f = random_term_on(&mut rng, k, &g.target, max_slices);
        let whole = normalize(&GenTerm::compose(&f, &g)?)?;
        h.functorial &= whole == Morphism::compose(&normalize(&f)?, &m)?;
    }
    Ok(h)
}
