//! Generator terms realizing basis elements, and seeded random terms.

use rand::Rng;

use super::relations::down_crossing_term;
use super::{bubble_term, normalize, Gen, GenTerm, Morphism, ObjWord, Ori, Slice, Strand};
use crate::partitions::Partition;
use crate::symfunc::SymElem;
use crate::{Error, Q};

use Ori::{Down as D, Up as U};

fn pad(left: &[Ori], t: &GenTerm, right: &[Ori]) -> GenTerm {
    let slices = t
        .slices
        .iter()
        .map(|s| Slice { left: [left, &s.left[..]].concat(), gen: s.gen, right: [&s.right[..], right].concat() })
        .collect();
    GenTerm {
        k: t.k,
        source: [left, &t.source[..], right].concat(),
        target: [left, &t.target[..], right].concat(),
        slices,
    }
}

fn swap_term(a: Ori, b: Ori, k: i64) -> GenTerm {
    match (a, b) {
        (U, U) => GenTerm::up_crossing(k),
        (U, D) => GenTerm::sideways_right(k),
        (D, U) => GenTerm::sideways_left(k),
        (D, D) => down_crossing_term(k),
    }
}

/// Appends `t` at position `i` of the current top word.
fn push(acc: &mut GenTerm, i: usize, t: &GenTerm) {
    let cur = acc.target.clone();
    let p = pad(&cur[..i], t, &cur[i + t.source.len()..]);
    acc.slices.extend(p.slices);
    acc.target = p.target;
}

/// Writes `f` as a combination of products of `e_n` (`elementary`) or `h_n`.
pub fn multiplicative_expansion(f: &SymElem, elementary: bool) -> Vec<(Vec<usize>, Q)> {
    let mut rest = f.clone();
    let mut out = vec![];
    while !rest.is_zero() {
        let keys: Vec<&Partition> = rest.coeffs().keys().collect();
        let lam = if elementary { (*keys.iter().max().unwrap()).clone() } else { (*keys.iter().min().unwrap()).clone() };
        let c = rest.coeff(&lam);
        let parts: Vec<usize> = if elementary { lam.conjugate().parts().to_vec() } else { lam.parts().to_vec() };
        let mut prod = SymElem::one();
        for &n in &parts {
            let g = if elementary { SymElem::elementary(n) } else { SymElem::complete(n) };
            prod = &prod * &g;
        }
        rest.add_scaled(&prod, &-c.clone());
        out.push((parts, c));
    }
    out
}

/// Bubble products realizing `f` in the unit object: `e_n` as counterclockwise bubbles when `k ≤ 0`,
/// `h_n` as clockwise bubbles otherwise.
pub fn sym_terms(f: &SymElem, k: i64) -> Vec<(Q, GenTerm)> {
    let elementary = k <= 0;
    multiplicative_expansion(f, elementary)
        .into_iter()
        .map(|(parts, c)| {
            let mut t = GenTerm::id(&[], k);
            let mut c = c;
            for n in parts {
                let n = n as i64;
                let b = if elementary {
                    bubble_term(true, (n - k - 1) as u32, k)
                } else {
                    if (n - 1) % 2 != 0 {
                        c = -c;
                    }
                    bubble_term(false, (n + k - 1) as u32, k)
                };
                t = GenTerm::tensor(&t, &b).unwrap();
            }
            (c, t)
        })
        .collect()
}

/// A generator term whose normal form is the basis element `strands` with coefficient 1.
pub fn lift_basis(source: &[Ori], target: &[Ori], strands: &[Strand], k: i64) -> GenTerm {
    let partner = |e: super::End| -> super::End {
        strands.iter().find_map(|(a, b, _)| if *a == e { Some(*b) } else if *b == e { Some(*a) } else { None }).unwrap()
    };
    // Bottom half: close bottom pairs and sort through strands by their top index.
    let mut bot = GenTerm::id(source, k);
    let mut lab: Vec<super::End> = (0..source.len()).map(|i| super::End { top: false, idx: i }).collect();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..lab.len() {
            let p = partner(lab[i]);
            if !p.top {
                let j = lab.iter().position(|e| *e == p).unwrap();
                if j > i && best.map_or(true, |(a, b)| j - i < b - a) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, mut j)) = best else { break };
        while j > i + 1 {
            let w = bot.target.clone();
            push(&mut bot, j - 1, &swap_term(w[j - 1], w[j], k));
            lab.swap(j - 1, j);
            j -= 1;
        }
        let w = bot.target.clone();
        let cap = if w[i] == U { Gen::RCap } else { Gen::LCap };
        push(&mut bot, i, &GenTerm::gen(cap, k));
        lab.drain(i..=i + 1);
    }
    let key = |e: &super::End| partner(*e).idx;
    for n in 0..lab.len() {
        for i in 0..lab.len().saturating_sub(1 + n) {
            if key(&lab[i]) > key(&lab[i + 1]) {
                let w = bot.target.clone();
                push(&mut bot, i, &swap_term(w[i], w[i + 1], k));
                lab.swap(i, i + 1);
            }
        }
    }
    // Top half, built from the top down: open top pairs, recorded in reverse.
    let mut tlab: Vec<super::End> = (0..target.len()).map(|i| super::End { top: true, idx: i }).collect();
    let mut word: ObjWord = target.to_vec();
    let mut rev: Vec<Slice> = vec![];
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..tlab.len() {
            let p = partner(tlab[i]);
            if p.top {
                let j = tlab.iter().position(|e| *e == p).unwrap();
                if j > i && best.map_or(true, |(a, b)| j - i < b - a) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, mut j)) = best else { break };
        while j > i + 1 {
            let t = swap_term(word[j], word[j - 1], k);
            let p = pad(&word[..j - 1], &t, &word[j + 1..]);
            rev.extend(p.slices.into_iter().rev());
            word.swap(j - 1, j);
            tlab.swap(j - 1, j);
            j -= 1;
        }
        let cup = if word[i] == D { Gen::RCup } else { Gen::LCup };
        rev.push(Slice { left: word[..i].to_vec(), gen: cup, right: word[i + 2..].to_vec() });
        word.drain(i..=i + 1);
        tlab.drain(i..=i + 1);
    }
    let mut out = bot;
    out.slices.extend(rev.into_iter().rev());
    out.target = target.to_vec();
    // Dots at the termini.
    for (a, b, d) in strands {
        if *d == 0 {
            continue;
        }
        let term = if super::pmap::terminus_is_out(*a, *b) { *b } else { *a };
        let w = if term.top { target } else { source };
        let dt = if w[term.idx] == U { GenTerm::dot(k) } else { GenTerm::down_dot(k) };
        let one = pad(&w[..term.idx], &dt, &w[term.idx + 1..]);
        for _ in 0..*d {
            out = if term.top { GenTerm::compose(&one, &out).unwrap() } else { GenTerm::compose(&out, &one).unwrap() };
        }
    }
    out
}

/// Generator terms, with rational weights, whose normal forms sum to `m`.
pub fn lift(m: &Morphism) -> Vec<(Q, GenTerm)> {
    let mut out = vec![];
    for (strands, f) in m.terms() {
        let body = lift_basis(&m.source, &m.target, strands, m.k);
        for (c, b) in sym_terms(f, m.k) {
            out.push((c, GenTerm::tensor(&body, &b).unwrap()));
        }
    }
    out
}

/// Normalizes each lifted term and sums.
pub fn renormalize(m: &Morphism) -> Result<Morphism, Error> {
    let mut acc = Morphism::zero(&m.source, &m.target, m.k);
    for (c, t) in lift(m) {
        acc = acc.add(&normalize(&t)?.scale(&c))?;
    }
    Ok(acc)
}

/// A random generator term with at most `max_slices` slices and width at most 4.
pub fn random_term<R: Rng>(rng: &mut R, k: i64, max_slices: usize) -> GenTerm {
    let n = rng.gen_range(0..=3);
    let source: ObjWord = (0..n).map(|_| if rng.gen_bool(0.5) { U } else { D }).collect();
    random_term_on(rng, k, &source, max_slices)
}

/// A random generator term with the given source.
pub fn random_term_on<R: Rng>(rng: &mut R, k: i64, source: &[Ori], max_slices: usize) -> GenTerm {
    let mut t = GenTerm::id(source, k);
    let len = rng.gen_range(0..=max_slices);
    while t.slices.len() < len {
        let w = t.target.clone();
        let mut opts: Vec<(usize, Gen)> = vec![];
        for i in 0..w.len() {
            if w[i] == U {
                opts.push((i, Gen::Dot));
            }
            if i + 1 < w.len() {
                match (w[i], w[i + 1]) {
                    (U, U) => opts.push((i, Gen::UpCross)),
                    (U, D) => opts.push((i, Gen::RCap)),
                    (D, U) => opts.push((i, Gen::LCap)),
                    _ => {}
                }
            }
        }
        if w.len() <= 2 {
            for i in 0..=w.len() {
                opts.push((i, Gen::RCup));
                opts.push((i, Gen::LCup));
            }
        }
        if opts.is_empty() {
            break;
        }
        let (i, g) = opts[rng.gen_range(0..opts.len())];
        let s = Slice { left: w[..i].to_vec(), gen: g, right: w[i + g.source().len()..].to_vec() };
        t.target = s.target();
        t.slices.push(s);
    }
    t
}
