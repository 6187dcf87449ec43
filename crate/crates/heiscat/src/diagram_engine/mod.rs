//! Morphisms of the degenerate Heisenberg category: generator terms, normal forms,
//! bubbles, and the symmetries `*` and `Ω`.
//!
//! Diagrams are planar maps (see [`pmap`]); normalization rewrites them with local
//! moves until every strand is a straight chord with its dots at the terminus and all
//! closed pieces have become symmetric functions in the right-hand region.

mod parse;
pub mod lift;
pub mod relations;
pub(crate) mod pmap;
pub(crate) mod straighten;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::daha::AHElem;
use crate::group_algebra::reduced_word;
use crate::symfunc::SymElem;
use crate::{q, Error, Q};

pub use parse::{morphism_expr, parse_morphism, term_expr};
pub use pmap::End;
use pmap::{basis_map, PMap};
pub use straighten::{bubble_value, phi};
use straighten::{glue_terms, normalize_terms, tensor_terms, transfer, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ori {
    Up,
    Down,
}

impl Ori {
    pub fn flip(self) -> Ori {
        match self {
            Ori::Up => Ori::Down,
            Ori::Down => Ori::Up,
        }
    }
}

pub type ObjWord = Vec<Ori>;

/// Parses `uud`, or `1` for the unit object.
pub fn parse_word(s: &str) -> Result<ObjWord, Error> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(vec![]);
    }
    s.chars()
        .map(|c| match c {
            'u' | 'U' => Ok(Ori::Up),
            'd' | 'D' => Ok(Ori::Down),
            _ => Err(Error::Parse(format!("bad word letter {:?}", c))),
        })
        .collect()
}

pub fn word_string(w: &[Ori]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|o| if *o == Ori::Up { 'u' } else { 'd' }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Dot,
    UpCross,
    RCup,
    RCap,
    LCup,
    LCap,
}

impl Gen {
    pub fn source(self) -> ObjWord {
        use Ori::*;
        match self {
            Gen::Dot => vec![Up],
            Gen::UpCross => vec![Up, Up],
            Gen::RCup | Gen::LCup => vec![],
            Gen::RCap => vec![Up, Down],
            Gen::LCap => vec![Down, Up],
        }
    }

    pub fn target(self) -> ObjWord {
        use Ori::*;
        match self {
            Gen::Dot => vec![Up],
            Gen::UpCross => vec![Up, Up],
            Gen::RCup => vec![Down, Up],
            Gen::LCup => vec![Up, Down],
            Gen::RCap | Gen::LCap => vec![],
        }
    }

    fn map(self) -> PMap {
        let mut m = PMap::boundary(&self.source(), &self.target());
        match self {
            Gen::Dot => {
                let (b, t) = (m.bot[0], m.top[0]);
                m.link(b, t);
                m.dots[b] = 1;
            }
            Gen::UpCross => {
                let [bl, br, tr, tl] = m.add_crossing([false, false, true, true]);
                let (b0, b1, t0, t1) = (m.bot[0], m.bot[1], m.top[0], m.top[1]);
                m.link(b0, bl);
                m.link(b1, br);
                m.link(tr, t1);
                m.link(tl, t0);
            }
            Gen::RCup => {
                let (a, b) = (m.top[0], m.top[1]);
                m.link(a, b);
            }
            Gen::LCup => {
                let (a, b) = (m.top[1], m.top[0]);
                m.link(a, b);
            }
            Gen::RCap => {
                let (a, b) = (m.bot[0], m.bot[1]);
                m.link(a, b);
            }
            Gen::LCap => {
                let (a, b) = (m.bot[1], m.bot[0]);
                m.link(a, b);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub left: ObjWord,
    pub gen: Gen,
    pub right: ObjWord,
}

impl Slice {
    pub fn source(&self) -> ObjWord {
        [self.left.clone(), self.gen.source(), self.right.clone()].concat()
    }

    pub fn target(&self) -> ObjWord {
        [self.left.clone(), self.gen.target(), self.right.clone()].concat()
    }

    fn map(&self) -> PMap {
        let (m, _) = straighten::juxtapose(&PMap::identity(&self.left), &self.gen.map());
        straighten::juxtapose(&m, &PMap::identity(&self.right)).0
    }
}

/// A composite of generators, slices listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTerm {
    pub k: i64,
    pub source: ObjWord,
    pub target: ObjWord,
    pub slices: Vec<Slice>,
}

impl GenTerm {
    fn single(g: Gen, k: i64) -> GenTerm {
        GenTerm { k, source: g.source(), target: g.target(), slices: vec![Slice { left: vec![], gen: g, right: vec![] }] }
    }

    pub fn dot(k: i64) -> GenTerm {
        GenTerm::single(Gen::Dot, k)
    }

    pub fn up_crossing(k: i64) -> GenTerm {
        GenTerm::single(Gen::UpCross, k)
    }

    pub fn rcup(k: i64) -> GenTerm {
        GenTerm::single(Gen::RCup, k)
    }

    pub fn rcap(k: i64) -> GenTerm {
        GenTerm::single(Gen::RCap, k)
    }

    pub fn lcup(k: i64) -> GenTerm {
        GenTerm::single(Gen::LCup, k)
    }

    pub fn lcap(k: i64) -> GenTerm {
        GenTerm::single(Gen::LCap, k)
    }

    pub fn id(word: &[Ori], k: i64) -> GenTerm {
        GenTerm { k, source: word.to_vec(), target: word.to_vec(), slices: vec![] }
    }

    pub fn gen(g: Gen, k: i64) -> GenTerm {
        GenTerm::single(g, k)
    }

    /// `f ∘ g`.
    pub fn compose(f: &GenTerm, g: &GenTerm) -> Result<GenTerm, Error> {
        if f.k != g.k {
            return Err(Error::Charge(f.k, g.k));
        }
        if g.target != f.source {
            return Err(Error::Mismatch(format!("{} then {}", word_string(&g.target), word_string(&f.source))));
        }
        let mut slices = g.slices.clone();
        slices.extend(f.slices.iter().cloned());
        Ok(GenTerm { k: f.k, source: g.source.clone(), target: f.target.clone(), slices })
    }

    /// `f ⊗ g` with `f` on the left, drawn as `(f ⊗ id)(id ⊗ g)`.
    pub fn tensor(f: &GenTerm, g: &GenTerm) -> Result<GenTerm, Error> {
        if f.k != g.k {
            return Err(Error::Charge(f.k, g.k));
        }
        let mut slices: Vec<Slice> = g
            .slices
            .iter()
            .map(|s| Slice { left: [f.source.clone(), s.left.clone()].concat(), gen: s.gen, right: s.right.clone() })
            .collect();
        slices.extend(f.slices.iter().map(|s| Slice {
            left: s.left.clone(),
            gen: s.gen,
            right: [s.right.clone(), g.target.clone()].concat(),
        }));
        Ok(GenTerm {
            k: f.k,
            source: [f.source.clone(), g.source.clone()].concat(),
            target: [f.target.clone(), g.target.clone()].concat(),
            slices,
        })
    }

    /// Padded single generator.
    pub fn padded(left: &[Ori], g: Gen, right: &[Ori], k: i64) -> GenTerm {
        let s = Slice { left: left.to_vec(), gen: g, right: right.to_vec() };
        GenTerm { k, source: s.source(), target: s.target(), slices: vec![s] }
    }

    fn from_slices(k: i64, source: ObjWord, slices: Vec<Slice>) -> GenTerm {
        let target = slices.last().map(|s| s.target()).unwrap_or_else(|| source.clone());
        GenTerm { k, source, target, slices }
    }

    /// The rightward crossing `↑↓ → ↓↑`.
    pub fn sideways_right(k: i64) -> GenTerm {
        use Ori::*;
        GenTerm::from_slices(
            k,
            vec![Up, Down],
            vec![
                Slice { left: vec![], gen: Gen::RCup, right: vec![Up, Down] },
                Slice { left: vec![Down], gen: Gen::UpCross, right: vec![Down] },
                Slice { left: vec![Down, Up], gen: Gen::RCap, right: vec![] },
            ],
        )
    }

    /// The leftward crossing `↓↑ → ↑↓`.
    pub fn sideways_left(k: i64) -> GenTerm {
        use Ori::*;
        GenTerm::from_slices(
            k,
            vec![Down, Up],
            vec![
                Slice { left: vec![Down, Up], gen: Gen::LCup, right: vec![] },
                Slice { left: vec![Down], gen: Gen::UpCross, right: vec![Down] },
                Slice { left: vec![], gen: Gen::LCap, right: vec![Up, Down] },
            ],
        )
    }

    /// The downward dot, the rotation of the upward dot through right cups and caps.
    pub fn down_dot(k: i64) -> GenTerm {
        use Ori::*;
        GenTerm::from_slices(
            k,
            vec![Down],
            vec![
                Slice { left: vec![], gen: Gen::RCup, right: vec![Down] },
                Slice { left: vec![Down], gen: Gen::Dot, right: vec![Down] },
                Slice { left: vec![Down], gen: Gen::RCap, right: vec![] },
            ],
        )
    }

    pub fn check(&self) -> Result<(), Error> {
        let mut cur = self.source.clone();
        for s in &self.slices {
            if s.source() != cur {
                return Err(Error::Mismatch("slice boundaries do not compose".into()));
            }
            cur = s.target();
        }
        if cur != self.target {
            return Err(Error::Mismatch("last slice does not reach the target".into()));
        }
        Ok(())
    }
}

/// One basis strand: in-end, out-end, dots at the terminus.
pub type Strand = (End, End, u32);

/// A morphism in normal form: basis diagrams with symmetric-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub k: i64,
    pub source: ObjWord,
    pub target: ObjWord,
    terms: BTreeMap<Vec<Strand>, SymElem>,
}

impl Morphism {
    pub fn zero(source: &[Ori], target: &[Ori], k: i64) -> Morphism {
        Morphism { k, source: source.to_vec(), target: target.to_vec(), terms: BTreeMap::new() }
    }

    pub fn identity(word: &[Ori], k: i64) -> Morphism {
        let strands = (0..word.len())
            .map(|i| {
                let b = End { top: false, idx: i };
                let t = End { top: true, idx: i };
                if word[i] == Ori::Up {
                    (b, t, 0)
                } else {
                    (t, b, 0)
                }
            })
            .collect();
        let mut m = Morphism::zero(word, word, k);
        m.terms.insert(sorted(strands), SymElem::one());
        m
    }

    /// A basis element with coefficient; strands are reordered as needed.
    pub fn basis(source: &[Ori], target: &[Ori], strands: Vec<Strand>, coeff: SymElem, k: i64) -> Morphism {
        let mut m = Morphism::zero(source, target, k);
        if !coeff.is_zero() {
            m.terms.insert(sorted(strands), coeff);
        }
        m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Strand>, SymElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn same_shape(&self, o: &Morphism) -> Result<(), Error> {
        if self.k != o.k {
            return Err(Error::Charge(self.k, o.k));
        }
        if self.source != o.source || self.target != o.target {
            return Err(Error::Mismatch(format!(
                "{}→{} vs {}→{}",
                word_string(&self.source),
                word_string(&self.target),
                word_string(&o.source),
                word_string(&o.target)
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism, Error> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (key, c) in &o.terms {
            out.add_term(key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism, Error> {
        self.add(&o.scale(&q(-1)))
    }

    fn add_term(&mut self, key: Vec<Strand>, c: SymElem) {
        let e = self.terms.entry(key.clone()).or_insert_with(SymElem::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Q) -> Morphism {
        let mut out = Morphism::zero(&self.source, &self.target, self.k);
        if c.is_zero() {
            return out;
        }
        for (key, f) in &self.terms {
            out.terms.insert(key.clone(), f.scale(c));
        }
        out
    }

    /// Multiplies by `f` placed in the right-hand region.
    pub fn scale_sym(&self, f: &SymElem) -> Morphism {
        let mut out = Morphism::zero(&self.source, &self.target, self.k);
        for (key, g) in &self.terms {
            out.add_term(key.clone(), g * f);
        }
        out
    }

    fn as_terms(&self) -> Vec<Term> {
        self.terms.iter().map(|(key, c)| (basis_map(&self.source, &self.target, key), c.clone())).collect()
    }

    fn from_terms(k: i64, source: &[Ori], target: &[Ori], terms: Vec<Term>) -> Result<Morphism, Error> {
        let raw = normalize_terms(k, source, target, terms)?;
        let mut m = Morphism::zero(source, target, k);
        for (key, c) in raw {
            m.add_term(key, c);
        }
        Ok(m)
    }

    /// `f ∘ g`.
    pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
        if f.k != g.k {
            return Err(Error::Charge(f.k, g.k));
        }
        if g.target != f.source {
            return Err(Error::Mismatch(format!("{} then {}", word_string(&g.target), word_string(&f.source))));
        }
        let (ft, gt) = (f.as_terms(), g.as_terms());
        let mut all = vec![];
        for a in &gt {
            for b in &ft {
                all.extend(glue_terms(f.k, a, b)?);
            }
        }
        Morphism::from_terms(f.k, &g.source, &f.target, all)
    }

    /// `f ⊗ g` with `f` on the left.
    pub fn tensor(f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
        if f.k != g.k {
            return Err(Error::Charge(f.k, g.k));
        }
        let mut all = vec![];
        for a in f.as_terms() {
            for b in g.as_terms() {
                all.extend(tensor_terms(&a, &b));
            }
        }
        let s = [f.source.clone(), g.source.clone()].concat();
        let t = [f.target.clone(), g.target.clone()].concat();
        Morphism::from_terms(f.k, &s, &t, all)
    }

    pub fn equal(&self, o: &Morphism) -> Result<bool, Error> {
        self.same_shape(o)?;
        Ok(self.terms == o.terms)
    }

    /// Rotation through a half turn.
    pub fn star(&self) -> Result<Morphism, Error> {
        let src: ObjWord = self.target.iter().rev().map(|o| o.flip()).collect();
        let tgt: ObjWord = self.source.iter().rev().map(|o| o.flip()).collect();
        let mut all = vec![];
        for (m, c) in self.as_terms() {
            let (r, old) = m.rotate();
            let h = r.hair;
            all.extend(transfer(r, SymElem::one(), old, h, c));
        }
        Morphism::from_terms(self.k, &src, &tgt, all)
    }

    /// Reflection in a horizontal line with the sign `(-1)^{crossings + leftward cups and caps}`, at charge `-k`.
    pub fn omega(&self) -> Result<Morphism, Error> {
        let src: ObjWord = self.target.iter().map(|o| o.flip()).collect();
        let tgt: ObjWord = self.source.iter().map(|o| o.flip()).collect();
        let mut all = vec![];
        for (key, c) in &self.terms {
            let m = basis_map(&self.source, &self.target, key);
            let left = key.iter().filter(|(a, b, _)| a.top == b.top && a.idx > b.idx).count();
            let sign = if (m.crossing_count() + left) % 2 == 0 { 1 } else { -1 };
            all.push((m.reflect(), omega_sym(c).scale(&q(sign))));
        }
        Morphism::from_terms(-self.k, &src, &tgt, all)
    }

    /// The coefficient of the empty diagram in `End(𝟙)`.
    pub fn beta_inverse(&self) -> Result<SymElem, Error> {
        if !self.source.is_empty() || !self.target.is_empty() {
            return Err(Error::Domain("not an endomorphism of the unit object".into()));
        }
        Ok(self.terms.get(&vec![]).cloned().unwrap_or_else(SymElem::zero))
    }

    pub fn beta_map(f: &SymElem, k: i64) -> Morphism {
        Morphism::basis(&[], &[], vec![], f.clone(), k)
    }

    pub fn to_json(&self) -> Value {
        let side = |e: &End| if e.top { "t" } else { "b" };
        Value::Array(
            self.terms
                .iter()
                .map(|(key, c)| {
                    json!({
                        "matching": key.iter().map(|(a, b, _)| json!([side(a), a.idx + 1, side(b), b.idx + 1])).collect::<Vec<_>>(),
                        "dots": key.iter().map(|s| s.2).collect::<Vec<_>>(),
                        "sym": c.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(source: &[Ori], target: &[Ori], k: i64, v: &Value) -> Result<Morphism, Error> {
        let bad = || Error::Parse("bad morphism json".into());
        let mut m = Morphism::zero(source, target, k);
        for t in v.as_array().ok_or_else(bad)? {
            let dots = t["dots"].as_array().ok_or_else(bad)?;
            let mut strands = vec![];
            for (i, p) in t["matching"].as_array().ok_or_else(bad)?.iter().enumerate() {
                let end = |s: &Value, n: &Value| -> Result<End, Error> {
                    let top = s.as_str().ok_or_else(bad)? == "t";
                    let idx = n.as_u64().ok_or_else(bad)? as usize;
                    if idx == 0 {
                        return Err(bad());
                    }
                    Ok(End { top, idx: idx - 1 })
                };
                let d = dots.get(i).and_then(|x| x.as_u64()).ok_or_else(bad)? as u32;
                strands.push((end(&p[0], &p[1])?, end(&p[2], &p[3])?, d));
            }
            m.add_term(sorted(strands), SymElem::from_json(&t["sym"])?);
        }
        Ok(m)
    }
}

fn sorted(mut s: Vec<Strand>) -> Vec<Strand> {
    s.sort();
    s
}

/// `f ↦ (-1)^{deg} ω(f)` on homogeneous parts.
pub fn omega_sym(f: &SymElem) -> SymElem {
    let mut out = SymElem::zero();
    for (lam, c) in f.coeffs() {
        let s = if lam.size() % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(lam.conjugate(), s);
    }
    out
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let e = |x: &End| format!("{}{}", if x.top { "t" } else { "b" }, x.idx + 1);
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s: Vec<String> = key
                .iter()
                .map(|(a, b, d)| if *d > 0 { format!("{}→{}^{}", e(a), e(b), d) } else { format!("{}→{}", e(a), e(b)) })
                .collect();
            write!(f, "({})[{}]", c, s.join(","))?;
        }
        Ok(())
    }
}

/// Normal form of a generator term.
pub fn normalize(t: &GenTerm) -> Result<Morphism, Error> {
    t.check()?;
    let mut m = Morphism::identity(&t.source, t.k);
    for s in &t.slices {
        let terms = m.as_terms();
        let sm: Term = (s.map(), SymElem::one());
        let mut all = vec![];
        for a in &terms {
            all.extend(glue_terms(t.k, a, &sm)?);
        }
        m = Morphism::from_terms(t.k, &t.source, &s.target(), all)?;
    }
    Ok(m)
}

pub fn equal(f: &GenTerm, g: &GenTerm) -> Result<bool, Error> {
    if f.k != g.k {
        return Err(Error::Charge(f.k, g.k));
    }
    normalize(f)?.equal(&normalize(g)?)
}

/// Value of the bubble with `dots` dots; fake bubbles included.
pub fn bubble(ccw: bool, dots: i64, k: i64) -> SymElem {
    bubble_value(ccw, dots, k)
}

/// The bubble with `dots` dots as a generator term; `dots ≥ 0`.
pub fn bubble_term(ccw: bool, dots: u32, k: i64) -> GenTerm {
    use Ori::Down;
    let mut slices = vec![];
    if ccw {
        slices.push(Slice { left: vec![], gen: Gen::RCup, right: vec![] });
        for _ in 0..dots {
            slices.push(Slice { left: vec![Down], gen: Gen::Dot, right: vec![] });
        }
        slices.push(Slice { left: vec![], gen: Gen::LCap, right: vec![] });
    } else {
        slices.push(Slice { left: vec![], gen: Gen::LCup, right: vec![] });
        for _ in 0..dots {
            slices.push(Slice { left: vec![], gen: Gen::Dot, right: vec![Down] });
        }
        slices.push(Slice { left: vec![], gen: Gen::RCap, right: vec![] });
    }
    GenTerm::from_slices(k, vec![], slices)
}

pub fn dot_power(n: u32, k: i64) -> Morphism {
    let mut m = Morphism::identity(&[Ori::Up], k);
    let key = m.terms.keys().next().unwrap().clone();
    let c = m.terms.remove(&key).unwrap();
    m.terms.insert(vec![(key[0].0, key[0].1, n)], c);
    m
}

fn embed_generators(n: usize, k: i64, up: bool) -> Result<(Vec<Morphism>, Vec<Morphism>), Error> {
    let o = if up { Ori::Up } else { Ori::Down };
    let base = |pos: usize, g: &Morphism| -> Result<Morphism, Error> {
        let l = Morphism::identity(&vec![o; pos], k);
        let r = Morphism::identity(&vec![o; n - pos - g.source.len()], k);
        Morphism::tensor(&Morphism::tensor(&l, g)?, &r)
    };
    let up_x = normalize(&GenTerm::up_crossing(k))?;
    let (dotm, cross) = if up {
        (dot_power(1, k), up_x)
    } else {
        (dot_power(1, k).star()?, up_x.star()?.scale(&q(-1)))
    };
    let mut xs = vec![];
    for j in 1..=n {
        xs.push(base(n - j, &dotm)?);
    }
    let mut ss = vec![];
    for i in 1..n {
        ss.push(base(n - i - 1, &cross)?);
    }
    Ok((xs, ss))
}

fn ah_embed(a: &AHElem, k: i64, up: bool) -> Result<Morphism, Error> {
    let n = a.n;
    let (xs, ss) = embed_generators(n, k, up)?;
    let o = if up { Ori::Up } else { Ori::Down };
    let idn = Morphism::identity(&vec![o; n], k);
    let mut out = Morphism::zero(&vec![o; n], &vec![o; n], k);
    for ((ex, p), c) in a.coeffs() {
        let mut m = idn.clone();
        for (j, &e) in ex.iter().enumerate() {
            for _ in 0..e {
                m = Morphism::compose(&m, &xs[j])?;
            }
        }
        for i in reduced_word(p) {
            m = Morphism::compose(&m, &ss[i - 1])?;
        }
        out = out.add(&m.scale(c))?;
    }
    Ok(out)
}

/// `x_j ↦` dot on string `j`, `s_i ↦` crossing of strings `i, i+1`, strings numbered right to left.
pub fn ah_embed_up(a: &AHElem, k: i64) -> Result<Morphism, Error> {
    ah_embed(a, k, true)
}

/// `x_j ↦` downward dot, `-s_i ↦` downward crossing.
pub fn ah_embed_down(a: &AHElem, k: i64) -> Result<Morphism, Error> {
    ah_embed(a, k, false)
}

/// The downward crossing as a morphism.
pub fn down_crossing(k: i64) -> Result<Morphism, Error> {
    normalize(&GenTerm::up_crossing(k))?.star()
}

#[cfg(test)]
mod tests;
