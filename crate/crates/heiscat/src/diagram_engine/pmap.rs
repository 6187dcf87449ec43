//! Planar maps for string diagrams in a rectangle.
//!
//! The boundary of the rectangle is collapsed to one vertex `inf`. Its rotation
//! lists the top endpoints left to right, then a degree-one `hair` marking the
//! right-hand side, then the bottom endpoints right to left. Every other vertex
//! is a crossing with four darts in counterclockwise order; a strand runs from
//! a dart to the opposite one. Each edge carries its dots on its start dart.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use super::Ori;
use crate::Q;

pub(crate) const DEAD: usize = usize::MAX;

/// An endpoint on the top or bottom edge, indexed left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub top: bool,
    pub idx: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct PMap {
    pub dv: Vec<usize>,
    pub tw: Vec<usize>,
    pub fwd: Vec<bool>,
    pub dots: Vec<u32>,
    pub rot: Vec<Vec<usize>>,
    pub inf: usize,
    pub hair_v: usize,
    pub hair: usize,
    pub bot: Vec<usize>,
    pub top: Vec<usize>,
    pub src: Vec<Ori>,
    pub tgt: Vec<Ori>,
}

/// A strand traced through the map.
#[derive(Clone, Debug)]
pub(crate) struct Str {
    /// Start darts of the edges in order.
    pub edges: Vec<usize>,
    /// Crossings in order. For an arc, edge `i` ends at `verts[i]`; for a loop, edge `i` starts there.
    pub verts: Vec<usize>,
    pub closed: bool,
    /// Darts at `inf` for an arc.
    pub start: usize,
    pub end: usize,
}

impl Str {
    /// Start darts of the edges from pass `i1` to pass `i2` going forward.
    pub fn seg(&self, i1: usize, i2: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.verts.len();
        if self.closed {
            if i1 == i2 {
                return None;
            }
            let mut e = Vec::new();
            let mut mid = Vec::new();
            let mut i = i1;
            loop {
                e.push(self.edges[i]);
                i = (i + 1) % n;
                if i == i2 {
                    break;
                }
                mid.push(self.verts[i]);
            }
            Some((e, mid))
        } else {
            if i1 >= i2 {
                return None;
            }
            Some((self.edges[i1 + 1..=i2].to_vec(), self.verts[i1 + 1..i2].to_vec()))
        }
    }
}

impl PMap {
    /// A map with only the boundary vertex and the hair.
    pub fn boundary(src: &[Ori], tgt: &[Ori]) -> PMap {
        let mut m = PMap {
            dv: vec![],
            tw: vec![],
            fwd: vec![],
            dots: vec![],
            rot: vec![],
            inf: 0,
            hair_v: 1,
            hair: 0,
            bot: vec![],
            top: vec![],
            src: src.to_vec(),
            tgt: tgt.to_vec(),
        };
        m.rot.push(vec![]);
        m.rot.push(vec![]);
        let h = m.add_dart(0, false);
        let h2 = m.add_dart(1, false);
        m.link(h, h2);
        m.rot[1] = vec![h2];
        m.hair = h;
        for &o in src {
            let d = m.add_dart(0, o == Ori::Up);
            m.bot.push(d);
        }
        for &o in tgt {
            let d = m.add_dart(0, o == Ori::Down);
            m.top.push(d);
        }
        m.rebuild_inf();
        m
    }

    pub fn rebuild_inf(&mut self) {
        let mut r = self.top.clone();
        r.push(self.hair);
        r.extend(self.bot.iter().rev());
        self.rot[self.inf] = r;
    }

    pub fn add_dart(&mut self, v: usize, fwd: bool) -> usize {
        self.dv.push(v);
        self.tw.push(DEAD);
        self.fwd.push(fwd);
        self.dots.push(0);
        self.dv.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rot.push(vec![]);
        self.rot.len() - 1
    }

    pub fn link(&mut self, a: usize, b: usize) {
        self.tw[a] = b;
        self.tw[b] = a;
    }

    /// Adds a crossing whose darts are created with the given directions, in ccw order.
    pub fn add_crossing(&mut self, fwd: [bool; 4]) -> [usize; 4] {
        let v = self.add_vertex();
        let ds = fwd.map(|f| self.add_dart(v, f));
        self.rot[v] = ds.to_vec();
        ds
    }

    pub fn is_crossing(&self, v: usize) -> bool {
        v != self.inf && v != self.hair_v && self.rot[v].len() == 4
    }

    pub fn alive(&self, d: usize) -> bool {
        self.dv[d] != DEAD
    }

    fn pos(&self, d: usize) -> usize {
        self.rot[self.dv[d]].iter().position(|&x| x == d).expect("dart not in rotation")
    }

    pub fn ccw_next(&self, d: usize) -> usize {
        let r = &self.rot[self.dv[d]];
        r[(self.pos(d) + 1) % r.len()]
    }

    pub fn cw_next(&self, d: usize) -> usize {
        let r = &self.rot[self.dv[d]];
        r[(self.pos(d) + r.len() - 1) % r.len()]
    }

    /// Opposite dart at a crossing.
    pub fn opp(&self, d: usize) -> usize {
        let r = &self.rot[self.dv[d]];
        r[(self.pos(d) + 2) % 4]
    }

    /// Next dart along the face on the left.
    pub fn fnext(&self, d: usize) -> usize {
        self.cw_next(self.tw[d])
    }

    pub fn face_cycle(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut c = self.fnext(d);
        while c != d {
            out.push(c);
            c = self.fnext(c);
        }
        out
    }

    /// Face label of every live dart.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        let mut f = vec![DEAD; self.dv.len()];
        let mut n = 0;
        for d in 0..self.dv.len() {
            if !self.alive(d) || f[d] != DEAD {
                continue;
            }
            for c in self.face_cycle(d) {
                f[c] = n;
            }
            n += 1;
        }
        (f, n)
    }

    pub fn edge_start(&self, d: usize) -> usize {
        if self.fwd[d] {
            d
        } else {
            self.tw[d]
        }
    }

    pub fn is_hair(&self, d: usize) -> bool {
        self.dv[d] == self.hair_v || self.dv[self.tw[d]] == self.hair_v
    }

    pub fn end_of(&self, d: usize) -> End {
        if let Some(i) = self.bot.iter().position(|&x| x == d) {
            End { top: false, idx: i }
        } else {
            let i = self.top.iter().position(|&x| x == d).expect("not a boundary dart");
            End { top: true, idx: i }
        }
    }

    pub fn end_dart(&self, e: End) -> usize {
        if e.top {
            self.top[e.idx]
        } else {
            self.bot[e.idx]
        }
    }

    /// Vertices reachable from `v`.
    pub fn component(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut q = VecDeque::from([v]);
        seen.insert(v);
        while let Some(u) = q.pop_front() {
            for &d in &self.rot[u] {
                let w = self.dv[self.tw[d]];
                if seen.insert(w) {
                    q.push_back(w);
                }
            }
        }
        seen
    }

    pub fn live_crossings(&self) -> Vec<usize> {
        (0..self.rot.len()).filter(|&v| self.is_crossing(v)).collect()
    }

    pub fn kill_vertex(&mut self, v: usize) {
        for d in std::mem::take(&mut self.rot[v]) {
            self.dv[d] = DEAD;
        }
    }

    pub fn strings(&self) -> Vec<Str> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let starts: Vec<usize> = self.bot.iter().chain(self.top.iter()).copied().filter(|&d| self.fwd[d]).collect();
        for s in starts {
            let mut edges = vec![s];
            let mut verts = vec![];
            let mut e = s;
            let end;
            loop {
                let t = self.tw[e];
                let v = self.dv[t];
                if v == self.inf {
                    end = t;
                    break;
                }
                verts.push(v);
                e = self.opp(t);
                seen.insert(e);
                edges.push(e);
            }
            out.push(Str { edges, verts, closed: false, start: s, end });
        }
        for v in self.live_crossings() {
            for &d in &self.rot[v] {
                if !self.fwd[d] || seen.contains(&d) {
                    continue;
                }
                let mut edges = vec![];
                let mut verts = vec![];
                let mut e = d;
                loop {
                    seen.insert(e);
                    edges.push(e);
                    verts.push(self.dv[e]);
                    e = self.opp(self.tw[e]);
                    if e == d {
                        break;
                    }
                }
                out.push(Str { edges, verts, closed: true, start: DEAD, end: DEAD });
            }
        }
        out
    }

    /// Number of live crossings.
    pub fn crossing_count(&self) -> usize {
        self.live_crossings().len()
    }

    /// Identity on a word.
    pub fn identity(w: &[Ori]) -> PMap {
        let mut m = PMap::boundary(w, w);
        for i in 0..w.len() {
            let (b, t) = (m.bot[i], m.top[i]);
            m.link(b, t);
        }
        m
    }

    /// Copies the vertices in `verts` (a union of components) into a map with no boundary.
    pub fn copy_part(&self, verts: &BTreeSet<usize>) -> (PMap, HashMap<usize, usize>) {
        let mut m = PMap::boundary(&[], &[]);
        m.kill_vertex(m.hair_v);
        m.kill_vertex(m.inf);
        m.inf = DEAD;
        m.hair_v = DEAD;
        m.hair = DEAD;
        let mut map = HashMap::new();
        for &v in verts {
            let nv = m.add_vertex();
            let ds: Vec<usize> = self.rot[v]
                .iter()
                .map(|&d| {
                    let nd = m.add_dart(nv, self.fwd[d]);
                    m.dots[nd] = self.dots[d];
                    map.insert(d, nd);
                    nd
                })
                .collect();
            m.rot[nv] = ds;
        }
        for (&d, &nd) in &map {
            m.tw[nd] = map[&self.tw[d]];
        }
        (m, map)
    }

    /// Turns a boundaryless map into a map from a two-point word to nothing, cutting the
    /// edge of `outer` so that its face becomes the outside. Returns whether the outer
    /// face was on the left of the cut edge.
    pub fn cut_open(&mut self, outer: usize) -> bool {
        let s = self.edge_start(outer);
        let t = self.tw[s];
        let left = self.fwd[outer];
        let inf = self.add_vertex();
        let hv = self.add_vertex();
        let h = self.add_dart(inf, false);
        let h2 = self.add_dart(hv, false);
        self.link(h, h2);
        self.rot[hv] = vec![h2];
        self.inf = inf;
        self.hair_v = hv;
        self.hair = h;
        let (src, b0, b1) = if left {
            let b0 = self.add_dart(inf, true);
            let b1 = self.add_dart(inf, false);
            self.link(b0, t);
            self.link(b1, s);
            (vec![Ori::Up, Ori::Down], b0, b1)
        } else {
            let b0 = self.add_dart(inf, false);
            let b1 = self.add_dart(inf, true);
            self.link(b0, s);
            self.link(b1, t);
            (vec![Ori::Down, Ori::Up], b0, b1)
        };
        self.src = src;
        self.tgt = vec![];
        self.bot = vec![b0, b1];
        self.top = vec![];
        self.rebuild_inf();
        left
    }

    /// Mirror image in a horizontal line.
    pub fn reflect(&self) -> PMap {
        let mut m = self.clone();
        for r in m.rot.iter_mut() {
            r.reverse();
        }
        std::mem::swap(&mut m.bot, &mut m.top);
        m.src = self.tgt.iter().map(|o| o.flip()).collect();
        m.tgt = self.src.iter().map(|o| o.flip()).collect();
        m.rebuild_inf();
        m
    }

    /// Rotation by a half turn. Returns the map and a dart whose left face held the
    /// old right-hand region.
    pub fn rotate(&self) -> (PMap, usize) {
        let mut m = self.clone();
        let old = m.cw_next(m.hair);
        let mut nb: Vec<usize> = self.top.clone();
        nb.reverse();
        let mut nt: Vec<usize> = self.bot.clone();
        nt.reverse();
        m.bot = nb;
        m.top = nt;
        m.src = self.tgt.iter().rev().map(|o| o.flip()).collect();
        m.tgt = self.src.iter().rev().map(|o| o.flip()).collect();
        m.rebuild_inf();
        let old = if old == m.hair { m.hair } else { old };
        (m, old)
    }
}

/// The terminus of a strand is its top endpoint, the leftmost one when both are on
/// top, and otherwise its rightmost bottom endpoint. Returns true when it is the out-end.
pub(crate) fn terminus_is_out(a: End, b: End) -> bool {
    match (a.top, b.top) {
        (false, true) => true,
        (true, false) => false,
        (true, true) => b.idx < a.idx,
        (false, false) => b.idx > a.idx,
    }
}

/// Straight-chord model of a crossingless-matching-free strand configuration.
pub(crate) struct Chords {
    /// Per strand (in-end): the in-ends of the strands it crosses, in order.
    pub order: BTreeMap<End, Vec<End>>,
    /// Per crossing (a, b) with a < b: sign of the cross product of directions.
    pub sign: BTreeMap<(End, End), bool>,
}

fn ccw_index(e: End, p: usize, q: usize) -> usize {
    if e.top {
        p + (q - 1 - e.idx)
    } else {
        e.idx
    }
}

fn cross(a: (Q, Q), b: (Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub(crate) fn chords(p: usize, qn: usize, pairs: &[(End, End)]) -> Chords {
    let bases = [2i64, 3, 5, 7, 11, 13];
    for &base in &bases {
        if let Some(c) = try_chords(p, qn, pairs, base) {
            return c;
        }
    }
    panic!("no generic chord position found")
}

fn try_chords(p: usize, qn: usize, pairs: &[(End, End)], base: i64) -> Option<Chords> {
    let pt = |e: End| {
        let t = Q::from_integer(num_bigint::BigInt::from(base).pow(ccw_index(e, p, qn) as u32));
        (t.clone(), &t * &t)
    };
    let segs: Vec<((Q, Q), (Q, Q))> = pairs.iter().map(|&(a, b)| (pt(a), pt(b))).collect();
    let mut params: BTreeMap<End, Vec<(Q, End)>> = pairs.iter().map(|&(a, _)| (a, vec![])).collect();
    let mut sign = BTreeMap::new();
    let mut points: Vec<(Q, Q)> = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (p1, p2) = &segs[i];
            let (p3, p4) = &segs[j];
            let d1 = (&p2.0 - &p1.0, &p2.1 - &p1.1);
            let d2 = (&p4.0 - &p3.0, &p4.1 - &p3.1);
            let den = cross(d1.clone(), d2.clone());
            if den.is_zero() {
                continue;
            }
            let w = (&p3.0 - &p1.0, &p3.1 - &p1.1);
            let lam = cross(w.clone(), d2.clone()) / &den;
            let mu = cross(w, d1.clone()) / &den;
            let zero = Q::zero();
            let one = Q::from_integer(1.into());
            if lam <= zero || lam >= one || mu <= zero || mu >= one {
                continue;
            }
            let x = (&p1.0 + &lam * &d1.0, &p1.1 + &lam * &d1.1);
            if points.contains(&x) {
                return None;
            }
            points.push(x);
            let (a, b) = (pairs[i].0, pairs[j].0);
            params.get_mut(&a).unwrap().push((lam, b));
            params.get_mut(&b).unwrap().push((mu, a));
            sign.insert((a.min(b), b.max(a)), if a < b { den.is_positive() } else { den.is_negative() });
        }
    }
    let order = params
        .into_iter()
        .map(|(a, mut v)| {
            v.sort();
            (a, v.into_iter().map(|x| x.1).collect())
        })
        .collect();
    Some(Chords { order, sign })
}

/// A basis diagram as a map: straight chords, dots on the terminal edges.
pub(crate) fn basis_map(src: &[Ori], tgt: &[Ori], strands: &[(End, End, u32)]) -> PMap {
    let mut m = PMap::boundary(src, tgt);
    let pairs: Vec<(End, End)> = strands.iter().map(|s| (s.0, s.1)).collect();
    let ch = chords(src.len(), tgt.len(), &pairs);
    // darts [a_in, a_out, b_in, b_out] per crossing
    let mut cr: BTreeMap<(End, End), [usize; 4]> = BTreeMap::new();
    for (&(a, b), &pos) in &ch.sign {
        // ccw order: positive [a_out, b_out, a_in, b_in], else [a_out, b_in, a_in, b_out]
        let ds = if pos {
            m.add_crossing([true, true, false, false])
        } else {
            m.add_crossing([true, false, false, true])
        };
        let x = if pos { [ds[2], ds[0], ds[3], ds[1]] } else { [ds[2], ds[0], ds[1], ds[3]] };
        cr.insert((a, b), x);
    }
    for &(a, b, d) in strands {
        let mut prev = m.end_dart(a);
        let mut first = prev;
        let mut last = prev;
        for (n, &c) in ch.order[&a].iter().enumerate() {
            let key = (a.min(c), c.max(a));
            let x = cr[&key];
            let (din, dout) = if a < c { (x[0], x[1]) } else { (x[2], x[3]) };
            m.link(prev, din);
            if n == 0 {
                first = prev;
            }
            last = dout;
            prev = dout;
        }
        let e = m.end_dart(b);
        m.link(prev, e);
        if ch.order[&a].is_empty() {
            first = m.end_dart(a);
            last = first;
        }
        if terminus_is_out(a, b) {
            m.dots[last] += d;
        } else {
            m.dots[first] += d;
        }
    }
    m
}
