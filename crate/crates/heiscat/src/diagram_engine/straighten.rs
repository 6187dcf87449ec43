//! Rewriting planar maps into the basis of straight-chord diagrams with dots at termini.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};

use super::pmap::{chords, terminus_is_out, End, PMap, Str, DEAD};
use super::Ori;
use crate::partitions::Partition;
use crate::symfunc::SymElem;
use crate::{binom, q, Error, Q};

pub(crate) type Term = (PMap, SymElem);
pub(crate) type Key = Vec<(End, End, u32)>;

const STEP_LIMIT: usize = 3_000_000;

/// Value of a bubble carrying `d` dots.
pub fn bubble_value(ccw: bool, d: i64, k: i64) -> SymElem {
    if ccw {
        let n = d + k + 1;
        if n < 0 {
            SymElem::zero()
        } else {
            SymElem::elementary(n as usize)
        }
    } else {
        let n = d - k + 1;
        if n < 0 {
            SymElem::zero()
        } else {
            let s = if (n - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            SymElem::complete(n as usize).scale(&q(s))
        }
    }
}

type PPoly = BTreeMap<u32, BTreeMap<Partition, Q>>;

thread_local! {
    static PHI_CACHE: RefCell<HashMap<(Partition, i64), PPoly>> = RefCell::new(HashMap::new());
}

/// Coefficients of `(-1)^m [(x+1)^m + (x-1)^m - 2x^m]` by power of `x`.
fn shift_poly(m: usize) -> Vec<(u32, Q)> {
    let sg = if m % 2 == 0 { 1 } else { -1 };
    (1..=m / 2).map(|j| ((m - 2 * j) as u32, q(sg * 2 * binom(m, 2 * j) as i64))).collect()
}

fn phi_power(lam: &Partition, sign: i64) -> PPoly {
    if let Some(v) = PHI_CACHE.with(|c| c.borrow().get(&(lam.clone(), sign)).cloned()) {
        return v;
    }
    let mut acc: PPoly = BTreeMap::from([(0, BTreeMap::from([(Partition::empty(), Q::one())]))]);
    for &m in lam.parts() {
        let sp = shift_poly(m);
        let mut next: PPoly = BTreeMap::new();
        for (&i, row) in &acc {
            for (mu, c) in row {
                let mut parts = mu.parts().to_vec();
                parts.push(m);
                *next.entry(i).or_default().entry(Partition::new(parts)).or_insert_with(Q::zero) += c;
                for (j, a) in &sp {
                    *next.entry(i + j).or_default().entry(mu.clone()).or_insert_with(Q::zero) += c * a * q(sign);
                }
            }
        }
        acc = next;
    }
    for row in acc.values_mut() {
        row.retain(|_, c| !c.is_zero());
    }
    acc.retain(|_, r| !r.is_empty());
    PHI_CACHE.with(|c| c.borrow_mut().insert((lam.clone(), sign), acc.clone()));
    acc
}

/// Moves symmetric-function content across a strand carrying new dots `x`.
/// `sign = 1` moves it from the right side of the strand to the left.
pub fn phi(f: &SymElem, sign: i64) -> Vec<(u32, SymElem)> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![(0, f.clone())];
    }
    let mut out: BTreeMap<u32, BTreeMap<Partition, Q>> = BTreeMap::new();
    for (lam, c) in f.to_power_basis() {
        for (i, row) in phi_power(&lam, sign) {
            let e = out.entry(i).or_default();
            for (mu, a) in row {
                *e.entry(mu).or_insert_with(Q::zero) += &c * a;
            }
        }
    }
    out.into_iter()
        .map(|(i, row)| (i, SymElem::from_power_basis(&row)))
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

/// Moves `f` from the face left of dart `from` to the face left of dart `to`.
pub(crate) fn transfer(pm: PMap, coeff: SymElem, from: usize, to: usize, f: SymElem) -> Vec<Term> {
    if f.is_zero() {
        return vec![];
    }
    let (face, nf) = pm.faces();
    let (a, b) = (face[from], face[to]);
    if a == b || f.degree() == Some(0) {
        return vec![(pm, &coeff * &f)];
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    seen[a] = true;
    let mut qu = VecDeque::from([a]);
    let mut adj: Vec<Vec<usize>> = vec![vec![]; nf];
    for d in 0..pm.dv.len() {
        if pm.alive(d) && !pm.is_hair(d) {
            adj[face[d]].push(d);
        }
    }
    while let Some(x) = qu.pop_front() {
        for &d in &adj[x] {
            let y = face[pm.tw[d]];
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, d));
                qu.push_back(y);
            }
        }
    }
    let mut path = vec![];
    let mut y = b;
    while y != a {
        let (x, d) = prev[y].expect("faces not connected");
        path.push(d);
        y = x;
    }
    path.reverse();
    let mut items = vec![(pm, f)];
    for d in path {
        // crossing from face_left(d) to the other side
        let s = if pm_fwd(&items[0].0, d) { d } else { items[0].0.tw[d] };
        let sign = if s == d { -1 } else { 1 };
        let mut next = vec![];
        for (m, g) in items {
            for (j, h) in phi(&g, sign) {
                let mut m2 = m.clone();
                m2.dots[s] += j;
                next.push((m2, h));
            }
        }
        items = next;
    }
    items.into_iter().map(|(m, g)| (m, &coeff * &g)).collect()
}

fn pm_fwd(pm: &PMap, d: usize) -> bool {
    pm.fwd[d]
}

/// Where a port ended up after a replacement.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Chain {
    Edge(usize, usize),
    Loop(usize),
}

pub(crate) struct Repl {
    pub out_port: Vec<bool>,
    pub chain: Vec<Chain>,
    pub loops: Vec<u32>,
}

impl Repl {
    fn outward(&self, i: usize) -> Option<usize> {
        match self.chain[i] {
            Chain::Edge(s, t) => Some(if self.out_port[i] { s } else { t }),
            Chain::Loop(_) => None,
        }
    }

    fn inward(&self, i: usize) -> Option<usize> {
        match self.chain[i] {
            Chain::Edge(s, t) => Some(if self.out_port[i] { t } else { s }),
            Chain::Loop(_) => None,
        }
    }
}

/// Ports of a face region, counterclockwise around it.
pub(crate) fn region_ports(pm: &PMap, cycle: &[usize]) -> Vec<usize> {
    let mut out = vec![];
    for &d in cycle {
        let t = pm.tw[d];
        let nx = pm.fnext(d);
        let mut c = pm.ccw_next(t);
        while c != nx {
            out.push(c);
            c = pm.ccw_next(c);
        }
    }
    out
}

/// Removes `verts` and joins ports by `arcs` (in-port, out-port, extra dots).
pub(crate) fn replace(pm: &mut PMap, verts: &BTreeSet<usize>, ports: &[usize], arcs: &[(usize, usize, u32)]) -> Repl {
    let n = ports.len();
    let idx: HashMap<usize, usize> = ports.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let from_in: HashMap<usize, (usize, u32)> = arcs.iter().map(|&(i, o, e)| (i, (o, e))).collect();
    let out_port: Vec<bool> = ports.iter().map(|&d| pm.fwd[d]).collect();
    let mut chain = vec![Chain::Loop(usize::MAX); n];
    let mut done = vec![false; n];
    let mut loops = vec![];
    let mut links = vec![];
    for &(i, _, _) in arcs {
        let x = pm.tw[ports[i]];
        if idx.contains_key(&x) {
            continue;
        }
        let mut total = pm.dots[x];
        let mut members = vec![];
        let mut cur = i;
        let y;
        loop {
            done[cur] = true;
            members.push(cur);
            let (o, e) = from_in[&cur];
            total += e + pm.dots[ports[o]];
            members.push(o);
            let nx = pm.tw[ports[o]];
            match idx.get(&nx) {
                Some(&j) => cur = j,
                None => {
                    y = nx;
                    break;
                }
            }
        }
        links.push((x, y, total));
        for m in members {
            chain[m] = Chain::Edge(x, y);
        }
    }
    for &(i, _, _) in arcs {
        if done[i] {
            continue;
        }
        let id = loops.len();
        let mut total = 0;
        let mut cur = i;
        loop {
            done[cur] = true;
            chain[cur] = Chain::Loop(id);
            let (o, e) = from_in[&cur];
            chain[o] = Chain::Loop(id);
            total += e + pm.dots[ports[o]];
            cur = idx[&pm.tw[ports[o]]];
            if cur == i {
                break;
            }
        }
        loops.push(total);
    }
    for v in verts {
        pm.kill_vertex(*v);
    }
    for (x, y, t) in links {
        pm.link(x, y);
        pm.dots[x] = t;
    }
    Repl { out_port, chain, loops }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Owner {
    Main,
    Comp(usize),
    Loop(usize),
}

/// Evaluates a component not attached to the boundary, with content to add in its faces.
fn island_value(k: i64, pm: &PMap, verts: &BTreeSet<usize>, outer: usize, pending: &[(usize, SymElem)]) -> Result<SymElem, Error> {
    let (sub, map) = pm.copy_part(verts);
    let outer2 = map[&outer];
    let mut items = vec![(sub, SymElem::one())];
    for (d, f) in pending {
        let mut next = vec![];
        for (m, c) in items {
            next.extend(transfer(m, c, map[d], outer2, f.clone()));
        }
        items = next;
    }
    let mut total = SymElem::zero();
    let mut terms = vec![];
    let mut left = true;
    for (mut m, c) in items {
        left = m.cut_open(outer2);
        terms.push((m, c));
    }
    if terms.is_empty() {
        return Ok(total);
    }
    let (src, tgt) = (terms[0].0.src.clone(), vec![]);
    for (key, c) in normalize_terms(k, &src, &tgt, terms)? {
        let d = key[0].2 as i64;
        total = &total + &(&c * &bubble_value(!left, d, k));
    }
    Ok(total)
}

fn loop_value(k: i64, ccw: bool, dots: u32, inside: &SymElem) -> SymElem {
    let sign = if ccw { -1 } else { 1 };
    let mut out = SymElem::zero();
    for (j, g) in phi(inside, sign) {
        out = &out + &(&g * &bubble_value(ccw, (dots + j) as i64, k));
    }
    out
}

fn place_all(pm: PMap, coeff: SymElem, contents: Vec<(usize, SymElem)>) -> Vec<Term> {
    let target = pm.hair;
    let mut items = vec![(pm, coeff)];
    for (d, f) in contents {
        let mut next = vec![];
        for (m, c) in items {
            next.extend(transfer(m, c, d, target, f.clone()));
        }
        items = next;
    }
    items
}

/// Finishes a local replacement: evaluates detached pieces and moves content to the right.
fn finish(k: i64, mut pm: PMap, coeff: SymElem, r: &Repl, contents: Vec<(usize, SymElem)>) -> Result<Vec<Term>, Error> {
    let n = r.chain.len();
    let main = pm.component(pm.inf);
    let mut comps: Vec<BTreeSet<usize>> = vec![];
    let mut owner = vec![Owner::Main; n];
    for i in 0..n {
        owner[i] = match r.chain[i] {
            Chain::Loop(l) => Owner::Loop(l),
            Chain::Edge(s, _) => {
                let v = pm.dv[s];
                if main.contains(&v) {
                    Owner::Main
                } else if let Some(c) = comps.iter().position(|c| c.contains(&v)) {
                    Owner::Comp(c)
                } else {
                    comps.push(pm.component(v));
                    Owner::Comp(comps.len() - 1)
                }
            }
        };
    }
    let mut placed: Vec<(usize, SymElem)> = vec![];
    let islands: Vec<Owner> = (0..comps.len()).map(Owner::Comp).chain((0..r.loops.len()).map(Owner::Loop)).collect();
    for isl in islands {
        let mut found = None;
        for i in 0..n {
            let j = (i + 1) % n;
            if owner[i] == isl && owner[j] == Owner::Main {
                found = Some((i, true, r.inward(j).unwrap()));
                break;
            }
            if owner[i] == Owner::Main && owner[j] == isl {
                found = Some((j, false, r.outward(i).unwrap()));
                break;
            }
        }
        let (p, at_left, main_dart) = found.ok_or_else(|| Error::Verify("detached piece not adjacent".into()))?;
        let val = match isl {
            Owner::Comp(c) => {
                let outer = if at_left { r.outward(p) } else { r.inward(p) }.unwrap();
                island_value(k, &pm, &comps[c], outer, &[])?
            }
            Owner::Loop(l) => {
                // outer side on the left of travel means clockwise
                let along = if at_left { r.out_port[p] } else { !r.out_port[p] };
                loop_value(k, !along, r.loops[l], &SymElem::one())
            }
            Owner::Main => unreachable!(),
        };
        placed.push((main_dart, val));
    }
    for c in &comps {
        for &v in c {
            pm.kill_vertex(v);
        }
    }
    for (i, f) in contents {
        let j = (i + 1) % n;
        let d = if owner[i] == Owner::Main {
            r.outward(i).unwrap()
        } else if owner[j] == Owner::Main {
            r.inward(j).unwrap()
        } else {
            return Err(Error::Verify("content region not on the main piece".into()));
        };
        placed.push((d, f));
    }
    if placed.iter().any(|(_, f)| f.is_zero()) {
        return Ok(vec![]);
    }
    Ok(place_all(pm, coeff, placed))
}

fn follow(pm: &PMap, port_set: &HashMap<usize, usize>, p: usize) -> usize {
    let mut cur = pm.opp(p);
    while !port_set.contains_key(&cur) {
        cur = pm.opp(pm.tw[cur]);
    }
    port_set[&cur]
}

/// Splits off one dot of edge `s` and slides it through the next crossing.
fn slide(k: i64, pm: &PMap, coeff: &SymElem, s: usize, forward: bool) -> Result<Vec<Term>, Error> {
    let v = if forward { pm.dv[pm.tw[s]] } else { pm.dv[s] };
    let s_in = if forward { pm.tw[s] } else { pm.opp(s) };
    let r = &pm.rot[v];
    let i = r.iter().position(|&x| x == s_in).unwrap();
    let eps = if !pm.fwd[r[(i + 1) % 4]] { 1 } else { -1 };
    let mut main = pm.clone();
    main.dots[s] -= 1;
    if forward {
        let o = main.opp(s_in);
        main.dots[o] += 1;
    } else {
        let e = main.tw[s_in];
        main.dots[e] += 1;
    }
    let mut corr = pm.clone();
    corr.dots[s] -= 1;
    let c = if forward { eps } else { -eps };
    let mut out = vec![(main, coeff.clone())];
    out.extend(smooth(k, corr, coeff.scale(&q(c)), v)?);
    Ok(out)
}

fn smooth(k: i64, mut pm: PMap, coeff: SymElem, v: usize) -> Result<Vec<Term>, Error> {
    let ports = pm.rot[v].clone();
    let mut arcs = vec![];
    for i in 0..4 {
        if !pm.fwd[ports[i]] {
            let j = if pm.fwd[ports[(i + 1) % 4]] { (i + 1) % 4 } else { (i + 3) % 4 };
            arcs.push((i, j, 0));
        }
    }
    let r = replace(&mut pm, &BTreeSet::from([v]), &ports, &arcs);
    finish(k, pm, coeff, &r, vec![])
}

fn curl(k: i64, pm: &PMap, coeff: &SymElem, lo: usize) -> Result<Vec<Term>, Error> {
    let ccw = pm.fwd[lo];
    let a = pm.dots[pm.edge_start(lo)] as i64;
    let v = pm.dv[lo];
    let ports = region_ports(pm, &[lo]);
    let (pi, po) = if pm.fwd[ports[0]] { (1, 0) } else { (0, 1) };
    let mut out = vec![];
    let bmax = if ccw { a + k } else { a - k };
    for b in 0..=bmax.max(-1) {
        let mut m = pm.clone();
        let r = replace(&mut m, &BTreeSet::from([v]), &ports, &[(pi, po, b as u32)]);
        let (val, side) = if ccw {
            (bubble_value(true, a - b - 1, k), po)
        } else {
            (-&bubble_value(false, a - b - 1, k), pi)
        };
        out.extend(finish(k, m, coeff.clone(), &r, vec![(side, val)])?);
    }
    Ok(out)
}

fn pairings(pm: &PMap, ports: &[usize]) -> (Vec<(usize, usize, u32)>, Vec<(usize, usize, u32)>) {
    let n = ports.len();
    let next = (0..n).filter(|&i| !pm.fwd[ports[i]]).map(|i| (i, (i + 1) % n, 0)).collect();
    let prev = (0..n).filter(|&i| !pm.fwd[ports[i]]).map(|i| (i, (i + n - 1) % n, 0)).collect();
    (next, prev)
}

/// Distributes `total` dots over the arcs in every way.
fn dot_spreads(arcs: usize, total: u32) -> Vec<Vec<u32>> {
    if arcs == 1 {
        return vec![vec![total]];
    }
    let mut out = vec![];
    for a in 0..=total {
        for mut rest in dot_spreads(arcs - 1, total - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Terms `Σ bubble(ccw, -n-extra) · [pairing with n dots spread]` with the bubble in the central region.
fn corrections(
    k: i64,
    pm: &PMap,
    coeff: &SymElem,
    verts: &BTreeSet<usize>,
    ports: &[usize],
    arcs: &[(usize, usize, u32)],
    next_type: bool,
    ccw: bool,
    extra: i64,
) -> Result<Vec<Term>, Error> {
    let n = ports.len();
    let central = (0..n).find(|&i| pm.fwd[ports[i]] == next_type).unwrap();
    let bound = if ccw { k - extra + 1 } else { -k - extra + 1 };
    let mut out = vec![];
    for tot in 0..=bound.max(-1) {
        let val = bubble_value(ccw, -tot - extra, k);
        if val.is_zero() {
            continue;
        }
        for spread in dot_spreads(arcs.len(), tot as u32) {
            let mut m = pm.clone();
            let a2: Vec<(usize, usize, u32)> = arcs.iter().zip(&spread).map(|(&(i, o, _), &d)| (i, o, d)).collect();
            let r = replace(&mut m, verts, ports, &a2);
            out.extend(finish(k, m, coeff.clone(), &r, vec![(central, val.clone())])?);
        }
    }
    Ok(out)
}

fn bigon(k: i64, pm: &PMap, coeff: &SymElem, cycle: &[usize]) -> Result<Vec<Term>, Error> {
    let verts: BTreeSet<usize> = cycle.iter().map(|&d| pm.dv[d]).collect();
    let ports = region_ports(pm, cycle);
    let pset: HashMap<usize, usize> = ports.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let id: Vec<(usize, usize, u32)> =
        (0..ports.len()).filter(|&i| !pm.fwd[ports[i]]).map(|i| (i, follow(pm, &pset, ports[i]), 0)).collect();
    let nf = cycle.iter().filter(|&&d| pm.fwd[d]).count();
    let mut m = pm.clone();
    let r = replace(&mut m, &verts, &ports, &id);
    let mut out = finish(k, m, coeff.clone(), &r, vec![])?;
    if nf == 0 || nf == cycle.len() {
        let ccw = nf == cycle.len();
        let (next, prev) = pairings(pm, &ports);
        let next_is_id = {
            let mut a = next.clone();
            let mut b = id.clone();
            a.sort();
            b.sort();
            a == b
        };
        let (swap, nt) = if next_is_id { (prev, false) } else { (next, true) };
        out.extend(corrections(k, pm, coeff, &verts, &ports, &swap, nt, ccw, 2)?);
    }
    Ok(out)
}

fn triangle(k: i64, pm: &PMap, coeff: &SymElem, cycle: &[usize]) -> Result<Vec<Term>, Error> {
    let verts: BTreeSet<usize> = cycle.iter().map(|&d| pm.dv[d]).collect();
    let nf = cycle.iter().filter(|&&d| pm.fwd[d]).count();
    let mut m = pm.clone();
    let mut plan = vec![];
    for &d in cycle {
        let x_out = m.edge_start(d);
        let y_in = m.tw[x_out];
        let x_in = m.opp(x_out);
        let y_out = m.opp(y_in);
        let pin = m.tw[x_in];
        let pout = m.tw[y_out];
        if verts.contains(&m.dv[pin]) || verts.contains(&m.dv[pout]) {
            return Err(Error::Verify("degenerate triangle".into()));
        }
        plan.push((x_out, y_in, x_in, y_out, pin, pout));
    }
    for &(x_out, y_in, x_in, y_out, pin, pout) in &plan {
        let dd = m.dots[y_out];
        m.link(pin, y_in);
        m.link(y_out, x_in);
        m.link(x_out, pout);
        m.dots[y_out] = 0;
        m.dots[x_out] = dd;
    }
    let mut out = vec![(m, coeff.clone())];
    if nf == 0 || nf == 3 {
        let c = if nf == 3 { coeff.clone() } else { -coeff };
        let ports = region_ports(pm, cycle);
        let (next, prev) = pairings(pm, &ports);
        out.extend(corrections(k, pm, &c, &verts, &ports, &next, true, true, 3)?);
        out.extend(corrections(k, pm, &c, &verts, &ports, &prev, false, false, 3)?);
    }
    Ok(out)
}

struct Lens {
    area: usize,
    interior: BTreeSet<usize>,
    edges: BTreeSet<usize>,
}

fn lens_interior(pm: &PMap, face: &[usize], nf: usize, curve: &[(usize, bool)]) -> Lens {
    let edges: BTreeSet<usize> = curve.iter().map(|c| c.0).collect();
    let hair_face = face[pm.hair];
    let flood = |starts: Vec<usize>| -> (BTreeSet<usize>, bool) {
        let mut seen = BTreeSet::new();
        let mut qu: VecDeque<usize> = VecDeque::new();
        for s in starts {
            if seen.insert(s) {
                qu.push_back(s);
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![vec![]; nf];
        for d in 0..pm.dv.len() {
            if pm.alive(d) && !pm.is_hair(d) && !edges.contains(&pm.edge_start(d)) {
                adj[face[d]].push(face[pm.tw[d]]);
            }
        }
        while let Some(x) = qu.pop_front() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    qu.push_back(y);
                }
            }
        }
        let h = seen.contains(&hair_face);
        (seen, h)
    };
    let trav = |&(s, f): &(usize, bool)| if f { s } else { pm.tw[s] };
    let (left, has_hair) = flood(curve.iter().map(|c| face[trav(c)]).collect());
    let interior = if has_hair { flood(curve.iter().map(|c| face[pm.tw[trav(c)]]).collect()).0 } else { left };
    Lens { area: interior.len(), interior, edges }
}

fn find_lens(pm: &PMap, strs: &[Str], face: &[usize], nf: usize) -> Option<Lens> {
    let mut passes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (si, s) in strs.iter().enumerate() {
        for (i, &v) in s.verts.iter().enumerate() {
            passes.entry(v).or_default().push((si, i));
        }
    }
    let mut curves: Vec<Vec<(usize, bool)>> = vec![];
    let simple = |mids: &[usize], corners: &[usize]| {
        let set: BTreeSet<usize> = mids.iter().copied().collect();
        set.len() == mids.len() && corners.iter().all(|c| !set.contains(c))
    };
    for (&v, ps) in &passes {
        if ps[0].0 == ps[1].0 {
            let s = &strs[ps[0].0];
            for (a, b) in [(ps[0].1, ps[1].1), (ps[1].1, ps[0].1)] {
                if let Some((e, mid)) = s.seg(a, b) {
                    if simple(&mid, &[v]) {
                        curves.push(e.into_iter().map(|x| (x, true)).collect());
                    }
                }
            }
        }
    }
    for si in 0..strs.len() {
        for ti in si + 1..strs.len() {
            let shared: Vec<(usize, usize, usize)> = passes
                .iter()
                .filter(|(_, ps)| ps[0].0 != ps[1].0)
                .filter_map(|(&v, ps)| {
                    let a = ps.iter().find(|p| p.0 == si)?;
                    let b = ps.iter().find(|p| p.0 == ti)?;
                    Some((v, a.1, b.1))
                })
                .collect();
            for &(c1, s1, t1) in &shared {
                for &(c2, s2, t2) in &shared {
                    if c1 == c2 {
                        continue;
                    }
                    let Some((se, smid)) = strs[si].seg(s1, s2) else { continue };
                    let opts = [(strs[ti].seg(t2, t1), true), (strs[ti].seg(t1, t2), false)];
                    for (o, fw) in opts {
                        let Some((te, tmid)) = o else { continue };
                        let mut mids = smid.clone();
                        mids.extend(&tmid);
                        if !simple(&mids, &[c1, c2]) {
                            continue;
                        }
                        let mut curve: Vec<(usize, bool)> = se.iter().map(|&x| (x, true)).collect();
                        if fw {
                            curve.extend(te.iter().map(|&x| (x, true)));
                        } else {
                            curve.extend(te.iter().rev().map(|&x| (x, false)));
                        }
                        curves.push(curve);
                    }
                }
            }
        }
    }
    curves.into_iter().map(|c| lens_interior(pm, face, nf, &c)).min_by_key(|l| l.area)
}

/// A triangle two of whose corners are also joined outside it.
fn degenerate(pm: &PMap, cycle: &[usize]) -> bool {
    let verts: BTreeSet<usize> = cycle.iter().map(|&d| pm.dv[d]).collect();
    cycle.iter().any(|&d| {
        let x_out = pm.edge_start(d);
        let y_out = pm.opp(pm.tw[x_out]);
        verts.contains(&pm.dv[pm.tw[pm.opp(x_out)]]) || verts.contains(&pm.dv[pm.tw[y_out]])
    })
}

fn triangle_faces(pm: &PMap, face: &[usize], nf: usize) -> Vec<Vec<usize>> {
    let mut first = vec![DEAD; nf];
    for d in 0..pm.dv.len() {
        if pm.alive(d) && first[face[d]] == DEAD {
            first[face[d]] = d;
        }
    }
    first
        .into_iter()
        .filter(|&d| d != DEAD)
        .map(|d| pm.face_cycle(d))
        .filter(|c| {
            c.len() == 3 && {
                let vs: BTreeSet<usize> = c.iter().map(|&d| pm.dv[d]).collect();
                vs.len() == 3 && vs.iter().all(|&v| pm.is_crossing(v)) && !degenerate(pm, c)
            }
        })
        .collect()
}

/// A curl or bigon face bounded by crossings, possibly both on one strand.
fn small_face(pm: &PMap, face: &[usize], nf: usize) -> Option<Vec<usize>> {
    let mut seen = vec![false; nf];
    for d in 0..pm.dv.len() {
        if !pm.alive(d) || seen[face[d]] {
            continue;
        }
        seen[face[d]] = true;
        let c = pm.face_cycle(d);
        let vs: BTreeSet<usize> = c.iter().map(|&d| pm.dv[d]).collect();
        if c.len() <= 2 && vs.len() == c.len() && vs.iter().all(|&v| pm.is_crossing(v)) {
            return Some(c);
        }
    }
    None
}

fn small_move(k: i64, pm: &PMap, coeff: &SymElem, cyc: &[usize]) -> Result<Vec<Term>, Error> {
    if cyc.len() == 1 {
        return curl(k, pm, coeff, cyc[0]);
    }
    if let Some(s) = cyc.iter().map(|&d| pm.edge_start(d)).find(|&s| pm.dots[s] > 0) {
        slide(k, pm, coeff, s, true)
    } else {
        bigon(k, pm, coeff, cyc)
    }
}

enum Step {
    Done(Key, SymElem),
    More(Vec<Term>),
}

fn step(k: i64, pm: PMap, coeff: SymElem) -> Result<Step, Error> {
    let strs = pm.strings();
    let (face, nf) = pm.faces();
    if let Some(lens) = find_lens(&pm, &strs, &face, nf) {
        if lens.area == 1 {
            let f = *lens.interior.iter().next().unwrap();
            let d0 = (0..pm.dv.len()).find(|&d| pm.alive(d) && face[d] == f).unwrap();
            let cyc = pm.face_cycle(d0);
            if cyc.len() > 2 {
                return Err(Error::Verify("unexpected lens face".into()));
            }
            return Ok(Step::More(small_move(k, &pm, &coeff, &cyc)?));
        }
        let tri = triangle_faces(&pm, &face, nf).into_iter().find(|c| {
            lens.interior.contains(&face[c[0]]) && c.iter().any(|&d| lens.edges.contains(&pm.edge_start(d)))
        });
        let Some(cyc) = tri else {
            if let Some(cyc) = small_face(&pm, &face, nf) {
                return Ok(Step::More(small_move(k, &pm, &coeff, &cyc)?));
            }
            return Err(Error::Verify("no triangle inside lens".into()));
        };
        return Ok(Step::More(tri_move(k, &pm, &coeff, &cyc)?));
    }
    if strs.iter().any(|s| s.closed) {
        return Err(Error::Verify("closed strand without lens".into()));
    }
    let ends: Vec<(End, End)> = strs.iter().map(|s| (pm.end_of(s.start), pm.end_of(s.end))).collect();
    let ch = chords(pm.src.len(), pm.tgt.len(), &ends);
    let mut edge_str: HashMap<usize, usize> = HashMap::new();
    for (si, s) in strs.iter().enumerate() {
        for &e in &s.edges {
            edge_str.insert(e, si);
        }
    }
    let cur_order = |si: usize| -> Vec<End> {
        strs[si]
            .verts
            .iter()
            .map(|&v| {
                let other = pm.rot[v].iter().map(|&d| edge_str[&pm.edge_start(d)]).find(|&x| x != si).unwrap();
                ends[other].0
            })
            .collect()
    };
    let canonical = (0..strs.len()).all(|si| cur_order(si) == ch.order[&ends[si].0]);
    if !canonical {
        for cyc in triangle_faces(&pm, &face, nf) {
            let sids: Vec<usize> = cyc.iter().map(|&d| edge_str[&pm.edge_start(d)]).collect();
            let wrong = (0..3).any(|i| {
                let a = sids[i];
                let (b, c) = (ends[sids[(i + 1) % 3]].0, ends[sids[(i + 2) % 3]].0);
                let cur = cur_order(a);
                let tgt = &ch.order[&ends[a].0];
                let pc = |v: &[End], x: End| v.iter().position(|&y| y == x);
                (pc(&cur, b) < pc(&cur, c)) != (pc(tgt, b) < pc(tgt, c))
            });
            if wrong {
                return Ok(Step::More(tri_move(k, &pm, &coeff, &cyc)?));
            }
        }
        return Err(Error::Verify("no flippable triangle".into()));
    }
    for (si, s) in strs.iter().enumerate() {
        let out = terminus_is_out(ends[si].0, ends[si].1);
        let term = if out { s.edges.len() - 1 } else { 0 };
        for (i, &e) in s.edges.iter().enumerate() {
            if i != term && pm.dots[e] > 0 {
                return Ok(Step::More(slide(k, &pm, &coeff, e, out)?));
            }
        }
    }
    let mut key: Key = strs
        .iter()
        .enumerate()
        .map(|(si, s)| {
            let out = terminus_is_out(ends[si].0, ends[si].1);
            let e = if out { *s.edges.last().unwrap() } else { s.edges[0] };
            (ends[si].0, ends[si].1, pm.dots[e])
        })
        .collect();
    key.sort();
    Ok(Step::Done(key, coeff))
}

fn tri_move(k: i64, pm: &PMap, coeff: &SymElem, cyc: &[usize]) -> Result<Vec<Term>, Error> {
    if let Some(s) = cyc.iter().map(|&d| pm.edge_start(d)).find(|&s| pm.dots[s] > 0) {
        slide(k, pm, coeff, s, true)
    } else {
        triangle(k, pm, coeff, cyc)
    }
}

/// Rewrites a sum of maps into the basis.
pub(crate) fn normalize_terms(k: i64, _src: &[Ori], _tgt: &[Ori], terms: Vec<Term>) -> Result<BTreeMap<Key, SymElem>, Error> {
    let mut out: BTreeMap<Key, SymElem> = BTreeMap::new();
    let mut stack = terms;
    let mut guard = 0;
    while let Some((pm, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        guard += 1;
        if guard > STEP_LIMIT {
            return Err(Error::Verify("rewriting did not terminate".into()));
        }
        match step(k, pm, c)? {
            Step::Done(key, c) => {
                let e = out.entry(key).or_insert_with(SymElem::zero);
                *e = &*e + &c;
            }
            Step::More(v) => stack.extend(v),
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Appends the darts and vertices of `b` to `m`, returning the offsets.
fn append(m: &mut PMap, b: &PMap) -> (usize, usize) {
    let off = m.dv.len();
    let voff = m.rot.len();
    for d in 0..b.dv.len() {
        m.dv.push(if b.dv[d] == DEAD { DEAD } else { b.dv[d] + voff });
        m.tw.push(if b.tw[d] == DEAD { DEAD } else { b.tw[d] + off });
        m.fwd.push(b.fwd[d]);
        m.dots.push(b.dots[d]);
    }
    for r in &b.rot {
        m.rot.push(r.iter().map(|&d| d + off).collect());
    }
    (off, voff)
}

/// Side by side, `a` on the left. Returns the map and a dart whose left face was `a`'s right-hand region.
pub(crate) fn juxtapose(a: &PMap, b: &PMap) -> (PMap, usize) {
    let mut m = a.clone();
    let (off, voff) = append(&mut m, b);
    let (binf, bhv) = (b.inf + voff, b.hair_v + voff);
    m.rot[binf].clear();
    m.dv[b.hair + off] = DEAD;
    m.kill_vertex(bhv);
    for &d in b.bot.iter().chain(&b.top) {
        m.dv[d + off] = m.inf;
    }
    m.bot.extend(b.bot.iter().map(|d| d + off));
    m.top.extend(b.top.iter().map(|d| d + off));
    m.src.extend(&b.src);
    m.tgt.extend(&b.tgt);
    m.rebuild_inf();
    let slot = if let Some(&d) = a.top.last() { d } else { *m.rot[m.inf].last().unwrap() };
    (m, slot)
}

pub(crate) fn tensor_terms(a: &Term, b: &Term) -> Vec<Term> {
    let (m, slot) = juxtapose(&a.0, &b.0);
    let h = m.hair;
    transfer(m, b.1.clone(), slot, h, a.1.clone())
}

#[derive(Clone, Copy)]
enum YChain {
    Edge(usize, usize),
    Loop(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Parent {
    Left,
    Main(usize),
    Comp(usize, usize),
    LoopIn(usize),
}

/// Stacks `b` on top of `a`, evaluating closed pieces.
pub(crate) fn glue_terms(k: i64, a: &Term, b: &Term) -> Result<Vec<Term>, Error> {
    if a.0.tgt != b.0.src {
        return Err(Error::Mismatch("composition of incompatible words".into()));
    }
    let ny = a.0.tgt.len();
    let yw = a.0.tgt.clone();
    let mut m = a.0.clone();
    let (off, voff) = append(&mut m, &b.0);
    let (binf, bhv) = (b.0.inf + voff, b.0.hair_v + voff);
    let ya: Vec<usize> = a.0.top.clone();
    let yb: Vec<usize> = b.0.bot.iter().map(|d| d + off).collect();
    let mut ypos: HashMap<usize, usize> = HashMap::new();
    let mut partner: HashMap<usize, usize> = HashMap::new();
    for y in 0..ny {
        ypos.insert(ya[y], y);
        ypos.insert(yb[y], y);
        partner.insert(ya[y], yb[y]);
        partner.insert(yb[y], ya[y]);
    }
    m.rot[binf].clear();
    m.dv[b.0.hair + off] = DEAD;
    m.kill_vertex(bhv);
    let btop: Vec<usize> = b.0.top.iter().map(|d| d + off).collect();
    for &d in &btop {
        m.dv[d] = m.inf;
    }
    m.top = btop;
    m.tgt = b.0.tgt.clone();
    let mut ychain: Vec<Option<YChain>> = vec![None; ny];
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let starts: Vec<usize> =
        (0..m.dv.len()).filter(|&x| m.fwd[x] && !ypos.contains_key(&x) && m.tw[x] != DEAD && ypos.contains_key(&m.tw[x])).collect();
    let mut links = vec![];
    for x in starts {
        if m.dv[x] == DEAD {
            continue;
        }
        let mut total = m.dots[x];
        let mut c = m.tw[x];
        let mut poss = vec![];
        let end;
        loop {
            poss.push(ypos[&c]);
            let j = partner[&c];
            used.insert(c);
            used.insert(j);
            total += m.dots[j];
            let nx = m.tw[j];
            if ypos.contains_key(&nx) {
                c = nx;
            } else {
                end = nx;
                break;
            }
        }
        links.push((x, end, total));
        for p in poss {
            ychain[p] = Some(YChain::Edge(x, end));
        }
    }
    let mut loops: Vec<(u32, Vec<usize>)> = vec![];
    for y in 0..ny {
        for &j0 in &[ya[y], yb[y]] {
            if used.contains(&j0) || !m.fwd[j0] {
                continue;
            }
            let mut total = 0;
            let mut poss = vec![];
            let mut cur = j0;
            loop {
                used.insert(cur);
                total += m.dots[cur];
                let n = m.tw[cur];
                used.insert(n);
                poss.push(ypos[&n]);
                cur = partner[&n];
                if cur == j0 {
                    break;
                }
            }
            poss.sort();
            for &p in &poss {
                ychain[p] = Some(YChain::Loop(loops.len()));
            }
            loops.push((total, poss));
        }
    }
    for y in 0..ny {
        m.dv[ya[y]] = DEAD;
        m.dv[yb[y]] = DEAD;
    }
    for (x, e, t) in links {
        m.link(x, e);
        m.dots[x] = t;
    }
    m.rebuild_inf();
    let coeff = &a.1 * &b.1;
    // detached pieces
    let main = m.component(m.inf);
    let mut comps: Vec<BTreeSet<usize>> = vec![];
    let mut own: Vec<Owner> = vec![Owner::Main; ny];
    for y in 0..ny {
        own[y] = match ychain[y].unwrap() {
            YChain::Loop(l) => Owner::Loop(l),
            YChain::Edge(s, _) => {
                let v = m.dv[s];
                if main.contains(&v) {
                    Owner::Main
                } else if let Some(c) = comps.iter().position(|c| c.contains(&v)) {
                    Owner::Comp(c)
                } else {
                    comps.push(m.component(v));
                    Owner::Comp(comps.len() - 1)
                }
            }
        };
    }
    if comps.is_empty() && loops.is_empty() {
        return Ok(vec![(m, coeff)]);
    }
    let (face, _) = m.faces();
    let west = |y: usize| match ychain[y].unwrap() {
        YChain::Edge(s, t) => Some(if yw[y] == Ori::Up { s } else { t }),
        YChain::Loop(_) => None,
    };
    let east = |y: usize| match ychain[y].unwrap() {
        YChain::Edge(s, t) => Some(if yw[y] == Ori::Up { t } else { s }),
        YChain::Loop(_) => None,
    };
    let leftmost = |o: Owner| (0..ny).find(|&y| own[y] == o).unwrap();
    let islands: Vec<Owner> = (0..comps.len()).map(Owner::Comp).chain((0..loops.len()).map(Owner::Loop)).collect();
    let mut parent: HashMap<Owner, Parent> = HashMap::new();
    for &isl in &islands {
        let mut p = leftmost(isl);
        let par = loop {
            if p == 0 {
                break Parent::Left;
            }
            let pp = p - 1;
            match own[pp] {
                Owner::Main => break Parent::Main(east(pp).unwrap()),
                Owner::Comp(j) => {
                    let lm = leftmost(Owner::Comp(j));
                    if face[east(pp).unwrap()] == face[west(lm).unwrap()] {
                        p = lm;
                    } else {
                        break Parent::Comp(j, east(pp).unwrap());
                    }
                }
                Owner::Loop(l) => {
                    let i = loops[l].1.iter().position(|&x| x == pp).unwrap();
                    if i % 2 == 0 {
                        break Parent::LoopIn(l);
                    }
                    p = loops[l].1[0];
                }
            }
        };
        parent.insert(isl, par);
    }
    let mut pend_comp: Vec<Vec<(usize, SymElem)>> = vec![vec![]; comps.len()];
    let mut pend_loop: Vec<SymElem> = vec![SymElem::one(); loops.len()];
    let mut main_pend: Vec<(usize, SymElem)> = vec![];
    let mut done: BTreeSet<Owner> = BTreeSet::new();
    while done.len() < islands.len() {
        let ready: Vec<Owner> = islands
            .iter()
            .copied()
            .filter(|i| !done.contains(i))
            .filter(|i| {
                islands.iter().all(|c| {
                    done.contains(c)
                        || match (parent[c], *i) {
                            (Parent::Comp(j, _), Owner::Comp(x)) => j != x,
                            (Parent::LoopIn(j), Owner::Loop(x)) => j != x,
                            _ => true,
                        }
                })
            })
            .collect();
        if ready.is_empty() {
            return Err(Error::Verify("cyclic nesting".into()));
        }
        for isl in ready {
            let val = match isl {
                Owner::Comp(c) => {
                    let lm = leftmost(isl);
                    island_value(k, &m, &comps[c], west(lm).unwrap(), &pend_comp[c])?
                }
                Owner::Loop(l) => {
                    let ccw = yw[loops[l].1[0]] == Ori::Down;
                    loop_value(k, ccw, loops[l].0, &pend_loop[l])
                }
                Owner::Main => unreachable!(),
            };
            match parent[&isl] {
                Parent::Left => {
                    let d = *m.rot[m.inf].last().unwrap();
                    main_pend.push((d, val));
                }
                Parent::Main(d) => main_pend.push((d, val)),
                Parent::Comp(j, d) => pend_comp[j].push((d, val)),
                Parent::LoopIn(j) => pend_loop[j] = &pend_loop[j] * &val,
            }
            done.insert(isl);
        }
    }
    for c in &comps {
        for &v in c {
            m.kill_vertex(v);
        }
    }
    if main_pend.iter().any(|(_, f)| f.is_zero()) {
        return Ok(vec![]);
    }
    Ok(place_all(m, coeff, main_pend))
}

impl PartialOrd for Owner {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Owner {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |o: &Owner| match *o {
            Owner::Main => (0, 0),
            Owner::Comp(c) => (1, c),
            Owner::Loop(l) => (2, l),
        };
        key(self).cmp(&key(other))
    }
}

impl std::hash::Hash for Owner {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match *self {
            Owner::Main => 0usize.hash(state),
            Owner::Comp(c) => (1usize, c).hash(state),
            Owner::Loop(l) => (2usize, l).hash(state),
        }
    }
}
