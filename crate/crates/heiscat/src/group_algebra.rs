//! The group algebra `QS_n`, Young symmetrizers, and the two-colored block-matrix model.
//!
//! A permutation is stored in one-line notation, 0-based: strand from bottom position `i`
//! ends at top position `p[i]`. Products compose right to left, `(a·b)(i) = a(b(i))`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::partitions::Partition;
use crate::{binom, factorial, q, Error, Q};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// The simple transposition `s_i` swapping `i` and `i+1` (1-based `i`).
pub fn simple(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i - 1, i);
    p
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn sign(p: &[usize]) -> i64 {
    if inversions(p) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `n`, lexicographic.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// A reduced word `[i_1, ..., i_l]` (1-based) with `p = s_{i_1} ⋯ s_{i_l}`.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    // Peel off right descents: if p(i) > p(i+1) then p = (p s_i) s_i with p s_i shorter.
    let mut p = p.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) else {
            break;
        };
        p.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

/// Formats a 0-based permutation as 1-based one-line notation `[2,1,3]`.
pub fn perm_to_string(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Parses 1-based one-line notation.
pub fn parse_perm(s: &str) -> Result<Perm, Error> {
    let bad = || Error::Parse(format!("bad permutation: {}", s));
    let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let v = inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    let n = v.len();
    let mut seen = vec![false; n];
    for &x in &v {
        if x == 0 || x > n || seen[x - 1] {
            return Err(bad());
        }
        seen[x - 1] = true;
    }
    Ok(v.into_iter().map(|x| x - 1).collect())
}

/// An element of `QS_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAlgElem {
    pub n: usize,
    coeffs: BTreeMap<Perm, Q>,
}

impl PermAlgElem {
    pub fn zero(n: usize) -> PermAlgElem {
        PermAlgElem { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> PermAlgElem {
        PermAlgElem::perm(identity(n))
    }

    pub fn perm(p: Perm) -> PermAlgElem {
        let n = p.len();
        let mut out = PermAlgElem::zero(n);
        out.add_term(p, Q::one());
        out
    }

    pub fn simple(n: usize, i: usize) -> PermAlgElem {
        PermAlgElem::perm(simple(n, i))
    }

    pub fn coeffs(&self) -> &BTreeMap<Perm, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &[usize]) -> Q {
        self.coeffs.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, p: Perm, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&p) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.coeffs.remove(&p);
                }
            }
            None => {
                self.coeffs.insert(p, c);
            }
        }
    }

    pub fn add(&self, other: &PermAlgElem) -> PermAlgElem {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> PermAlgElem {
        let mut out = PermAlgElem::zero(self.n);
        for (p, x) in &self.coeffs {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &PermAlgElem) -> Result<PermAlgElem, Error> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("S_{} vs S_{}", self.n, other.n)));
        }
        let mut out = PermAlgElem::zero(self.n);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_term(compose(a, b), x * y);
            }
        }
        Ok(out)
    }

    /// The Young symmetrizer `(f^λ/n!) a_T b_T` for the row-reading tableau `T`.
    pub fn young_symmetrizer(lam: &Partition) -> PermAlgElem {
        let n = lam.size();
        // Row-reading tableau: box (i, j) holds start(i) + j.
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        for &p in lam.parts() {
            rows.push((next..next + p).collect());
            next += p;
        }
        let cols: Vec<Vec<usize>> =
            (0..lam.part(0)).map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect();
        let a = stabilizer_sum(n, &rows, false);
        let b = stabilizer_sum(n, &cols, true);
        let scale = Q::new((lam.num_standard_tableaux() as i64).into(), (factorial(n) as i64).into());
        a.mul(&b).expect("same n").scale(&scale)
    }

    /// `(1/n!) Σ π`.
    pub fn trivial_idempotent(n: usize) -> PermAlgElem {
        PermAlgElem::young_symmetrizer(&Partition::row(n))
    }

    /// `(1/n!) Σ sgn(π) π`.
    pub fn sign_idempotent(n: usize) -> PermAlgElem {
        PermAlgElem::young_symmetrizer(&Partition::column(n))
    }

    /// The anti-involution `π ↦ π^{-1}`.
    pub fn star(&self) -> PermAlgElem {
        let mut out = PermAlgElem::zero(self.n);
        for (p, c) in &self.coeffs {
            out.add_term(inverse(p), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(p, c)| serde_json::json!({"perm": perm_to_string(p), "c": c.to_string()}))
            .collect();
        serde_json::json!({"n": self.n, "terms": terms})
    }

    /// Matrix of `g ↦ g·self` on `QS_n`, columns indexed by `all_perms(n)`.
    pub fn left_ideal_rank(&self) -> usize {
        let perms = all_perms(self.n);
        let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows: Vec<Vec<Q>> = perms
            .iter()
            .map(|g| {
                let prod = PermAlgElem::perm(g.clone()).mul(self).expect("same n");
                let mut row = vec![Q::zero(); perms.len()];
                for (p, c) in prod.coeffs() {
                    row[index[p]] = c.clone();
                }
                row
            })
            .collect();
        crate::linalg::rank(&rows)
    }
}

impl fmt::Display for PermAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, perm_to_string(p))?;
        }
        Ok(())
    }
}

/// `Σ_{g ∈ Π S_block} (sgn g) g` for a set partition of `0..n` into blocks.
fn stabilizer_sum(n: usize, blocks: &[Vec<usize>], signed: bool) -> PermAlgElem {
    let mut out = PermAlgElem::one(n);
    for b in blocks {
        let mut s = PermAlgElem::zero(n);
        for p in all_perms(b.len()) {
            let mut g = identity(n);
            for (i, &j) in p.iter().enumerate() {
                g[b[i]] = b[j];
            }
            let c = if signed { q(sign(&p)) } else { Q::one() };
            s.add_term(g, c);
        }
        out = out.mul(&s).expect("same n");
    }
    out
}

/// The coloring word of `λ ∈ 𝒫_{r,n}`: `true` is red. Reads `B^{n-r-λ_1} R B^{λ_1-λ_2} R ⋯ R B^{λ_r}`.
pub fn coloring(lam: &Partition, r: usize, n: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(n);
    let mut prev = n - r;
    for i in 0..r {
        let li = lam.part(i);
        out.extend(std::iter::repeat(false).take(prev - li));
        out.push(true);
        prev = li;
    }
    out.extend(std::iter::repeat(false).take(prev));
    out
}

/// The inverse of `coloring`.
pub fn coloring_partition(c: &[bool]) -> Partition {
    // λ_i = number of blues after the i-th red.
    let mut parts = Vec::new();
    for (i, &red) in c.iter().enumerate() {
        if red {
            parts.push(c[i + 1..].iter().filter(|&&x| !x).count());
        }
    }
    Partition::new(parts)
}

/// `σ_λ`: the permutation taking the coloring of `λ` to `B^{n-r} R^r`, order-preserving in each color.
pub fn sigma_perm(lam: &Partition, r: usize, n: usize) -> Perm {
    let c = coloring(lam, r, n);
    let mut blue = 0;
    let mut red = n - r;
    c.iter()
        .map(|&is_red| {
            if is_red {
                red += 1;
                red - 1
            } else {
                blue += 1;
                blue - 1
            }
        })
        .collect()
}

/// An endomorphism of `(B ⊕ R)^{⊗n}` in the block-matrix model: entry `(r, μ, λ)` lies in
/// `Q[S_{n-r} × S_r] ⊂ QS_n` acting on `B^{n-r} R^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredBlockElem {
    pub n: usize,
    entries: BTreeMap<(usize, Partition, Partition), PermAlgElem>,
}

impl ColoredBlockElem {
    pub fn zero(n: usize) -> ColoredBlockElem {
        ColoredBlockElem { n, entries: BTreeMap::new() }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Partition, Partition), PermAlgElem> {
        &self.entries
    }

    pub fn entry(&self, r: usize, mu: &Partition, lam: &Partition) -> PermAlgElem {
        self.entries.get(&(r, mu.clone(), lam.clone())).cloned().unwrap_or_else(|| PermAlgElem::zero(self.n))
    }

    pub fn add_entry(&mut self, r: usize, mu: Partition, lam: Partition, x: &PermAlgElem) {
        let key = (r, mu, lam);
        let cur = self.entries.remove(&key).unwrap_or_else(|| PermAlgElem::zero(self.n));
        let sum = cur.add(x);
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn add(&self, other: &ColoredBlockElem) -> ColoredBlockElem {
        let mut out = self.clone();
        for ((r, m, l), x) in &other.entries {
            out.add_entry(*r, m.clone(), l.clone(), x);
        }
        out
    }

    pub fn mul(&self, other: &ColoredBlockElem) -> Result<ColoredBlockElem, Error> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("n = {} vs {}", self.n, other.n)));
        }
        let mut out = ColoredBlockElem::zero(self.n);
        for ((r, m, l), x) in &self.entries {
            for ((r2, l2, nu), y) in &other.entries {
                if r == r2 && l == l2 {
                    out.add_entry(*r, m.clone(), nu.clone(), &x.mul(y)?);
                }
            }
        }
        Ok(out)
    }

    /// `Δ` on `QS_n`: a permutation is sent to the sum over all colorings it transports.
    pub fn delta_colored(x: &PermAlgElem) -> ColoredBlockElem {
        let n = x.n;
        let mut out = ColoredBlockElem::zero(n);
        for r in 0..=n {
            for lam in Partition::box_partitions(r, n - r) {
                let c = coloring(&lam, r, n);
                let sl_inv = inverse(&sigma_perm(&lam, r, n));
                for (p, coef) in x.coeffs() {
                    let mut image = vec![false; n];
                    for i in 0..n {
                        image[p[i]] = c[i];
                    }
                    let mu = coloring_partition(&image);
                    let sm = sigma_perm(&mu, r, n);
                    let g = compose(&sm, &compose(p, &sl_inv));
                    let mut e = PermAlgElem::zero(n);
                    e.add_term(g, coef.clone());
                    out.add_entry(r, mu, lam.clone(), &e);
                }
            }
        }
        out
    }

    /// `ı_{r,n}(a ⊗ b)` at the block `(min, min)`; `a` acts on the red strands, `b` on the blue.
    pub fn iota_rn(r: usize, a: &PermAlgElem, b: &PermAlgElem) -> ColoredBlockElem {
        let n = a.n + b.n;
        assert_eq!(a.n, r);
        let mut e = PermAlgElem::zero(n);
        for (pa, x) in a.coeffs() {
            for (pb, y) in b.coeffs() {
                let mut g: Perm = pb.clone();
                g.extend(pa.iter().map(|&i| i + n - r));
                e.add_term(g, x * y);
            }
        }
        let mut out = ColoredBlockElem::zero(n);
        out.add_entry(r, Partition::empty(), Partition::empty(), &e);
        out
    }
}

/// Checks that `Δ(e_(n))` and `Σ_r ı_{r,n}(e_(r) ⊗ e_(n-r))` are conjugate via explicit `u, v`,
/// and likewise for the sign idempotents.
pub fn verify_trivial_split(n: usize) -> bool {
    split_check(n, false) && split_check(n, true)
}

fn split_check(n: usize, signed: bool) -> bool {
    let idem = |m: usize| {
        if signed {
            PermAlgElem::sign_idempotent(m)
        } else {
            PermAlgElem::trivial_idempotent(m)
        }
    };
    let mut u = ColoredBlockElem::zero(n);
    let mut v = ColoredBlockElem::zero(n);
    let mut target = ColoredBlockElem::zero(n);
    for r in 0..=n {
        let block = ColoredBlockElem::iota_rn(r, &idem(r), &idem(n - r));
        let e = block.entry(r, &Partition::empty(), &Partition::empty());
        target = target.add(&block);
        let inv_binom = Q::new(1.into(), (binom(n, r) as i64).into());
        for lam in Partition::box_partitions(r, n - r) {
            let s = if signed && lam.size() % 2 == 1 { -Q::one() } else { Q::one() };
            // σ_μ^{-1} ∘ ı(e): from `min` to `μ`; its matrix entry at (μ, min) is `e`.
            u.add_entry(r, lam.clone(), Partition::empty(), &e.scale(&(&inv_binom * &s)));
            // ı(e) ∘ σ_λ: from `λ` to `min`; matrix entry at (min, λ) is `e`.
            v.add_entry(r, Partition::empty(), lam.clone(), &e.scale(&s));
        }
    }
    let uv = u.mul(&v).expect("same n");
    let vu = v.mul(&u).expect("same n");
    uv == ColoredBlockElem::delta_colored(&idem(n)) && vu == target
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let s1 = PermAlgElem::simple(3, 1);
        let s2 = PermAlgElem::simple(3, 2);
        assert_eq!(s1.mul(&s1).unwrap(), PermAlgElem::one(3));
        let a = s1.mul(&s2).unwrap().mul(&s1).unwrap();
        let b = s2.mul(&s1).unwrap().mul(&s2).unwrap();
        assert_eq!(a, b);
        let e = PermAlgElem::trivial_idempotent(2);
        assert_eq!(e.mul(&e).unwrap(), e);
        assert!(s1.mul(&PermAlgElem::one(2)).is_err());
    }

    #[test]
    fn symmetrizers() {
        let e = PermAlgElem::trivial_idempotent(3);
        assert_eq!(e.coeffs().len(), 6);
        assert!(e.coeffs().values().all(|c| *c == crate::qf(1, 6)));
        let e = PermAlgElem::sign_idempotent(3);
        for (p, c) in e.coeffs() {
            assert_eq!(*c, crate::qf(sign(p), 6));
        }
        let e21 = PermAlgElem::young_symmetrizer(&Partition::new(vec![2, 1]));
        assert_eq!(e21.mul(&e21).unwrap(), e21);
    }

    #[test]
    fn reduced_words() {
        for p in all_perms(4) {
            let w = reduced_word(&p);
            assert_eq!(w.len(), inversions(&p));
            let mut g = identity(4);
            for &i in &w {
                g = compose(&g, &simple(4, i));
            }
            assert_eq!(g, p);
        }
    }

    #[test]
    fn colorings() {
        let lam = Partition::new(vec![3, 3, 2]);
        let c = coloring(&lam, 5, 9);
        let want = [false, true, true, false, true, false, false, true, true];
        assert_eq!(c, want);
        assert_eq!(coloring_partition(&c), lam);
        assert_eq!(sigma_perm(&Partition::empty(), 2, 4), identity(4));
    }

    #[test]
    fn delta_examples() {
        for n in 0..=3 {
            let d = ColoredBlockElem::delta_colored(&PermAlgElem::one(n));
            for r in 0..=n {
                for lam in Partition::box_partitions(r, n - r) {
                    assert_eq!(d.entry(r, &lam, &lam), PermAlgElem::one(n));
                }
            }
            assert_eq!(d.entries().len() as u128, (0..=n).map(|r| binom(n, r)).sum::<u128>());
        }
        let d = ColoredBlockElem::delta_colored(&PermAlgElem::simple(2, 1));
        let one = Partition::new(vec![1]);
        let zero = Partition::empty();
        assert_eq!(d.entry(1, &one, &zero), PermAlgElem::one(2));
        assert_eq!(d.entry(1, &zero, &one), PermAlgElem::one(2));
        assert!(d.entry(1, &zero, &zero).is_zero());
    }

    #[test]
    fn trivial_split_small() {
        for n in 0..=3 {
            assert!(verify_trivial_split(n), "n = {}", n);
        }
    }

    #[test]
    fn perm_literals() {
        assert_eq!(parse_perm("[2,1,3]").unwrap(), vec![1, 0, 2]);
        assert_eq!(perm_to_string(&[1, 0, 2]), "[2,1,3]");
        assert!(parse_perm("[1,1]").is_err());
    }
}
