//! The degenerate affine Hecke algebra `AH_n` with basis `x^a π`, Demazure operators, the twisted
//! actions ⊕ and ⊖, signed Schur polynomials, and cyclotomic quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::group_algebra::{self, compose, reduced_word, Perm, PermAlgElem};
use crate::partitions::Partition;
use crate::{factorial, q, Error, Q};

pub type Exps = Vec<u32>;

fn add_to<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// A polynomial in `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyN {
    pub n: usize,
    coeffs: BTreeMap<Exps, Q>,
}

impl PolyN {
    pub fn zero(n: usize) -> PolyN {
        PolyN { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> PolyN {
        PolyN::monomial(vec![0; n], Q::one())
    }

    pub fn monomial(a: Exps, c: Q) -> PolyN {
        let mut out = PolyN::zero(a.len());
        add_to(&mut out.coeffs, a, c);
        out
    }

    /// `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> PolyN {
        let mut a = vec![0; n];
        a[i - 1] = 1;
        PolyN::monomial(a, Q::one())
    }

    pub fn constant(n: usize, c: Q) -> PolyN {
        PolyN::monomial(vec![0; n], c)
    }

    pub fn coeffs(&self) -> &BTreeMap<Exps, Q> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, a: Exps, c: Q) {
        add_to(&mut self.coeffs, a, c);
    }

    pub fn add(&self, other: &PolyN) -> PolyN {
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyN) -> PolyN {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> PolyN {
        let mut out = PolyN::zero(self.n);
        for (a, x) in &self.coeffs {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &PolyN) -> PolyN {
        let mut out = PolyN::zero(self.n);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let ab = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(ab, x * y);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// `s_i(f)`: swap `x_i` and `x_{i+1}` (1-based `i`).
    pub fn swap(&self, i: usize) -> PolyN {
        let mut out = PolyN::zero(self.n);
        for (a, c) in &self.coeffs {
            let mut b = a.clone();
            b.swap(i - 1, i);
            out.add_term(b, c.clone());
        }
        out
    }

    /// `π(f)` for a permutation: `x_j ↦ x_{π(j)}`.
    pub fn permute(&self, p: &[usize]) -> PolyN {
        let mut out = PolyN::zero(self.n);
        for (a, c) in &self.coeffs {
            let mut b = vec![0; self.n];
            for (j, &e) in a.iter().enumerate() {
                b[p[j]] = e;
            }
            out.add_term(b, c.clone());
        }
        out
    }

    /// The Demazure operator `∂_i(f) = (f - s_i f)/(x_{i+1} - x_i)`.
    pub fn demazure(&self, i: usize) -> Result<PolyN, Error> {
        if i == 0 || i >= self.n {
            return Err(Error::Domain(format!("demazure index {} out of range for n = {}", i, self.n)));
        }
        let (u, v) = (i - 1, i);
        let mut out = PolyN::zero(self.n);
        for (a, c) in &self.coeffs {
            let (ea, eb) = (a[u], a[v]);
            if ea == eb {
                continue;
            }
            let lo = ea.min(eb);
            let d = ea.max(eb) - lo;
            // (x_u^ea x_v^eb - x_u^eb x_v^ea)/(x_v - x_u)
            let sgn = if ea > eb { -c.clone() } else { c.clone() };
            for t in 0..d {
                let mut b = a.clone();
                b[u] = lo + t;
                b[v] = lo + d - 1 - t;
                out.add_term(b, sgn.clone());
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.swap(i) == *self)
    }

    pub fn eval(&self, xs: &[Q]) -> Q {
        let mut out = Q::zero();
        for (a, c) in &self.coeffs {
            let mut t = c.clone();
            for (x, &e) in xs.iter().zip(a) {
                t *= x.pow(e as i32);
            }
            out += t;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> =
            self.coeffs.iter().map(|(a, c)| serde_json::json!({"x": a, "c": c.to_string()})).collect();
        serde_json::json!({"n": self.n, "terms": terms})
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (j, &e) in a.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// `s_i ⊕ f = s_i(f) + ∂_i(f)`.
pub fn oplus_simple(i: usize, f: &PolyN) -> PolyN {
    f.swap(i).add(&f.demazure(i).expect("index in range"))
}

/// `s_i ⊖ f = s_i(f) - ∂_i(f)`.
pub fn ominus_simple(i: usize, f: &PolyN) -> PolyN {
    f.swap(i).sub(&f.demazure(i).expect("index in range"))
}

/// `π ⊕ f` for `π = s_{i_1} ⋯ s_{i_l}` given as a word.
pub fn act_oplus_word(word: &[usize], f: &PolyN) -> PolyN {
    word.iter().rev().fold(f.clone(), |g, &i| oplus_simple(i, &g))
}

pub fn act_ominus_word(word: &[usize], f: &PolyN) -> PolyN {
    word.iter().rev().fold(f.clone(), |g, &i| ominus_simple(i, &g))
}

pub fn act_oplus(p: &[usize], f: &PolyN) -> PolyN {
    act_oplus_word(&reduced_word(p), f)
}

pub fn act_ominus(p: &[usize], f: &PolyN) -> PolyN {
    act_ominus_word(&reduced_word(p), f)
}

/// Evaluates `(π ⊕ F)(pt)` (or ⊖) for a rational function `F` given as a closure.
pub fn act_eval<F: Fn(&[Q]) -> Q>(word: &[usize], plus: bool, f: &F, pt: &[Q]) -> Q {
    match word.split_first() {
        None => f(pt),
        Some((&i, rest)) => {
            let mut sp = pt.to_vec();
            sp.swap(i - 1, i);
            let g_sp = act_eval(rest, plus, f, &sp);
            let g_p = act_eval(rest, plus, f, pt);
            let d = (&g_p - &g_sp) / (&pt[i] - &pt[i - 1]);
            if plus {
                g_sp + d
            } else {
                g_sp - d
            }
        }
    }
}

/// `(1/n!) Σ_π π ⊕ f` (or ⊖ when `antisym`).
pub fn spherical_sandwich(f: &PolyN, antisym: bool) -> PolyN {
    let n = f.n;
    let mut out = PolyN::zero(n);
    for p in group_algebra::all_perms(n) {
        let g = if antisym { act_ominus(&p, f) } else { act_oplus(&p, f) };
        out = out.add(&g);
    }
    out.scale(&Q::new(1.into(), (factorial(n) as i64).into()))
}

/// `χ_μ = A_{μ+ρ}/A_ρ` for `μ ∈ Z^n` with `μ + ρ ∈ N^n`.
pub fn signed_schur_chi(mu: &[i64]) -> Result<PolyN, Error> {
    let n = mu.len();
    let shifted: Vec<i64> = mu.iter().enumerate().map(|(i, &m)| m + (n - 1 - i) as i64).collect();
    if shifted.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("λ+ρ has a negative entry: {:?}", shifted)));
    }
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(PolyN::zero(n));
    }
    // Sign of the sorting permutation = parity of inversions of `shifted` w.r.t. decreasing order.
    let mut inv = 0;
    for i in 0..n {
        for j in i + 1..n {
            if shifted[i] < shifted[j] {
                inv += 1;
            }
        }
    }
    let parts: Vec<usize> = sorted.iter().enumerate().map(|(i, &x)| (x - (n - 1 - i) as i64) as usize).collect();
    let lam = Partition::new(parts);
    let s = schur_polynomial(&lam, n);
    Ok(if inv % 2 == 0 { s } else { s.scale(&-Q::one()) })
}

/// `s_λ(x_1, ..., x_n)` as a polynomial, summed over semistandard tableaux.
pub fn schur_polynomial(lam: &Partition, n: usize) -> PolyN {
    if lam.len() > n {
        return PolyN::zero(n);
    }
    // Sum over SSYT of shape λ with entries ≤ n, filled row by row.
    let mut out = PolyN::zero(n);
    let shape: Vec<usize> = (0..lam.len()).map(|i| lam.part(i)).collect();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j))).collect();
    let mut fill: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p]).collect();
    fn go(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, n: usize, out: &mut PolyN) {
        if k == cells.len() {
            let mut a = vec![0u32; n];
            for row in fill.iter() {
                for &v in row {
                    a[v] += 1;
                }
            }
            out.add_term(a, Q::one());
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            fill[i][j] = v;
            go(k + 1, cells, fill, n, out);
        }
    }
    go(0, &cells, &mut fill, n, &mut out);
    out
}

/// An element `Σ c · x^a π` of `AH_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AHElem {
    pub n: usize,
    coeffs: BTreeMap<(Exps, Perm), Q>,
}

impl AHElem {
    pub fn zero(n: usize) -> AHElem {
        AHElem { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> AHElem {
        AHElem::basis(vec![0; n], group_algebra::identity(n))
    }

    pub fn basis(a: Exps, p: Perm) -> AHElem {
        let n = a.len();
        let mut out = AHElem::zero(n);
        out.add_term(a, p, Q::one());
        out
    }

    /// `x_i`, 1-based.
    pub fn x(n: usize, i: usize) -> AHElem {
        AHElem::from_poly(&PolyN::var(n, i))
    }

    /// `s_i`, 1-based.
    pub fn s(n: usize, i: usize) -> AHElem {
        AHElem::basis(vec![0; n], group_algebra::simple(n, i))
    }

    pub fn from_poly(f: &PolyN) -> AHElem {
        let mut out = AHElem::zero(f.n);
        for (a, c) in f.coeffs() {
            out.add_term(a.clone(), group_algebra::identity(f.n), c.clone());
        }
        out
    }

    pub fn from_perm_alg(x: &PermAlgElem) -> AHElem {
        let mut out = AHElem::zero(x.n);
        for (p, c) in x.coeffs() {
            out.add_term(vec![0; x.n], p.clone(), c.clone());
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<(Exps, Perm), Q> {
        &self.coeffs
    }

    pub fn coeff(&self, a: &[u32], p: &[usize]) -> Q {
        self.coeffs.get(&(a.to_vec(), p.to_vec())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, a: Exps, p: Perm, c: Q) {
        add_to(&mut self.coeffs, (a, p), c);
    }

    pub fn add(&self, other: &AHElem) -> AHElem {
        let mut out = self.clone();
        for ((a, p), c) in &other.coeffs {
            out.add_term(a.clone(), p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AHElem) -> AHElem {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> AHElem {
        let mut out = AHElem::zero(self.n);
        for ((a, p), x) in &self.coeffs {
            out.add_term(a.clone(), p.clone(), x * c);
        }
        out
    }

    /// Largest total `x`-degree.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|(a, _)| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &AHElem) -> Result<AHElem, Error> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("AH_{} vs AH_{}", self.n, other.n)));
        }
        let n = self.n;
        let mut out = AHElem::zero(n);
        for ((a, p), x) in &self.coeffs {
            for ((b, s), y) in &other.coeffs {
                // x^a · (π x^b) · σ, with π x^b = Σ g_τ τ.
                for (tau, g) in perm_times_poly(p, &PolyN::monomial(b.clone(), Q::one())) {
                    let ts = compose(&tau, s);
                    for (e, c) in g.coeffs() {
                        let ae: Exps = a.iter().zip(e).map(|(u, v)| u + v).collect();
                        out.add_term(ae, ts.clone(), x * y * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The anti-involution fixing each `x_i` and `s_i`.
    pub fn star(&self) -> AHElem {
        let n = self.n;
        let mut out = AHElem::zero(n);
        for ((a, p), c) in &self.coeffs {
            let pi = AHElem::basis(vec![0; n], group_algebra::inverse(p));
            let xa = AHElem::basis(a.clone(), group_algebra::identity(n));
            out = out.add(&pi.mul(&xa).expect("same n").scale(c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|((a, p), c)| {
                let perm: Vec<usize> = p.iter().map(|x| x + 1).collect();
                serde_json::json!({"x": a, "perm": perm, "c": c.to_string()})
            })
            .collect();
        serde_json::json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<AHElem, Error> {
        let bad = || Error::Parse("bad AHElem JSON".into());
        let n = v.get("n").and_then(|x| x.as_u64()).ok_or_else(bad)? as usize;
        let mut out = AHElem::zero(n);
        for t in v.get("terms").and_then(|x| x.as_array()).ok_or_else(bad)? {
            let a: Exps = t
                .get("x")
                .and_then(|x| x.as_array())
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            let perm: Vec<String> = t
                .get("perm")
                .and_then(|x| x.as_array())
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.to_string())
                .collect();
            let p = group_algebra::parse_perm(&format!("[{}]", perm.join(",")))?;
            let c = crate::parse_q(t.get("c").and_then(|x| x.as_str()).ok_or_else(bad)?)?;
            if a.len() != n || p.len() != n {
                return Err(bad());
            }
            out.add_term(a, p, c);
        }
        Ok(out)
    }

    /// Reduces modulo the two-sided ideal generated by `f(x_1)`, `f` monic with coefficients
    /// `f_coeffs[j]` on `w^j` (last entry must be 1).
    pub fn cyclotomic_reduce(&self, f_coeffs: &[Q]) -> Result<AHElem, Error> {
        let l = f_coeffs.len().checked_sub(1).ok_or_else(|| Error::Domain("empty polynomial".into()))?;
        if !f_coeffs[l].is_one() {
            return Err(Error::Domain("cyclotomic polynomial must be monic".into()));
        }
        let n = self.n;
        if l == 0 {
            return Ok(AHElem::zero(n));
        }
        // rel[j] = R_{j+1} - x_{j+1}^l where R_1 = f(x_1) and R_{i+1} = s_i R_i s_i.
        let mut rels: Vec<AHElem> = Vec::new();
        let mut r = AHElem::zero(n);
        for (j, c) in f_coeffs.iter().enumerate() {
            let mut a = vec![0; n];
            a[0] = j as u32;
            r.add_term(a, group_algebra::identity(n), c.clone());
        }
        for i in 0..n {
            let mut lead = vec![0; n];
            lead[i] = l as u32;
            let mut tail = r.clone();
            tail.add_term(lead, group_algebra::identity(n), -Q::one());
            rels.push(tail);
            if i + 1 < n {
                let s = AHElem::s(n, i + 1);
                r = s.mul(&r)?.mul(&s)?;
            }
        }
        let mut todo = self.clone();
        let mut done = AHElem::zero(n);
        while let Some(((a, p), c)) = todo.coeffs.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            todo.coeffs.remove(&(a.clone(), p.clone()));
            let Some(j) = (0..n).rev().find(|&j| a[j] as usize >= l) else {
                done.add_term(a, p, c);
                continue;
            };
            let mut rest = a.clone();
            rest[j] -= l as u32;
            let left = AHElem::basis(rest, group_algebra::identity(n));
            let right = AHElem::basis(vec![0; n], p);
            let repl = left.mul(&rels[j])?.mul(&right)?.scale(&-c);
            todo = todo.add(&repl);
        }
        Ok(done)
    }
}

impl fmt::Display for AHElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, p), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (j, &e) in a.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{}^{}", j + 1, e)?;
                }
            }
            write!(f, "*{}", group_algebra::perm_to_string(p))?;
        }
        Ok(())
    }
}

/// `π · f = Σ_τ g_τ τ` in `AH_n`, by repeated use of `s_i g = s_i(g) s_i + ∂_i(g)`.
fn perm_times_poly(p: &[usize], f: &PolyN) -> BTreeMap<Perm, PolyN> {
    let n = f.n;
    let mut state: BTreeMap<Perm, PolyN> = BTreeMap::new();
    state.insert(group_algebra::identity(n), f.clone());
    for &i in reduced_word(p).iter().rev() {
        let si = group_algebra::simple(n, i);
        let mut next: BTreeMap<Perm, PolyN> = BTreeMap::new();
        for (tau, g) in state {
            let sg = g.swap(i);
            let dg = g.demazure(i).expect("index in range");
            let st = compose(&si, &tau);
            let e = next.entry(st).or_insert_with(|| PolyN::zero(n));
            *e = e.add(&sg);
            let e = next.entry(tau).or_insert_with(|| PolyN::zero(n));
            *e = e.add(&dg);
        }
        next.retain(|_, g| !g.is_zero());
        state = next;
    }
    state
}

/// `e_(1^n) x^λ e_(n) = χ_{λ-ρ} e_(1^n) x^ρ e_(n)` in `AH_n`.
pub fn verify_thick_cap(lam: &[u32]) -> bool {
    let n = lam.len();
    let e_triv = AHElem::from_perm_alg(&PermAlgElem::trivial_idempotent(n));
    let e_sign = AHElem::from_perm_alg(&PermAlgElem::sign_idempotent(n));
    let rho: Exps = (0..n as u32).rev().collect();
    let lhs = e_sign.mul(&AHElem::basis(lam.to_vec(), group_algebra::identity(n))).unwrap().mul(&e_triv).unwrap();
    let mu: Vec<i64> = lam.iter().zip(&rho).map(|(&a, &b)| a as i64 - b as i64).collect();
    let chi = AHElem::from_poly(&signed_schur_chi(&mu).expect("λ ∈ N^n"));
    let core = e_sign.mul(&AHElem::basis(rho, group_algebra::identity(n))).unwrap().mul(&e_triv).unwrap();
    lhs == chi.mul(&core).unwrap() && lhs == core.mul(&chi).unwrap()
}

/// `e f e = e (sandwich f) e` for `e = e_(n)` (or `e_(1^n)` when `antisym`).
pub fn verify_sandwich(f: &PolyN, antisym: bool) -> bool {
    let n = f.n;
    let e = if antisym { PermAlgElem::sign_idempotent(n) } else { PermAlgElem::trivial_idempotent(n) };
    let e = AHElem::from_perm_alg(&e);
    let lhs = e.mul(&AHElem::from_poly(f)).unwrap().mul(&e).unwrap();
    let g = spherical_sandwich(f, antisym);
    let rhs = e.mul(&AHElem::from_poly(&g)).unwrap().mul(&e).unwrap();
    g.is_symmetric() && lhs == rhs
}

/// `ε_{i,j}(λ)`: `+1` inside the Young diagram, `-1` outside (1-based `i, j`).
pub fn epsilon(lam: &Partition, i: usize, j: usize) -> i64 {
    if j <= lam.part(i - 1) {
        1
    } else {
        -1
    }
}

/// Evaluates both sides of the ⊕ and ⊖ sums for `(r, n)` at one point; each must equal `n!`.
pub fn wow_values(r: usize, n: usize, pt: &[Q]) -> Result<(Q, Q), Error> {
    if pt.len() != n {
        return Err(Error::Mismatch(format!("need {} coordinates", n)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if pt[i] == pt[j] {
                return Err(Error::Domain("sample point has coinciding coordinates".into()));
            }
        }
    }
    let boxes = Partition::box_partitions(r, n - r);
    let summand = |sign: i64| {
        let boxes = boxes.clone();
        move |x: &[Q]| {
            let mut total = Q::zero();
            for lam in &boxes {
                let mut prod = Q::one();
                for i in 1..=r {
                    for j in 1..=n - r {
                        let y = Q::one() / (&x[r - i] - &x[r + j - 1]);
                        prod *= Q::one() + q(sign * epsilon(lam, i, j)) * y;
                    }
                }
                total += prod;
            }
            total
        }
    };
    let fp = summand(1);
    let fm = summand(-1);
    let mut plus = Q::zero();
    let mut minus = Q::zero();
    for p in group_algebra::all_perms(n) {
        let in_young = p[..r].iter().all(|&v| v < r);
        if !in_young {
            continue;
        }
        let w = reduced_word(&p);
        plus += act_eval(&w, true, &fp, pt);
        minus += act_eval(&w, false, &fm, pt);
    }
    Ok((plus, minus))
}

/// Checks the ⊕/⊖ sum identity at the given points.
pub fn verify_lemma_wow(r: usize, n: usize, points: &[Vec<Q>]) -> Result<bool, Error> {
    let target = q(factorial(n) as i64);
    for pt in points {
        let (a, b) = wow_values(r, n, pt)?;
        if a != target || b != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Seeded sample points with pairwise-distinct small rational coordinates.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Q>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let pt: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=7).into())).collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| pt[i] != pt[j]));
        if distinct {
            out.push(pt);
        }
    }
    out
}

/// Dimension of the span of reduced images of `x^a π`, `a_i ≤ bound`.
pub fn cyclotomic_span_dim(n: usize, f_coeffs: &[Q], bound: u32) -> Result<usize, Error> {
    let mut rows: Vec<AHElem> = Vec::new();
    let mut exps = vec![vec![]];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    for a in &exps {
        for p in group_algebra::all_perms(n) {
            rows.push(AHElem::basis(a.clone(), p).cyclotomic_reduce(f_coeffs)?);
        }
    }
    let mut keys: Vec<(Exps, Perm)> = rows.iter().flat_map(|r| r.coeffs.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let l = f_coeffs.len() - 1;
    if keys.iter().any(|(a, _)| a.iter().any(|&e| e as usize >= l)) {
        return Err(Error::Verify("reduction left an exponent ≥ l".into()));
    }
    let mat: Vec<Vec<Q>> = rows.iter().map(|r| keys.iter().map(|k| r.coeffs.get(k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
    Ok(crate::linalg::rank(&mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demazure_examples() {
        let x1 = PolyN::var(2, 1);
        assert_eq!(x1.demazure(1).unwrap(), PolyN::constant(2, q(-1)));
        let e2 = PolyN::var(2, 1).mul(&PolyN::var(2, 2));
        assert!(e2.demazure(1).unwrap().is_zero());
        assert!(x1.demazure(2).is_err());
        let sym = PolyN::var(2, 1).add(&PolyN::var(2, 2));
        assert!(sym.demazure(1).unwrap().is_zero());
    }

    #[test]
    fn products() {
        let s1 = AHElem::s(2, 1);
        let x1 = AHElem::x(2, 1);
        let x2 = AHElem::x(2, 2);
        let want = x2.mul(&s1).unwrap().sub(&AHElem::one(2));
        assert_eq!(s1.mul(&x1).unwrap(), want);
        assert_eq!(x1.mul(&x2).unwrap(), AHElem::basis(vec![1, 1], vec![0, 1]));
        assert_eq!(s1.mul(&s1).unwrap(), AHElem::one(2));
    }

    #[test]
    fn twisted_actions() {
        let x1 = PolyN::var(2, 1);
        let x2 = PolyN::var(2, 2);
        assert_eq!(oplus_simple(1, &x1), x2.sub(&PolyN::one(2)));
        assert_eq!(ominus_simple(1, &x1), x2.add(&PolyN::one(2)));
        let sym = x1.mul(&x2);
        for p in group_algebra::all_perms(2) {
            assert_eq!(act_oplus(&p, &sym), sym);
        }
    }

    #[test]
    fn sandwich_examples() {
        let x1 = PolyN::var(2, 1);
        let g = spherical_sandwich(&x1, false);
        // (1/2)(x1 + x2 - 1)
        let want = x1.add(&PolyN::var(2, 2)).sub(&PolyN::one(2)).scale(&crate::qf(1, 2));
        assert_eq!(g, want);
        assert!(verify_sandwich(&x1, false));
        assert!(verify_sandwich(&x1, true));
    }

    #[test]
    fn chi_examples() {
        let s1 = PolyN::var(2, 1).add(&PolyN::var(2, 2));
        assert_eq!(signed_schur_chi(&[1, 0]).unwrap(), s1);
        assert!(signed_schur_chi(&[0, 1]).unwrap().is_zero());
        assert_eq!(signed_schur_chi(&[0, 0, 0]).unwrap(), PolyN::one(3));
        assert!(signed_schur_chi(&[0, -2]).is_err());
        // (-1, 1): λ+ρ = (0, 1), sorted (1, 0) with one swap → -1.
        assert_eq!(signed_schur_chi(&[-1, 1]).unwrap(), PolyN::one(2).scale(&q(-1)));
    }

    #[test]
    fn thick_cap_examples() {
        assert!(verify_thick_cap(&[1, 0]));
        assert!(verify_thick_cap(&[2, 0]));
        assert!(verify_thick_cap(&[3, 1, 0]));
    }

    #[test]
    fn wow_small() {
        let pts = sample_points(2, 5, 7);
        assert!(verify_lemma_wow(1, 2, &pts).unwrap());
        assert!(verify_lemma_wow(0, 2, &pts).unwrap());
        assert!(verify_lemma_wow(2, 2, &pts).unwrap());
        assert!(wow_values(1, 2, &[q(1), q(1)]).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        let w = [q(0), q(1)];
        assert!(AHElem::x(2, 1).cyclotomic_reduce(&w).unwrap().is_zero());
        assert_eq!(AHElem::x(2, 2).cyclotomic_reduce(&w).unwrap(), AHElem::s(2, 1));
        let f = [q(-1), q(0), q(1)];
        let x3 = AHElem::basis(vec![3], vec![0]);
        assert_eq!(x3.cyclotomic_reduce(&f).unwrap(), AHElem::x(1, 1));
        assert!(AHElem::x(1, 1).cyclotomic_reduce(&[q(0), q(2)]).is_err());
    }
}
