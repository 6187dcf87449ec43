//! The Hopf ring of symmetric functions over Q in the Schur basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::partitions::Partition;
use crate::{q, Error, Q};

/// A finite Q-linear combination of Schur functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymElem {
    coeffs: BTreeMap<Partition, Q>,
}

/// A finite Q-linear combination of `s_λ ⊗ s_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymTensor {
    coeffs: BTreeMap<(Partition, Partition), Q>,
}

thread_local! {
    static LR_CACHE: RefCell<HashMap<(Partition, Partition), Vec<(Partition, u64)>>> = RefCell::new(HashMap::new());
    static COMUL_CACHE: RefCell<HashMap<Partition, Vec<(Partition, Partition, u64)>>> = RefCell::new(HashMap::new());
    static POWER_CACHE: RefCell<HashMap<Partition, BTreeMap<Partition, i64>>> = RefCell::new(HashMap::new());
    static PAIR_CACHE: RefCell<HashMap<(Partition, Partition, i64), Q>> = RefCell::new(HashMap::new());
}

impl SymElem {
    pub fn zero() -> SymElem {
        SymElem::default()
    }

    pub fn one() -> SymElem {
        SymElem::schur(Partition::empty())
    }

    pub fn scalar(c: Q) -> SymElem {
        SymElem::term(Partition::empty(), c)
    }

    pub fn term(lam: Partition, c: Q) -> SymElem {
        let mut out = SymElem::zero();
        out.add_term(lam, c);
        out
    }

    pub fn schur(lam: Partition) -> SymElem {
        SymElem::term(lam, Q::one())
    }

    /// `h_n = s_(n)`.
    pub fn complete(n: usize) -> SymElem {
        SymElem::schur(Partition::row(n))
    }

    /// `e_n = s_(1^n)`.
    pub fn elementary(n: usize) -> SymElem {
        SymElem::schur(Partition::column(n))
    }

    /// `p_n = Σ_a (-1)^a s_(n-a,1^a)`; `n = 0` is rejected.
    pub fn power(n: usize) -> Result<SymElem, Error> {
        if n == 0 {
            return Err(Error::Domain("p_0 is not defined".into()));
        }
        Ok(SymElem::power_partition(&Partition::row(n)))
    }

    /// `p_ρ` in the Schur basis.
    pub fn power_partition(rho: &Partition) -> SymElem {
        power_in_schur(rho).into_iter().map(|(l, c)| (l, q(c))).collect()
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, lam: &Partition) -> Q {
        self.coeffs.get(lam).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// The constant term, if the element is a scalar.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => self.coeffs.get(&Partition::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, lam: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&lam) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.coeffs.remove(&lam);
                }
            }
            None => {
                self.coeffs.insert(lam, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymElem, c: &Q) {
        for (l, x) in &other.coeffs {
            self.add_term(l.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> SymElem {
        if c.is_zero() {
            return SymElem::zero();
        }
        SymElem { coeffs: self.coeffs.iter().map(|(l, x)| (l.clone(), x * c)).collect() }
    }

    /// Largest size of a partition in the support, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|l| l.size()).max()
    }

    /// Drops all terms of degree above `d`.
    pub fn truncate(&self, d: usize) -> SymElem {
        SymElem { coeffs: self.coeffs.iter().filter(|(l, _)| l.size() <= d).map(|(l, c)| (l.clone(), c.clone())).collect() }
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> SymElem {
        SymElem { coeffs: self.coeffs.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect() }
    }

    /// All Schur coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn mul(&self, other: &SymElem) -> SymElem {
        let mut out = SymElem::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let xy = x * y;
                for (c, m) in lr_product(a, b) {
                    out.add_term(c, &xy * q(m as i64));
                }
            }
        }
        out
    }

    /// Product keeping only degrees `≤ d`.
    pub fn mul_trunc(&self, other: &SymElem, d: usize) -> SymElem {
        let mut out = SymElem::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a.size() + b.size() > d {
                    continue;
                }
                let xy = x * y;
                for (c, m) in lr_product(a, b) {
                    out.add_term(c, &xy * q(m as i64));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> SymElem {
        let mut out = SymElem::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn comul(&self) -> SymTensor {
        let mut out = SymTensor::default();
        for (l, x) in &self.coeffs {
            for (a, b, m) in comul_schur(l) {
                out.add_term(a, b, x * q(m as i64));
            }
        }
        out
    }

    /// `s_λ ↦ (-1)^{|λ|} s_{λ^T}`.
    pub fn antipode(&self) -> SymElem {
        self.coeffs
            .iter()
            .map(|(l, c)| (l.conjugate(), if l.size() % 2 == 1 { -c.clone() } else { c.clone() }))
            .collect()
    }

    /// `s_λ ↦ s_{λ^T}`.
    pub fn omega_invol(&self) -> SymElem {
        self.coeffs.iter().map(|(l, c)| (l.conjugate(), c.clone())).collect()
    }

    /// Coordinates in the power-sum basis.
    pub fn to_power_basis(&self) -> BTreeMap<Partition, Q> {
        let mut out: BTreeMap<Partition, Q> = BTreeMap::new();
        for (l, c) in &self.coeffs {
            for rho in Partition::all_of_size(l.size()) {
                let chi = power_in_schur(&rho).get(l).copied().unwrap_or(0);
                if chi != 0 {
                    let v = c * q(chi) / Q::from_integer(rho.z().into());
                    let e = out.entry(rho).or_insert_with(Q::zero);
                    *e += v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn from_power_basis(p: &BTreeMap<Partition, Q>) -> SymElem {
        let mut out = SymElem::zero();
        for (rho, c) in p {
            for (l, chi) in power_in_schur(rho) {
                out.add_term(l, c * q(chi));
            }
        }
        out
    }

    /// The charge-`k` Hopf pairing, `⟨p_λ, p_μ⟩_k = δ_{λμ} z_λ k^{ℓ(λ)}`.
    pub fn pairing_k(&self, other: &SymElem, k: i64) -> Q {
        let mut out = Q::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a.size() == b.size() {
                    out += x * y * schur_pairing(a, b, k);
                }
            }
        }
        out
    }

    /// `s_ν^⊥`: the adjoint of multiplication by `self` under the Hall pairing, applied to `f`.
    pub fn skew(&self, f: &SymElem) -> SymElem {
        let mut out = SymElem::zero();
        for (lam, c) in &f.coeffs {
            for (a, b, m) in comul_schur(lam) {
                let x = self.coeff(&a);
                if !x.is_zero() {
                    out.add_term(b, c * x * q(m as i64));
                }
            }
        }
        out
    }

    /// Parses `s[2,1]`, `h2`, `e3`, `p2`, or `1`, optionally with sums and rational multiples.
    pub fn parse(s: &str) -> Result<SymElem, Error> {
        let mut out = SymElem::zero();
        for (sign, tok) in split_terms(s)? {
            let (coef, atom) = split_coef(&tok)?;
            let coef = if sign { coef } else { -coef };
            let mut prod = SymElem::one();
            for a in atom.split('*').map(str::trim).filter(|a| !a.is_empty()) {
                prod = prod.mul(&parse_atom(a)?);
            }
            out.add_scaled(&prod, &coef);
        }
        Ok(out)
    }

    /// `{"[2,1]": "3/2"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (l, c) in &self.coeffs {
            m.insert(l.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SymElem, Error> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut out = SymElem::zero();
        for (k, c) in obj {
            let c = match c {
                serde_json::Value::String(s) => crate::parse_q(s)?,
                serde_json::Value::Number(n) => crate::parse_q(&n.to_string())?,
                _ => return Err(Error::Parse("bad coefficient".into())),
            };
            out.add_term(k.parse()?, c);
        }
        Ok(out)
    }
}

fn parse_atom(a: &str) -> Result<SymElem, Error> {
    let bad = || Error::Parse(format!("bad symmetric function literal: {}", a));
    if a == "1" {
        return Ok(SymElem::one());
    }
    if let Some(rest) = a.strip_prefix('s') {
        return Ok(SymElem::schur(rest.parse()?));
    }
    let (head, n) = a.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    match head {
        "h" => Ok(SymElem::complete(n)),
        "e" => Ok(SymElem::elementary(n)),
        "p" => SymElem::power(n),
        _ => Err(bad()),
    }
}

/// Splits `a + b - c` at top level (outside brackets) into signed terms. `0` is the empty sum.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(bool, String)>, Error> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = true;
    let chars: Vec<char> = s.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        // A sign right after a generator letter (h+2, e-3) or `^` belongs to the atom.
        let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace()).copied();
        let glued = matches!(prev, Some('h') | Some('e') | Some('s') | Some('^'));
        if depth == 0 && (ch == '+' || ch == '-') && !glued {
            let t = cur.trim().to_string();
            cur.clear();
            if t.is_empty() {
                if !out.is_empty() {
                    return Err(Error::Parse(format!("dangling operator in {}", s)));
                }
                if ch == '-' {
                    sign = !sign;
                }
            } else {
                out.push((sign, t));
                sign = ch == '+';
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {}", s)));
    }
    let t = cur.trim().to_string();
    if t.is_empty() {
        return Err(Error::Parse(format!("empty or dangling expression: {:?}", s)));
    }
    if t == "0" && out.is_empty() {
        return Ok(out);
    }
    out.push((sign, t));
    Ok(out)
}

/// Splits a leading rational coefficient `3/2*` or `3/2 ` from a term.
pub(crate) fn split_coef(t: &str) -> Result<(Q, String), Error> {
    let t = t.trim();
    let end = t.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(t.len());
    if end == 0 {
        return Ok((Q::one(), t.to_string()));
    }
    let c = crate::parse_q(&t[..end])?;
    let rest = t[end..].trim();
    let rest = rest.strip_prefix('*').unwrap_or(rest).trim();
    if rest.is_empty() {
        return Ok((c, "1".to_string()));
    }
    Ok((c, rest.to_string()))
}

impl FromIterator<(Partition, Q)> for SymElem {
    fn from_iter<I: IntoIterator<Item = (Partition, Q)>>(iter: I) -> SymElem {
        let mut out = SymElem::zero();
        for (l, c) in iter {
            out.add_term(l, c);
        }
        out
    }
}

impl Add for &SymElem {
    type Output = SymElem;
    fn add(self, rhs: &SymElem) -> SymElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &SymElem {
    type Output = SymElem;
    fn sub(self, rhs: &SymElem) -> SymElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &SymElem {
    type Output = SymElem;
    fn neg(self) -> SymElem {
        self.scale(&-Q::one())
    }
}

impl Mul for &SymElem {
    type Output = SymElem;
    fn mul(self, rhs: &SymElem) -> SymElem {
        SymElem::mul(self, rhs)
    }
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if l.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "s{}", l)?;
            } else {
                write!(f, "{}*s{}", a, l)?;
            }
        }
        Ok(())
    }
}

impl SymTensor {
    pub fn add_term(&mut self, a: Partition, b: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.coeffs.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<(Partition, Partition), Q> {
        &self.coeffs
    }

    pub fn coeff(&self, a: &Partition, b: &Partition) -> Q {
        self.coeffs.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn mul(&self, other: &SymTensor) -> SymTensor {
        let mut out = SymTensor::default();
        for ((a, b), x) in &self.coeffs {
            for ((c, d), y) in &other.coeffs {
                let left = SymElem::schur(a.clone()).mul(&SymElem::schur(c.clone()));
                let right = SymElem::schur(b.clone()).mul(&SymElem::schur(d.clone()));
                for (l, u) in left.coeffs() {
                    for (r, v) in right.coeffs() {
                        out.add_term(l.clone(), r.clone(), x * y * u * v);
                    }
                }
            }
        }
        out
    }

    /// `f ⊗ g` as a tensor.
    pub fn outer(f: &SymElem, g: &SymElem) -> SymTensor {
        let mut out = SymTensor::default();
        for (a, x) in f.coeffs() {
            for (b, y) in g.coeffs() {
                out.add_term(a.clone(), b.clone(), x * y);
            }
        }
        out
    }
}

/// Littlewood-Richardson coefficients: `s_λ s_μ = Σ c_ν s_ν`.
pub fn lr_product(lam: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    let (a, b) = if lam.size() >= mu.size() { (lam, mu) } else { (mu, lam) };
    let key = (a.clone(), b.clone());
    if let Some(v) = LR_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = lr_compute(a, b);
    LR_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// Adds `μ_1` boxes labelled 1, then `μ_2` labelled 2, ... as horizontal strips and keeps
/// fillings whose reverse reading word is a lattice word.
fn lr_compute(lam: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    // rows[i] holds the labels of skew boxes in row i, left to right.
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lam.len() + mu.len()];
    fn go(
        shape: &Partition,
        label: usize,
        mu: &Partition,
        rows: &mut Vec<Vec<usize>>,
        counts: &mut BTreeMap<Partition, u64>,
    ) {
        if label == mu.len() {
            *counts.entry(shape.clone()).or_insert(0) += 1;
            return;
        }
        let n = mu.part(label);
        for next in shape.add_horizontal_strip(n) {
            let mut added = Vec::new();
            for i in 0..next.len() {
                let d = next.part(i) - shape.part(i);
                if d > 0 {
                    added.push((i, d));
                }
            }
            for &(i, d) in &added {
                rows[i].extend(std::iter::repeat(label).take(d));
            }
            if lattice_ok(rows, mu.len()) {
                go(&next, label + 1, mu, rows, counts);
            }
            for &(i, d) in &added {
                let l = rows[i].len();
                rows[i].truncate(l - d);
            }
        }
    }
    go(lam, 0, mu, &mut rows, &mut counts);
    counts.into_iter().collect()
}

fn lattice_ok(rows: &[Vec<usize>], nl: usize) -> bool {
    let mut seen = vec![0usize; nl.max(1)];
    for row in rows {
        for &x in row.iter().rev() {
            seen[x] += 1;
            if x > 0 && seen[x] > seen[x - 1] {
                return false;
            }
        }
    }
    true
}

/// `δ(s_λ) = Σ c^λ_{μν} s_μ ⊗ s_ν`.
pub fn comul_schur(lam: &Partition) -> Vec<(Partition, Partition, u64)> {
    if let Some(v) = COMUL_CACHE.with(|c| c.borrow().get(lam).cloned()) {
        return v;
    }
    let mut out = Vec::new();
    for d in 0..=lam.size() {
        for mu in Partition::all_of_size(d) {
            if !lam.contains(&mu) {
                continue;
            }
            for nu in Partition::all_of_size(lam.size() - d) {
                if !lam.contains(&nu) {
                    continue;
                }
                if let Some((_, m)) = lr_product(&mu, &nu).into_iter().find(|(p, _)| p == lam) {
                    out.push((mu.clone(), nu, m));
                }
            }
        }
    }
    COMUL_CACHE.with(|c| c.borrow_mut().insert(lam.clone(), out.clone()));
    out
}

/// `p_n · s_λ` by adding border strips, computed on beta-sets.
fn power_times_schur(n: usize, lam: &Partition) -> Vec<(Partition, i64)> {
    let len = lam.len() + n;
    let beads: Vec<usize> = (0..len).map(|i| lam.part(i) + len - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        let t = b + n;
        if beads.contains(&t) {
            continue;
        }
        let between = beads.iter().filter(|&&c| c > b && c < t).count();
        let mut nb = beads.clone();
        nb[idx] = t;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}

/// `p_ρ` in the Schur basis, integer coefficients (character values).
fn power_in_schur(rho: &Partition) -> BTreeMap<Partition, i64> {
    if let Some(v) = POWER_CACHE.with(|c| c.borrow().get(rho).cloned()) {
        return v;
    }
    let mut cur: BTreeMap<Partition, i64> = BTreeMap::new();
    cur.insert(Partition::empty(), 1);
    for &n in rho.parts() {
        let mut next: BTreeMap<Partition, i64> = BTreeMap::new();
        for (l, c) in &cur {
            for (m, s) in power_times_schur(n, l) {
                *next.entry(m).or_insert(0) += c * s;
            }
        }
        next.retain(|_, v| *v != 0);
        cur = next;
    }
    POWER_CACHE.with(|c| c.borrow_mut().insert(rho.clone(), cur.clone()));
    cur
}

/// `⟨s_λ, s_μ⟩_k`.
pub fn schur_pairing(lam: &Partition, mu: &Partition, k: i64) -> Q {
    if lam.size() != mu.size() {
        return Q::zero();
    }
    let key = (lam.clone(), mu.clone(), k);
    if let Some(v) = PAIR_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let mut out = Q::zero();
    for rho in Partition::all_of_size(lam.size()) {
        let p = power_in_schur(&rho);
        let a = p.get(lam).copied().unwrap_or(0);
        let b = p.get(mu).copied().unwrap_or(0);
        if a != 0 && b != 0 {
            let kl = q(k).pow(rho.len() as i32);
            out += q(a * b) * kl / Q::from_integer(rho.z().into());
        }
    }
    PAIR_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// `s_λ(x_1, ..., x_n)` by the Jacobi-Trudi determinant.
pub fn schur_poly_eval(lam: &Partition, xs: &[Q]) -> Q {
    if lam.len() > xs.len() {
        return Q::zero();
    }
    let l = lam.len();
    if l == 0 {
        return Q::one();
    }
    let top = lam.part(0) + l;
    // h[m] = h_m(xs) by the recurrence over variables.
    let mut h = vec![Q::zero(); top + 1];
    h[0] = Q::one();
    for x in xs {
        for m in 1..=top {
            let prev = h[m - 1].clone();
            h[m] += x * prev;
        }
    }
    let mut mat = vec![vec![Q::zero(); l]; l];
    for (i, row) in mat.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let idx = lam.part(i) as i64 - i as i64 + j as i64;
            if idx >= 0 {
                *cell = h[idx as usize].clone();
            }
        }
    }
    det(mat)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut out = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            out = -out;
        }
        let piv = m[c][c].clone();
        out *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[r][j] -= v;
            }
        }
    }
    out
}

/// Determinant of a matrix of symmetric functions by cofactor expansion.
pub fn sym_det(m: &[Vec<SymElem>]) -> SymElem {
    let n = m.len();
    if n == 0 {
        return SymElem::one();
    }
    let mut out = SymElem::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SymElem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].mul(&sym_det(&minor));
        let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
        out.add_scaled(&term, &sign);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn generators() {
        assert_eq!(SymElem::complete(0), SymElem::one());
        assert_eq!(SymElem::complete(2), SymElem::schur(p(&[2])));
        let p2 = SymElem::power(2).unwrap();
        assert_eq!(p2, &SymElem::schur(p(&[2])) - &SymElem::schur(p(&[1, 1])));
        assert!(SymElem::power(0).is_err());
    }

    #[test]
    fn products() {
        let s1 = SymElem::schur(p(&[1]));
        assert_eq!(s1.mul(&s1), &SymElem::schur(p(&[2])) + &SymElem::schur(p(&[1, 1])));
        let s21 = SymElem::schur(p(&[2, 1]));
        let want: SymElem = [p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])].into_iter().map(|l| (l, q(1))).collect();
        assert_eq!(s1.mul(&s21), want);
        assert_eq!(SymElem::one().mul(&s21), s21);
        // s21 * s21 has the famous coefficient 2 on s321.
        assert_eq!(s21.mul(&s21).coeff(&p(&[3, 2, 1])), q(2));
    }

    #[test]
    fn comul_examples() {
        let d = SymElem::complete(2).comul();
        assert_eq!(d.coeffs().len(), 3);
        assert_eq!(d.coeff(&p(&[2]), &p(&[])), q(1));
        assert_eq!(d.coeff(&p(&[1]), &p(&[1])), q(1));
        assert_eq!(d.coeff(&p(&[]), &p(&[2])), q(1));
        let d = SymElem::elementary(2).comul();
        assert_eq!(d.coeff(&p(&[1, 1]), &p(&[])), q(1));
        assert_eq!(d.coeff(&p(&[1]), &p(&[1])), q(1));
        assert_eq!(d.coeffs().len(), 3);
        assert_eq!(SymElem::one().comul().coeffs().len(), 1);
    }

    #[test]
    fn pairing_examples() {
        let p1 = SymElem::power(1).unwrap();
        for k in -3..=3 {
            assert_eq!(p1.pairing_k(&p1, k), q(k));
            let v = SymElem::complete(2).pairing_k(&SymElem::elementary(2), k);
            assert_eq!(v, crate::qf(k * (k - 1), 2));
        }
        let s2 = SymElem::schur(p(&[2]));
        assert_eq!(s2.pairing_k(&s2, 1), q(1));
    }

    #[test]
    fn power_basis_examples() {
        let h1 = SymElem::complete(1).to_power_basis();
        assert_eq!(h1.len(), 1);
        assert_eq!(h1[&p(&[1])], q(1));
        let h2 = SymElem::complete(2).to_power_basis();
        assert_eq!(h2[&p(&[1, 1])], crate::qf(1, 2));
        assert_eq!(h2[&p(&[2])], crate::qf(1, 2));
    }

    #[test]
    fn involutions() {
        let s21 = SymElem::schur(p(&[2, 1]));
        assert_eq!(s21.antipode(), -&s21);
        assert_eq!(SymElem::complete(3).omega_invol(), SymElem::elementary(3));
        assert_eq!(SymElem::one().antipode(), SymElem::one());
    }

    #[test]
    fn evaluation() {
        let xs = [q(1), q(2)];
        assert_eq!(schur_poly_eval(&p(&[1]), &xs), q(3));
        assert_eq!(schur_poly_eval(&p(&[1, 1]), &xs), q(2));
        let zeros = [q(0), q(0), q(0)];
        assert_eq!(schur_poly_eval(&p(&[]), &zeros), q(1));
        assert_eq!(schur_poly_eval(&p(&[2, 1]), &zeros), q(0));
        assert_eq!(schur_poly_eval(&p(&[1, 1, 1]), &xs), q(0));
    }

    #[test]
    fn parse_literals() {
        assert_eq!(SymElem::parse("s[2,1]").unwrap(), SymElem::schur(p(&[2, 1])));
        assert_eq!(SymElem::parse("h2").unwrap(), SymElem::complete(2));
        assert_eq!(SymElem::parse("e3").unwrap(), SymElem::elementary(3));
        assert_eq!(SymElem::parse("p2").unwrap(), SymElem::power(2).unwrap());
        let v = SymElem::parse("3/2 s[1] - h1*h1").unwrap();
        assert_eq!(v.coeff(&p(&[1])), crate::qf(3, 2));
        assert_eq!(v.coeff(&p(&[2])), q(-1));
        let j = v.to_json();
        assert_eq!(SymElem::from_json(&j).unwrap(), v);
    }
}
