//! The ring `Heis_k`, its comultiplications and symmetries, and the Fock spaces `V(l|m)`.
//!
//! Elements are stored in the normal order `s_μ^- s_λ^+` for every charge.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::partitions::Partition;
use crate::symfunc::{comul_schur, lr_product, schur_pairing, split_coef, split_terms, SymElem};
use crate::{q, Error, Q};

/// `Σ c · s_μ^- s_λ^+` in `Heis_k`, keyed by `(μ, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisElem {
    pub charge: i64,
    coeffs: BTreeMap<(Partition, Partition), Q>,
}

/// An element of `Heis_l ⊗ Heis_m`, keyed by `((μ1, λ1), (μ2, λ2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisTensor {
    pub charges: (i64, i64),
    coeffs: BTreeMap<((Partition, Partition), (Partition, Partition)), Q>,
}

/// A vector in `V(l|m)`: `l` copies of `Sym` followed by `m` copies of `Sym^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    pub arity: (usize, usize),
    coeffs: BTreeMap<Vec<Partition>, Q>,
}

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

impl HeisElem {
    pub fn zero(k: i64) -> HeisElem {
        HeisElem { charge: k, coeffs: BTreeMap::new() }
    }

    pub fn one(k: i64) -> HeisElem {
        HeisElem::basis(k, Partition::empty(), Partition::empty())
    }

    pub fn scalar(k: i64, c: Q) -> HeisElem {
        let mut out = HeisElem::zero(k);
        out.add_term(Partition::empty(), Partition::empty(), c);
        out
    }

    /// `s_μ^- s_λ^+`.
    pub fn basis(k: i64, mu: Partition, lam: Partition) -> HeisElem {
        let mut out = HeisElem::zero(k);
        out.add_term(mu, lam, Q::one());
        out
    }

    pub fn embed_plus(f: &SymElem, k: i64) -> HeisElem {
        let mut out = HeisElem::zero(k);
        for (l, c) in f.coeffs() {
            out.add_term(Partition::empty(), l.clone(), c.clone());
        }
        out
    }

    pub fn embed_minus(f: &SymElem, k: i64) -> HeisElem {
        let mut out = HeisElem::zero(k);
        for (l, c) in f.coeffs() {
            out.add_term(l.clone(), Partition::empty(), c.clone());
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<(Partition, Partition), Q> {
        &self.coeffs
    }

    pub fn coeff(&self, mu: &Partition, lam: &Partition) -> Q {
        self.coeffs.get(&(mu.clone(), lam.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mu: Partition, lam: Partition, c: Q) {
        add_to(&mut self.coeffs, (mu, lam), c);
    }

    pub fn add(&self, other: &HeisElem) -> Result<HeisElem, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for ((m, l), c) in &other.coeffs {
            out.add_term(m.clone(), l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeisElem) -> Result<HeisElem, Error> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> HeisElem {
        let mut out = HeisElem::zero(self.charge);
        for ((m, l), x) in &self.coeffs {
            out.add_term(m.clone(), l.clone(), x * c);
        }
        out
    }

    fn check(&self, other: &HeisElem) -> Result<(), Error> {
        if self.charge != other.charge {
            return Err(Error::Charge(self.charge, other.charge));
        }
        Ok(())
    }

    /// The Heisenberg double product, straightened to normal order.
    pub fn mul(&self, other: &HeisElem) -> Result<HeisElem, Error> {
        self.check(other)?;
        let k = self.charge;
        let mut out = HeisElem::zero(k);
        for ((e, f), x) in &self.coeffs {
            for ((g, h), y) in &other.coeffs {
                let xy = x * y;
                let cf = comul_schur(f);
                let cg = comul_schur(g);
                for (f1, f2, a) in &cf {
                    for (g1, g2, b) in &cg {
                        if f1.size() != g2.size() {
                            continue;
                        }
                        let pair = schur_pairing(f1, g2, k);
                        if pair.is_zero() {
                            continue;
                        }
                        let c = &xy * &pair * q((*a * *b) as i64);
                        for (mu, m1) in lr_product(e, g1) {
                            for (lam, m2) in lr_product(f2, h) {
                                out.add_term(mu.clone(), lam, &c * q((m1 * m2) as i64));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `δ_{l|m}`: `Heis_{l+m} → Heis_l ⊗ Heis_m`.
    pub fn delta_lm(&self, l: i64, m: i64) -> Result<HeisTensor, Error> {
        if self.charge != l + m {
            return Err(Error::Charge(self.charge, l + m));
        }
        let mut out = HeisTensor::zero(l, m);
        for ((mu, lam), c) in &self.coeffs {
            for (m1, m2, a) in comul_schur(mu) {
                for (l1, l2, b) in comul_schur(lam) {
                    add_to(&mut out.coeffs, ((m1.clone(), l1), (m2.clone(), l2)), c * q((a * b) as i64));
                }
            }
        }
        Ok(out)
    }

    /// The anti-isomorphism `σ_k: Heis_k → Heis_{-k}`, `s_λ^± ↦ (-1)^{|λ|} s_{λ^T}^±`.
    pub fn sigma(&self) -> HeisElem {
        let k = -self.charge;
        let mut out = HeisElem::zero(k);
        for ((mu, lam), c) in &self.coeffs {
            let sign = if (mu.size() + lam.size()) % 2 == 0 { Q::one() } else { -Q::one() };
            let plus = HeisElem::basis(k, Partition::empty(), lam.conjugate());
            let minus = HeisElem::basis(k, mu.conjugate(), Partition::empty());
            let t = plus.mul(&minus).expect("same charge");
            out = out.add(&t.scale(&(c * sign))).expect("same charge");
        }
        out
    }

    /// The isomorphism `ω_k: Heis_k → Heis_{-k}`, `s_λ^± ↦ s_{λ^T}^∓`.
    pub fn omega(&self) -> HeisElem {
        let k = -self.charge;
        let mut out = HeisElem::zero(k);
        for ((mu, lam), c) in &self.coeffs {
            let a = HeisElem::basis(k, Partition::empty(), mu.conjugate());
            let b = HeisElem::basis(k, lam.conjugate(), Partition::empty());
            let t = a.mul(&b).expect("same charge");
            out = out.add(&t.scale(c)).expect("same charge");
        }
        out
    }

    /// Acts on a Fock vector via the iterated comultiplication.
    pub fn fock_act(&self, v: &FockState) -> Result<FockState, Error> {
        let (l, m) = v.arity;
        let k = m as i64 - l as i64;
        if self.charge != k {
            return Err(Error::Charge(self.charge, k));
        }
        let mut out = FockState::zero(l, m);
        for ((mu, lam), c) in &self.coeffs {
            let w = spread(lam, true, v);
            let w = spread(mu, false, &w);
            for (key, x) in w.coeffs {
                add_to(&mut out.coeffs, key, x * c);
            }
        }
        Ok(out)
    }

    /// Parses ring literals: `h+2`, `e-3`, `s+[2,1]`, `s-[1,1]`, `k`, products with `*`, sums.
    pub fn parse(s: &str, k: i64) -> Result<HeisElem, Error> {
        let mut out = HeisElem::zero(k);
        for (sign, tok) in split_terms(s)? {
            let (coef, atoms) = split_coef(&tok)?;
            let coef = if sign { coef } else { -coef };
            let mut prod = HeisElem::one(k);
            for a in atoms.split('*').map(str::trim).filter(|a| !a.is_empty()) {
                prod = prod.mul(&parse_heis_atom(a, k)?)?;
            }
            out = out.add(&prod.scale(&coef))?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|((m, l), c)| serde_json::json!({"minus": m.to_string(), "plus": l.to_string(), "c": c.to_string()}))
            .collect();
        serde_json::json!({"charge": self.charge, "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<HeisElem, Error> {
        let bad = || Error::Parse("bad HeisElem JSON".into());
        let k = v.get("charge").and_then(|c| c.as_i64()).ok_or_else(bad)?;
        let mut out = HeisElem::zero(k);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let m: Partition = t.get("minus").and_then(|x| x.as_str()).ok_or_else(bad)?.parse()?;
            let l: Partition = t.get("plus").and_then(|x| x.as_str()).ok_or_else(bad)?.parse()?;
            let c = crate::parse_q(t.get("c").and_then(|x| x.as_str()).ok_or_else(bad)?)?;
            out.add_term(m, l, c);
        }
        Ok(out)
    }
}

fn parse_heis_atom(a: &str, k: i64) -> Result<HeisElem, Error> {
    let bad = || Error::Parse(format!("unknown ring literal: {}", a));
    if a == "1" {
        return Ok(HeisElem::one(k));
    }
    if a == "k" {
        return Ok(HeisElem::scalar(k, q(k)));
    }
    let mut chars = a.chars();
    let head = chars.next().ok_or_else(bad)?;
    let pm = chars.next().ok_or_else(bad)?;
    let rest: String = chars.collect();
    let f = match head {
        's' => SymElem::schur(rest.parse()?),
        'h' => SymElem::complete(rest.parse().map_err(|_| bad())?),
        'e' => SymElem::elementary(rest.parse().map_err(|_| bad())?),
        'p' => SymElem::power(rest.parse().map_err(|_| bad())?)?,
        _ => return Err(bad()),
    };
    match pm {
        '+' => Ok(HeisElem::embed_plus(&f, k)),
        '-' => Ok(HeisElem::embed_minus(&f, k)),
        _ => Err(bad()),
    }
}

impl fmt::Display for HeisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, l), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            if !m.is_empty() {
                write!(f, "*s-{}", m)?;
            }
            if !l.is_empty() {
                write!(f, "*s+{}", l)?;
            }
        }
        Ok(())
    }
}

/// Applies `s_λ^±` spread across all tensor factors by the iterated comultiplication.
fn spread(lam: &Partition, plus: bool, v: &FockState) -> FockState {
    let (l, m) = v.arity;
    let n = l + m;
    let mut out = FockState::zero(l, m);
    if n == 0 {
        if lam.is_empty() {
            return v.clone();
        }
        return out;
    }
    for (key, c) in &v.coeffs {
        let mut acc: Vec<(Vec<Partition>, Q)> = Vec::new();
        spread_rec(lam, plus, l, 0, key, &mut Vec::new(), c.clone(), &mut acc);
        for (k2, x) in acc {
            add_to(&mut out.coeffs, k2, x);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn spread_rec(
    lam: &Partition,
    plus: bool,
    l: usize,
    i: usize,
    key: &[Partition],
    prefix: &mut Vec<Partition>,
    c: Q,
    acc: &mut Vec<(Vec<Partition>, Q)>,
) {
    let n = key.len();
    if i + 1 == n {
        for (nu, x) in single_factor(lam, plus, i < l, &key[i]).coeffs() {
            let mut k2 = prefix.clone();
            k2.push(nu.clone());
            acc.push((k2, &c * x));
        }
        return;
    }
    for (a, b, mult) in comul_schur(lam) {
        let img = single_factor(&a, plus, i < l, &key[i]);
        for (nu, x) in img.coeffs() {
            prefix.push(nu.clone());
            spread_rec(&b, plus, l, i + 1, key, prefix, &c * x * q(mult as i64), acc);
            prefix.pop();
        }
    }
}

/// On `Sym`: `f^+` multiplies, `f^-` is `f^⊥`. On `Sym^∨` the roles swap.
fn single_factor(lam: &Partition, plus: bool, is_sym: bool, nu: &Partition) -> SymElem {
    let f = SymElem::schur(lam.clone());
    let v = SymElem::schur(nu.clone());
    if plus == is_sym {
        f.mul(&v)
    } else {
        f.skew(&v)
    }
}

impl HeisTensor {
    pub fn zero(l: i64, m: i64) -> HeisTensor {
        HeisTensor { charges: (l, m), coeffs: BTreeMap::new() }
    }

    pub fn outer(a: &HeisElem, b: &HeisElem) -> HeisTensor {
        let mut out = HeisTensor::zero(a.charge, b.charge);
        for (x, c) in &a.coeffs {
            for (y, d) in &b.coeffs {
                add_to(&mut out.coeffs, (x.clone(), y.clone()), c * d);
            }
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<((Partition, Partition), (Partition, Partition)), Q> {
        &self.coeffs
    }

    pub fn coeff(&self, left: &(Partition, Partition), right: &(Partition, Partition)) -> Q {
        self.coeffs.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(Q::zero)
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &HeisTensor) -> Result<HeisTensor, Error> {
        if self.charges != other.charges {
            return Err(Error::Charge(self.charges.0, other.charges.0));
        }
        let (l, m) = self.charges;
        let mut out = HeisTensor::zero(l, m);
        for (((a1, a2), (b1, b2)), x) in &self.coeffs {
            for (((c1, c2), (d1, d2)), y) in &other.coeffs {
                let left = HeisElem::basis(l, a1.clone(), a2.clone()).mul(&HeisElem::basis(l, c1.clone(), c2.clone()))?;
                let right = HeisElem::basis(m, b1.clone(), b2.clone()).mul(&HeisElem::basis(m, d1.clone(), d2.clone()))?;
                for (p, u) in &left.coeffs {
                    for (r, w) in &right.coeffs {
                        add_to(&mut out.coeffs, (p.clone(), r.clone()), x * y * u * w);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(((m1, l1), (m2, l2)), c)| {
                serde_json::json!({
                    "left": {"minus": m1.to_string(), "plus": l1.to_string()},
                    "right": {"minus": m2.to_string(), "plus": l2.to_string()},
                    "c": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({"charges": [self.charges.0, self.charges.1], "terms": terms})
    }
}

impl FockState {
    pub fn zero(l: usize, m: usize) -> FockState {
        FockState { arity: (l, m), coeffs: BTreeMap::new() }
    }

    /// The basis vector indexed by a tuple of partitions.
    pub fn basis(l: usize, m: usize, parts: Vec<Partition>) -> Result<FockState, Error> {
        if parts.len() != l + m {
            return Err(Error::Mismatch(format!("V({}|{}) needs {} partitions, got {}", l, m, l + m, parts.len())));
        }
        let mut out = FockState::zero(l, m);
        out.coeffs.insert(parts, Q::one());
        Ok(out)
    }

    pub fn vacuum(l: usize, m: usize) -> FockState {
        FockState::basis(l, m, vec![Partition::empty(); l + m]).expect("arity matches")
    }

    pub fn charge(&self) -> i64 {
        self.arity.1 as i64 - self.arity.0 as i64
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<Partition>, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, parts: &[Partition]) -> Q {
        self.coeffs.get(parts).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, parts: Vec<Partition>, c: Q) {
        assert_eq!(parts.len(), self.arity.0 + self.arity.1);
        add_to(&mut self.coeffs, parts, c);
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let parts: Vec<String> = k.iter().map(|p| p.to_string()).collect();
                serde_json::json!({"parts": parts, "c": c.to_string()})
            })
            .collect();
        serde_json::json!({"l": self.arity.0, "m": self.arity.1, "terms": terms})
    }
}

/// Checks `h_m^+ e_n^- = Σ_r binom(k, r) e_{n-r}^- h_{m-r}^+`.
pub fn verify_upper(m: usize, n: usize, k: i64) -> bool {
    let lhs = HeisElem::embed_plus(&SymElem::complete(m), k)
        .mul(&HeisElem::embed_minus(&SymElem::elementary(n), k))
        .expect("same charge");
    let mut rhs = HeisElem::zero(k);
    for r in 0..=m.min(n) {
        rhs.add_term(Partition::column(n - r), Partition::row(m - r), crate::binom_q(k, r));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn embeddings() {
        let a = HeisElem::embed_plus(&SymElem::complete(2), 3);
        assert_eq!(a.coeff(&p(&[]), &p(&[2])), q(1));
        let b = HeisElem::embed_minus(&SymElem::elementary(2), 3);
        assert_eq!(b.coeff(&p(&[1, 1]), &p(&[])), q(1));
        assert_eq!(HeisElem::embed_plus(&SymElem::one(), 3), HeisElem::one(3));
        assert_eq!(HeisElem::embed_minus(&SymElem::one(), 3), HeisElem::one(3));
    }

    #[test]
    fn products() {
        for k in -2..=2 {
            let x = HeisElem::parse("h+1 * e-1", k).unwrap();
            let mut want = HeisElem::basis(k, p(&[1]), p(&[1]));
            want.add_term(p(&[]), p(&[]), q(k));
            assert_eq!(x, want);
            let x = HeisElem::parse("h+2 * e-1", k).unwrap();
            let mut want = HeisElem::basis(k, p(&[1]), p(&[2]));
            want.add_term(p(&[]), p(&[1]), q(k));
            assert_eq!(x, want);
            assert_eq!(HeisElem::parse("h+2*h+3", k).unwrap(), HeisElem::parse("h+3*h+2", k).unwrap());
        }
    }

    #[test]
    fn upper_examples() {
        assert!(verify_upper(1, 1, 0));
        assert!(verify_upper(2, 2, -3));
        assert!(verify_upper(0, 5, 2));
    }

    #[test]
    fn delta_examples() {
        let d = HeisElem::embed_plus(&SymElem::complete(2), 3).delta_lm(1, 2).unwrap();
        assert_eq!(d.coeffs().len(), 3);
        let e = (p(&[]), p(&[]));
        assert_eq!(d.coeff(&(p(&[]), p(&[2])), &e), q(1));
        assert_eq!(d.coeff(&(p(&[]), p(&[1])), &(p(&[]), p(&[1]))), q(1));
        assert_eq!(d.coeff(&e, &(p(&[]), p(&[2]))), q(1));
        let d = HeisElem::one(1).delta_lm(0, 1).unwrap();
        assert_eq!(d, HeisTensor::outer(&HeisElem::one(0), &HeisElem::one(1)));
        assert!(HeisElem::one(1).delta_lm(1, 1).is_err());
    }

    #[test]
    fn symmetries() {
        let s1 = HeisElem::parse("s+[1]", 2).unwrap();
        assert_eq!(s1.sigma(), HeisElem::parse("s+[1]", -2).unwrap().scale(&q(-1)));
        assert_eq!(HeisElem::parse("h+3", 2).unwrap().omega(), HeisElem::parse("e-3", -2).unwrap());
    }

    #[test]
    fn fock_examples() {
        let v = FockState::basis(1, 0, vec![p(&[1])]).unwrap();
        let w = HeisElem::parse("h+1", -1).unwrap().fock_act(&v).unwrap();
        let mut want = FockState::zero(1, 0);
        want.add_term(vec![p(&[2])], q(1));
        want.add_term(vec![p(&[1, 1])], q(1));
        assert_eq!(w, want);
        let v = FockState::vacuum(0, 1);
        let w = HeisElem::parse("e-1", 1).unwrap().fock_act(&v).unwrap();
        assert_eq!(w, FockState::basis(0, 1, vec![p(&[1])]).unwrap());
        let z = FockState::zero(1, 1);
        assert!(HeisElem::parse("h+2*e-1", 0).unwrap().fock_act(&z).unwrap().is_zero());
        assert!(HeisElem::one(1).fock_act(&FockState::vacuum(1, 0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = HeisElem::parse("h+2*e-1 - 1/2 s-[1,1]", 1).unwrap();
        assert_eq!(HeisElem::from_json(&x.to_json()).unwrap(), x);
    }
}
