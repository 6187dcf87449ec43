//! Partitions and the small amount of tableau combinatorics the rest of the crate needs.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A weakly decreasing sequence of positive integers. The empty partition is `[]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    ///
    /// Panics if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {:?}",
            parts
        );
        Partition { parts }
    }

    /// Like `new` but reports bad input instead of panicking.
    pub fn try_new(mut parts: Vec<usize>) -> Result<Partition, Error> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {:?}", parts)));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or `[]` when `n = 0`.
    pub fn row(n: usize) -> Partition {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Partition {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        let parts = (0..w)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// True when the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// True when the diagram fits in `r` rows and `c` columns.
    pub fn fits_in_box(&self, r: usize, c: usize) -> bool {
        self.len() <= r && self.part(0) <= c
    }

    /// `z_λ = Π_i i^{m_i} m_i!`.
    pub fn z(&self) -> u128 {
        let mut out: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0u128;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
                out *= p as u128 * m;
            }
        }
        out
    }

    /// Hook length of box `(i, j)`, 0-based.
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// `f^λ`, the number of standard Young tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let n = self.size() as u128;
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        let mut k = 1u128;
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                num *= k;
                k += 1;
                den *= self.hook(i, j) as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(k - 1, n);
        num / den
    }

    /// All `μ ⊇ λ` with `μ/λ` a horizontal strip of size `n`.
    pub fn add_horizontal_strip(&self, n: usize) -> Vec<Partition> {
        // Row i can grow up to part(i-1) (row 0 unbounded); row len() is a new row.
        let rows = self.len() + 1;
        let mut out = Vec::new();
        let mut cur = self.parts.clone();
        cur.push(0);
        fn go(lam: &Partition, row: usize, rows: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if row == rows {
                if left == 0 {
                    out.push(Partition::new(cur.clone()));
                }
                return;
            }
            let cap = if row == 0 { left } else { (lam.part(row - 1) - lam.part(row)).min(left) };
            for a in 0..=cap {
                cur[row] = lam.part(row) + a;
                go(lam, row + 1, rows, left - a, cur, out);
            }
            cur[row] = lam.part(row);
        }
        go(self, 0, rows, n, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All `μ ⊆ λ` with `λ/μ` a horizontal strip of size `n`.
    pub fn remove_horizontal_strip(&self, n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = self.parts.clone();
        fn go(lam: &Partition, row: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if row == lam.len() {
                if left == 0 {
                    out.push(Partition::new(cur.clone()));
                }
                return;
            }
            let cap = (lam.part(row) - lam.part(row + 1)).min(left);
            for a in 0..=cap {
                cur[row] = lam.part(row) - a;
                go(lam, row + 1, left - a, cur, out);
            }
            cur[row] = lam.part(row);
        }
        go(self, 0, n, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All `μ ⊇ λ` with `μ/λ` a vertical strip of size `n`.
    pub fn add_vertical_strip(&self, n: usize) -> Vec<Partition> {
        self.conjugate()
            .add_horizontal_strip(n)
            .into_iter()
            .map(|p| p.conjugate())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// All `μ ⊆ λ` with `λ/μ` a vertical strip of size `n`.
    pub fn remove_vertical_strip(&self, n: usize) -> Vec<Partition> {
        self.conjugate()
            .remove_horizontal_strip(n)
            .into_iter()
            .map(|p| p.conjugate())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// All partitions with at most `r` parts, each at most `c`.
    pub fn box_partitions(r: usize, c: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn go(r: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == r {
                out.push(Partition::new(cur.clone()));
                return;
            }
            for p in 0..=max {
                cur.push(p);
                go(r, p, cur, out);
                cur.pop();
            }
        }
        go(r, c, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                go(left - p, p, cur, out);
                cur.pop();
            }
        }
        go(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `n`.
    pub fn up_to_size(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// The staircase `ρ = (n-1, n-2, ..., 0)` as a plain vector.
    pub fn rho(n: usize) -> Vec<usize> {
        (0..n).rev().collect()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `[3,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Partition, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad partition literal: {}", s)))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition literal: {}", s))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::try_new(parts)
    }
}

impl From<&[usize]> for Partition {
    fn from(v: &[usize]) -> Partition {
        let mut v = v.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn box_examples() {
        assert_eq!(Partition::box_partitions(1, 0), vec![Partition::empty()]);
        assert_eq!(Partition::box_partitions(1, 1), vec![Partition::empty(), p(&[1])]);
        assert_eq!(Partition::box_partitions(2, 3).len(), 10);
    }

    #[test]
    fn strip_examples() {
        assert_eq!(p(&[1]).add_horizontal_strip(1), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(Partition::empty().add_horizontal_strip(2), vec![p(&[2])]);
        assert_eq!(p(&[2, 1]).remove_vertical_strip(1), vec![p(&[1, 1]), p(&[2])]);
        assert!(p(&[1]).remove_vertical_strip(2).is_empty());
        assert_eq!(p(&[3, 1]).add_horizontal_strip(0), vec![p(&[3, 1])]);
        assert_eq!(p(&[3, 1]).remove_vertical_strip(0), vec![p(&[3, 1])]);
    }

    #[test]
    fn tableaux_examples() {
        assert_eq!(p(&[4]).num_standard_tableaux(), 1);
        assert_eq!(p(&[1, 1, 1]).num_standard_tableaux(), 1);
        assert_eq!(p(&[2, 1]).num_standard_tableaux(), 2);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["[]", "[3,1]", "[2,2,1]"] {
            assert_eq!(s.parse::<Partition>().unwrap().to_string(), s);
        }
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1]).z(), 2);
        assert_eq!(p(&[2]).z(), 2);
        assert_eq!(p(&[2, 1, 1]).z(), 4);
        assert_eq!(p(&[3, 3]).z(), 18);
    }
}
