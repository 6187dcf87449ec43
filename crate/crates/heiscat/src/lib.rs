//! Exact computer algebra for the degenerate Heisenberg category and its Grothendieck ring.
//!
//! Scalars are `num_rational::BigRational` throughout.

pub mod partitions;
pub mod symfunc;
pub mod heis_ring;
pub mod linalg;
pub mod group_algebra;
pub mod daha;
pub mod diagram_engine;
pub mod thick_karoubi;

pub use num_rational::BigRational as Q;
pub use partitions::Partition;
pub use symfunc::{SymElem, SymTensor};
pub use heis_ring::{FockState, HeisElem, HeisTensor};
pub use group_algebra::{ColoredBlockElem, PermAlgElem};
pub use daha::{AHElem, PolyN};

use num_traits::One;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("charge mismatch: {0} vs {1}")]
    Charge(i64, i64),
    #[error("type mismatch: {0}")]
    Mismatch(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `a/b` as a rational.
pub fn qf(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

/// Generalized binomial `binom(k, r)` for integer `k` and `r ≥ 0`.
pub fn binom_q(k: i64, r: usize) -> Q {
    let mut out = Q::one();
    for i in 0..r as i64 {
        out = out * q(k - i) / q(i + 1);
    }
    out
}

/// Ordinary binomial coefficient.
pub fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..r {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Parses a rational literal `3`, `-1/2`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    s.trim().parse::<Q>().map_err(|_| Error::Parse(format!("bad rational: {}", s)))
}
