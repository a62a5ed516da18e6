//! Exact enumeration of permutations that two parallel stacks can produce.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactnum`]: big-integer polynomials and truncated power series.
//! - [`machine`]: the two-stack device, the Even-Itai test, canonical words.
//! - [`arches`]: arch systems, their crossing graph, canonicalization.
//! - [`walks`]: corner-weighted lattice loop series and their closed forms.
//! - [`equations`]: order-by-order solvers for C, S, S• and S̃.
//! - [`analysis`]: positivity checks, radius estimates, growth bounds.
//! - [`report`]: serializable coefficient tables.
//!
//! # Variable conventions
//!
//! | series | main variable | other variables |
//! |---|---|---|
//! | `Q(a, u)` | `u`: half-length | `a`: NW and ES corners |
//! | `Q(a, s, u)` | `u`: half-length | `s`: E steps |
//! | `C(b, v)` | `v`: arches | `b`: left-right pairs |
//! | `S(t)`, `S•(t)`, `S̃(t)` | `t`: permutation size | |
//! | `W00(a, s, t)`, `H00(a, s, t)` | `t`: vertical steps | `s`: horizontal steps |
//!
//! Walk letters and stack operations correspond as E = push on stack 1,
//! N = push on stack 2, W = pop stack 1, S = pop stack 2.

pub mod analysis;
pub mod arches;
pub mod equations;
pub mod exactnum;
pub mod machine;
pub mod report;
pub mod walks;

pub use arches::{ArchSystem, Colour, CrossingGraph, LatticeWalk};
pub use exactnum::{
    BiTruncatedSeries, IntPolynomial, LaurentPolynomial, Polynomial, RatPolynomial, Ring,
    TruncatedSeries, Var,
};
pub use machine::{EvenItaiGraph, OpWord, Permutation, Step};
pub use report::SeriesReport;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term {0} is not invertible")]
    NotInvertible(String),
    #[error("no square root: {0}")]
    NotSquareRootable(String),
    #[error("integrality violated: {0}")]
    NonIntegral(String),
    #[error("invalid operation word at position {position}: {reason}")]
    InvalidWord { position: usize, reason: String },
    #[error("permutation is not achievable with two parallel stacks")]
    NotAchievable,
    #[error("size {n} exceeds the brute-force bound {bound}")]
    OverBound { n: usize, bound: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("contract violated: {0}")]
    Contract(String),
}
