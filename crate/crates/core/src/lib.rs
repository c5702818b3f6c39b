//! Exact computations around permutations with `π^p = 1`.
//!
//! The crate counts involutions (and more generally p-th roots of the
//! identity) with arbitrary-precision integers, evaluates the weighted
//! generating polynomials `t_n(x, y)` and `g_n(x, y)`, computes 2-adic and
//! p-adic valuations of the resulting sequences, and analyses their
//! periodicity modulo integers. Every closed form has a brute-force
//! counterpart in [`enumeration`] so the two can be checked against each
//! other.

pub mod algebra;
pub mod conjecture;
pub mod enumeration;
mod error;
pub mod checks;
pub mod golden;
pub mod periodicity;
pub mod sequences;
pub mod valuations;

pub use algebra::{BivariatePoly, Dyadic, ExactInt, Valuation};
pub use error::{Error, Result};
