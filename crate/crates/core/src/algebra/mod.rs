//! Exact arithmetic kernel: big integers, dyadic rationals, sparse bivariate
//! polynomials and p-adic valuations.

mod arith;
mod dyadic;
mod poly;
mod valuation;

pub use arith::{
    binomial, factorial, general_product, is_prime, odd_part, odd_product, odd_product_ratio,
    val2, val_p,
};
pub use dyadic::Dyadic;
pub use poly::BivariatePoly;
pub use valuation::Valuation;

/// Arbitrary-precision signed integer. Zero is canonical (no negative zero)
/// and values round-trip through their decimal `Display`/`FromStr` forms.
pub type ExactInt = num_bigint::BigInt;
