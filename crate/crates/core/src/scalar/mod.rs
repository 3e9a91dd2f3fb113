//! Exact scalar fields and their absolute values.

pub mod field;
pub mod gf;
pub mod literal;
pub mod place;
pub mod quad;
pub mod real;

use thiserror::Error;

pub use field::{pow_u, ExactField, Field};
pub use gf::{is_prime, Gf};
pub use literal::{parse_rational, Literal};
pub use place::{compare_abs, padic_abs, padic_valuation, Embedding, Place, Valuation, Valued};
pub use quad::{is_squarefree, rational_sqrt, rational_sqrt_in_quadratic, squarefree_part, QuadExt};
pub use real::{sqrt_bounds, RealAlg};

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("radicand {0} is not a square-free integer greater than 1")]
    BadRadicand(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("scalar {scalar} has no absolute value at place {place}")]
    IncompatiblePlace { scalar: String, place: String },
    #[error("{0}")]
    Parse(String),
}

/// `x` as a rational, for building test and fixture values.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
