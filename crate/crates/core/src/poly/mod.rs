//! Exact sparse multivariate polynomials over the rationals.

mod context;
mod monomial;
pub mod parse;
mod polynomial;
mod weight;

pub use context::VariableContext;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use weight::{Degree, WeightVector};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Coefficient field. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
