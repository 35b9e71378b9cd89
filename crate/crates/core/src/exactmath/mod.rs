//! Exact arithmetic: big rationals, dense integer polynomials, and integer
//! matrices (Bareiss determinant, Smith normal form, rational solve).

mod matrix;
mod poly;

pub use matrix::{det, smith_normal_form, solve_rational, IntMatrix};
pub use poly::IntPolynomial;

use num_bigint::BigInt;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
