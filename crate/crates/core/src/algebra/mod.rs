//! Exact arithmetic over the rationals: univariate polynomials, rational
//! functions in canonical form, rational root isolation and local data
//! (poles, Laurent coefficients, Taylor series, partial fractions).

mod linalg;
mod local;
mod modp;
mod poly;
mod ratfunc;
mod roots;
pub mod series;
#[cfg(test)]
pub(crate) mod testing;

pub use linalg::{nullspace, rank, rational_kernel, rref};
pub use local::{
    laurent_at_infinity, order_at_infinity, partial_fractions, rational_poles, series_at, PartialFractionTerm,
    PartialFractions, PoleData,
};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{integer_roots, rational_roots};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`; panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational the way the expression grammar reads it back.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
