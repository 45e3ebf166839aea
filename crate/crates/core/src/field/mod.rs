//! The computable non-Archimedean field: rational functions over `Q`
//! with the `t`-adic valuation.

mod parse;
mod poly;
mod scalar;
mod valuation;

pub use poly::{rational_gcd, Poly, RatPoly};
pub use scalar::{abs_cmp, eq2_check, Scalar};
pub use valuation::Valuation;

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal field interface shared by `Q` and `Q(t)`, so that polynomial
/// code can be written once for both coefficient domains.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(k: i64) -> Self;
}

impl Field for BigRational {
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(k.into())
    }
}

impl Field for Scalar {
    fn from_i64(k: i64) -> Self {
        Scalar::from_int(k)
    }
}
