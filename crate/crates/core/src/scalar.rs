use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for every algebraic object in the crate.
///
/// All identities checked here are exact, so the intended instances are the
/// rationals (`BigRational`, `Rational64`). Anything that behaves like a field
/// under `num_traits::Num` with an ordering satisfies the bound.
pub trait Scalar:
    Num + Neg<Output = Self> + FromPrimitive + Clone + Debug + Display + PartialEq + PartialOrd + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

    /// `(-1)^k`.
    fn sign_power(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + FromPrimitive + Clone + Debug + Display + PartialEq + PartialOrd + Send + Sync + 'static
{
}
