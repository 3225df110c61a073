use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// Sign of a real scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Exact field with a complex conjugation, as used by the linear algebra layer.
///
/// `real_sign` must be total on elements fixed by `conj`.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Send
    + Sync
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn conj(&self) -> Self;

    fn inverse(&self) -> Option<Self>;

    fn real_sign(&self) -> Result<Sign, ScalarError>;

    fn from_rational(r: BigRational) -> Self;

    /// Real and imaginary parts, both fixed by `conj`.
    fn re_im(&self) -> (Self, Self);

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn is_real(&self) -> bool {
        self.conj() == *self
    }
}

impl Field for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn real_sign(&self) -> Result<Sign, ScalarError> {
        Ok(if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }

    fn from_rational(r: BigRational) -> Self {
        r
    }

    fn re_im(&self) -> (Self, Self) {
        (self.clone(), Self::zero())
    }
}
