//! Exact integer scalars.
//!
//! Everything geometric in this crate is written against [`Scalar`], so the
//! same code runs over `i64` (fast, overflow-checked), `i128`, or
//! [`num_bigint::BigInt`] (unbounded). Floating point types deliberately do
//! not implement it: strict inequalities are decision boundaries here.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn add_checked(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn sub_checked(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    fn mul_checked(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    fn from_count(n: u64) -> Result<Self> {
        Self::from_u64(n).ok_or(Error::Overflow)
    }

    fn from_int(n: i64) -> Result<Self> {
        Self::from_i64(n).ok_or(Error::Overflow)
    }

    /// `|self|`, failing on `i64::MIN`-style asymmetric ranges.
    fn abs_checked(&self) -> Result<Self> {
        if self.is_negative() {
            Self::zero().sub_checked(self)
        } else {
            Ok(self.clone())
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + Ord
        + Hash
        + Debug
        + Display
        + FromStr
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn i64_overflow_is_reported() {
        assert_eq!(i64::MAX.add_checked(&1), Err(Error::Overflow));
        assert_eq!(i64::MIN.abs_checked(), Err(Error::Overflow));
        assert_eq!((-5i64).abs_checked(), Ok(5));
    }

    #[test]
    fn bigint_never_overflows() {
        let big = BigInt::from(i64::MAX);
        let sq = big.mul_checked(&big).unwrap();
        assert!(sq > BigInt::from(i64::MAX));
    }
}
