//! Points and displacements in the integer plane.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A vector in Z², ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vector<T = i64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Vector<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.x.add_checked(&rhs.x)?, self.y.add_checked(&rhs.y)?))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.x.sub_checked(&rhs.x)?, self.y.sub_checked(&rhs.y)?))
    }

    pub fn checked_scale(&self, k: &T) -> Result<Self> {
        Ok(Self::new(self.x.mul_checked(k)?, self.y.mul_checked(k)?))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Self::zero().checked_sub(self)
    }

    pub fn dot(&self, rhs: &Self) -> Result<T> {
        self.x.mul_checked(&rhs.x)?.add_checked(&self.y.mul_checked(&rhs.y)?)
    }

    /// `self.x * rhs.y - self.y * rhs.x`; positive when `rhs` lies
    /// counterclockwise of `self`.
    pub fn cross(&self, rhs: &Self) -> Result<T> {
        self.x.mul_checked(&rhs.y)?.sub_checked(&self.y.mul_checked(&rhs.x)?)
    }

    /// Infinity norm.
    pub fn norm(&self) -> Result<T> {
        Ok(self.x.abs_checked()?.max(self.y.abs_checked()?))
    }

    /// `(y, -x)`.
    pub fn rotate_cw(&self) -> Result<Self> {
        Ok(Self::new(self.y.clone(), T::zero().sub_checked(&self.x)?))
    }

    /// `(-y, x)`.
    pub fn rotate_ccw(&self) -> Result<Self> {
        Ok(Self::new(T::zero().sub_checked(&self.y)?, self.x.clone()))
    }

    /// Exchanges the two coordinates.
    pub fn swapped(&self) -> Self {
        Self::new(self.y.clone(), self.x.clone())
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.x.is_negative() && !self.y.is_negative()
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl<T: Scalar> From<(T, T)> for Vector<T> {
    fn from((x, y): (T, T)) -> Self {
        Self::new(x, y)
    }
}

/// A counter valuation: a point of N².
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point<T = i64> {
    x: T,
    y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if x.is_negative() || y.is_negative() {
            return Err(Error::NegativeConfiguration { x: x.to_string(), y: y.to_string() });
        }
        Ok(Self { x, y })
    }

    pub fn origin() -> Self {
        Self { x: T::zero(), y: T::zero() }
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn y(&self) -> &T {
        &self.y
    }

    pub fn to_vector(&self) -> Vector<T> {
        Vector::new(self.x.clone(), self.y.clone())
    }

    pub fn norm(&self) -> T {
        self.x.clone().max(self.y.clone())
    }
}

impl<T: Scalar> TryFrom<Vector<T>> for Point<T> {
    type Error = Error;

    fn try_from(v: Vector<T>) -> Result<Self> {
        Point::new(v.x, v.y)
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    #[test]
    fn rotations() {
        assert_eq!(v(0, 1).rotate_cw().unwrap(), v(1, 0));
        assert_eq!(v(1, 0).rotate_ccw().unwrap(), v(0, 1));
        assert_eq!(v(3, -2).rotate_ccw().unwrap().rotate_cw().unwrap(), v(3, -2));
    }

    #[test]
    fn norm_and_cross() {
        assert_eq!(v(-7, 3).norm().unwrap(), 7);
        assert_eq!(v(1, 0).cross(&v(0, 1)).unwrap(), 1);
        assert_eq!(v(0, 1).cross(&v(1, 0)).unwrap(), -1);
    }

    #[test]
    fn point_rejects_negative() {
        assert!(Point::new(0i64, -1).is_err());
        assert_eq!(Point::new(2i64, 3).unwrap().norm(), 3);
    }

    #[test]
    fn overflow_detected() {
        assert_eq!(v(i64::MAX, 0).checked_add(&v(1, 0)), Err(Error::Overflow));
        assert_eq!(v(i64::MIN, 0).rotate_ccw().map(|_| ()), Ok(()));
        assert_eq!(v(i64::MIN, 0).rotate_cw(), Err(Error::Overflow));
    }
}
