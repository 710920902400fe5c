//! A small ring interface shared by `f64`, [`Dd`] and exact rationals, so that
//! polynomial and group arithmetic can run in either float or rational mode.

use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dd::Dd;

pub trait Scalar:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num/den`, rounded in float modes.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
    fn floor(&self) -> Self;
    /// `‖self‖_{R/Z}` as an `f64`.
    fn dist_to_int(&self) -> f64;
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn floor(&self) -> Self {
        libm::floor(*self)
    }
    fn dist_to_int(&self) -> f64 {
        super::dist_to_int(*self)
    }
}

impl Scalar for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_i64(n: i64) -> Self {
        Dd::from_i64(n)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        let hi = f64::from_ratio(num, den);
        // One correction step: (num − hi·den)/den.
        let r = BigRational::new(num.clone(), den.clone()) - BigRational::from_float(hi).unwrap_or_default();
        Dd::from_f64(hi).add_f64(ToPrimitive::to_f64(&r).unwrap_or(0.0))
    }
    fn to_f64(&self) -> f64 {
        Dd::to_f64(*self)
    }
    fn floor(&self) -> Self {
        Dd::floor(*self)
    }
    fn dist_to_int(&self) -> f64 {
        let f = self.frac();
        f.min(1.0 - f)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| big_to_f64(&self.to_integer()))
    }
    fn floor(&self) -> Self {
        num_rational::Ratio::floor(self)
    }
    fn dist_to_int(&self) -> f64 {
        let r = num_rational::Ratio::round(self);
        ToPrimitive::to_f64(&(self - r).abs()).unwrap_or(0.5)
    }
}
