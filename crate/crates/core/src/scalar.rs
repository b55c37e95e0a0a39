//! The scalar abstraction every construction in this crate is generic over.
//!
//! All algorithms here need exact zero tests (pivot selection, kernel
//! extraction, identity checks), so the trait is only implemented for exact
//! fields. The blanket implementation covers `num_rational::Ratio<I>` for any
//! signed integer type `I`; the crate root fixes `Rational = Ratio<BigInt>` as
//! the working type. Fixed-width ratios such as `Ratio<i64>` also work and are
//! handy for small cross-checks, but they panic on overflow.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, One, Signed, ToPrimitive, Zero};

/// An exact field element.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);

    fn from_int(v: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self;

    /// -1, 0 or 1.
    fn signum_i8(&self) -> i8;

    /// `Some(n)` if the value is an integer that fits in an `i64`.
    fn to_i64(&self) -> Option<i64>;

    /// "p/q", or "p" when the denominator is one.
    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn parse_exact(s: &str) -> Option<Self>;

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Clone
        + Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Display
        + Debug
        + FromStr
        + Send
        + Sync
        + 'static,
{
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer out of range"))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio::new(
            I::from_i64(num).expect("integer out of range"),
            I::from_i64(den).expect("integer out of range"),
        )
    }

    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = I::from_str(n.trim()).ok()?;
                let d = I::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => I::from_str(s).ok().map(Ratio::from_integer),
        }
    }
}
