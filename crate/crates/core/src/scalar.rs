//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Scalar`], a thin layer on top of
//! `num-traits` that adds conversion from rational literals. Only exact fields
//! implement it: standard-basis computations decide ideal membership by testing
//! coefficients against zero, which is meaningless under rounding.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// An exact field of characteristic zero.
pub trait Scalar: Num + Signed + Clone + Debug + Display + Send + Sync + 'static {
    /// Builds `num / den` in lowest terms, or `None` if the value does not fit
    /// or `den` is zero.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Converts to an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;

    /// Bit length of numerator plus denominator.
    fn height(&self) -> u64 {
        let q = self.to_big_rational();
        q.numer().bits() + q.denom().bits()
    }

    fn from_integer(n: i64) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::from(1)).expect("small integer")
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den == &BigInt::from(0) {
            return None;
        }
        Some(Ratio::new(num.clone(), den.clone()))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den == &BigInt::from(0) {
            return None;
        }
        let g = num.gcd(den);
        let (n, d) = (num / &g, den / &g);
        Some(Ratio::new(n.to_i64()?, d.to_i64()?))
    }

    fn to_big_rational(&self) -> BigRational {
        Ratio::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let q = BigRational::from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(q.to_string(), "-3/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(BigRational::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
        assert!(Ratio::<i64>::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
    }

    #[test]
    fn small_rational_overflow_is_none() {
        let big = BigInt::from(i64::MAX) * 4;
        assert!(Ratio::<i64>::from_ratio(&big, &BigInt::from(3)).is_none());
        // but reducible values still fit
        let q = Ratio::<i64>::from_ratio(&big, &BigInt::from(4)).unwrap();
        assert_eq!(*q.numer(), i64::MAX);
    }
}
