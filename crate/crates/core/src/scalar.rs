//! Scalar fields the linear algebra runs over.
//!
//! Everything in this crate is exact: a [`Field`] is expected to compare
//! equal to zero only when it *is* zero. Rational types implement it; floats
//! deliberately do not.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_int(v: i64) -> Self;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

/// A field whose elements are fractions of integers and can therefore be
/// reduced modulo a prime that divides no denominator.
pub trait RationalField: Field + Ord {
    /// Residue modulo `p`, or `None` when the denominator vanishes mod `p`.
    fn reduce_mod(&self, p: u64) -> Option<u64>;

    /// `Some(n)` when the value is an integer fitting in `i64`.
    fn to_i64_exact(&self) -> Option<i64>;
}

impl Field for Ratio<BigInt> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

impl RationalField for Ratio<BigInt> {
    fn reduce_mod(&self, p: u64) -> Option<u64> {
        let p_big = BigInt::from(p);
        let num = self.numer().mod_floor(&p_big).to_u64()?;
        let den = self.denom().mod_floor(&p_big).to_u64()?;
        let inv = crate::ff::inv_mod(den, p)?;
        Some(crate::ff::mul_mod(num, inv, p))
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

macro_rules! small_ratio_field {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }
        }

        impl RationalField for Ratio<$int> {
            fn reduce_mod(&self, p: u64) -> Option<u64> {
                let p_wide = p as i128;
                let num = (*self.numer() as i128).rem_euclid(p_wide) as u64;
                let den = (*self.denom() as i128).rem_euclid(p_wide) as u64;
                let inv = crate::ff::inv_mod(den, p)?;
                Some(crate::ff::mul_mod(num, inv, p))
            }

            fn to_i64_exact(&self) -> Option<i64> {
                if self.is_integer() {
                    i64::try_from(*self.numer()).ok()
                } else {
                    None
                }
            }
        }
    };
}

small_ratio_field!(i64);
small_ratio_field!(i128);

/// Least common multiple of the denominators of `values`, as a positive
/// integer of the same field.
pub fn denominator_lcm(values: &[Ratio<BigInt>]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to the primitive integer vector pointing in the
/// same direction. The zero vector maps to itself.
pub fn primitive_integer_vector(values: &[Ratio<BigInt>]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Ratio::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / g.abs()).collect()
}
