use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::literal::Literal;
use super::Rational;

/// A commutative field usable as the coordinate ring of a projective plane.
///
/// The arithmetic surface is the `num-traits` one (`Zero`, `One`, the std
/// operators), so generic code also runs on `f32`/`f64` for numerical
/// experiments. Exact decision procedures require [`ExactField`].
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
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Image of a rational number, `None` when the denominator vanishes in the field.
    fn from_rational(q: &Rational) -> Option<Self>;

    /// Multiplicative inverse, `None` for zero.
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Characteristic of the field (0 for characteristic zero).
    fn characteristic() -> u64;

    /// Naive arithmetic height: the largest absolute numerator or denominator
    /// occurring in the exact representation. Always zero in finite fields.
    fn height(&self) -> BigUint;

    fn to_f64(&self) -> f64;
}

/// Fields with exact equality, a total canonical order and a literal syntax.
pub trait ExactField: Field + Eq + Hash + Ord + Display + Literal {
    /// Every element in canonical order, or `None` for an infinite field.
    fn finite_elements() -> Option<Vec<Self>> {
        None
    }

    /// Whether the two values can be combined arithmetically.
    fn compatible_with(&self, _other: &Self) -> bool {
        true
    }
}

pub(crate) fn rational_height(q: &Rational) -> BigUint {
    let n = q.numer().abs().to_biguint().unwrap_or_default();
    let d = q.denom().abs().to_biguint().unwrap_or_default();
    n.max(d)
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

impl Field for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }

    fn characteristic() -> u64 {
        0
    }

    fn height(&self) -> BigUint {
        rational_height(self)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl ExactField for Rational {}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn from_rational(q: &Rational) -> Option<Self> {
                Some(rational_to_f64(q) as $t)
            }

            fn recip(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }

            fn characteristic() -> u64 {
                0
            }

            fn height(&self) -> BigUint {
                BigUint::zero()
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

/// `x^n` by repeated squaring for any field and non-negative exponent.
pub fn pow_u<F: Field>(x: &F, mut n: u64) -> F {
    let mut base = x.clone();
    let mut acc = F::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}
