use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{ExactField, Field};
use super::Rational;

/// Element of the prime field `GF(P)`, stored as its least non-negative residue.
///
/// `P` must be prime; [`is_prime`] is checked by every constructor that takes a
/// runtime modulus, and division debug-asserts it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const P: u64>(u64);

impl<const P: u64> Gf<P> {
    pub fn new(residue: i64) -> Self {
        Gf(residue.rem_euclid(P as i64) as u64)
    }

    pub fn from_big(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Gf(r.to_u64().expect("residue fits in u64"))
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }

    /// All field elements in residue order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Gf)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Gf(acc as u64)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl<const P: u64> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u64> Div for Gf<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        debug_assert!(is_prime(P), "GF({P}) is not a field");
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Zero for Gf<P> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Gf<P> {
    fn one() -> Self {
        Gf(1 % P)
    }
}

impl<const P: u64> Field for Gf<P> {
    fn from_i64(n: i64) -> Self {
        Gf::new(n)
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        let d = Gf::<P>::from_big(q.denom());
        if d.is_zero() {
            None
        } else {
            Some(Gf::<P>::from_big(q.numer()) / d)
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn height(&self) -> BigUint {
        BigUint::zero()
    }

    fn to_f64(&self) -> f64 {
        self.0 as f64
    }
}

impl<const P: u64> ExactField for Gf<P> {
    fn finite_elements() -> Option<Vec<Self>> {
        Some(Self::elements().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Gf<7>;

    #[test]
    fn inverses_in_gf7() {
        for x in F7::elements().skip(1) {
            assert_eq!(x * (F7::one() / x), F7::one());
        }
    }

    #[test]
    fn rational_images() {
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(F7::from_rational(&half), Some(F7::new(4)));
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(Gf::<3>::from_rational(&third), None);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
