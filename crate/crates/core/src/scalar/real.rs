use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{Embedding, QuadExt, Rational};

/// A real number of the form `a + b·√d` with `√d > 0`.
///
/// Absolute values and squared chordal distances at real places land here.
/// Ordering is exact; `to_f64` and [`RealAlg::interval`] are for reporting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealAlg(QuadExt);

impl RealAlg {
    pub fn from_quad(x: QuadExt) -> Self {
        RealAlg(x)
    }

    pub fn from_rational(q: Rational) -> Self {
        RealAlg(QuadExt::rational(q))
    }

    pub fn zero() -> Self {
        RealAlg::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        RealAlg::from_rational(Rational::one())
    }

    pub fn as_quad(&self) -> &QuadExt {
        &self.0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.0.as_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        self.0.sign_under(Embedding::Plus)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            RealAlg(-self.0.clone())
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        RealAlg(self.0.clone() * self.0.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RealAlg(QuadExt::one() / self.0.clone()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        use super::Field;
        self.0.to_f64()
    }

    /// Certified enclosure `lo ≤ self ≤ hi` with rational endpoints whose width
    /// is at most `|b|·2^(1-bits)`.
    pub fn interval(&self, bits: u32) -> (Rational, Rational) {
        let a = self.0.a().clone();
        let b = self.0.b().clone();
        if b.is_zero() {
            return (a.clone(), a);
        }
        let (slo, shi) = sqrt_bounds(&Rational::from_integer(BigInt::from(self.0.radicand())), bits);
        if b.is_positive() {
            (a.clone() + b.clone() * slo, a + b * shi)
        } else {
            (a.clone() + b.clone() * shi, a + b * slo)
        }
    }

    /// Certified enclosure of `√self` (self must be non-negative).
    pub fn sqrt_interval(&self, bits: u32) -> (Rational, Rational) {
        let (lo, hi) = self.interval(bits + 4);
        let lo = if lo.is_negative() { Rational::zero() } else { lo };
        (sqrt_bounds(&lo, bits).0, sqrt_bounds(&hi, bits).1)
    }

    /// Exact decision of `√x ≤ √y + √z` for non-negative rationals.
    pub fn sqrt_sum_le(x: &Rational, y: &Rational, z: &Rational) -> bool {
        // √x ≤ √y + √z  ⇔  x − y − z ≤ 2√(yz)  ⇔  (x−y−z ≤ 0) ∨ (x−y−z)^2 ≤ 4yz
        let t = x.clone() - y.clone() - z.clone();
        if !t.is_positive() {
            return true;
        }
        let four = Rational::from_integer(BigInt::from(4));
        t.clone() * t <= four * y.clone() * z.clone()
    }
}

/// Rational bounds on `√q` for `q ≥ 0`, accurate to roughly `2^-bits` relative to 1/denominator.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    if !q.is_positive() {
        return (Rational::zero(), Rational::zero());
    }
    // √(n/m) = √(n m)/m; scale by 2^bits
    let nm: BigUint = (q.numer() * q.denom()).to_biguint().expect("positive");
    let scaled = nm << (2 * bits as usize);
    let r = scaled.sqrt();
    let exact = &r * &r == scaled;
    let den = BigInt::from(q.denom().clone()) << (bits as usize);
    let lo = Rational::new(BigInt::from(r.clone()), den.clone());
    let hi = if exact {
        lo.clone()
    } else {
        Rational::new(BigInt::from(r + 1u32), den)
    };
    (lo, hi)
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.clone() - other.0.clone()).sign_under(Embedding::Plus)
    }
}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for RealAlg {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RealAlg(self.0 + rhs.0)
    }
}

impl Sub for RealAlg {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RealAlg(self.0 - rhs.0)
    }
}

impl Mul for RealAlg {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RealAlg(self.0 * rhs.0)
    }
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{})", self.0, self.to_f64())
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_bounds_enclose() {
        let (lo, hi) = sqrt_bounds(&q(2, 1), 30);
        assert!(lo.clone() * lo.clone() <= q(2, 1));
        assert!(hi.clone() * hi.clone() >= q(2, 1));
        assert!(hi - lo <= q(1, 1 << 29));
        let (lo, hi) = sqrt_bounds(&q(9, 4), 10);
        assert_eq!(lo, q(3, 2));
        assert_eq!(hi, q(3, 2));
    }

    #[test]
    fn exact_triangle_decision() {
        // √1 ≤ √(1/4) + √(1/4) holds with equality
        assert!(RealAlg::sqrt_sum_le(&q(1, 1), &q(1, 4), &q(1, 4)));
        assert!(!RealAlg::sqrt_sum_le(&q(1, 1), &q(1, 5), &q(1, 5)));
    }

    #[test]
    fn interval_of_conjugate() {
        let x = RealAlg::from_quad(QuadExt::new(q(1, 1), q(-1, 1), 2).unwrap());
        let (lo, hi) = x.interval(40);
        let f = 1.0 - 2f64.sqrt();
        assert!(crate::scalar::field::rational_to_f64(&lo) <= f + 1e-12);
        assert!(crate::scalar::field::rational_to_f64(&hi) >= f - 1e-12);
        assert_eq!(x.signum(), Ordering::Less);
    }
}
