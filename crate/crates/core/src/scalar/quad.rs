use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::field::{rational_height, rational_to_f64, ExactField, Field};
use super::{Embedding, Rational, ScalarError};

/// Element `a + b·√d` of a real quadratic field `ℚ(√d)`.
///
/// The radicand travels with the value. Elements with `b = 0` are plain
/// rationals and carry `d = 0`, so they combine with any quadratic field;
/// combining two genuinely irrational elements of different fields panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

pub fn squarefree_part(n: u64) -> (u64, u64) {
    // n = s^2 * k with k squarefree; returns (s, k)
    let mut k = 1u64;
    let mut s = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            k *= p;
        }
        p += 1;
    }
    k *= m;
    (s, k)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && squarefree_part(n).0 == 1
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, ScalarError> {
        if b.is_zero() {
            return Ok(QuadExt::rational(a));
        }
        if d < 2 || !is_squarefree(d) {
            return Err(ScalarError::BadRadicand(d));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u64) -> Result<Self, ScalarError> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Radicand, 0 when the element is rational.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone()
            - Rational::from_integer(BigInt::from(self.d)) * self.b.clone() * self.b.clone()
    }

    /// Field trace `2a`.
    pub fn trace(&self) -> Rational {
        self.a.clone() + self.a.clone()
    }

    /// Exact sign of the image under the chosen real embedding.
    pub fn sign_under(&self, emb: Embedding) -> Ordering {
        let b = match emb {
            Embedding::Plus => self.b.clone(),
            Embedding::Minus => -self.b.clone(),
        };
        let sa = self.a.cmp(&Rational::zero());
        let sb = b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = self.a.clone() * self.a.clone();
        let b2d = b.clone() * b * Rational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Image under an embedding, as an element of the positively embedded field.
    pub fn embed(&self, emb: Embedding) -> Self {
        match emb {
            Embedding::Plus => self.clone(),
            Embedding::Minus => self.conjugate(),
        }
    }

    /// Square root inside the same field, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(QuadExt::zero());
        }
        if self.is_rational() {
            return rational_sqrt_in_quadratic(&self.a, None);
        }
        // (x + y√d)^2 = a + b√d  ⇒  x^2 + d y^2 = a, 2xy = b.
        // x^2 = (a ± √(a^2 − d b^2)) / 2, which needs the norm to be a rational square.
        let disc = self.norm();
        let root = rational_sqrt(&disc)?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [
            (self.a.clone() + root.clone()) / two.clone(),
            (self.a.clone() - root.clone()) / two.clone(),
        ] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = self.b.clone() / (two.clone() * x.clone());
                let r = QuadExt::new(x, y, self.d).ok()?;
                if r.clone() * r.clone() == *self {
                    return Some(r);
                }
            }
        }
        None
    }

    fn join(d1: u64, d2: u64) -> u64 {
        match (d1, d2) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixing elements of Q(sqrt {x}) and Q(sqrt {y})"),
        }
    }

    fn normalized(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            QuadExt::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }
}

/// Square root of a rational in ℚ, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().to_biguint()?;
    let d = q.denom().to_biguint()?;
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &rn * &rn == n && &rd * &rd == d {
        Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

/// Square root of a positive rational inside ℚ(√k) for its squarefree kernel k.
/// `required` restricts the admissible radicand.
pub fn rational_sqrt_in_quadratic(q: &Rational, required: Option<u64>) -> Option<QuadExt> {
    if q.is_negative() {
        return None;
    }
    if let Some(r) = rational_sqrt(q) {
        return Some(QuadExt::rational(r));
    }
    // q = n/m = n·m / m^2, so √q = √(n m) / m
    let nm = (q.numer() * q.denom()).to_biguint()?;
    let nm64: u64 = u64::try_from(&nm).ok()?;
    let (s, k) = squarefree_part(nm64);
    if let Some(req) = required {
        if req != k {
            return None;
        }
    }
    let coeff = Rational::new(BigInt::from(s), q.denom().clone());
    QuadExt::new(Rational::zero(), coeff, k).ok()
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = QuadExt::join(self.d, rhs.d);
        QuadExt::normalized(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = QuadExt::join(self.d, rhs.d);
        QuadExt::normalized(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = QuadExt::join(self.d, rhs.d);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * dd;
        let b = self.a * rhs.b + self.b * rhs.a;
        QuadExt::normalized(a, b, d)
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Div for QuadExt {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in a quadratic field");
        let inv = QuadExt::normalized(rhs.a.clone() / n.clone(), -rhs.b.clone() / n, rhs.d);
        self * inv
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

/// Canonical order: numeric order under the positive embedding inside one
/// field; elements of different quadratic fields fall back to `(d, a, b)`.
impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.d == 0 || other.d == 0 || self.d == other.d {
            (self.clone() - other.clone()).sign_under(Embedding::Plus)
        } else {
            (self.d, &self.a, &self.b).cmp(&(other.d, &other.a, &other.b))
        }
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

impl Field for QuadExt {
    fn from_i64(n: i64) -> Self {
        QuadExt::rational(Rational::from_integer(BigInt::from(n)))
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        Some(QuadExt::rational(q.clone()))
    }

    fn characteristic() -> u64 {
        0
    }

    fn height(&self) -> BigUint {
        rational_height(&self.a).max(rational_height(&self.b))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

impl ExactField for QuadExt {
    fn compatible_with(&self, other: &Self) -> bool {
        self.d == 0 || other.d == 0 || self.d == other.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn s2(a: i64, b: i64) -> QuadExt {
        QuadExt::new(q(a, 1), q(b, 1), 2).unwrap()
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = s2(1, 1);
        let inv = QuadExt::one() / x.clone();
        assert_eq!(inv, s2(-1, 1));
        assert_eq!(x * inv, QuadExt::one());
    }

    #[test]
    fn sign_under_embeddings() {
        let x = s2(1, 1);
        assert_eq!(x.sign_under(Embedding::Plus), Ordering::Greater);
        assert_eq!(x.sign_under(Embedding::Minus), Ordering::Less);
        assert_eq!(s2(3, -2).sign_under(Embedding::Plus), Ordering::Greater);
    }

    #[test]
    fn square_roots() {
        let x = s2(3, 2); // (1 + √2)^2
        let r = x.sqrt().unwrap();
        assert_eq!(r.clone() * r, x);
        assert!(s2(1, 1).sqrt().is_none());
        let five = QuadExt::from_i64(5);
        let r5 = five.sqrt().unwrap();
        assert_eq!(r5.radicand(), 5);
    }

    #[test]
    fn radicand_validation() {
        assert!(QuadExt::new(q(0, 1), q(1, 1), 4).is_err());
        assert!(QuadExt::new(q(0, 1), q(1, 1), 12).is_err());
        assert!(QuadExt::new(q(0, 1), q(0, 1), 4).is_ok());
        assert_eq!(squarefree_part(12), (2, 3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(s2(1, -1).to_string(), "1-1*sqrt(2)");
        assert_eq!(
            QuadExt::new(q(0, 1), q(1, 2), 5).unwrap().to_string(),
            "1/2*sqrt(5)"
        );
        assert_eq!(QuadExt::from_i64(-3).to_string(), "-3");
    }
}
