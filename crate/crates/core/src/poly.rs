//! Dense univariate polynomials over a field, coefficients stored low degree first.

use std::fmt;

use crate::scalar::{Field, Literal};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![F::one()])
    }

    /// `x - a`
    pub fn linear(a: F) -> Self {
        Poly::new(vec![-a, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let l = l.clone();
                Poly::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }
}

/// The cyclotomic polynomial `Φ_n`, computed by dividing `xⁿ − 1` by `Φ_d`
/// for every proper divisor `d` of `n`.
pub fn cyclotomic<F: Field>(n: u32) -> Poly<F> {
    assert!(n >= 1);
    let mut coeffs = vec![F::zero(); n as usize + 1];
    coeffs[0] = -F::one();
    coeffs[n as usize] = F::one();
    let mut p = Poly::new(coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_rem(&cyclotomic(d)).0;
    }
    p
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

impl<F: Field + Literal> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let lit = c.to_literal();
            match i {
                0 => write!(f, "{lit}")?,
                1 => write!(f, "({lit})x")?,
                _ => write!(f, "({lit})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    type P = Poly<Rational>;

    #[test]
    fn division() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let f = P::from_i64(&[-1, 0, 0, 1]);
        let (q, r) = f.div_rem(&cyclotomic(1));
        assert!(r.is_zero());
        assert_eq!(q, cyclotomic(3));
        let (_, r) = f.div_rem(&cyclotomic(4));
        assert!(!r.is_zero());
        assert_eq!(cyclotomic::<Rational>(6), P::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic::<Rational>(12), P::from_i64(&[1, 0, -1, 0, 1]));
        for n in 1..=20 {
            assert_eq!(cyclotomic::<Rational>(n).degree(), Some(totient(n) as usize));
        }
    }

    #[test]
    fn evaluation_and_derivative() {
        let f = P::from_i64(&[2, -3, 1]);
        assert!(f.eval(&Rational::from_integer(2.into())).is_zero());
        assert_eq!(f.derivative(), P::from_i64(&[-3, 2]));
        assert_eq!(P::linear(Rational::from_integer(1.into())).mul(&P::linear(Rational::from_integer(2.into()))), f);
    }
}
