use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gf::is_prime;
use super::{Field, Gf, QuadExt, Rational, RealAlg, ScalarError};

/// Choice of real embedding of ℚ(√d): `√d ↦ +√d` or `√d ↦ −√d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Embedding {
    Plus,
    Minus,
}

/// An absolute value on the scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real(Embedding),
    PAdic(u64),
}

impl Place {
    pub const REAL: Place = Place::Real(Embedding::Plus);

    pub fn padic(q: u64) -> Result<Place, ScalarError> {
        if is_prime(q) {
            Ok(Place::PAdic(q))
        } else {
            Err(ScalarError::NotPrime(q))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Real(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real(Embedding::Plus) => write!(f, "real"),
            Place::Real(Embedding::Minus) => write!(f, "real-conj"),
            Place::PAdic(q) => write!(f, "padic({q})"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "real" => Ok(Place::REAL),
            "real-conj" => Ok(Place::Real(Embedding::Minus)),
            _ => {
                let inner = s
                    .strip_prefix("padic(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| ScalarError::Parse(format!("unknown place `{s}`")))?;
                let q: u64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| ScalarError::Parse(format!("bad prime in `{s}`")))?;
                Place::padic(q)
            }
        }
    }
}

/// q-adic valuation, with `Infinite` for zero. Orders with `Infinite` on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

fn int_valuation(n: &BigInt, q: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(q);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

/// `v_q(x)` for a rational `x`.
pub fn padic_valuation(x: &Rational, q: u64) -> Result<Valuation, ScalarError> {
    if !is_prime(q) {
        return Err(ScalarError::NotPrime(q));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let qb = BigInt::from(q);
    Ok(Valuation::Finite(
        int_valuation(x.numer(), &qb) - int_valuation(x.denom(), &qb),
    ))
}

/// `q^(-v)` as an exact rational; 0 for zero.
pub fn padic_abs(x: &Rational, q: u64) -> Result<Rational, ScalarError> {
    Ok(match padic_valuation(x, q)? {
        Valuation::Infinite => Rational::zero(),
        Valuation::Finite(v) => {
            let base = Rational::from_integer(BigInt::from(q));
            let p = num_traits::pow(base, v.unsigned_abs() as usize);
            if v >= 0 {
                Rational::one() / p
            } else {
                p
            }
        }
    })
}

/// Scalars that carry absolute values at the supported places.
pub trait Valued: Field {
    /// Image under a real embedding.
    fn real_image(&self, emb: Embedding) -> Result<RealAlg, ScalarError>;

    /// q-adic valuation.
    fn valuation(&self, q: u64) -> Result<Valuation, ScalarError>;

    fn abs_value(&self, place: &Place) -> Result<RealAlg, ScalarError> {
        match place {
            Place::Real(e) => Ok(self.real_image(*e)?.abs()),
            Place::PAdic(q) => {
                let v = self.valuation(*q)?;
                Ok(RealAlg::from_rational(match v {
                    Valuation::Infinite => Rational::zero(),
                    Valuation::Finite(v) => {
                        let base = Rational::from_integer(BigInt::from(*q));
                        let p = num_traits::pow(base, v.unsigned_abs() as usize);
                        if v >= 0 {
                            Rational::one() / p
                        } else {
                            p
                        }
                    }
                }))
            }
        }
    }
}

/// Exact comparison of `|x|` and `|y|` at a place.
pub fn compare_abs<F: Valued>(x: &F, y: &F, place: &Place) -> Result<Ordering, ScalarError> {
    match place {
        Place::PAdic(q) => {
            let vx = x.valuation(*q)?;
            let vy = y.valuation(*q)?;
            // larger valuation means smaller absolute value
            Ok(vy.cmp(&vx))
        }
        Place::Real(e) => {
            // |σx|^2 − |σy|^2 = σ(x^2 − y^2)
            let diff = x.clone() * x.clone() - y.clone() * y.clone();
            Ok(diff.real_image(*e)?.signum())
        }
    }
}

impl Valued for Rational {
    fn real_image(&self, _emb: Embedding) -> Result<RealAlg, ScalarError> {
        Ok(RealAlg::from_rational(self.clone()))
    }

    fn valuation(&self, q: u64) -> Result<Valuation, ScalarError> {
        padic_valuation(self, q)
    }
}

impl Valued for QuadExt {
    fn real_image(&self, emb: Embedding) -> Result<RealAlg, ScalarError> {
        Ok(RealAlg::from_quad(self.embed(emb)))
    }

    fn valuation(&self, q: u64) -> Result<Valuation, ScalarError> {
        match self.as_rational() {
            Some(r) => padic_valuation(r, q),
            None => Err(ScalarError::IncompatiblePlace {
                scalar: self.to_string(),
                place: Place::PAdic(q).to_string(),
            }),
        }
    }
}

impl<const P: u64> Valued for Gf<P> {
    fn real_image(&self, emb: Embedding) -> Result<RealAlg, ScalarError> {
        Err(ScalarError::IncompatiblePlace {
            scalar: format!("{self} mod {P}"),
            place: Place::Real(emb).to_string(),
        })
    }

    fn valuation(&self, q: u64) -> Result<Valuation, ScalarError> {
        Err(ScalarError::IncompatiblePlace {
            scalar: format!("{self} mod {P}"),
            place: Place::PAdic(q).to_string(),
        })
    }
}

macro_rules! float_valued {
    ($t:ty) => {
        impl Valued for $t {
            fn real_image(&self, _emb: Embedding) -> Result<RealAlg, ScalarError> {
                Rational::from_float(*self)
                    .map(RealAlg::from_rational)
                    .ok_or_else(|| ScalarError::Parse(format!("non-finite float {}", self)))
            }

            fn valuation(&self, q: u64) -> Result<Valuation, ScalarError> {
                Err(ScalarError::IncompatiblePlace {
                    scalar: self.to_string(),
                    place: Place::PAdic(q).to_string(),
                })
            }
        }
    };
}

float_valued!(f32);
float_valued!(f64);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&q(12, 1), 2).unwrap(), Valuation::Finite(2));
        assert_eq!(padic_valuation(&q(1, 1), 5).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_valuation(&q(0, 1), 3).unwrap(), Valuation::Infinite);
        assert_eq!(padic_valuation(&q(8, 3), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(padic_valuation(&q(5, 12), 2).unwrap(), Valuation::Finite(-2));
        assert!(matches!(padic_valuation(&q(3, 1), 4), Err(ScalarError::NotPrime(4))));
    }

    #[test]
    fn abs_values() {
        let one = q(1, 1);
        for place in [Place::REAL, Place::PAdic(2), Place::PAdic(7)] {
            assert_eq!(one.abs_value(&place).unwrap(), RealAlg::one());
        }
        assert_eq!(
            q(8, 3).abs_value(&Place::PAdic(2)).unwrap(),
            RealAlg::from_rational(q(1, 8))
        );
        let x = QuadExt::new(q(1, 1), q(1, 1), 2).unwrap();
        let a = x.abs_value(&Place::Real(Embedding::Minus)).unwrap();
        assert!((a.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare_abs(&q(2, 1), &q(1, 1), &Place::REAL).unwrap(), Ordering::Greater);
        assert_eq!(compare_abs(&q(4, 1), &q(2, 1), &Place::PAdic(2)).unwrap(), Ordering::Less);
        let x = QuadExt::new(q(1, 1), q(1, 1), 2).unwrap();
        assert_eq!(compare_abs(&x, &x, &Place::REAL).unwrap(), Ordering::Equal);
        assert_eq!(compare_abs(&q(-3, 1), &q(3, 1), &Place::REAL).unwrap(), Ordering::Equal);
    }

    #[test]
    fn incompatible_pairings() {
        let g = Gf::<3>::new(1);
        assert!(g.abs_value(&Place::REAL).is_err());
        let x = QuadExt::sqrt_of(2).unwrap();
        assert!(x.abs_value(&Place::PAdic(2)).is_err());
    }

    #[test]
    fn place_literals() {
        for p in [Place::REAL, Place::Real(Embedding::Minus), Place::PAdic(5)] {
            assert_eq!(p.to_string().parse::<Place>().unwrap(), p);
        }
        assert!("padic(6)".parse::<Place>().is_err());
    }
}
