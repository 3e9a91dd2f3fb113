use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Gf, QuadExt, Rational, ScalarError};

/// Text syntax for exact scalars: `7`, `-3/4`, `1+2*sqrt(5)`, `3 mod 7`.
///
/// `to_literal` always produces a string that `parse_literal` maps back to
/// the same value.
pub trait Literal: Sized {
    fn parse_literal(s: &str) -> Result<Self, ScalarError>;
    fn to_literal(&self) -> String;
}

fn bad(s: &str) -> ScalarError {
    ScalarError::Parse(format!("bad scalar literal `{s}`"))
}

/// Parses `n` or `n/m` with optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(bad(s));
    }
    let int = |x: &str| -> Result<BigInt, ScalarError> {
        let x = x.trim();
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(s));
        }
        x.parse::<BigInt>().map_err(|_| bad(s))
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(int(t)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(ScalarError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

impl Literal for Rational {
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }
}

impl Literal for QuadExt {
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = t.find("sqrt(") else {
            return Ok(QuadExt::rational(parse_rational(&t)?));
        };
        let rest = t[pos + 5..].strip_suffix(')').ok_or_else(|| bad(s))?;
        let d: u64 = rest.parse().map_err(|_| bad(s))?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a±b" at the last sign that is not leading
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, coeff(&head[i..], s)?),
            None => (Rational::zero(), coeff(head, s)?),
        };
        QuadExt::new(a, b, d)
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }
}

fn coeff(x: &str, s: &str) -> Result<Rational, ScalarError> {
    match x {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(x).map_err(|_| bad(s)),
    }
}

impl<const P: u64> Literal for Gf<P> {
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        let (body, modulus) = match s.split_once("mod") {
            Some((b, m)) => {
                let m: u64 = m.trim().parse().map_err(|_| bad(s))?;
                (b, Some(m))
            }
            None => (s, None),
        };
        if let Some(m) = modulus {
            if m != P {
                return Err(ScalarError::Parse(format!(
                    "literal `{s}` is not in GF({P})"
                )));
            }
        }
        let q = parse_rational(body)?;
        use super::Field;
        Gf::<P>::from_rational(&q)
            .ok_or_else(|| ScalarError::Parse(format!("`{s}` has no image in GF({P})")))
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(Rational::parse_literal("-3/6").unwrap(), q(-1, 2));
        assert_eq!(Rational::parse_literal(" 12 ").unwrap(), q(12, 1));
        assert!(Rational::parse_literal("1/0").is_err());
        assert!(Rational::parse_literal("1.5").is_err());
        assert!(Rational::parse_literal("").is_err());
    }

    #[test]
    fn quadratics() {
        let x = QuadExt::parse_literal("1+2*sqrt(5)").unwrap();
        assert_eq!(x, QuadExt::new(q(1, 1), q(2, 1), 5).unwrap());
        let y = QuadExt::parse_literal("-1/2-3/4*sqrt(2)").unwrap();
        assert_eq!(y, QuadExt::new(q(-1, 2), q(-3, 4), 2).unwrap());
        let z = QuadExt::parse_literal("-sqrt(3)").unwrap();
        assert_eq!(z, QuadExt::new(q(0, 1), q(-1, 1), 3).unwrap());
        assert!(QuadExt::parse_literal("1+sqrt(4)").is_err());
        for v in [x, y, z, QuadExt::rational(q(5, 3))] {
            assert_eq!(QuadExt::parse_literal(&v.to_literal()).unwrap(), v);
        }
    }

    #[test]
    fn finite_field() {
        assert_eq!(Gf::<7>::parse_literal("3 mod 7").unwrap(), Gf::<7>::new(3));
        assert_eq!(Gf::<7>::parse_literal("10").unwrap(), Gf::<7>::new(3));
        assert_eq!(Gf::<7>::parse_literal("1/2").unwrap(), Gf::<7>::new(4));
        assert!(Gf::<7>::parse_literal("3 mod 5").is_err());
        for x in Gf::<5>::elements() {
            assert_eq!(Gf::<5>::parse_literal(&x.to_literal()).unwrap(), x);
        }
    }
}
