use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{cross, dot, Vec3};
use crate::scalar::{Place, Rational, RealAlg, ScalarError, Valuation, Valued};

use super::{ProjLine, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// Euclidean norm with the standard basis orthonormal.
    L2,
    /// Max norm, used at non-archimedean places.
    LInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChordalContext {
    pub place: Place,
}

impl ChordalContext {
    pub fn new(place: Place) -> Self {
        ChordalContext { place }
    }

    pub fn real() -> Self {
        ChordalContext { place: Place::REAL }
    }

    pub fn padic(q: u64) -> Self {
        ChordalContext { place: Place::PAdic(q) }
    }

    pub fn norm_kind(&self) -> NormKind {
        if self.place.is_archimedean() {
            NormKind::L2
        } else {
            NormKind::LInf
        }
    }
}

/// An exact distance value.
///
/// At a real place the square is stored (square roots stay out of the
/// field); at a p-adic place the value itself is a power of `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Distance {
    Squared(RealAlg),
    Ultrametric(Rational),
}

impl Distance {
    pub fn is_zero(&self) -> bool {
        match self {
            Distance::Squared(s) => s.is_zero(),
            Distance::Ultrametric(v) => v.is_zero(),
        }
    }

    /// Square of the distance, exact in both cases.
    pub fn squared(&self) -> RealAlg {
        match self {
            Distance::Squared(s) => s.clone(),
            Distance::Ultrametric(v) => RealAlg::from_rational(v.clone() * v.clone()),
        }
    }

    /// `self < eps`, decided exactly.
    pub fn lt(&self, eps: &Rational) -> bool {
        self.squared() < RealAlg::from_rational(eps.clone() * eps.clone())
    }

    /// `self ≤ eps`, decided exactly.
    pub fn le(&self, eps: &Rational) -> bool {
        self.squared() <= RealAlg::from_rational(eps.clone() * eps.clone())
    }

    pub fn at_most_one(&self) -> bool {
        self.le(&Rational::one())
    }

    /// Exact comparison; both distances are non-negative so squares suffice.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.squared().cmp(&other.squared())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Squared(s) => s.to_f64().max(0.0).sqrt(),
            Distance::Ultrametric(v) => crate::scalar::Field::to_f64(v),
        }
    }

    /// Certified rational enclosure of the distance.
    pub fn interval(&self, bits: u32) -> (Rational, Rational) {
        match self {
            Distance::Squared(s) => s.sqrt_interval(bits),
            Distance::Ultrametric(v) => (v.clone(), v.clone()),
        }
    }

    /// Decides `a ≤ b + c`. Exact when the squares are rational, otherwise
    /// by certified intervals; `None` if the intervals cannot separate.
    pub fn triangle_le(a: &Distance, b: &Distance, c: &Distance) -> Option<bool> {
        let (sa, sb, sc) = (a.squared(), b.squared(), c.squared());
        if let (Some(x), Some(y), Some(z)) = (sa.as_rational(), sb.as_rational(), sc.as_rational()) {
            return Some(RealAlg::sqrt_sum_le(x, y, z));
        }
        let bits = 64;
        let (alo, ahi) = a.interval(bits);
        let (blo, bhi) = b.interval(bits);
        let (clo, chi) = c.interval(bits);
        if ahi <= blo.clone() + clo.clone() {
            Some(true)
        } else if alo > bhi + chi {
            Some(false)
        } else {
            None
        }
    }

    /// Ultrametric form `a ≤ max(b, c)`.
    pub fn ultrametric_le(a: &Distance, b: &Distance, c: &Distance) -> bool {
        let m = if b.cmp_exact(c) == Ordering::Less { c } else { b };
        a.cmp_exact(m) != Ordering::Greater
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Squared(s) => write!(f, "sqrt({s}) ~ {:.6}", self.to_f64()),
            Distance::Ultrametric(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn norm2<F: Valued>(v: &Vec3<F>) -> F {
    dot(v, v)
}

fn min_valuation<F: Valued>(v: &[F], q: u64) -> Result<Valuation, ScalarError> {
    let mut best = Valuation::Infinite;
    for x in v {
        best = best.min(x.valuation(q)?);
    }
    Ok(best)
}

fn q_power(q: u64, exponent: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(q));
    let p = num_traits::pow(base, exponent.unsigned_abs() as usize);
    if exponent >= 0 {
        p
    } else {
        Rational::one() / p
    }
}

/// `|v∧w| / (|v||w|)`.
pub fn chordal_distance<F: Valued>(
    x: &ProjPoint<F>,
    y: &ProjPoint<F>,
    ctx: &ChordalContext,
) -> Result<Distance, ScalarError> {
    let (v, w) = (x.coords(), y.coords());
    match ctx.place {
        Place::Real(emb) => {
            let vv = norm2(v);
            let ww = norm2(w);
            let vw = dot(v, w);
            let prod = vv * ww;
            let sq = (prod.clone() - vw.clone() * vw) / prod;
            Ok(Distance::Squared(sq.real_image(emb)?))
        }
        Place::PAdic(q) => {
            let wedge = cross(v, w);
            let vm = min_valuation(&wedge, q)?;
            let vv = min_valuation(v, q)?.finite().expect("nonzero vector");
            let vw = min_valuation(w, q)?.finite().expect("nonzero vector");
            Ok(Distance::Ultrametric(match vm {
                Valuation::Infinite => Rational::zero(),
                Valuation::Finite(e) => q_power(q, vv + vw - e),
            }))
        }
    }
}

/// `|v·n| / (|v||n|)` for the dual vector `n` of the line.
pub fn distance_to_line<F: Valued>(
    x: &ProjPoint<F>,
    l: &ProjLine<F>,
    ctx: &ChordalContext,
) -> Result<Distance, ScalarError> {
    let (v, n) = (x.coords(), l.dual());
    let vn = dot(v, n);
    match ctx.place {
        Place::Real(emb) => {
            let sq = vn.clone() * vn / (norm2(v) * norm2(n));
            Ok(Distance::Squared(sq.real_image(emb)?))
        }
        Place::PAdic(q) => {
            let vv = min_valuation(v, q)?.finite().expect("nonzero vector");
            let vnn = min_valuation(n, q)?.finite().expect("nonzero vector");
            Ok(Distance::Ultrametric(match vn.valuation(q)? {
                Valuation::Infinite => Rational::zero(),
                Valuation::Finite(e) => q_power(q, vv + vnn - e),
            }))
        }
    }
}
