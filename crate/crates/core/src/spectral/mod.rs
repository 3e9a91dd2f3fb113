//! Eigenvalues of plane collineations and what they say about dynamics.

mod affine;
mod common;
mod proximal;
pub mod roots;
mod sl2;
mod unity;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::scalar::Literal;
use thiserror::Error;

pub use affine::{affine_chart_reduction, chart_basis, AffineMap};
pub use common::{common_eigenvector, CommonEigen};
pub use proximal::{classify_proximality, image_line, verify_attractor, AttractorData, Proximality};
pub use roots::RootSplit;
pub use sl2::{sl2_hyperbolic_witness, Sl2Witness};
pub use unity::{all_eigenvalues_roots_of_unity, RootsOfUnity, UnityCertificate};

use crate::linalg::Mat3;
use crate::poly::Poly;
use crate::projgeo::{ProjMap, ProjPoint};
use crate::scalar::{Embedding, ExactField, Gf, Place, QuadExt, Rational, Valued};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("empty list of maps")]
    Empty,
    #[error("map #{0} does not preserve the line")]
    LineNotInvariant(usize),
}

/// Exact fields whose characteristic polynomials can be split.
///
/// `Eig` is the field eigenvalues are reported in: real quadratic
/// extensions for ℚ and ℚ(√d), the field itself for GF(p).
pub trait Spectral: ExactField + Valued {
    type Eig: ExactField + Valued;

    fn to_eig(&self) -> Self::Eig;

    fn from_eig(x: &Self::Eig) -> Option<Self>;

    fn split(p: &Poly<Self>) -> RootSplit<Self::Eig>;

    /// Places relevant to a finite set of entries and eigenvalues.
    fn relevant_places(entries: &[Self], eigs: &[Self::Eig]) -> Vec<Place>;

    /// A rational polynomial whose roots include those of `p`, if the field
    /// has characteristic zero.
    fn rational_norm(p: &Poly<Self>) -> Option<Poly<Rational>>;

    fn cube_root(&self) -> Option<Self>;
}

fn rational_cube_root(q: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().cbrt();
        let r = if n.is_negative() { -r } else { r };
        (&r * &r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

impl Spectral for Rational {
    type Eig = QuadExt;

    fn to_eig(&self) -> QuadExt {
        QuadExt::rational(self.clone())
    }

    fn from_eig(x: &QuadExt) -> Option<Self> {
        x.as_rational().cloned()
    }

    fn split(p: &Poly<Self>) -> RootSplit<QuadExt> {
        roots::split_rational(&p.monic())
    }

    fn relevant_places(entries: &[Self], eigs: &[QuadExt]) -> Vec<Place> {
        let mut primes: Vec<u64> = Vec::new();
        let mut add = |q: &Rational| {
            for p in roots::prime_support(q) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        };
        entries.iter().for_each(&mut add);
        for e in eigs {
            if let Some(r) = e.as_rational() {
                add(r);
            }
        }
        primes.sort();
        let mut out = vec![Place::REAL];
        if eigs.iter().any(|e| !e.is_rational()) {
            out.push(Place::Real(Embedding::Minus));
        }
        out.extend(primes.into_iter().map(Place::PAdic));
        out
    }

    fn rational_norm(p: &Poly<Self>) -> Option<Poly<Rational>> {
        Some(p.clone())
    }

    fn cube_root(&self) -> Option<Self> {
        rational_cube_root(self)
    }
}

impl Spectral for QuadExt {
    type Eig = QuadExt;

    fn to_eig(&self) -> QuadExt {
        self.clone()
    }

    fn from_eig(x: &QuadExt) -> Option<Self> {
        Some(x.clone())
    }

    fn split(p: &Poly<Self>) -> RootSplit<QuadExt> {
        roots::split_quadratic_field(&p.monic())
    }

    fn relevant_places(entries: &[Self], eigs: &[QuadExt]) -> Vec<Place> {
        let mut out = vec![Place::REAL, Place::Real(Embedding::Minus)];
        if entries.iter().chain(eigs).all(|x| x.is_rational()) {
            let rats: Vec<Rational> = entries.iter().map(|x| x.as_rational().unwrap().clone()).collect();
            out = Rational::relevant_places(&rats, eigs);
        }
        out
    }

    fn rational_norm(p: &Poly<Self>) -> Option<Poly<Rational>> {
        let conj = Poly::new(p.coeffs().iter().map(|c| c.conjugate()).collect());
        let n = p.mul(&conj);
        n.coeffs().iter().map(|c| c.as_rational().cloned()).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    fn cube_root(&self) -> Option<Self> {
        self.as_rational().and_then(rational_cube_root).map(QuadExt::rational)
    }
}

impl<const P: u64> Spectral for Gf<P> {
    type Eig = Gf<P>;

    fn to_eig(&self) -> Self {
        *self
    }

    fn from_eig(x: &Self) -> Option<Self> {
        Some(*x)
    }

    fn split(p: &Poly<Self>) -> RootSplit<Self> {
        roots::split_finite(&p.monic())
    }

    fn relevant_places(_: &[Self], _: &[Self]) -> Vec<Place> {
        Vec::new()
    }

    fn rational_norm(_: &Poly<Self>) -> Option<Poly<Rational>> {
        None
    }

    fn cube_root(&self) -> Option<Self> {
        Gf::<P>::elements().find(|x| *x * *x * *x == *self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigen<E> {
    Value(E),
    Unresolved,
}

/// Characteristic polynomial of the given lift and its roots.
#[derive(Clone, Debug)]
pub struct SpectrumReport<F: Spectral> {
    pub char_poly: Poly<F>,
    pub eigenvalues: Vec<(Eigen<F::Eig>, usize)>,
    pub resolved_fully: bool,
    /// All eigenvalues lying in the eigenvalue field are listed.
    pub complete: bool,
}

impl<F: Spectral> SpectrumReport<F> {
    pub fn resolved(&self) -> impl Iterator<Item = (&F::Eig, usize)> {
        self.eigenvalues.iter().filter_map(|(e, m)| match e {
            Eigen::Value(v) => Some((v, *m)),
            Eigen::Unresolved => None,
        })
    }

    pub fn distinct_values(&self) -> Vec<F::Eig> {
        self.resolved().map(|(v, _)| v.clone()).collect()
    }
}

impl<F: Spectral> fmt::Display for SpectrumReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "char_poly = {}; eigenvalues =", self.char_poly)?;
        for (e, m) in &self.eigenvalues {
            match e {
                Eigen::Value(v) => write!(f, " {}^{m}", v.to_literal())?,
                Eigen::Unresolved => write!(f, " unresolved^{m}")?,
            }
        }
        Ok(())
    }
}

pub fn spectrum_of_matrix<F: Spectral>(m: &Mat3<F>) -> SpectrumReport<F> {
    let char_poly = m.char_poly();
    let split = F::split(&char_poly);
    let mut eigenvalues: Vec<(Eigen<F::Eig>, usize)> =
        split.roots.into_iter().map(|(v, k)| (Eigen::Value(v), k)).collect();
    if split.unresolved_degree > 0 {
        eigenvalues.push((Eigen::Unresolved, split.unresolved_degree));
    }
    SpectrumReport {
        char_poly,
        resolved_fully: split.unresolved_degree == 0,
        complete: split.complete,
        eigenvalues,
    }
}

/// Spectrum of the lift stored in `m`.
pub fn spectrum<F: Spectral>(m: &ProjMap<F>) -> SpectrumReport<F> {
    spectrum_of_matrix(m.lift())
}

pub(crate) fn eig_matrix<F: Spectral>(m: &Mat3<F>) -> Mat3<F::Eig> {
    m.map(|x| x.to_eig())
}

pub fn eig_point<F: Spectral>(p: &ProjPoint<F>) -> ProjPoint<F::Eig> {
    ProjPoint::new(p.coords().clone().map(|x| x.to_eig())).expect("nonzero")
}

pub fn descend_point<F: Spectral>(p: &ProjPoint<F::Eig>) -> Option<ProjPoint<F>> {
    let [a, b, c] = p.coords();
    ProjPoint::new([F::from_eig(a)?, F::from_eig(b)?, F::from_eig(c)?]).ok()
}

pub fn eig_map<F: Spectral>(m: &ProjMap<F>) -> ProjMap<F::Eig> {
    ProjMap::new(eig_matrix(m.lift())).expect("invertible")
}

/// Places relevant to a list of maps: the entries of their lifts and their eigenvalues.
pub fn places_for<F: Spectral>(ms: &[ProjMap<F>]) -> Vec<Place> {
    let mut entries = Vec::new();
    let mut eigs = Vec::new();
    for m in ms {
        entries.extend(m.lift().m.iter().flatten().filter(|x| !x.is_zero()).cloned());
        eigs.extend(spectrum(m).distinct_values());
    }
    F::relevant_places(&entries, &eigs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field};

    type M = ProjMap<Rational>;

    #[test]
    fn diagonal_and_identity() {
        let s = spectrum(&M::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]));
        let vals: Vec<String> = s.resolved().map(|(v, m)| format!("{v}^{m}")).collect();
        assert_eq!(vals, vec!["1^1", "2^1", "4^1"]);
        assert!(s.resolved_fully);
        let s = spectrum(&M::identity());
        assert_eq!(s.eigenvalues, vec![(Eigen::Value(QuadExt::from_i64(1)), 3)]);
    }

    #[test]
    fn cubic_irrational_is_unresolved() {
        // companion matrix of x^3 - x^2 - x - 1
        let c = M::from_i64([[0, 0, 1], [1, 0, 1], [0, 1, 1]]);
        let s = spectrum(&c);
        assert!(!s.resolved_fully);
        assert_eq!(s.char_poly, Poly::from_i64(&[-1, -1, -1, 1]));
    }

    #[test]
    fn places_follow_primes() {
        let m = M::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        assert_eq!(places_for(&[m]), vec![Place::REAL, Place::PAdic(2)]);
        let m = M::new(Mat3::diag([rat(3, 5), rat(1, 1), rat(1, 1)])).unwrap();
        assert_eq!(places_for(&[m]), vec![Place::REAL, Place::PAdic(3), Place::PAdic(5)]);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(rat(-8, 27).cube_root(), Some(rat(-2, 3)));
        assert_eq!(rat(2, 1).cube_root(), None);
        assert_eq!(Gf::<7>::new(6).cube_root(), Some(Gf::<7>::new(3)));
    }
}
