use std::cmp::Ordering;

use crate::linalg::{cross, is_zero_vec, Mat3};
use crate::projgeo::{span_line, ProjLine, ProjMap, ProjPoint};
use crate::scalar::{compare_abs, Field, Place};

use super::{eig_map, eig_matrix, spectrum, Spectral};

/// Attracting and repelling data of a very proximal map at a place.
#[derive(Clone, Debug, PartialEq)]
pub struct AttractorData<E> {
    pub lambda_plus: E,
    pub lambda_mid: E,
    pub lambda_minus: E,
    pub p_plus: ProjPoint<E>,
    pub p_mid: ProjPoint<E>,
    pub p_minus: ProjPoint<E>,
    /// Span of `p_plus` and `p_mid`; repelling for the inverse.
    pub line_plus: ProjLine<E>,
    /// Span of `p_minus` and `p_mid`; the complement of the attractor.
    pub line_minus: ProjLine<E>,
    pub place: Place,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Proximality<E> {
    NotProximal,
    Proximal { lambda_plus: E, p_plus: ProjPoint<E>, line_minus: ProjLine<E> },
    VeryProximal(AttractorData<E>),
    Unresolved,
}

impl<E> Proximality<E> {
    pub fn is_very_proximal(&self) -> bool {
        matches!(self, Proximality::VeryProximal(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Proximality::NotProximal => "not-proximal",
            Proximality::Proximal { .. } => "proximal",
            Proximality::VeryProximal(_) => "very-proximal",
            Proximality::Unresolved => "unresolved",
        }
    }
}

fn eigenline<E: Field + Ord>(m: &Mat3<E>, lambda: &E) -> Option<ProjPoint<E>> {
    let space = m.eigenspace(lambda);
    if space.len() != 1 {
        return None;
    }
    ProjPoint::new(space[0].clone()).ok()
}

/// The line `im(M − λI)` when that image is two-dimensional.
pub fn image_line<E: Field>(m: &Mat3<E>, lambda: &E) -> Option<ProjLine<E>> {
    let shifted = m.sub(&Mat3::identity().scale(lambda));
    let cols = [shifted.col(0), shifted.col(1), shifted.col(2)];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let n = cross(&cols[i], &cols[j]);
        if !is_zero_vec(&n) {
            return ProjLine::new(n).ok();
        }
    }
    None
}

/// Proximality of `m` at `place`, read off from the exact spectrum of its lift.
pub fn classify_proximality<F: Spectral>(m: &ProjMap<F>, place: Place) -> Proximality<F::Eig> {
    let spec = spectrum(m);
    if !spec.resolved_fully {
        return Proximality::Unresolved;
    }
    let mut vals: Vec<(F::Eig, usize)> = spec.resolved().map(|(v, k)| (v.clone(), k)).collect();
    // descending absolute value; comparisons are exact
    let mut failed = false;
    vals.sort_by(|a, b| match compare_abs(&b.0, &a.0, &place) {
        Ok(o) => o,
        Err(_) => {
            failed = true;
            Ordering::Equal
        }
    });
    if failed {
        return Proximality::Unresolved;
    }
    let cmp = |a: &F::Eig, b: &F::Eig| compare_abs(a, b, &place).expect("checked above");
    let n = vals.len();
    let top_ok = vals[0].1 == 1 && n > 1 && cmp(&vals[0].0, &vals[1].0) == Ordering::Greater;
    if !top_ok {
        return Proximality::NotProximal;
    }
    let em = eig_matrix(m.lift());
    let lambda_plus = vals[0].0.clone();
    let p_plus = eigenline(&em, &lambda_plus).expect("simple eigenvalue");
    let bottom_ok = vals[n - 1].1 == 1 && cmp(&vals[n - 2].0, &vals[n - 1].0) == Ordering::Greater;
    if n == 3 && bottom_ok {
        let lambda_mid = vals[1].0.clone();
        let lambda_minus = vals[2].0.clone();
        let p_mid = eigenline(&em, &lambda_mid).expect("simple eigenvalue");
        let p_minus = eigenline(&em, &lambda_minus).expect("simple eigenvalue");
        let line_plus = span_line(&p_plus, &p_mid).expect("distinct eigenlines");
        let line_minus = span_line(&p_minus, &p_mid).expect("distinct eigenlines");
        return Proximality::VeryProximal(AttractorData {
            lambda_plus,
            lambda_mid,
            lambda_minus,
            p_plus,
            p_mid,
            p_minus,
            line_plus,
            line_minus,
            place,
        });
    }
    let line_minus = image_line(&em, &lambda_plus).expect("simple eigenvalue");
    Proximality::Proximal { lambda_plus, p_plus, line_minus }
}

/// Independent exact re-check of attractor data against a map.
pub fn verify_attractor<F: Spectral>(m: &ProjMap<F>, d: &AttractorData<F::Eig>) -> bool {
    let em = eig_map(m);
    let lift = em.lift();
    let eigen_ok = |p: &ProjPoint<F::Eig>, l: &F::Eig| {
        let v = p.coords();
        let mv = lift.mul_vec(v);
        (0..3).all(|i| mv[i] == l.clone() * v[i].clone())
    };
    let gt = |a: &F::Eig, b: &F::Eig| compare_abs(a, b, &d.place) == Ok(Ordering::Greater);
    eigen_ok(&d.p_plus, &d.lambda_plus)
        && eigen_ok(&d.p_mid, &d.lambda_mid)
        && eigen_ok(&d.p_minus, &d.lambda_minus)
        && em.fixes_line(&d.line_minus)
        && em.fixes_line(&d.line_plus)
        && d.line_plus.contains(&d.p_plus)
        && d.line_plus.contains(&d.p_mid)
        && d.line_minus.contains(&d.p_mid)
        && d.line_minus.contains(&d.p_minus)
        && !d.line_minus.contains(&d.p_plus)
        && gt(&d.lambda_plus, &d.lambda_mid)
        && gt(&d.lambda_mid, &d.lambda_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadExt, Rational};

    type M = ProjMap<Rational>;

    fn pt(v: [i64; 3]) -> ProjPoint<QuadExt> {
        ProjPoint::from_i64(v)
    }

    #[test]
    fn diagonal_examples() {
        let d = M::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        match classify_proximality(&d, Place::REAL) {
            Proximality::VeryProximal(a) => {
                assert_eq!(a.p_plus, pt([1, 0, 0]));
                assert_eq!(a.p_mid, pt([0, 1, 0]));
                assert_eq!(a.p_minus, pt([0, 0, 1]));
                assert!(verify_attractor(&d, &a));
            }
            other => panic!("{other:?}"),
        }
        match classify_proximality(&d, Place::PAdic(2)) {
            Proximality::VeryProximal(a) => {
                assert_eq!(a.p_plus, pt([0, 0, 1]));
                assert_eq!(a.p_minus, pt([1, 0, 0]));
                assert!(verify_attractor(&d, &a));
            }
            other => panic!("{other:?}"),
        }
        let d = M::from_i64([[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        match classify_proximality(&d, Place::REAL) {
            Proximality::Proximal { p_plus, line_minus, .. } => {
                assert_eq!(p_plus, pt([1, 0, 0]));
                assert_eq!(line_minus, ProjLine::from_i64([1, 0, 0]));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_proximality(&M::identity(), Place::REAL), Proximality::NotProximal);
    }

    #[test]
    fn image_line_is_invariant_complement() {
        let m = M::from_i64([[3, 1, 0], [0, 1, 1], [0, 0, 1]]);
        if let Proximality::Proximal { p_plus, line_minus, .. } = classify_proximality(&m, Place::REAL) {
            assert!(!line_minus.contains(&p_plus));
            assert!(eig_map(&m).fixes_line(&line_minus));
        } else {
            panic!("expected proximal");
        }
    }
}
