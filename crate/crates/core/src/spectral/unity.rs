use std::fmt;

use num_traits::One;

use crate::linalg::Mat3;
use crate::poly::{cyclotomic, totient, Poly};
use crate::projgeo::ProjMap;
use crate::scalar::{Field, Rational};

use super::Spectral;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnityCertificate {
    /// The characteristic polynomial of a determinant-one lift (or of the
    /// norm of one) is the product of these cyclotomic polynomials.
    Cyclotomic(Vec<u32>),
    /// `m^n` is scalar.
    FiniteOrder(u64),
}

impl fmt::Display for UnityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnityCertificate::Cyclotomic(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("Phi{n}")).collect();
                write!(f, "cyclotomic {}", parts.join("*"))
            }
            UnityCertificate::FiniteOrder(n) => write!(f, "order {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsOfUnity {
    Yes(UnityCertificate),
    No,
    Unresolved,
}

/// Splits `p` into cyclotomic factors `Φ_n` with `φ(n) ≤ deg p`; `None` if
/// something non-cyclotomic remains.
fn cyclotomic_factors(p: &Poly<Rational>) -> Option<Vec<u32>> {
    let mut rest = p.monic();
    let deg = rest.degree()?;
    let mut out = Vec::new();
    // φ(n) ≤ 6 forces n ≤ 18
    for n in (1..=18u32).filter(|&n| totient(n) as usize <= deg) {
        let c = cyclotomic::<Rational>(n);
        loop {
            let (q, r) = rest.div_rem(&c);
            if !r.is_zero() {
                break;
            }
            rest = q;
            out.push(n);
        }
    }
    (rest.degree() == Some(0) && rest.coeff(0).is_one()).then_some(out)
}

fn projective_order<F: Field>(m: &Mat3<F>, bound: u64) -> Option<u64> {
    let mut acc = m.clone();
    for n in 1..=bound {
        if acc.is_scalar() {
            return Some(n);
        }
        acc = &acc * m;
    }
    None
}

/// Decides whether every eigenvalue of a determinant-one representative of
/// `m` is a root of unity.
///
/// The representative is `m / ∛det` when the cube root exists in the field
/// and `m³ / det` otherwise. Over finite fields every element has finite
/// order; the certificate is that order.
pub fn all_eigenvalues_roots_of_unity<F: Spectral>(m: &ProjMap<F>, order_bound: u64) -> RootsOfUnity {
    let lift = m.lift();
    let det = lift.det();
    let normalized = match det.cube_root() {
        Some(c) => lift.scale(&(F::one() / c)),
        None => lift.pow(3).expect("invertible").scale(&(F::one() / det)),
    };
    if let Some(norm) = F::rational_norm(&normalized.char_poly()) {
        return match cyclotomic_factors(&norm) {
            Some(ns) => RootsOfUnity::Yes(UnityCertificate::Cyclotomic(ns)),
            None => match projective_order(lift, order_bound) {
                Some(n) => RootsOfUnity::Yes(UnityCertificate::FiniteOrder(n)),
                None => RootsOfUnity::No,
            },
        };
    }
    let p = F::characteristic();
    let group_bound = p.saturating_pow(3) + p * p + p + 1;
    match projective_order(lift, order_bound.max(group_bound)) {
        Some(n) => RootsOfUnity::Yes(UnityCertificate::FiniteOrder(n)),
        None => RootsOfUnity::Unresolved,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gf, QuadExt};

    type M = ProjMap<Rational>;

    #[test]
    fn examples() {
        assert_eq!(
            all_eigenvalues_roots_of_unity(&M::identity(), 24),
            RootsOfUnity::Yes(UnityCertificate::Cyclotomic(vec![1, 1, 1]))
        );
        // companion of x^2 + x + 1 next to a 1
        let c = M::from_i64([[0, -1, 0], [1, -1, 0], [0, 0, 1]]);
        assert_eq!(
            all_eigenvalues_roots_of_unity(&c, 24),
            RootsOfUnity::Yes(UnityCertificate::Cyclotomic(vec![1, 3]))
        );
        let d = M::new(Mat3::diag([crate::scalar::rat(2, 1), crate::scalar::rat(1, 1), crate::scalar::rat(1, 2)])).unwrap();
        assert_eq!(all_eigenvalues_roots_of_unity(&d, 24), RootsOfUnity::No);
        // scaling the lift does not matter
        let s = M::from_i64([[0, 0, 2], [2, 0, 0], [0, 2, 0]]);
        assert!(matches!(all_eigenvalues_roots_of_unity(&s, 24), RootsOfUnity::Yes(_)));
    }

    #[test]
    fn unipotent_has_unit_eigenvalues() {
        let u = M::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(all_eigenvalues_roots_of_unity(&u, 24), RootsOfUnity::Yes(_)));
    }

    #[test]
    fn finite_order_certificates() {
        let m = ProjMap::<Gf<3>>::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(
            all_eigenvalues_roots_of_unity(&m, 10),
            RootsOfUnity::Yes(UnityCertificate::FiniteOrder(3))
        );
        let q = ProjMap::<QuadExt>::new(Mat3::diag([
            QuadExt::sqrt_of(2).unwrap(),
            QuadExt::from_i64(1),
            QuadExt::from_i64(1),
        ]))
        .unwrap();
        assert_eq!(all_eigenvalues_roots_of_unity(&q, 24), RootsOfUnity::No);
    }
}
