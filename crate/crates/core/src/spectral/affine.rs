use crate::linalg::{Mat2, Mat3, Vec3};
use crate::projgeo::{ProjLine, ProjMap};
use crate::scalar::Field;

use super::SpectralError;

/// `x ↦ A x + t` on the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap<F> {
    pub linear: Mat2<F>,
    pub translation: [F; 2],
}

impl<F: Field> AffineMap<F> {
    pub fn identity() -> Self {
        AffineMap { linear: Mat2::identity(), translation: [F::zero(), F::zero()] }
    }

    pub fn apply(&self, x: &[F; 2]) -> [F; 2] {
        let y = self.linear.mul_vec(x);
        [y[0].clone() + self.translation[0].clone(), y[1].clone() + self.translation[1].clone()]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let t = self.apply(&other.translation);
        AffineMap { linear: &self.linear * &other.linear, translation: t }
    }
}

/// A change of basis `B` taking the line to `{x₃ = 0}`: its last row is the
/// line's dual vector, the others are the first standard covectors that
/// keep `B` invertible.
pub fn chart_basis<F: Field>(line: &ProjLine<F>) -> Mat3<F> {
    let n: Vec3<F> = line.dual().clone();
    let e = |i: usize| -> Vec3<F> { std::array::from_fn(|j| if i == j { F::one() } else { F::zero() }) };
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let b = Mat3::new([e(i), e(j), n.clone()]);
        if !b.det().is_zero() {
            return b;
        }
    }
    unreachable!("a nonzero covector completes to a basis")
}

/// Restricts maps preserving `invariant_line` to the affine chart it bounds.
pub fn affine_chart_reduction<F: Field>(
    ms: &[ProjMap<F>],
    invariant_line: &ProjLine<F>,
) -> Result<Vec<AffineMap<F>>, SpectralError> {
    let b = chart_basis(invariant_line);
    let b_inv = b.inverse().expect("basis");
    let mut out = Vec::with_capacity(ms.len());
    for (idx, m) in ms.iter().enumerate() {
        if !m.fixes_line(invariant_line) {
            return Err(SpectralError::LineNotInvariant(idx));
        }
        let g = &(&b * m.lift()) * &b_inv;
        let g33 = g.m[2][2].clone();
        let s = F::one() / g33;
        let linear = Mat2::new([
            [g.m[0][0].clone() * s.clone(), g.m[0][1].clone() * s.clone()],
            [g.m[1][0].clone() * s.clone(), g.m[1][1].clone() * s.clone()],
        ]);
        let translation = [g.m[0][2].clone() * s.clone(), g.m[1][2].clone() * s];
        out.push(AffineMap { linear, translation });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type M = ProjMap<Rational>;

    #[test]
    fn examples() {
        let z = ProjLine::<Rational>::from_i64([0, 0, 1]);
        assert_eq!(affine_chart_reduction(&[M::identity()], &z).unwrap(), vec![AffineMap::identity()]);
        let g = M::from_i64([[2, 0, 1], [0, 2, 0], [0, 0, 1]]);
        let a = &affine_chart_reduction(&[g], &z).unwrap()[0];
        assert_eq!(a.linear, Mat2::from_i64([[2, 0], [0, 2]]));
        assert_eq!(a.translation, [Rational::from_integer(1.into()), Rational::from_integer(0.into())]);
        let bad = M::from_i64([[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        assert_eq!(affine_chart_reduction(&[bad], &z), Err(SpectralError::LineNotInvariant(0)));
    }

    #[test]
    fn homomorphism_on_products() {
        let l = ProjLine::<Rational>::from_i64([1, 1, 0]);
        // maps fixing the line x + y = 0
        let g = M::from_i64([[2, 1, 0], [1, 2, 0], [3, 1, 1]]);
        let h = M::from_i64([[1, 0, 2], [0, 1, -2], [0, 0, 5]]);
        assert!(g.fixes_line(&l) && h.fixes_line(&l));
        let gens = vec![g.clone(), h.clone()];
        let imgs = affine_chart_reduction(&gens, &l).unwrap();
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let prod = affine_chart_reduction(&[a.compose(b)], &l).unwrap();
                assert_eq!(prod[0], imgs[i].compose(&imgs[j]));
            }
        }
    }
}
