//! Small dense matrices over a field.

use std::fmt;
use std::ops::Mul;

use crate::poly::Poly;
use crate::scalar::{Field, Literal};

pub type Vec3<F> = [F; 3];

pub fn dot<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> F {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn cross<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> Vec3<F> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Basis of `{x : A x = 0}` for an `r × n` matrix given by rows, via reduced row echelon form.
pub fn nullspace<F: Field>(rows: &[Vec<F>], n: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let v = a[r][j].clone();
                    a[i][j] = a[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3<F> {
    pub m: [[F; 3]; 3],
}

impl<F: Field> Mat3<F> {
    pub fn new(m: [[F; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Self {
        Mat3 { m: m.map(|r| r.map(F::from_i64)) }
    }

    pub fn identity() -> Self {
        Self::diag([F::one(), F::one(), F::one()])
    }

    pub fn diag(d: [F; 3]) -> Self {
        let [a, b, c] = d;
        let z = F::zero;
        Mat3 { m: [[a, z(), z()], [z(), b, z()], [z(), z(), c]] }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.m[i][j]
    }

    pub fn col(&self, j: usize) -> Vec3<F> {
        [self.m[0][j].clone(), self.m[1][j].clone(), self.m[2][j].clone()]
    }

    pub fn transpose(&self) -> Self {
        Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())) }
    }

    pub fn mul_vec(&self, v: &Vec3<F>) -> Vec3<F> {
        std::array::from_fn(|i| dot(&self.m[i], v))
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat3 { m: self.m.clone().map(|r| r.map(|x| x * s.clone())) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.m[i][j].clone() - other.m[i][j].clone())
            }),
        }
    }

    pub fn trace(&self) -> F {
        self.m[0][0].clone() + self.m[1][1].clone() + self.m[2][2].clone()
    }

    pub fn det(&self) -> F {
        dot(&self.m[0], &cross(&self.m[1], &self.m[2]))
    }

    /// Classical adjoint: `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let r = &self.m;
        let c0 = cross(&r[1], &r[2]);
        let c1 = cross(&r[2], &r[0]);
        let c2 = cross(&r[0], &r[1]);
        Mat3 { m: [c0, c1, c2] }.transpose()
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        let inv = d.recip()?;
        Some(self.adjugate().scale(&inv))
    }

    /// `det(xI − M)`, monic of degree 3.
    pub fn char_poly(&self) -> Poly<F> {
        let m = &self.m;
        let minors = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
            + m[0][0].clone() * m[2][2].clone()
            - m[0][2].clone() * m[2][0].clone()
            + m[1][1].clone() * m[2][2].clone()
            - m[1][2].clone() * m[2][1].clone();
        Poly::new(vec![-self.det(), minors, -self.trace(), F::one()])
    }

    pub fn is_scalar(&self) -> bool {
        let d = &self.m[0][0];
        (0..3).all(|i| (0..3).all(|j| if i == j { &self.m[i][j] == d } else { self.m[i][j].is_zero() }))
    }

    /// `M^n` for any integer `n`; `None` if `n < 0` and `M` is singular.
    pub fn pow(&self, n: i64) -> Option<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// Kernel of `M − λI`.
    pub fn eigenspace(&self, lambda: &F) -> Vec<Vec3<F>> {
        let shifted = self.sub(&Self::identity().scale(lambda));
        let rows: Vec<Vec<F>> = shifted.m.iter().map(|r| r.to_vec()).collect();
        nullspace(&rows, 3)
            .into_iter()
            .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
            .collect()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat3<G> {
        Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.m[i][j]))) }
    }
}

impl<F: Field> Mul for &Mat3<F> {
    type Output = Mat3<F>;
    fn mul(self, rhs: &Mat3<F>) -> Mat3<F> {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(F::zero(), |acc, k| acc + self.m[i][k].clone() * rhs.m[k][j].clone())
                })
            }),
        }
    }
}

impl<F: Field> Mul for Mat3<F> {
    type Output = Mat3<F>;
    fn mul(self, rhs: Mat3<F>) -> Mat3<F> {
        &self * &rhs
    }
}

impl<F: Literal> Mat3<F> {
    pub fn to_literal(&self) -> String {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{},{},{}]", r[0].to_literal(), r[1].to_literal(), r[2].to_literal()))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl<F: fmt::Debug> fmt::Debug for Mat3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// 2×2 matrices, used for P¹ and affine charts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2<F> {
    pub m: [[F; 2]; 2],
}

impl<F: Field> Mat2<F> {
    pub fn new(m: [[F; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Mat2 { m: m.map(|r| r.map(F::from_i64)) }
    }

    pub fn identity() -> Self {
        Mat2 { m: [[F::one(), F::zero()], [F::zero(), F::one()]] }
    }

    pub fn det(&self) -> F {
        self.m[0][0].clone() * self.m[1][1].clone() - self.m[0][1].clone() * self.m[1][0].clone()
    }

    pub fn trace(&self) -> F {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().recip()?;
        let [[a, b], [c, d]] = self.m.clone();
        Some(Mat2 {
            m: [[d * inv.clone(), -b * inv.clone()], [-c * inv.clone(), a * inv]],
        })
    }

    pub fn mul_vec(&self, v: &[F; 2]) -> [F; 2] {
        std::array::from_fn(|i| self.m[i][0].clone() * v[0].clone() + self.m[i][1].clone() * v[1].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat2 { m: self.m.clone().map(|r| r.map(|x| x * s.clone())) }
    }

    pub fn is_scalar(&self) -> bool {
        self.m[0][1].is_zero() && self.m[1][0].is_zero() && self.m[0][0] == self.m[1][1]
    }
}

impl<F: Field> Mul for &Mat2<F> {
    type Output = Mat2<F>;
    fn mul(self, rhs: &Mat2<F>) -> Mat2<F> {
        Mat2 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    self.m[i][0].clone() * rhs.m[0][j].clone() + self.m[i][1].clone() * rhs.m[1][j].clone()
                })
            }),
        }
    }
}

impl<F: Literal> Mat2<F> {
    pub fn to_literal(&self) -> String {
        format!(
            "[[{},{}],[{},{}]]",
            self.m[0][0].to_literal(),
            self.m[0][1].to_literal(),
            self.m[1][0].to_literal(),
            self.m[1][1].to_literal()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gf, Rational};
    use num_traits::Zero;

    type M = Mat3<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn inverse_and_det() {
        let a = M::from_i64([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(a.det(), r(5));
        assert_eq!(&a * &a.inverse().unwrap(), M::identity());
        assert_eq!(&a.adjugate() * &a, M::identity().scale(&a.det()));
        assert!(M::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).inverse().is_none());
    }

    #[test]
    fn char_poly_matches_det() {
        let a = M::from_i64([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let cp = a.char_poly();
        for x in -3..4 {
            let xi = M::identity().scale(&r(x)).sub(&a);
            assert_eq!(cp.eval(&r(x)), xi.det());
        }
    }

    #[test]
    fn kernels() {
        let a = M::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 2]]);
        assert_eq!(a.eigenspace(&r(2)).len(), 2);
        assert_eq!(a.eigenspace(&r(4)), vec![[r(1), r(0), r(0)]]);
        assert!(a.eigenspace(&r(3)).is_empty());
        let g = Mat3::<Gf<3>>::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let k = g.eigenspace(&Gf::new(1));
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(is_zero_vec(&g.mul_vec(&v).iter().zip(&v).map(|(a, b)| *a - *b).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn powers() {
        let a = M::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(a.pow(5).unwrap(), M::from_i64([[1, 5, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(&a.pow(-3).unwrap() * &a.pow(3).unwrap(), M::identity());
        assert!(M::identity().scale(&r(0)).pow(-1).is_none());
        assert!(r(0).is_zero());
    }
}
