//! The projective line, used as the fibre of the line fibration.

use std::fmt;

use crate::linalg::Mat2;
use crate::scalar::{ExactField, Field};

use super::GeometryError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point<F> {
    coords: [F; 2],
}

impl<F: Field> P1Point<F> {
    pub fn new(v: [F; 2]) -> Result<Self, GeometryError> {
        let lead = v.iter().find(|x| !x.is_zero()).ok_or(GeometryError::ZeroVector)?.clone();
        let inv = F::one() / lead;
        Ok(P1Point { coords: v.map(|x| x * inv.clone()) })
    }

    /// `[1:0]`
    pub fn e0() -> Self {
        P1Point { coords: [F::one(), F::zero()] }
    }

    pub fn coords(&self) -> &[F; 2] {
        &self.coords
    }
}

impl<F: ExactField> fmt::Display for P1Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.coords[0].to_literal(), self.coords[1].to_literal())
    }
}

impl<F: fmt::Debug> fmt::Debug for P1Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}:{:?}]", self.coords[0], self.coords[1])
    }
}

/// An element of PGL₂, canonical up to scalars like [`super::ProjMap`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct P1Map<F> {
    m: Mat2<F>,
}

impl<F: Field> P1Map<F> {
    pub fn new(m: Mat2<F>) -> Result<Self, GeometryError> {
        if m.det().is_zero() {
            return Err(GeometryError::Singular);
        }
        let lead = m.m.iter().flatten().find(|x| !x.is_zero()).expect("nonzero").clone();
        Ok(P1Map { m: m.scale(&(F::one() / lead)) })
    }

    pub fn identity() -> Self {
        P1Map { m: Mat2::identity() }
    }

    pub fn matrix(&self) -> &Mat2<F> {
        &self.m
    }

    pub fn apply(&self, x: &P1Point<F>) -> P1Point<F> {
        P1Point::new(self.m.mul_vec(x.coords())).expect("invertible")
    }

    pub fn compose(&self, other: &Self) -> Self {
        P1Map::new(&self.m * &other.m).expect("invertible")
    }

    pub fn inverse(&self) -> Self {
        P1Map::new(self.m.inverse().expect("invertible")).expect("invertible")
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_scalar()
    }
}
