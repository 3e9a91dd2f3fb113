use std::fmt;

use crate::linalg::Vec3;
use crate::scalar::{ExactField, Field};

use super::{strip_brackets, split_top, GeometryError};

/// A point `[x:y:z]` of the projective plane, stored with its first nonzero
/// coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<F> {
    coords: Vec3<F>,
}

/// Scales `v` so that its first nonzero entry is 1.
pub(crate) fn normalize<F: Field>(v: Vec3<F>) -> Option<Vec3<F>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    let inv = F::one() / lead;
    Some(v.map(|x| x * inv.clone()))
}

impl<F: Field> ProjPoint<F> {
    pub fn new(v: Vec3<F>) -> Result<Self, GeometryError> {
        normalize(v).map(|coords| ProjPoint { coords }).ok_or(GeometryError::ZeroVector)
    }

    pub fn from_i64(v: [i64; 3]) -> Self {
        Self::new(v.map(F::from_i64)).expect("nonzero coordinates")
    }

    pub fn coords(&self) -> &Vec3<F> {
        &self.coords
    }

    pub fn into_coords(self) -> Vec3<F> {
        self.coords
    }

    /// Index of the last nonzero coordinate.
    pub fn depth(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap_or(0)
    }
}

impl<F: ExactField> ProjPoint<F> {
    pub fn to_literal(&self) -> String {
        let [a, b, c] = &self.coords;
        format!("[{}:{}:{}]", a.to_literal(), b.to_literal(), c.to_literal())
    }

    pub fn parse(s: &str) -> Result<Self, GeometryError> {
        let inner = strip_brackets(s).ok_or_else(|| GeometryError::Literal(s.to_string()))?;
        let parts = split_top(inner, ':');
        if parts.len() != 3 {
            return Err(GeometryError::Literal(s.to_string()));
        }
        let v = [
            F::parse_literal(parts[0])?,
            F::parse_literal(parts[1])?,
            F::parse_literal(parts[2])?,
        ];
        Self::new(v)
    }
}

impl<F: ExactField> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<F: fmt::Debug> fmt::Debug for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}:{:?}:{:?}]", self.coords[0], self.coords[1], self.coords[2])
    }
}
