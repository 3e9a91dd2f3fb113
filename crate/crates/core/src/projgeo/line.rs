use std::fmt;

use crate::linalg::{cross, dot, is_zero_vec, Vec3};
use crate::scalar::{ExactField, Field};

use super::point::normalize;
use super::{GeometryError, ProjPoint};

/// The line `{x : n·x = 0}` for a canonical dual vector `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine<F> {
    dual: Vec3<F>,
}

impl<F: Field> ProjLine<F> {
    pub fn new(n: Vec3<F>) -> Result<Self, GeometryError> {
        normalize(n).map(|dual| ProjLine { dual }).ok_or(GeometryError::ZeroVector)
    }

    pub fn from_i64(n: [i64; 3]) -> Self {
        Self::new(n.map(F::from_i64)).expect("nonzero dual vector")
    }

    pub fn dual(&self) -> &Vec3<F> {
        &self.dual
    }

    pub fn contains(&self, x: &ProjPoint<F>) -> bool {
        dot(&self.dual, x.coords()).is_zero()
    }

    /// Two distinct points spanning the line.
    pub fn basis(&self) -> [ProjPoint<F>; 2] {
        let n = &self.dual;
        let e: [Vec3<F>; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { F::one() } else { F::zero() })
        });
        let mut pts: Vec<ProjPoint<F>> = Vec::new();
        for v in e.iter() {
            let c = cross(n, v);
            if is_zero_vec(&c) {
                continue;
            }
            let p = ProjPoint::new(c).expect("nonzero");
            if !pts.contains(&p) {
                pts.push(p);
            }
            if pts.len() == 2 {
                break;
            }
        }
        [pts[0].clone(), pts[1].clone()]
    }
}

pub fn span_line<F: Field>(x: &ProjPoint<F>, y: &ProjPoint<F>) -> Result<ProjLine<F>, GeometryError> {
    ProjLine::new(cross(x.coords(), y.coords())).map_err(|_| GeometryError::Degenerate("equal points"))
}

pub fn intersect_lines<F: Field>(l1: &ProjLine<F>, l2: &ProjLine<F>) -> Result<ProjPoint<F>, GeometryError> {
    ProjPoint::new(cross(l1.dual(), l2.dual())).map_err(|_| GeometryError::Degenerate("equal lines"))
}

pub fn line_point_incidence<F: Field>(l: &ProjLine<F>, x: &ProjPoint<F>) -> bool {
    l.contains(x)
}

impl<F: ExactField> ProjLine<F> {
    pub fn to_literal(&self) -> String {
        let [a, b, c] = &self.dual;
        format!("line[{}:{}:{}]", a.to_literal(), b.to_literal(), c.to_literal())
    }

    pub fn parse(s: &str) -> Result<Self, GeometryError> {
        let rest = s
            .trim()
            .strip_prefix("line")
            .ok_or_else(|| GeometryError::Literal(s.to_string()))?;
        let p = ProjPoint::<F>::parse(rest)?;
        Ok(ProjLine { dual: p.into_coords() })
    }
}

impl<F: ExactField> fmt::Display for ProjLine<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<F: fmt::Debug> fmt::Debug for ProjLine<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line[{:?}:{:?}:{:?}]", self.dual[0], self.dual[1], self.dual[2])
    }
}
