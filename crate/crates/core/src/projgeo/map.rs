use std::fmt;
use std::hash::{Hash, Hasher};

use crate::linalg::{Mat3, Vec3};
use crate::scalar::{ExactField, Field};

use super::{split_top, strip_brackets, GeometryError, ProjLine, ProjPoint};

/// An element of PGL₃: an invertible matrix up to scalars.
///
/// The matrix the map was built from is kept as its *lift*, so spectral data
/// refers to actual eigenvalues rather than normalized ones. Equality and
/// hashing go through the canonical representative, whose first nonzero entry
/// in row-major order is 1.
#[derive(Clone)]
pub struct ProjMap<F> {
    lift: Mat3<F>,
    canon: Mat3<F>,
}

fn canonical<F: Field>(m: &Mat3<F>) -> Mat3<F> {
    let lead = m.m.iter().flatten().find(|x| !x.is_zero()).expect("nonzero matrix").clone();
    m.scale(&(F::one() / lead))
}

impl<F: Field> ProjMap<F> {
    pub fn new(lift: Mat3<F>) -> Result<Self, GeometryError> {
        if lift.det().is_zero() {
            return Err(GeometryError::Singular);
        }
        let canon = canonical(&lift);
        Ok(ProjMap { lift, canon })
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Self {
        Self::new(Mat3::from_i64(m)).expect("invertible matrix")
    }

    pub fn identity() -> Self {
        Self::new(Mat3::identity()).expect("identity")
    }

    pub fn diag(d: [F; 3]) -> Result<Self, GeometryError> {
        Self::new(Mat3::diag(d))
    }

    pub fn lift(&self) -> &Mat3<F> {
        &self.lift
    }

    pub fn canonical(&self) -> &Mat3<F> {
        &self.canon
    }

    pub fn is_identity(&self) -> bool {
        self.canon.is_scalar()
    }

    pub fn apply(&self, x: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint::new(self.lift.mul_vec(x.coords())).expect("invertible map")
    }

    pub fn apply_vec(&self, v: &Vec3<F>) -> Vec3<F> {
        self.lift.mul_vec(v)
    }

    /// Image of a line: `{x : n·x = 0}` goes to `{y : (M⁻ᵀ n)·y = 0}`.
    pub fn apply_line(&self, l: &ProjLine<F>) -> ProjLine<F> {
        let adj_t = self.lift.adjugate().transpose();
        ProjLine::new(adj_t.mul_vec(l.dual())).expect("invertible map")
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(&self.lift * &other.lift).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.lift.inverse().expect("invertible")).expect("inverse")
    }

    pub fn pow(&self, n: i64) -> Self {
        Self::new(self.lift.pow(n).expect("invertible")).expect("power")
    }

    pub fn fixes(&self, x: &ProjPoint<F>) -> bool {
        &self.apply(x) == x
    }

    pub fn fixes_line(&self, l: &ProjLine<F>) -> bool {
        &self.apply_line(l) == l
    }

    /// Same projective class but with `lift` replaced by a proportional matrix.
    pub fn with_lift(&self, lift: Mat3<F>) -> Result<Self, GeometryError> {
        let m = Self::new(lift)?;
        if m.canon != self.canon {
            return Err(GeometryError::Degenerate("lift not proportional"));
        }
        Ok(m)
    }
}

impl<F: Field> PartialEq for ProjMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
    }
}

impl<F: Field + Eq> Eq for ProjMap<F> {}

impl<F: Field + Hash> Hash for ProjMap<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canon.hash(state)
    }
}

impl<F: ExactField> ProjMap<F> {
    pub fn to_literal(&self) -> String {
        self.lift.to_literal()
    }

    pub fn parse(s: &str) -> Result<Self, GeometryError> {
        let bad = || GeometryError::Literal(s.to_string());
        let inner = strip_brackets(s).ok_or_else(bad)?;
        let rows = split_top(inner, ',');
        if rows.len() != 3 {
            return Err(bad());
        }
        let mut m: Vec<[F; 3]> = Vec::new();
        for r in rows {
            let cells = split_top(strip_brackets(r).ok_or_else(bad)?, ',');
            if cells.len() != 3 {
                return Err(bad());
            }
            m.push([
                F::parse_literal(cells[0])?,
                F::parse_literal(cells[1])?,
                F::parse_literal(cells[2])?,
            ]);
        }
        let [a, b, c]: [[F; 3]; 3] = m.try_into().map_err(|_| bad())?;
        Self::new(Mat3::new([a, b, c]))
    }
}

impl<F: ExactField> fmt::Display for ProjMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<F: fmt::Debug> fmt::Debug for ProjMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMap{:?}", self.lift)
    }
}
