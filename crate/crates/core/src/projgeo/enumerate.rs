use crate::linalg::dot;
use crate::scalar::ExactField;

use super::{GeometryError, ProjLine, ProjPoint};

fn canonical_vectors<F: ExactField>() -> Result<Vec<[F; 3]>, GeometryError> {
    let elems = F::finite_elements().ok_or(GeometryError::InfiniteField)?;
    let mut out = Vec::with_capacity(elems.len() * elems.len() + elems.len() + 1);
    for a in &elems {
        for b in &elems {
            out.push([F::one(), a.clone(), b.clone()]);
        }
    }
    for a in &elems {
        out.push([F::zero(), F::one(), a.clone()]);
    }
    out.push([F::zero(), F::zero(), F::one()]);
    out.sort();
    Ok(out)
}

/// All `p² + p + 1` points of the plane over a finite field, in canonical order.
pub fn enumerate_points<F: ExactField>() -> Result<Vec<ProjPoint<F>>, GeometryError> {
    canonical_vectors::<F>()?.into_iter().map(ProjPoint::new).collect()
}

pub fn all_lines<F: ExactField>() -> Result<Vec<ProjLine<F>>, GeometryError> {
    canonical_vectors::<F>()?.into_iter().map(ProjLine::new).collect()
}

/// The pencil of `p + 1` lines through `u`.
pub fn lines_through<F: ExactField>(u: &ProjPoint<F>) -> Result<Vec<ProjLine<F>>, GeometryError> {
    Ok(canonical_vectors::<F>()?
        .into_iter()
        .filter(|n| dot(n, u.coords()).is_zero())
        .map(|n| ProjLine::new(n).expect("nonzero"))
        .collect())
}
