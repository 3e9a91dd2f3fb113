use crate::linalg::{nullspace, Vec3};
use crate::projgeo::{ProjMap, ProjPoint};
use crate::scalar::ExactField;

use super::{eig_matrix, spectrum, Spectral};

#[derive(Clone, Debug, PartialEq)]
pub enum CommonEigen<E> {
    Found(ProjPoint<E>),
    /// No common eigenvector exists in the eigenvalue field.
    NoneExists,
    /// Some spectrum could not be split completely.
    Inconclusive,
}

/// The point of a nonzero subspace (given by a basis) with the smallest
/// depth, i.e. lying in `span(e₀, …, e_k)` for the least `k`. That point is
/// unique because the intersection grows by at most one dimension per step.
fn shallowest<E: ExactField>(basis: &[Vec<E>]) -> ProjPoint<E> {
    for k in 0..3 {
        // solve Σ c_i b_i with coordinates > k vanishing
        let rows: Vec<Vec<E>> = ((k + 1)..3)
            .map(|r| basis.iter().map(|b| b[r].clone()).collect())
            .collect();
        let sol = nullspace(&rows, basis.len());
        if let Some(c) = sol.first() {
            let v: Vec3<E> = std::array::from_fn(|j| {
                basis
                    .iter()
                    .zip(c)
                    .fold(E::zero(), |acc, (b, ci)| acc + ci.clone() * b[j].clone())
            });
            return ProjPoint::new(v).expect("nonzero combination");
        }
    }
    unreachable!("nonzero subspace meets the whole space")
}

/// A point fixed by every map, chosen deterministically: the shallowest
/// point of each joint eigenspace, then the least of those in canonical order.
pub fn common_eigenvector<F: Spectral>(ms: &[ProjMap<F>]) -> Result<CommonEigen<F::Eig>, super::SpectralError> {
    if ms.is_empty() {
        return Err(super::SpectralError::Empty);
    }
    let mut complete = true;
    let mut per_map: Vec<Vec<F::Eig>> = Vec::new();
    for m in ms {
        let s = spectrum(m);
        complete &= s.complete;
        per_map.push(s.distinct_values());
    }
    let mats: Vec<_> = ms.iter().map(|m| eig_matrix(m.lift())).collect();
    let mut best: Option<ProjPoint<F::Eig>> = None;
    let mut choice = vec![0usize; ms.len()];
    if per_map.iter().all(|v| !v.is_empty()) {
        'outer: loop {
            let lambdas: Vec<&F::Eig> = choice.iter().enumerate().map(|(i, &c)| &per_map[i][c]).collect();
            let compatible = lambdas.iter().all(|a| lambdas.iter().all(|b| a.compatible_with(b)));
            if compatible {
                let mut rows: Vec<Vec<F::Eig>> = Vec::new();
                for (m, l) in mats.iter().zip(&lambdas) {
                    let shifted = m.sub(&crate::linalg::Mat3::identity().scale(l));
                    rows.extend(shifted.m.iter().map(|r| r.to_vec()));
                }
                let basis = nullspace(&rows, 3);
                if !basis.is_empty() {
                    let p = shallowest(&basis);
                    let better = match &best {
                        None => true,
                        Some(b) => (p.depth(), &p) < (b.depth(), b),
                    };
                    if better {
                        best = Some(p);
                    }
                }
            }
            for i in (0..choice.len()).rev() {
                choice[i] += 1;
                if choice[i] < per_map[i].len() {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    Ok(match best {
        Some(p) => CommonEigen::Found(p),
        None if complete => CommonEigen::NoneExists,
        None => CommonEigen::Inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gf, Rational};

    type M = ProjMap<Rational>;

    #[test]
    fn examples() {
        let a = M::from_i64([[1, 2, 3], [0, 4, 5], [0, 0, 6]]);
        let b = M::from_i64([[2, 0, 1], [0, 1, 1], [0, 0, 3]]);
        assert_eq!(
            common_eigenvector(&[a, b]).unwrap(),
            CommonEigen::Found(ProjPoint::from_i64([1, 0, 0]))
        );
        let d = M::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let p = M::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(common_eigenvector(&[d.clone(), p]).unwrap(), CommonEigen::NoneExists);
        assert_eq!(
            common_eigenvector(&[d]).unwrap(),
            CommonEigen::Found(ProjPoint::from_i64([1, 0, 0]))
        );
        assert!(common_eigenvector::<Rational>(&[]).is_err());
    }

    #[test]
    fn finite_field_and_irrational() {
        let a = ProjMap::<Gf<2>>::from_i64([[1, 0, 0], [1, 1, 0], [0, 0, 1]]);
        match common_eigenvector(&[a.clone()]).unwrap() {
            CommonEigen::Found(p) => assert!(a.fixes(&p)),
            other => panic!("{other:?}"),
        }
        // eigenvectors in Q(√2) only
        let r = M::from_i64([[0, 2, 0], [1, 0, 0], [0, 0, 1]]);
        match common_eigenvector(&[r.clone()]).unwrap() {
            CommonEigen::Found(p) => {
                assert_eq!(p.depth(), 1);
                assert!(crate::spectral::eig_map(&r).fixes(&p));
            }
            other => panic!("{other:?}"),
        }
    }
}
