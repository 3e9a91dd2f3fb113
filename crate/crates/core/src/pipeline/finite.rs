use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::bireg::{build_fixed_point, FixedPointResult};
use crate::projgeo::{enumerate_points, ProjPoint};
use crate::resprod::{Config, Perm, WreathElement};
use crate::scalar::ExactField;
use crate::words::{Letter, Word};

use super::{PipelineError, Scenario};

/// Constraint graph of `z_{h(p)} = g_{h(p)} z_p` over all points of a finite plane.
struct Constraints<F> {
    points: Vec<ProjPoint<F>>,
    // (neighbour, perm carrying own value to neighbour's value)
    edges: Vec<Vec<(usize, Perm)>>,
}

impl<F: ExactField> Constraints<F> {
    fn new(ws: &[WreathElement<F>]) -> Result<Self, PipelineError> {
        let points = enumerate_points::<F>().map_err(|_| PipelineError::InfiniteAmbient)?;
        let index: BTreeMap<&ProjPoint<F>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = vec![Vec::new(); points.len()];
        for w in ws {
            for (i, p) in points.iter().enumerate() {
                let q = w.proj().apply(p);
                let j = index[&q];
                let g = w.cofactor_at(&q);
                edges[j].push((i, g.inverse()));
                edges[i].push((j, g));
            }
        }
        Ok(Constraints { points, edges })
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points.len()];
        let mut out = Vec::new();
        for root in 0..self.points.len() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                for (j, _) in &self.edges[comp[i]] {
                    if !seen[*j] {
                        seen[*j] = true;
                        comp.push(*j);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }

    /// Propagates `value` from the first point of the component; `None` on a
    /// contradiction.
    fn propagate(&self, comp: &[usize], value: usize) -> Option<BTreeMap<usize, usize>> {
        let mut vals = BTreeMap::from([(comp[0], value)]);
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let v = vals[&i];
            for (j, g) in &self.edges[i] {
                let w = g.apply(v);
                match vals.get(j) {
                    Some(&old) if old != w => return None,
                    Some(_) => {}
                    None => {
                        vals.insert(*j, w);
                        queue.push_back(*j);
                    }
                }
            }
        }
        Some(vals)
    }
}

fn candidate_values(degree: usize, basepoint: usize) -> impl Iterator<Item = usize> {
    std::iter::once(basepoint).chain((0..degree).filter(move |&v| v != basepoint))
}

fn solve<F: ExactField>(ws: &[WreathElement<F>], degree: usize, basepoint: usize) -> Result<Option<Config<F>>, PipelineError> {
    let c = Constraints::new(ws)?;
    let mut z = Config::basepoint_config(basepoint);
    for comp in c.components() {
        let sol = candidate_values(degree, basepoint).find_map(|v| c.propagate(&comp, v));
        let Some(vals) = sol else { return Ok(None) };
        for (i, v) in vals {
            z.set(c.points[i].clone(), v);
        }
    }
    Ok(Some(z))
}

/// Exact common fixed point of the generators over a finite plane, solved
/// orbit component by orbit component. The basepoint is preferred on each
/// component, then the smallest index.
pub fn brute_force_fixed_point<F: ExactField>(s: &Scenario<F>) -> Result<Option<Config<F>>, PipelineError> {
    solve(s.generators(), s.based_space().size(), s.basepoint())
}

/// Number of common fixed points of `ws` over a finite plane.
pub fn count_fixed_points<F: ExactField>(ws: &[WreathElement<F>], degree: usize) -> Result<u128, PipelineError> {
    let c = Constraints::new(ws)?;
    let mut total: u128 = 1;
    for comp in c.components() {
        let n = (0..degree).filter(|&v| c.propagate(&comp, v).is_some()).count() as u128;
        total = total.saturating_mul(n);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllipticVerdict {
    /// Every element checked fixes a point; `exhaustive` when the whole
    /// group was enumerated.
    Yes { checked: usize, exhaustive: bool },
    Counterexample { word: Word, reason: String },
    CapExceeded { cap: usize, checked: usize },
    Unresolved { word: Word, reason: String },
}

/// Whether every element fixes a point. Finite planes enumerate the whole
/// group up to `closure_cap` elements; infinite planes check words up to
/// `word_bound`.
pub fn purely_elliptic_check<F: ExactField>(
    s: &Scenario<F>,
    word_bound: usize,
    closure_cap: usize,
) -> Result<EllipticVerdict, PipelineError> {
    let degree = s.based_space().size();
    let x0 = s.basepoint();
    if F::finite_elements().is_some() {
        let alphabet: Vec<(Letter, WreathElement<F>)> = s
            .generators()
            .iter()
            .enumerate()
            .flat_map(|(i, g)| [(Letter::new(i, false), g.clone()), (Letter::new(i, true), g.invert())])
            .collect();
        let id = s.identity();
        let mut seen: HashSet<WreathElement<F>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([(Word::empty(), id)]);
        let mut checked = 0;
        while let Some((w, e)) = queue.pop_front() {
            if solve(std::slice::from_ref(&e), degree, x0)?.is_none() {
                return Ok(EllipticVerdict::Counterexample { word: w, reason: "no fixed point in the full product".into() });
            }
            checked += 1;
            for (l, g) in &alphabet {
                let next = e.multiply(g);
                if seen.insert(next.clone()) {
                    if seen.len() > closure_cap {
                        return Ok(EllipticVerdict::CapExceeded { cap: closure_cap, checked });
                    }
                    let mut v = w.0.clone();
                    v.push(*l);
                    queue.push_back((Word(v), next));
                }
            }
        }
        return Ok(EllipticVerdict::Yes { checked, exhaustive: true });
    }
    let mut unresolved = None;
    let words = s.words(word_bound);
    for (w, e) in &words {
        match build_fixed_point(e, x0) {
            FixedPointResult::Fixed(_) => {}
            FixedPointResult::NoFixedPoint { reason, .. } => {
                return Ok(EllipticVerdict::Counterexample {
                    word: w.clone(),
                    reason,
                })
            }
            FixedPointResult::Inconclusive(reason) => {
                unresolved.get_or_insert((w.clone(), reason));
            }
        }
    }
    Ok(match unresolved {
        Some((word, reason)) => EllipticVerdict::Unresolved { word, reason },
        None => EllipticVerdict::Yes { checked: words.len() + 1, exhaustive: false },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::resprod::BasedSpace;
    use crate::scalar::{Gf, Rational};

    fn x0() -> BasedSpace {
        BasedSpace::parse(&["a", "b"], "a", &["(a b)"]).unwrap()
    }

    fn swap() -> Perm {
        Perm::from_images(vec![1, 0]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let s = Scenario::<Gf<2>>::new(x0(), vec![]).unwrap();
        assert_eq!(brute_force_fixed_point(&s).unwrap(), Some(Config::basepoint_config(0)));
        assert_eq!(purely_elliptic_check(&s, 2, 100).unwrap(), EllipticVerdict::Yes { checked: 1, exhaustive: true });
    }

    #[test]
    fn fixed_point_free_cofactor_on_a_fixed_point() {
        let f = WreathElement::<Gf<2>>::new(2, [(ProjPoint::from_i64([1, 0, 0]), swap())], ProjMap::identity());
        let s = Scenario::new(x0(), vec![("f".into(), f.clone())]).unwrap();
        assert_eq!(brute_force_fixed_point(&s).unwrap(), None);
        assert_eq!(count_fixed_points(&[f], 2).unwrap(), 0);
        match purely_elliptic_check(&s, 2, 100).unwrap() {
            EllipticVerdict::Counterexample { word, .. } => assert_eq!(word.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn commuting_coordinate_permutations() {
        let h = ProjMap::<Gf<3>>::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let a = WreathElement::new(
            2,
            [(ProjPoint::from_i64([1, 0, 0]), swap()), (ProjPoint::from_i64([0, 1, 0]), swap())],
            h.clone(),
        );
        let b = WreathElement::pure(2, ProjMap::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 2]]));
        let s = Scenario::new(x0(), vec![("a".into(), a), ("b".into(), b)]).unwrap();
        assert!(matches!(purely_elliptic_check(&s, 2, 1000).unwrap(), EllipticVerdict::Yes { exhaustive: true, .. }));
        let z = brute_force_fixed_point(&s).unwrap().unwrap();
        assert!(s.fixes(&z));
    }

    #[test]
    fn shift_is_a_counterexample_over_the_rationals() {
        let f = WreathElement::<Rational>::new(
            2,
            [(ProjPoint::from_i64([1, 1, 0]), swap())],
            ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        );
        let s = Scenario::new(x0(), vec![("f".into(), f)]).unwrap();
        match purely_elliptic_check(&s, 2, 100).unwrap() {
            EllipticVerdict::Counterexample { word, .. } => assert_eq!(word.len(), 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(brute_force_fixed_point(&s), Err(PipelineError::InfiniteAmbient));
    }
}
