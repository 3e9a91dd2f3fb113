use std::collections::{BTreeMap, BTreeSet};

use crate::projgeo::ProjPoint;
use crate::resprod::{Config, Perm, WreathElement};
use crate::scalar::ExactField;

use super::fibre::walk_budget;
use super::orbit::{walk_orbit, OrbitStatus, OrbitWalk};
use super::BiregError;

/// Fixed-point coordinates along one orbit, listing only non-basepoint values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCoords<F> {
    Coords(BTreeMap<ProjPoint<F>, usize>),
    NoFixedPoint(String),
}

/// The unique candidate on a certified-infinite orbit: basepoint before the
/// first nontrivial cofactor, then `z_n = g_n z_{n-1}`.
pub fn infinite_orbit_fixed_coords<F: ExactField>(
    t: &WreathElement<F>,
    walk: &OrbitWalk<F>,
    basepoint: usize,
) -> Result<OrbitCoords<F>, BiregError> {
    if !walk.is_infinite() {
        return Err(BiregError::NotInfinite);
    }
    let mut coords = BTreeMap::new();
    let mut z = basepoint;
    for p in &walk.points {
        z = t.cofactor_at(p).apply(z);
        if z != basepoint {
            coords.insert(p.clone(), z);
        }
    }
    if z != basepoint {
        return Ok(OrbitCoords::NoFixedPoint(format!(
            "orbit of {} ends on coordinate {} instead of the basepoint",
            walk.start.to_literal(),
            z
        )));
    }
    Ok(OrbitCoords::Coords(coords))
}

/// Solves the cycle equations through the first-return element
/// `r = g_{p_0} g_{p_{k-1}} ⋯ g_{p_1}`, preferring the basepoint as `y_{p_0}`.
pub fn finite_orbit_fixed_coords<F: ExactField>(
    t: &WreathElement<F>,
    orbit: &[ProjPoint<F>],
    basepoint: usize,
) -> Result<OrbitCoords<F>, BiregError> {
    let k = orbit.len();
    let distinct: BTreeSet<_> = orbit.iter().collect();
    if k == 0 || distinct.len() != k {
        return Err(BiregError::NotACycle);
    }
    for i in 0..k {
        if t.proj().apply(&orbit[i]) != orbit[(i + 1) % k] {
            return Err(BiregError::NotACycle);
        }
    }
    let mut r = Perm::identity(t.degree());
    for i in 1..=k {
        r = t.cofactor_at(&orbit[i % k]).compose(&r);
    }
    let y0 = std::iter::once(basepoint)
        .chain(0..t.degree())
        .find(|&y| r.apply(y) == y);
    let Some(y0) = y0 else {
        return Ok(OrbitCoords::NoFixedPoint(format!(
            "first-return element {:?} on the cycle through {} has no fixed point",
            r.images(),
            orbit[0].to_literal()
        )));
    };
    let mut coords = BTreeMap::new();
    let mut y = y0;
    for (i, p) in orbit.iter().enumerate() {
        if i > 0 {
            y = t.cofactor_at(p).apply(y);
        }
        if y != basepoint {
            coords.insert(p.clone(), y);
        }
    }
    Ok(OrbitCoords::Coords(coords))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPointResult<F> {
    Fixed(Config<F>),
    NoFixedPoint { orbit_start: ProjPoint<F>, reason: String },
    Inconclusive(String),
}

/// Assembles a fixed point of `t` orbit by orbit over the orbits meeting its
/// support, and verifies it.
pub fn build_fixed_point<F: ExactField>(t: &WreathElement<F>, basepoint: usize) -> FixedPointResult<F> {
    let support: BTreeSet<ProjPoint<F>> = t.support().cloned().collect();
    let budget = walk_budget(support.len());
    let mut covered: BTreeSet<ProjPoint<F>> = BTreeSet::new();
    let mut z = Config::basepoint_config(basepoint);
    for s in &support {
        if covered.contains(s) {
            continue;
        }
        let walk = walk_orbit(t.proj(), s, &support, budget);
        let coords = match walk.status {
            OrbitStatus::Periodic(_) => finite_orbit_fixed_coords(t, &walk.points, basepoint),
            OrbitStatus::InfiniteCertified { .. } => infinite_orbit_fixed_coords(t, &walk, basepoint),
            OrbitStatus::Uncertified => {
                return FixedPointResult::Inconclusive(format!(
                    "orbit of {} neither closed nor escaped within {budget} steps",
                    s.to_literal()
                ))
            }
        }
        .expect("walk status matches the solver");
        covered.extend(walk.points.iter().cloned());
        match coords {
            OrbitCoords::Coords(c) => {
                for (p, v) in c {
                    z.set(p, v);
                }
            }
            OrbitCoords::NoFixedPoint(reason) => {
                return FixedPointResult::NoFixedPoint { orbit_start: s.clone(), reason }
            }
        }
    }
    if t.act(&z) != z {
        return FixedPointResult::Inconclusive("assembled configuration failed verification".into());
    }
    FixedPointResult::Fixed(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::scalar::Rational;

    type P = ProjPoint<Rational>;

    fn swap() -> Perm {
        Perm::from_images(vec![1, 0]).unwrap()
    }

    fn unipotent() -> ProjMap<Rational> {
        ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    }

    fn walk_of(t: &WreathElement<Rational>, start: P) -> OrbitWalk<Rational> {
        let support = t.support().cloned().collect();
        walk_orbit(t.proj(), &start, &support, 200)
    }

    #[test]
    fn infinite_orbit_cases() {
        let start = P::from_i64([0, 1, 0]);
        let trivial = WreathElement::pure(2, unipotent());
        let w = walk_of(&trivial, start.clone());
        // an empty bounding set still needs the height certificate
        assert!(w.is_infinite());
        assert_eq!(infinite_orbit_fixed_coords(&trivial, &w, 0).unwrap(), OrbitCoords::Coords(BTreeMap::new()));

        let two = WreathElement::new(2, [(P::from_i64([1, 1, 0]), swap()), (P::from_i64([2, 1, 0]), swap())], unipotent());
        let w = walk_of(&two, start.clone());
        let expect: BTreeMap<_, _> = [(P::from_i64([1, 1, 0]), 1)].into_iter().collect();
        assert_eq!(infinite_orbit_fixed_coords(&two, &w, 0).unwrap(), OrbitCoords::Coords(expect));

        let one = WreathElement::new(2, [(P::from_i64([1, 1, 0]), swap())], unipotent());
        let w = walk_of(&one, start);
        assert!(matches!(infinite_orbit_fixed_coords(&one, &w, 0).unwrap(), OrbitCoords::NoFixedPoint(_)));
    }

    #[test]
    fn finite_orbit_cases() {
        // [1:0:0] and [0:1:0] swapped by h
        let h = ProjMap::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let a = P::from_i64([1, 0, 0]);
        let b = P::from_i64([0, 1, 0]);
        let s = Perm::from_images(vec![1, 2, 0]).unwrap();
        let t = WreathElement::new(3, [(a.clone(), s.clone()), (b.clone(), s.inverse())], h.clone());
        let got = finite_orbit_fixed_coords(&t, &[a.clone(), b.clone()], 0).unwrap();
        let expect: BTreeMap<_, _> = [(b.clone(), s.inverse().apply(0))].into_iter().collect();
        assert_eq!(got, OrbitCoords::Coords(expect));

        let fixed_pt = P::from_i64([0, 0, 1]);
        let free = WreathElement::new(2, [(fixed_pt.clone(), swap())], h.clone());
        assert!(matches!(finite_orbit_fixed_coords(&free, &[fixed_pt], 0).unwrap(), OrbitCoords::NoFixedPoint(_)));
        assert_eq!(finite_orbit_fixed_coords(&t, &[a], 0), Err(BiregError::NotACycle));
    }

    #[test]
    fn assembled_fixed_points() {
        assert_eq!(build_fixed_point(&WreathElement::<Rational>::identity(2), 0), FixedPointResult::Fixed(Config::basepoint_config(0)));
        let d = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let three = Perm::from_images(vec![1, 2, 0]).unwrap();
        let t = WreathElement::new(3, [(P::from_i64([1, 0, 0]), three.clone()), (P::from_i64([1, 1, 1]), swap3())], d);
        match build_fixed_point(&t, 0) {
            FixedPointResult::NoFixedPoint { orbit_start, .. } => assert_eq!(orbit_start, P::from_i64([1, 0, 0])),
            other => panic!("{other:?}"),
        }
        let two = WreathElement::new(2, [(P::from_i64([1, 1, 0]), swap()), (P::from_i64([2, 1, 0]), swap())], unipotent());
        match build_fixed_point(&two, 0) {
            FixedPointResult::Fixed(z) => {
                assert_eq!(two.act(&z), z);
                assert_eq!(z.get(&P::from_i64([1, 1, 0])), 1);
                assert_eq!(z.support_len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    fn swap3() -> Perm {
        Perm::from_images(vec![1, 0, 2]).unwrap()
    }
}
