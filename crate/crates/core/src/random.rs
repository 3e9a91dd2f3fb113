//! Seeded generators of points, configurations, elements and scenarios.
//!
//! Every generator draws from a caller-provided [`ChaCha8Rng`], so a seed
//! fixes the whole sequence on every platform.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::pipeline::Scenario;
use crate::projgeo::{enumerate_points, ProjMap, ProjPoint};
use crate::resprod::{BasedSpace, Config, Perm, WreathElement};
use crate::scalar::ExactField;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A scalar `from_i64(n)` with `n` uniform in `[-bound, bound]`.
pub fn scalar<F: ExactField>(rng: &mut ChaCha8Rng, bound: i64) -> F {
    F::from_i64(rng.gen_range(-bound..=bound))
}

/// A point with integer coordinates in `[-bound, bound]`; uniform over the
/// plane when `F` is finite.
pub fn point<F: ExactField>(rng: &mut ChaCha8Rng, bound: i64) -> ProjPoint<F> {
    if let Ok(all) = enumerate_points::<F>() {
        return all.choose(rng).expect("nonempty plane").clone();
    }
    loop {
        let v = [scalar(rng, bound), scalar(rng, bound), scalar(rng, bound)];
        if let Ok(p) = ProjPoint::new(v) {
            return p;
        }
    }
}

/// An invertible matrix with integer entries in `[-bound, bound]`.
pub fn map<F: ExactField>(rng: &mut ChaCha8Rng, bound: i64) -> ProjMap<F> {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-bound..=bound);
            }
        }
        let lift = crate::linalg::Mat3::new(m.map(|r| r.map(F::from_i64)));
        if let Ok(p) = ProjMap::new(lift) {
            return p;
        }
    }
}

pub fn group_element(rng: &mut ChaCha8Rng, x0: &BasedSpace) -> Perm {
    x0.group().choose(rng).expect("group contains the identity").clone()
}

/// A configuration with up to `max_support` coordinates off the basepoint.
pub fn config<F: ExactField>(rng: &mut ChaCha8Rng, x0: &BasedSpace, bound: i64, max_support: usize) -> Config<F> {
    let k = rng.gen_range(0..=max_support);
    let entries: Vec<(ProjPoint<F>, usize)> =
        (0..k).map(|_| (point(rng, bound), rng.gen_range(0..x0.size()))).collect();
    Config::from_entries(x0.basepoint(), entries)
}

/// An element with projective part `proj` and up to `max_support` random cofactors.
pub fn element<F: ExactField>(
    rng: &mut ChaCha8Rng,
    x0: &BasedSpace,
    proj: ProjMap<F>,
    bound: i64,
    max_support: usize,
) -> WreathElement<F> {
    let k = rng.gen_range(0..=max_support);
    let cof: Vec<(ProjPoint<F>, Perm)> = (0..k).map(|_| (point(rng, bound), group_element(rng, x0))).collect();
    WreathElement::new(x0.size(), cof, proj)
}

/// Symmetric group on `n ≤ 4` letters named `a, b, c, d`, based at `a`.
pub fn symmetric_space(n: usize) -> BasedSpace {
    let names = ["a", "b", "c", "d"];
    let gens: &[&str] = match n {
        1 => &[],
        2 => &["(a b)"],
        3 => &["(a b)", "(a b c)"],
        _ => &["(a b)", "(a b c d)"],
    };
    BasedSpace::parse(&names[..n], "a", gens).expect("valid based space")
}

/// Cyclic group generated by an `n`-cycle, based at `a`.
pub fn cyclic_space(n: usize) -> BasedSpace {
    let names = ["a", "b", "c", "d"];
    let cycle = format!("({})", names[..n].join(" "));
    let gens: Vec<&str> = if n > 1 { vec![cycle.as_str()] } else { vec![] };
    BasedSpace::parse(&names[..n], "a", &gens).expect("valid based space")
}

/// The based spaces used for finite scenarios: `|X₀| ≤ 4`, both decent and
/// not (a transitive cyclic group has no fixed point but finite orbits).
pub fn small_spaces() -> Vec<BasedSpace> {
    let mut out = vec![symmetric_space(2), symmetric_space(3), cyclic_space(3), cyclic_space(4)];
    // decent spaces: the group fixes `c`, respectively `d`
    out.push(BasedSpace::parse(&["a", "b", "c"], "a", &["(a b)"]).expect("valid"));
    out.push(BasedSpace::parse(&["a", "b", "c", "d"], "a", &["(a b c)"]).expect("valid"));
    out
}

/// Projective parts of finite order over a finite field: permutation
/// matrices, a diagonal map and a transvection.
fn small_order_map<F: ExactField>(rng: &mut ChaCha8Rng) -> ProjMap<F> {
    let choices: [[[i64; 3]; 3]; 5] = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    ];
    ProjMap::from_i64(*choices.choose(rng).expect("nonempty"))
}

/// A finite scenario with one or two generators of small projective order
/// and at most two cofactors each, so that the generated group stays small.
pub fn finite_scenario<F: ExactField>(rng: &mut ChaCha8Rng) -> Scenario<F> {
    let spaces = small_spaces();
    let x0 = spaces.choose(rng).expect("nonempty").clone();
    let n = rng.gen_range(1..=2);
    let gens = (0..n)
        .map(|i| {
            let proj = small_order_map(rng);
            (["a", "b"][i].to_string(), element(rng, &x0, proj, 1, 2))
        })
        .collect();
    Scenario::new(x0, gens).expect("generated scenario is valid")
}

/// A rational element whose projective part is hyperbolic, so orbits off its
/// eigenlines are infinite, with up to `max_support` cofactors at points of
/// small height off the eigenpoints.
pub fn hyperbolic_element<F: ExactField>(
    rng: &mut ChaCha8Rng,
    x0: &BasedSpace,
    max_support: usize,
) -> WreathElement<F> {
    let choices: [[[i64; 3]; 3]; 4] = [
        [[4, 0, 0], [0, 2, 0], [0, 0, 1]],
        [[3, 0, 0], [0, 2, 0], [0, 0, 1]],
        [[9, 0, 0], [0, 3, 0], [0, 0, 1]],
        [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
    ];
    let proj: ProjMap<F> = ProjMap::from_i64(*choices.choose(rng).expect("nonempty"));
    let k = rng.gen_range(1..=max_support);
    let mut cof = Vec::new();
    while cof.len() < k {
        let p: ProjPoint<F> = point(rng, 3);
        if proj.fixes(&p) || p.coords().iter().any(|x| x.is_zero()) {
            continue;
        }
        cof.push((p, group_element(rng, x0)));
    }
    WreathElement::new(x0.size(), cof, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gf, Rational};

    #[test]
    fn generators_are_reproducible() {
        let a: Vec<ProjPoint<Rational>> = (0..5).map({
            let mut r = rng(7);
            move |_| point(&mut r, 9)
        }).collect();
        let b: Vec<ProjPoint<Rational>> = (0..5).map({
            let mut r = rng(7);
            move |_| point(&mut r, 9)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn finite_scenarios_are_valid() {
        let mut r = rng(1);
        for _ in 0..20 {
            let s = finite_scenario::<Gf<3>>(&mut r);
            assert!(s.generators().iter().all(|g| g.is_member(s.based_space())));
        }
    }
}
