use std::collections::BTreeSet;

use crate::projgeo::ProjPoint;
use crate::resprod::{Config, Perm, WreathElement};
use crate::scalar::ExactField;

use super::orbit::{walk_orbit, OrbitStatus};
use super::BiregError;

/// Verdict on whether `f` has a persistent fibre over a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreVerdict {
    /// For every `n ≥ l`, `f^n` is singular and `f^{-n}` biregular over the
    /// point. Beyond the certified window `[-back, forward]` of the orbit the
    /// status is constant.
    Certified { l: usize, back: usize, forward: usize },
    /// The property fails at `n`, and failures recur at arbitrarily large
    /// exponents, so no `l` exists.
    RefutedUpTo(usize),
    Inconclusive(String),
}

impl FibreVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, FibreVerdict::Certified { .. })
    }
}

/// `4·(total support) + 16`.
pub fn default_horizon<F: ExactField>(f: &WreathElement<F>, z: &Config<F>) -> usize {
    4 * (f.support().count() + z.support_len()) + 16
}

pub(crate) fn walk_budget(support: usize) -> usize {
    512 + 16 * support
}

fn perm_order(p: &Perm) -> usize {
    let mut q = p.clone();
    let mut n = 1;
    while !q.is_identity() {
        q = q.compose(p);
        n += 1;
    }
    n
}

/// Forward and backward biregularity of `f^n` over `p` for `n = 1..=len`, by
/// the path formulas `v_n = g_{h^n p} v_{n-1}` and `u_n = g_{h^{-n+1} p}^{-1} u_{n-1}`.
fn statuses<F: ExactField>(f: &WreathElement<F>, p: &ProjPoint<F>, z: &Config<F>, len: usize) -> (Vec<bool>, Vec<bool>) {
    let h = f.proj();
    let h_inv = h.inverse();
    let mut fwd = Vec::with_capacity(len);
    let mut x = p.clone();
    let mut v = z.get(p);
    for _ in 0..len {
        x = h.apply(&x);
        v = f.cofactor_at(&x).apply(v);
        fwd.push(v == z.get(&x));
    }
    let mut bwd = Vec::with_capacity(len);
    let mut y = p.clone();
    let mut u = z.get(p);
    for _ in 0..len {
        u = f.cofactor_at(&y).inverse().apply(u);
        y = h_inv.apply(&y);
        bwd.push(u == z.get(&y));
    }
    (fwd, bwd)
}

pub fn persistent_fibre<F: ExactField>(
    f: &WreathElement<F>,
    p: &ProjPoint<F>,
    z: &Config<F>,
    horizon: usize,
) -> Result<FibreVerdict, BiregError> {
    if horizon == 0 {
        return Err(BiregError::ZeroHorizon);
    }
    let bounding: BTreeSet<ProjPoint<F>> = f.support().chain(z.support_points()).cloned().collect();
    let walk = walk_orbit(f.proj(), p, &bounding, walk_budget(bounding.len()).max(horizon));
    match walk.status {
        OrbitStatus::Uncertified => Ok(FibreVerdict::Inconclusive(format!(
            "orbit not certified within {} steps",
            walk.points.len()
        ))),
        OrbitStatus::Periodic(k) => {
            let mut r = Perm::identity(f.degree());
            let mut x = p.clone();
            for _ in 0..k {
                x = f.proj().apply(&x);
                r = f.cofactor_at(&x).compose(&r);
            }
            // f^{k·ord(r)} returns z_p to itself over p
            let period = k * perm_order(&r);
            let (fwd, bwd) = statuses(f, p, z, period);
            let n = (0..period).find(|&i| fwd[i] || !bwd[i]).expect("f^period is biregular over p");
            Ok(FibreVerdict::RefutedUpTo(n + 1))
        }
        OrbitStatus::InfiniteCertified { back, forward } => {
            let len = back.max(forward).max(horizon) + 1;
            let (fwd, bwd) = statuses(f, p, z, len);
            let ok: Vec<bool> = (0..len).map(|i| !fwd[i] && bwd[i]).collect();
            let terminal = ok[len - 1];
            let run_start = (0..len).rev().take_while(|&i| ok[i] == terminal).last().unwrap() + 1;
            if !terminal {
                Ok(FibreVerdict::RefutedUpTo(run_start))
            } else if run_start <= horizon {
                Ok(FibreVerdict::Certified { l: run_start, back, forward })
            } else {
                Ok(FibreVerdict::Inconclusive(format!("property holds only from n = {run_start}, beyond horizon {horizon}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::scalar::{Gf, Rational};

    fn swap() -> Perm {
        Perm::from_images(vec![1, 0]).unwrap()
    }

    fn shift() -> WreathElement<Rational> {
        WreathElement::new(
            2,
            [(ProjPoint::from_i64([1, 1, 0]), swap())],
            ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        )
    }

    #[test]
    fn shift_example_is_certified_from_one() {
        let z = Config::basepoint_config(0);
        let v = persistent_fibre(&shift(), &ProjPoint::from_i64([0, 1, 0]), &z, 20).unwrap();
        assert!(matches!(v, FibreVerdict::Certified { l: 1, .. }), "{v:?}");
    }

    #[test]
    fn fixing_elements_are_refuted_at_one() {
        let f = shift();
        let z = Config::basepoint_config(0);
        let g = WreathElement::pure(2, f.proj().clone());
        for p in [[0, 1, 0], [1, 0, 0], [3, 7, 1]] {
            let v = persistent_fibre(&g, &ProjPoint::from_i64(p), &z, 10).unwrap();
            assert_eq!(v, FibreVerdict::RefutedUpTo(1));
        }
        let gf = WreathElement::<Gf<3>>::pure(2, ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]));
        let v = persistent_fibre(&gf, &ProjPoint::from_i64([0, 1, 0]), &Config::basepoint_config(0), 5).unwrap();
        assert_eq!(v, FibreVerdict::RefutedUpTo(1));
    }

    #[test]
    fn zero_horizon_rejected() {
        let z = Config::basepoint_config(0);
        assert_eq!(
            persistent_fibre(&shift(), &ProjPoint::from_i64([0, 1, 0]), &z, 0),
            Err(BiregError::ZeroHorizon)
        );
    }

    #[test]
    fn finite_field_shift_is_refuted() {
        let f = WreathElement::<Gf<3>>::new(
            2,
            [(ProjPoint::from_i64([1, 1, 0]), swap())],
            ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        );
        let v = persistent_fibre(&f, &ProjPoint::from_i64([0, 1, 0]), &Config::basepoint_config(0), 5).unwrap();
        assert!(matches!(v, FibreVerdict::RefutedUpTo(_)));
    }
}
