use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::projgeo::{ProjMap, ProjPoint};
use crate::scalar::ExactField;

use super::{BasedSpace, Config, Perm, ResprodError};

/// An element `(g, h)` of the wreath group: a cofactor `p ↦ g_p` that is the
/// identity off a finite set, and a collineation `h`.
///
/// It acts by `(g, h)·x = (p ↦ g_p · x_{h⁻¹p})`.
#[derive(Clone)]
pub struct WreathElement<F> {
    degree: usize,
    cofactor: BTreeMap<ProjPoint<F>, Perm>,
    proj: ProjMap<F>,
}

impl<F: ExactField> WreathElement<F> {
    pub fn new(degree: usize, cofactor: impl IntoIterator<Item = (ProjPoint<F>, Perm)>, proj: ProjMap<F>) -> Self {
        let cofactor = cofactor.into_iter().filter(|(_, g)| !g.is_identity()).collect();
        WreathElement { degree, cofactor, proj }
    }

    pub fn identity(degree: usize) -> Self {
        WreathElement { degree, cofactor: BTreeMap::new(), proj: ProjMap::identity() }
    }

    pub fn pure(degree: usize, proj: ProjMap<F>) -> Self {
        WreathElement { degree, cofactor: BTreeMap::new(), proj }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn proj(&self) -> &ProjMap<F> {
        &self.proj
    }

    pub fn cofactor_at(&self, p: &ProjPoint<F>) -> Perm {
        self.cofactor.get(p).cloned().unwrap_or_else(|| Perm::identity(self.degree))
    }

    pub fn cofactor(&self) -> impl Iterator<Item = (&ProjPoint<F>, &Perm)> {
        self.cofactor.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ProjPoint<F>> {
        self.cofactor.keys()
    }

    pub fn is_identity(&self) -> bool {
        self.cofactor.is_empty() && self.proj.is_identity()
    }

    pub fn act(&self, x: &Config<F>) -> Config<F> {
        let mut candidates: BTreeSet<ProjPoint<F>> = x.support_points().map(|p| self.proj.apply(p)).collect();
        candidates.extend(self.cofactor.keys().cloned());
        let h_inv = self.proj.inverse();
        let mut out = Config::basepoint_config(x.basepoint());
        for p in candidates {
            let v = self.cofactor_at(&p).apply(x.get(&h_inv.apply(&p)));
            out.set(p, v);
        }
        out
    }

    /// `(g,h)(g′,h′) = (p ↦ g_p · g′_{h⁻¹p}, h h′)`
    pub fn multiply(&self, other: &Self) -> Self {
        let mut candidates: BTreeSet<ProjPoint<F>> = self.cofactor.keys().cloned().collect();
        candidates.extend(other.cofactor.keys().map(|p| self.proj.apply(p)));
        let h_inv = self.proj.inverse();
        let cof = candidates
            .into_iter()
            .map(|p| {
                let g = self.cofactor_at(&p).compose(&other.cofactor_at(&h_inv.apply(&p)));
                (p, g)
            })
            .collect::<Vec<_>>();
        Self::new(self.degree, cof, self.proj.compose(&other.proj))
    }

    /// `(p ↦ g_{hp}⁻¹, h⁻¹)`
    pub fn invert(&self) -> Self {
        let h_inv = self.proj.inverse();
        let cof = self
            .cofactor
            .iter()
            .map(|(p, g)| (h_inv.apply(p), g.inverse()))
            .collect::<Vec<_>>();
        Self::new(self.degree, cof, h_inv)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = Self::identity(self.degree);
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    pub fn projection_to_h(&self) -> &ProjMap<F> {
        &self.proj
    }

    /// The cofactor values at `p` of elements whose projective parts fix `p`.
    pub fn point_stabilizer_projection(ws: &[Self], p: &ProjPoint<F>) -> Result<Vec<Perm>, ResprodError> {
        ws.iter()
            .map(|w| {
                if w.proj.fixes(p) {
                    Ok(w.cofactor_at(p))
                } else {
                    Err(ResprodError::NotFixed(p.to_literal()))
                }
            })
            .collect()
    }

    /// Every cofactor value lies in the group of the based space.
    pub fn is_member(&self, x0: &BasedSpace) -> bool {
        self.degree == x0.size() && self.cofactor.values().all(|g| x0.contains(g))
    }

    pub fn cofactor_literal(&self, x0: &BasedSpace) -> Vec<String> {
        self.cofactor
            .iter()
            .map(|(p, g)| format!("{} -> {}", p.to_literal(), g.to_cycle_string(x0.names())))
            .collect()
    }
}

impl<F: ExactField> PartialEq for WreathElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.cofactor == other.cofactor && self.proj == other.proj
    }
}

impl<F: ExactField> Eq for WreathElement<F> {}

impl<F: ExactField> std::hash::Hash for WreathElement<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.cofactor.hash(state);
        self.proj.hash(state);
    }
}

impl<F: fmt::Debug> fmt::Debug for WreathElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WreathElement").field("cofactor", &self.cofactor).field("proj", &self.proj).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type W = WreathElement<Rational>;
    type P = ProjPoint<Rational>;

    fn swap() -> Perm {
        Perm::from_images(vec![1, 0]).unwrap()
    }

    #[test]
    fn action_examples() {
        let x = Config::from_entries(0, [(P::from_i64([1, 2, 1]), 1)]);
        assert_eq!(W::identity(2).act(&x), x);
        let h = ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let w = W::pure(2, h.clone());
        let moved = w.act(&x);
        assert_eq!(moved.support_points().collect::<Vec<_>>(), vec![&h.apply(&P::from_i64([1, 2, 1]))]);
        let q = P::from_i64([0, 1, 0]);
        let s = W::new(2, [(q.clone(), swap())], ProjMap::identity());
        let y = s.act(&Config::basepoint_config(0));
        assert_eq!(y.get(&q), 1);
        assert_eq!(y.support_len(), 1);
    }

    #[test]
    fn group_laws() {
        let q = P::from_i64([1, 1, 0]);
        let h = ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let w = W::new(2, [(q.clone(), swap())], h);
        assert!(w.multiply(&w.invert()).is_identity());
        assert!(w.invert().multiply(&w).is_identity());
        assert_eq!(w.multiply(&W::identity(2)), w);
        let a = W::new(2, [(q.clone(), swap())], ProjMap::identity());
        assert!(a.multiply(&a).is_identity());
        let x = Config::from_entries(0, [(P::from_i64([0, 1, 0]), 1)]);
        let ww = w.multiply(&a);
        assert_eq!(ww.act(&x), w.act(&a.act(&x)));
    }

    #[test]
    fn stabilizer_projection() {
        let p = P::from_i64([1, 0, 0]);
        let d = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let w = W::new(2, [(p.clone(), swap())], d);
        assert_eq!(W::point_stabilizer_projection(&[w.clone()], &p).unwrap(), vec![swap()]);
        let u = W::pure(2, ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(W::point_stabilizer_projection(&[u], &P::from_i64([0, 1, 0])).is_err());
        assert_eq!(W::pure(2, ProjMap::identity()).projection_to_h(), &ProjMap::identity());
    }
}
