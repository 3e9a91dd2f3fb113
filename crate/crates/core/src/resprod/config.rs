use std::collections::BTreeMap;
use std::fmt;

use crate::projgeo::ProjPoint;
use crate::scalar::ExactField;

use super::BasedSpace;

/// A point of the restricted product: finitely many coordinates differ from
/// the basepoint. Only those are stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config<F> {
    basepoint: usize,
    support: BTreeMap<ProjPoint<F>, usize>,
}

impl<F: ExactField> Config<F> {
    pub fn basepoint_config(basepoint: usize) -> Self {
        Config { basepoint, support: BTreeMap::new() }
    }

    pub fn from_entries(basepoint: usize, entries: impl IntoIterator<Item = (ProjPoint<F>, usize)>) -> Self {
        let mut c = Self::basepoint_config(basepoint);
        for (p, v) in entries {
            c.set(p, v);
        }
        c
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn get(&self, p: &ProjPoint<F>) -> usize {
        self.support.get(p).copied().unwrap_or(self.basepoint)
    }

    pub fn set(&mut self, p: ProjPoint<F>, v: usize) {
        if v == self.basepoint {
            self.support.remove(&p);
        } else {
            self.support.insert(p, v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&ProjPoint<F>, &usize)> {
        self.support.iter()
    }

    pub fn support_points(&self) -> impl Iterator<Item = &ProjPoint<F>> {
        self.support.keys()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_basepoint(&self) -> bool {
        self.support.is_empty()
    }

    /// `p -> name` entries in canonical order.
    pub fn to_literal(&self, x0: &BasedSpace) -> String {
        if self.support.is_empty() {
            return "{}".to_string();
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(p, &v)| format!("{} -> {}", p.to_literal(), x0.name(v)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl<F: fmt::Debug> fmt::Debug for Config<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.support.iter()).finish()
    }
}
