use std::collections::{BTreeSet, VecDeque};

use super::{Perm, ResprodError};

/// A finite set with a basepoint and a permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSpace {
    names: Vec<String>,
    basepoint: usize,
    generators: Vec<Perm>,
    group: Vec<Perm>,
}

impl BasedSpace {
    pub const GROUP_CAP: usize = 50_000;

    pub fn new(names: Vec<String>, basepoint: usize, generators: Vec<Perm>) -> Result<Self, ResprodError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(ResprodError::DuplicateElement(n.clone()));
            }
        }
        if basepoint >= names.len() {
            return Err(ResprodError::UnknownElement(basepoint.to_string()));
        }
        if generators.iter().any(|g| g.degree() != names.len()) {
            return Err(ResprodError::BadPermutation("wrong degree".into()));
        }
        let group = closure(names.len(), &generators)?;
        Ok(BasedSpace { names, basepoint, generators, group })
    }

    /// Builds from element names, basepoint name and generators in cycle notation.
    pub fn parse(names: &[&str], basepoint: &str, generators: &[&str]) -> Result<Self, ResprodError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let bp = names
            .iter()
            .position(|n| n == basepoint)
            .ok_or_else(|| ResprodError::UnknownElement(basepoint.to_string()))?;
        let gens = generators
            .iter()
            .map(|g| Perm::parse_cycles(g, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, bp, gens)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements of the group, identity first.
    pub fn group(&self) -> &[Perm] {
        &self.group
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.names.len())
    }

    pub fn stabilizes_basepoint(&self, g: &Perm) -> bool {
        g.apply(self.basepoint) == self.basepoint
    }

    pub fn stabilizer(&self) -> Vec<Perm> {
        self.group.iter().filter(|g| self.stabilizes_basepoint(g)).cloned().collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.group.binary_search(g).is_ok() || g.is_identity()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ResprodError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ResprodError::UnknownElement(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Points fixed by every generator.
    pub fn global_fixed_points(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.generators.iter().all(|g| g.apply(x) == x))
            .collect()
    }

    /// For a finite set, decency of the action amounts to a global fixed point.
    pub fn is_decent(&self) -> bool {
        !self.global_fixed_points().is_empty()
    }
}

fn closure(n: usize, gens: &[Perm]) -> Result<Vec<Perm>, ResprodError> {
    let id = Perm::identity(n);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > BasedSpace::GROUP_CAP {
                    return Err(ResprodError::GroupTooLarge(BasedSpace::GROUP_CAP));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
