use std::fmt;

use super::ResprodError;

/// A permutation of `{0, …, n−1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, ResprodError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(ResprodError::BadPermutation(format!("{images:?}")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).map(|(i, _)| i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation with element names; `()` for the identity.
    pub fn to_cycle_string(&self, names: &[String]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().map(|&i| names[i].as_str()).collect();
                format!("({})", parts.join(" "))
            })
            .collect()
    }

    /// Parses cycle notation such as `(a b c)(d e)`, composing cycles right to left.
    pub fn parse_cycles(s: &str, names: &[String]) -> Result<Perm, ResprodError> {
        let bad = || ResprodError::BadPermutation(s.to_string());
        let mut perm = Perm::identity(names.len());
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let idx: Vec<usize> = body[..end]
                .split_whitespace()
                .map(|n| {
                    names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| ResprodError::UnknownElement(n.to_string()))
                })
                .collect::<Result<_, _>>()?;
            let mut uniq = idx.clone();
            uniq.sort();
            uniq.dedup();
            if uniq.len() != idx.len() {
                return Err(bad());
            }
            cycles.push(idx);
            rest = body[end + 1..].trim_start();
        }
        for c in cycles.iter().rev() {
            let mut img: Vec<usize> = (0..names.len()).collect();
            for k in 0..c.len() {
                img[c[k]] = c[(k + 1) % c.len()];
            }
            perm = Perm(img).compose(&perm);
        }
        Ok(perm)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}
