//! Words in a finite generating set and their enumeration order.

use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Position in the alphabet `g1, g1⁻¹, g2, g2⁻¹, …`.
    pub fn rank(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter::new(i, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// `a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Evaluates the word in a group given by `identity`, generator images,
    /// inverse images and multiplication. Letters act left to right as
    /// written, so `g1 g2` evaluates to `mul(g1, g2)`.
    pub fn eval<T: Clone>(
        &self,
        identity: &T,
        gens: &[T],
        invs: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        self.0.iter().fold(identity.clone(), |acc, l| {
            let x = if l.inverse { &invs[l.gen] } else { &gens[l.gen] };
            mul(&acc, x)
        })
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let n = names.get(l.gen).cloned().unwrap_or_else(|| format!("g{}", l.gen + 1));
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses the output of [`Word::display_with`].
    pub fn parse_with(s: &str, names: &[String]) -> Option<Self> {
        let s = s.trim();
        if s == "1" {
            return Some(Word::empty());
        }
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let gen = names.iter().position(|x| x == name)?;
            out.push(Letter::new(gen, inverse));
        }
        Some(Word(out))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| {
                let a: Vec<usize> = self.0.iter().map(|l| l.rank()).collect();
                let b: Vec<usize> = other.0.iter().map(|l| l.rank()).collect();
                a.cmp(&b)
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// All freely reduced nonempty words of length `1..=max_len` over `n_gens`
/// generators, ordered by length and then lexicographically in the alphabet
/// `g1, g1⁻¹, g2, g2⁻¹, …`.
pub fn reduced_words(n_gens: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..n_gens)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.0.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every word of [`reduced_words`] together with its value, each computed
/// from its prefix by one multiplication.
pub fn evaluated_words<T: Clone>(
    gens: &[T],
    invs: &[T],
    identity: &T,
    max_len: usize,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<(Word, T)> {
    let mut out: Vec<(Word, T)> = Vec::new();
    let mut index: std::collections::HashMap<Word, usize> = std::collections::HashMap::new();
    for w in reduced_words(gens.len(), max_len) {
        let (last, prefix) = w.0.split_last().expect("nonempty");
        let base = match prefix.len() {
            0 => identity.clone(),
            _ => out[index[&Word(prefix.to_vec())]].1.clone(),
        };
        let x = if last.inverse { &invs[last.gen] } else { &gens[last.gen] };
        index.insert(w.clone(), out.len());
        out.push((w, mul(&base, x)));
    }
    out
}
