use crate::projgeo::ProjMap;
use crate::resprod::{BasedSpace, Config, WreathElement};
use crate::scalar::ExactField;
use crate::words::{evaluated_words, Word};

use super::PipelineError;

/// A finitely generated subgroup of the wreath group, given by named generators.
#[derive(Clone, Debug)]
pub struct Scenario<F> {
    based_space: BasedSpace,
    names: Vec<String>,
    generators: Vec<WreathElement<F>>,
}

impl<F: ExactField> Scenario<F> {
    pub fn new(based_space: BasedSpace, generators: Vec<(String, WreathElement<F>)>) -> Result<Self, PipelineError> {
        let mut names = Vec::new();
        let mut elems = Vec::new();
        for (name, w) in generators {
            if names.contains(&name) {
                return Err(PipelineError::Scenario(format!("duplicate generator `{name}`")));
            }
            if w.degree() != based_space.size() {
                return Err(PipelineError::Scenario(format!("generator `{name}` acts on the wrong set")));
            }
            if !w.is_member(&based_space) {
                return Err(PipelineError::Scenario(format!(
                    "generator `{name}` has a cofactor outside the group of the based space"
                )));
            }
            names.push(name);
            elems.push(w);
        }
        Ok(Scenario { based_space, names, generators: elems })
    }

    pub fn based_space(&self) -> &BasedSpace {
        &self.based_space
    }

    pub fn basepoint(&self) -> usize {
        self.based_space.basepoint()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[WreathElement<F>] {
        &self.generators
    }

    pub fn projections(&self) -> Vec<ProjMap<F>> {
        self.generators.iter().map(|g| g.proj().clone()).collect()
    }

    pub fn identity(&self) -> WreathElement<F> {
        WreathElement::identity(self.based_space.size())
    }

    pub fn eval(&self, w: &Word) -> WreathElement<F> {
        let invs: Vec<_> = self.generators.iter().map(|g| g.invert()).collect();
        w.eval(&self.identity(), &self.generators, &invs, |a, b| a.multiply(b))
    }

    /// All nonempty reduced words up to `max_len` with their values.
    pub fn words(&self, max_len: usize) -> Vec<(Word, WreathElement<F>)> {
        let invs: Vec<_> = self.generators.iter().map(|g| g.invert()).collect();
        evaluated_words(&self.generators, &invs, &self.identity(), max_len, |a, b| a.multiply(b))
    }

    pub fn word_name(&self, w: &Word) -> String {
        w.display_with(&self.names)
    }

    pub fn parse_word(&self, s: &str) -> Option<Word> {
        Word::parse_with(s, &self.names)
    }

    /// Whether every generator fixes `z`.
    pub fn fixes(&self, z: &Config<F>) -> bool {
        self.generators.iter().all(|g| &g.act(z) == z)
    }

    pub fn config_literal(&self, z: &Config<F>) -> String {
        z.to_literal(&self.based_space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjPoint;
    use crate::resprod::Perm;
    use crate::scalar::Rational;

    #[test]
    fn membership_is_enforced() {
        let x0 = BasedSpace::parse(&["a", "b", "c"], "a", &["(b c)"]).unwrap();
        let bad = WreathElement::<Rational>::new(
            3,
            [(ProjPoint::from_i64([1, 0, 0]), Perm::from_images(vec![1, 0, 2]).unwrap())],
            ProjMap::identity(),
        );
        assert!(Scenario::new(x0.clone(), vec![("f".into(), bad)]).is_err());
        let s = Scenario::<Rational>::new(x0, vec![]).unwrap();
        assert!(s.fixes(&Config::basepoint_config(0)));
        assert!(s.words(3).is_empty());
    }
}
