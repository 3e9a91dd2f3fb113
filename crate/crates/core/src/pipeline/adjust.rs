use std::collections::{BTreeMap, BTreeSet};

use crate::bireg::is_biregular;
use crate::projgeo::ProjPoint;
use crate::resprod::{Config, WreathElement};
use crate::spectral::{eig_point, AttractorData, Spectral};
use crate::words::Word;

use super::{PipelineError, Scenario};

/// Whether `p` lies on one of the two exceptional lines.
pub fn exceptional_set_contains<F: Spectral>(data: &AttractorData<F::Eig>, p: &ProjPoint<F>) -> bool {
    let e = eig_point(p);
    data.line_plus.contains(&e) || data.line_minus.contains(&e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjustOutcome<F> {
    /// The adjusted configuration with each changed coordinate and the word
    /// that determined it.
    Adjusted { config: Config<F>, changes: Vec<(ProjPoint<F>, usize, Word)> },
    /// `candidate` is the adjusted configuration when it is still fixed by `t`.
    Inconclusive { reason: String, candidate: Option<Config<F>> },
}

/// Resets the coordinates of `z` on exceptional points reachable from
/// outside the exceptional set, `z'_q = f(z)_q` for `f(r) = q`, `r ∉ E`.
pub fn adjust_fixed_point<F: Spectral>(
    s: &Scenario<F>,
    t: &WreathElement<F>,
    data: &AttractorData<F::Eig>,
    z: &Config<F>,
    word_bound: usize,
) -> Result<AdjustOutcome<F>, PipelineError> {
    if &t.act(z) != z {
        return Err(PipelineError::ConfigNotFixed);
    }
    let words = s.words(word_bound);
    let mut relevant: BTreeSet<ProjPoint<F>> = z.support_points().cloned().collect();
    for g in s.generators() {
        relevant.extend(g.support().cloned());
    }
    let seeds: Vec<ProjPoint<F>> = relevant.iter().cloned().collect();
    for (_, w) in &words {
        relevant.extend(seeds.iter().map(|p| w.proj().apply(p)));
    }

    let mut values: BTreeMap<ProjPoint<F>, (usize, Word, ProjPoint<F>)> = BTreeMap::new();
    for q in relevant.iter().filter(|q| exceptional_set_contains::<F>(data, q)) {
        for (word, f) in &words {
            let r = f.proj().inverse().apply(q);
            if exceptional_set_contains::<F>(data, &r) {
                continue;
            }
            let v = f.cofactor_at(q).apply(z.get(&r));
            match values.get(q) {
                Some((old, w0, r0)) if *old != v => {
                    return Ok(AdjustOutcome::Inconclusive {
                        reason: format!(
                            "coordinate at {} is {} via {} from {} but {} via {} from {}",
                            q.to_literal(),
                            s.based_space().name(*old),
                            s.word_name(w0),
                            r0.to_literal(),
                            s.based_space().name(v),
                            s.word_name(word),
                            r.to_literal()
                        ),
                        candidate: None,
                    })
                }
                Some(_) => {}
                None => {
                    values.insert(q.clone(), (v, word.clone(), r));
                }
            }
        }
    }

    let mut config = z.clone();
    let mut changes = Vec::new();
    for (q, (v, w, _)) in values {
        if z.get(&q) != v {
            config.set(q.clone(), v);
            changes.push((q, v, w));
        }
    }
    if t.act(&config) != config {
        return Ok(AdjustOutcome::Inconclusive { reason: "adjusted configuration is not fixed by t".into(), candidate: None });
    }
    for (name, g) in s.names().iter().zip(s.generators()) {
        if let Some(p) = relevant.iter().find(|p| !is_biregular(g, p, &config)) {
            return Ok(AdjustOutcome::Inconclusive {
                reason: format!("generator {name} is singular over {}", p.to_literal()),
                candidate: Some(config),
            });
        }
    }
    Ok(AdjustOutcome::Adjusted { config, changes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::resprod::{BasedSpace, Perm};
    use crate::scalar::{Place, Rational};
    use crate::spectral::{classify_proximality, Proximality};

    fn data(t: &ProjMap<Rational>) -> AttractorData<crate::scalar::QuadExt> {
        let Proximality::VeryProximal(d) = classify_proximality(t, Place::REAL) else { panic!() };
        d
    }

    fn x0() -> BasedSpace {
        BasedSpace::parse(&["a", "b"], "a", &["(a b)"]).unwrap()
    }

    #[test]
    fn untouched_when_supports_avoid_the_exceptional_set() {
        let h = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let t = WreathElement::new(2, [(ProjPoint::from_i64([1, 1, 1]), swap.clone()), (ProjPoint::from_i64([4, 2, 1]), swap)], h.clone());
        let s = Scenario::new(x0(), vec![("t".into(), t.clone())]).unwrap();
        let z = match crate::bireg::build_fixed_point(&t, 0) {
            crate::bireg::FixedPointResult::Fixed(z) => z,
            other => panic!("{other:?}"),
        };
        match adjust_fixed_point(&s, &t, &data(&h), &z, 2).unwrap() {
            AdjustOutcome::Adjusted { config, changes } => {
                assert_eq!(config, z);
                assert!(changes.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reachable_exceptional_point_takes_the_pushed_value() {
        let h = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let d = data(&h);
        let t = WreathElement::pure(2, h);
        // f maps r = [1:1:1] to q = [1:1:0] on P₊ and carries a swap at q
        let q = ProjPoint::from_i64([1, 1, 0]);
        let f = WreathElement::new(
            2,
            [(q.clone(), Perm::from_images(vec![1, 0]).unwrap())],
            ProjMap::from_i64([[1, 0, 0], [0, 1, 0], [1, 0, -1]]),
        );
        assert_eq!(f.proj().apply(&ProjPoint::from_i64([1, 1, 1])), q);
        let s = Scenario::new(x0(), vec![("t".into(), t.clone()), ("f".into(), f)]).unwrap();
        let z = Config::basepoint_config(0);
        match adjust_fixed_point(&s, &t, &d, &z, 1).unwrap() {
            AdjustOutcome::Adjusted { .. } => panic!("t cannot fix the adjusted point"),
            AdjustOutcome::Inconclusive { reason, .. } => assert!(reason.contains("[1:1:0]"), "{reason}"),
        }
    }

    #[test]
    fn config_must_be_fixed() {
        let h = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let t = WreathElement::pure(2, h.clone());
        let s = Scenario::new(x0(), vec![("t".into(), t.clone())]).unwrap();
        let z = Config::from_entries(0, [(ProjPoint::from_i64([1, 1, 1]), 1)]);
        assert_eq!(adjust_fixed_point(&s, &t, &data(&h), &z, 1), Err(PipelineError::ConfigNotFixed));
    }
}
