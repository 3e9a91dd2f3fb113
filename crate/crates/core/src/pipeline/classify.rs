use crate::projgeo::{ProjLine, ProjMap, ProjPoint};
use crate::scalar::{Literal, Place};
use crate::spectral::{
    affine_chart_reduction, all_eigenvalues_roots_of_unity, classify_proximality, common_eigenvector,
    descend_point, places_for, AffineMap, AttractorData, CommonEigen, Proximality, RootsOfUnity, Sl2Witness,
    Spectral, UnityCertificate, sl2_hyperbolic_witness,
};
use crate::words::{evaluated_words, Word};

use super::{PipelineError, Scenario};

const UNITY_ORDER_BOUND: u64 = 120;

#[derive(Clone, Debug)]
pub enum Outcome<F: Spectral> {
    CommonFixedPoint(ProjPoint<F::Eig>),
    /// A common invariant line without a common fixed point; the maps act
    /// affinely on its complement.
    SolvablePath { line: ProjLine<F>, affine: Vec<AffineMap<F>>, hyperbolic: Option<Sl2Witness<F>> },
    VeryProximalWitness { word: Word, place: Place, data: AttractorData<F::Eig> },
    /// Every word up to the bound has only roots of unity as eigenvalues.
    NilpotentCertificate { certificates: Vec<(Word, UnityCertificate)> },
    Inconclusive(String),
}

impl<F: Spectral> Outcome<F> {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::CommonFixedPoint(_) => "common-fixed-point",
            Outcome::SolvablePath { .. } => "solvable-path",
            Outcome::VeryProximalWitness { .. } => "very-proximal-witness",
            Outcome::NilpotentCertificate { .. } => "nilpotent-certificate",
            Outcome::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport<F: Spectral> {
    pub outcome: Outcome<F>,
    pub word_bound: usize,
    pub places: Vec<Place>,
}

impl<F: Spectral> ClassificationReport<F> {
    /// Line-oriented rendering with exact literals.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = vec![format!("classification: {}", self.outcome.label())];
        match &self.outcome {
            Outcome::CommonFixedPoint(p) => out.push(format!("fixed_point: {}", p.to_literal())),
            Outcome::SolvablePath { line, affine, hyperbolic } => {
                out.push(format!("invariant_line: {}", line.to_literal()));
                for (name, a) in names.iter().zip(affine) {
                    out.push(format!(
                        "affine: {name} = {} + ({}, {})",
                        a.linear.to_literal(),
                        a.translation[0].to_literal(),
                        a.translation[1].to_literal()
                    ));
                }
                match hyperbolic {
                    Some(w) => out.push(format!(
                        "hyperbolic_word: {} at {} lambda {}",
                        w.word.display_with(names),
                        w.place,
                        w.lambda.to_literal()
                    )),
                    None => out.push("hyperbolic_word: none".into()),
                }
            }
            Outcome::VeryProximalWitness { word, place, data } => {
                out.push(format!("word: {}", word.display_with(names)));
                out.push(format!("place: {place}"));
                out.extend(render_attractor(data));
            }
            Outcome::NilpotentCertificate { certificates } => {
                out.push(format!("words_checked: {}", certificates.len()));
                for (w, c) in certificates {
                    out.push(format!("unity: {} : {c}", w.display_with(names)));
                }
            }
            Outcome::Inconclusive(reason) => out.push(format!("reason: {reason}")),
        }
        let places: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        out.push(format!("search_bounds: word_bound={} places=[{}]", self.word_bound, places.join(", ")));
        out.join("\n") + "\n"
    }
}

pub(crate) fn render_attractor<E: crate::scalar::ExactField>(d: &AttractorData<E>) -> Vec<String> {
    vec![
        format!(
            "eigenvalues: {} {} {}",
            d.lambda_plus.to_literal(),
            d.lambda_mid.to_literal(),
            d.lambda_minus.to_literal()
        ),
        format!("p_plus: {}", d.p_plus.to_literal()),
        format!("p_mid: {}", d.p_mid.to_literal()),
        format!("p_minus: {}", d.p_minus.to_literal()),
        format!("line_plus: {}", d.line_plus.to_literal()),
        format!("line_minus: {}", d.line_minus.to_literal()),
    ]
}

fn dual_maps<F: Spectral>(ms: &[ProjMap<F>]) -> Vec<ProjMap<F>> {
    ms.iter().map(|m| ProjMap::new(m.lift().transpose()).expect("invertible")).collect()
}

/// Bounded classification of the projective parts of the generators. The
/// steps run in a fixed order and the first conclusive one wins.
pub fn classify_projection<F: Spectral>(
    s: &Scenario<F>,
    word_bound: usize,
    places: Option<Vec<Place>>,
) -> Result<ClassificationReport<F>, PipelineError> {
    if word_bound == 0 {
        return Err(PipelineError::ZeroBound);
    }
    let ms = s.projections();
    let places = places.unwrap_or_else(|| places_for(&ms));
    let report = |outcome| Ok(ClassificationReport { outcome, word_bound, places: places.clone() });
    if ms.is_empty() {
        return report(Outcome::CommonFixedPoint(ProjPoint::from_i64([1, 0, 0])));
    }
    let invs: Vec<ProjMap<F>> = ms.iter().map(|m| m.inverse()).collect();
    let words = evaluated_words(&ms, &invs, &ProjMap::identity(), word_bound, |a, b| a.compose(b));

    for (word, m) in &words {
        for place in &places {
            if let Proximality::VeryProximal(data) = classify_proximality(m, *place) {
                return report(Outcome::VeryProximalWitness { word: word.clone(), place: *place, data });
            }
        }
    }

    let mut certificates = Vec::new();
    let mut unity_failure = None;
    for (word, m) in &words {
        match all_eigenvalues_roots_of_unity(m, UNITY_ORDER_BOUND) {
            RootsOfUnity::Yes(c) => certificates.push((word.clone(), c)),
            RootsOfUnity::No => {
                unity_failure = Some(format!("word {} has an eigenvalue that is not a root of unity", s.word_name(word)));
                break;
            }
            RootsOfUnity::Unresolved => {
                unity_failure = Some(format!("spectrum of {} unresolved", s.word_name(word)));
                break;
            }
        }
    }
    if unity_failure.is_none() {
        return report(Outcome::NilpotentCertificate { certificates });
    }

    if let Ok(CommonEigen::Found(p)) = common_eigenvector(&ms) {
        return report(Outcome::CommonFixedPoint(p));
    }

    if let Ok(CommonEigen::Found(n)) = common_eigenvector(&dual_maps(&ms)) {
        if let Some(n) = descend_point::<F>(&n) {
            let line = ProjLine::new(n.into_coords())?;
            if let Ok(affine) = affine_chart_reduction(&ms, &line) {
                let linear: Vec<_> = affine.iter().map(|a| a.linear.clone()).collect();
                let hyperbolic = sl2_hyperbolic_witness(&linear, word_bound);
                if let Some(w) = &hyperbolic {
                    let lifted = w.word.eval(&ProjMap::identity(), &ms, &invs, |a, b| a.compose(b));
                    if let Proximality::VeryProximal(data) = classify_proximality(&lifted, w.place) {
                        return report(Outcome::VeryProximalWitness { word: w.word.clone(), place: w.place, data });
                    }
                }
                return report(Outcome::SolvablePath { line, affine, hyperbolic });
            }
        }
    }
    report(Outcome::Inconclusive(unity_failure.expect("set above")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resprod::{BasedSpace, WreathElement};
    use crate::scalar::Rational;

    fn scenario(ms: &[[[i64; 3]; 3]]) -> Scenario<Rational> {
        let x0 = BasedSpace::parse(&["a", "b"], "a", &["(a b)"]).unwrap();
        let gens = ms
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("g{}", i + 1), WreathElement::pure(2, ProjMap::from_i64(*m))))
            .collect();
        Scenario::new(x0, gens).unwrap()
    }

    #[test]
    fn upper_triangular_generators_share_a_point() {
        let s = scenario(&[[[1, 2, 3], [0, 1, 5], [0, 0, 2]], [[1, 1, 0], [0, 1, 1], [0, 0, 3]]]);
        let r = classify_projection(&s, 3, None).unwrap();
        match r.outcome {
            Outcome::CommonFixedPoint(p) => assert_eq!(p.to_literal(), "[1:0:0]"),
            other => panic!("{}", other.label()),
        }
    }

    #[test]
    fn permutation_matrix_is_nilpotent_certified() {
        let s = scenario(&[[[0, 0, 1], [1, 0, 0], [0, 1, 0]]]);
        let r = classify_projection(&s, 3, None).unwrap();
        match r.outcome {
            Outcome::NilpotentCertificate { certificates } => {
                assert_eq!(certificates.len(), 6);
                assert_eq!(certificates[0].1, UnityCertificate::Cyclotomic(vec![1, 3]));
            }
            other => panic!("{}", other.label()),
        }
    }

    #[test]
    fn diagonal_generator_is_a_witness() {
        let s = scenario(&[[[4, 0, 0], [0, 2, 0], [0, 0, 1]]]);
        let r = classify_projection(&s, 2, None).unwrap();
        match r.outcome {
            Outcome::VeryProximalWitness { word, place, .. } => {
                assert_eq!(word.len(), 1);
                assert_eq!(place, Place::REAL);
            }
            other => panic!("{}", other.label()),
        }
    }

    #[test]
    fn affine_group_without_common_point() {
        // dilation, a swap with translation and a reflection of the chart
        // x₃ ≠ 0: only the line at infinity is invariant, and every word has
        // two eigenvalues of equal size
        let s = scenario(&[
            [[2, 0, 0], [0, 2, 0], [0, 0, 1]],
            [[0, 1, 1], [1, 0, 0], [0, 0, 1]],
            [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
        ]);
        let r = classify_projection(&s, 2, None).unwrap();
        match r.outcome {
            Outcome::SolvablePath { line, affine, hyperbolic } => {
                assert_eq!(line.to_literal(), "line[0:0:1]");
                assert_eq!(affine.len(), 3);
                assert!(hyperbolic.is_none());
            }
            other => panic!("{}", other.label()),
        }
    }

    #[test]
    fn zero_bound_rejected() {
        let s = scenario(&[[[4, 0, 0], [0, 2, 0], [0, 0, 1]]]);
        assert!(classify_projection(&s, 0, None).is_err());
    }
}
