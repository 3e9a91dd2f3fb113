use crate::bireg::{build_fixed_point, default_horizon, persistent_fibre, singular_set, FibreVerdict, FixedPointResult};
use crate::projgeo::ProjPoint;
use crate::resprod::{Config, WreathElement};
use crate::scalar::Place;
use crate::spectral::{common_eigenvector, descend_point, CommonEigen, Spectral};
use crate::words::Word;

use super::adjust::{adjust_fixed_point, exceptional_set_contains, AdjustOutcome};
use super::classify::{classify_projection, ClassificationReport, Outcome};
use super::fibration::line_fibration;
use super::finite::{brute_force_fixed_point, purely_elliptic_check, EllipticVerdict};
use super::witness::{search_persistent_fibre_word, TemplateBounds};
use super::{PipelineError, Scenario};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub word_bound: usize,
    pub closure_cap: usize,
    /// Word length for the bounded purely-elliptic check on infinite planes.
    pub elliptic_bound: usize,
    pub adjust_bound: usize,
    pub templates: TemplateBounds,
    pub places: Option<Vec<Place>>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            word_bound: 6,
            closure_cap: 20_000,
            elliptic_bound: 3,
            adjust_bound: 2,
            templates: TemplateBounds::default(),
            places: None,
        }
    }
}

impl DecideOptions {
    pub fn render(&self) -> String {
        format!(
            "word_bound={} closure_cap={} elliptic_bound={} adjust_bound={} template_exponent={} horizon={}",
            self.word_bound,
            self.closure_cap,
            self.elliptic_bound,
            self.adjust_bound,
            self.templates.max_exponent,
            self.templates.horizon
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinalOutcome<F> {
    /// Verified: every generator fixes `config`.
    FixedPointFound { config: Config<F>, route: String },
    /// `word` fixes no point; `certificate` explains why.
    NotPurelyElliptic { word: String, certificate: Vec<String> },
    Inconclusive { reason: String },
}

impl<F> FinalOutcome<F> {
    pub fn label(&self) -> &'static str {
        match self {
            FinalOutcome::FixedPointFound { .. } => "fixed-point-found",
            FinalOutcome::NotPurelyElliptic { .. } => "not-purely-elliptic",
            FinalOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FinalReport<F: Spectral> {
    pub classification: ClassificationReport<F>,
    pub outcome: FinalOutcome<F>,
    pub notes: Vec<String>,
    pub options: DecideOptions,
}

impl<F: Spectral> FinalReport<F> {
    /// Line-oriented rendering: outcome block, classification block, notes, bounds.
    pub fn render(&self, s: &Scenario<F>) -> String {
        let mut out = vec![format!("outcome: {}", self.outcome.label())];
        match &self.outcome {
            FinalOutcome::FixedPointFound { config, route } => {
                out.push(format!("route: {route}"));
                out.push(format!("config: {}", s.config_literal(config)));
                out.push(format!("verified: {}", s.fixes(config)));
            }
            FinalOutcome::NotPurelyElliptic { word, certificate } => {
                out.push(format!("word: {word}"));
                out.extend(certificate.iter().cloned());
            }
            FinalOutcome::Inconclusive { reason } => out.push(format!("reason: {reason}")),
        }
        out.push(String::new());
        out.push(self.classification.render(s.names()).trim_end().to_string());
        for n in &self.notes {
            out.push(format!("note: {n}"));
        }
        out.push(format!("bounds: {}", self.options.render()));
        out.join("\n") + "\n"
    }
}

/// Persistent-fibre certificate for an element without fixed points, looked
/// for over the preimages of its support and over the support itself.
fn fibre_certificate<F: Spectral>(e: &WreathElement<F>, basepoint: usize) -> Option<(ProjPoint<F>, FibreVerdict)> {
    let z = Config::basepoint_config(basepoint);
    let h_inv = e.proj().inverse();
    let horizon = default_horizon(e, &z);
    let candidates: Vec<ProjPoint<F>> = e.support().map(|p| h_inv.apply(p)).chain(e.support().cloned()).collect();
    candidates.into_iter().find_map(|p| match persistent_fibre(e, &p, &z, horizon) {
        Ok(v @ FibreVerdict::Certified { .. }) => Some((p, v)),
        _ => None,
    })
}

fn counterexample<F: Spectral>(s: &Scenario<F>, word: &Word, reason: String) -> FinalOutcome<F> {
    let mut certificate = vec![format!("reason: {reason}")];
    if let Some((p, FibreVerdict::Certified { l, back, forward })) = fibre_certificate(&s.eval(word), s.basepoint()) {
        certificate.push(format!("fibre_point: {}", p.to_literal()));
        certificate.push(format!("fibre_certificate: l={l} window=[-{back}, {forward}]"));
    }
    FinalOutcome::NotPurelyElliptic { word: s.word_name(word), certificate }
}

fn finite_route<F: Spectral>(s: &Scenario<F>, opts: &DecideOptions, notes: &mut Vec<String>) -> Result<FinalOutcome<F>, PipelineError> {
    if let Ok(CommonEigen::Found(u)) = common_eigenvector(&s.projections()) {
        if let Some(u) = descend_point::<F>(&u) {
            let fib = line_fibration(s, &u)?;
            let check = fib.validate(s, 1, &[Config::basepoint_config(s.basepoint())]);
            notes.push(format!(
                "fibration at {}: {} lines, bijection {}, homomorphism {} on {} pairs, equivariance {}",
                u.to_literal(),
                check.lines,
                check.bijection,
                check.homomorphism,
                check.homomorphism_pairs,
                check.equivariance
            ));
            if !check.passed() {
                return Ok(FinalOutcome::Inconclusive { reason: "fibration checks failed".into() });
            }
        }
    }
    if let Some(z) = brute_force_fixed_point(s)? {
        if s.fixes(&z) {
            return Ok(FinalOutcome::FixedPointFound { config: z, route: "exhaustive solve over the finite plane".into() });
        }
    }
    Ok(match purely_elliptic_check(s, opts.elliptic_bound, opts.closure_cap)? {
        EllipticVerdict::Counterexample { word, reason } => counterexample(s, &word, reason),
        EllipticVerdict::Yes { checked, .. } => FinalOutcome::Inconclusive {
            reason: format!(
                "no common fixed point exists (exhaustive) although all {checked} group elements fix a point; G0 decent: {}",
                s.based_space().is_decent()
            ),
        },
        EllipticVerdict::CapExceeded { cap, checked } => FinalOutcome::Inconclusive {
            reason: format!("no common fixed point exists (exhaustive); closure exceeded {cap} elements after checking {checked}"),
        },
        EllipticVerdict::Unresolved { word, reason } => FinalOutcome::Inconclusive {
            reason: format!("no common fixed point exists (exhaustive); {} unresolved: {reason}", s.word_name(&word)),
        },
    })
}

fn very_proximal_route<F: Spectral>(
    s: &Scenario<F>,
    word: &Word,
    data: &crate::spectral::AttractorData<F::Eig>,
    opts: &DecideOptions,
    notes: &mut Vec<String>,
) -> Result<Option<FinalOutcome<F>>, PipelineError> {
    let t = s.eval(word);
    let z = match build_fixed_point(&t, s.basepoint()) {
        FixedPointResult::Fixed(z) => z,
        FixedPointResult::NoFixedPoint { reason, .. } => {
            return Ok(Some(counterexample(s, word, reason)))
        }
        FixedPointResult::Inconclusive(reason) => {
            notes.push(format!("fixed point of the witness: {reason}"));
            return Ok(None);
        }
    };
    let candidate = match adjust_fixed_point(s, &t, data, &z, opts.adjust_bound)? {
        AdjustOutcome::Adjusted { config, changes } => {
            notes.push(format!("adjusted {} exceptional coordinates", changes.len()));
            if s.fixes(&config) {
                return Ok(Some(FinalOutcome::FixedPointFound {
                    config,
                    route: format!("fixed point of very proximal {} after adjustment", s.word_name(word)),
                }));
            }
            config
        }
        AdjustOutcome::Inconclusive { reason, candidate } => {
            notes.push(format!("adjustment: {reason}"));
            candidate.unwrap_or(z)
        }
    };
    let t_name = s.word_name(word);
    for (name, f) in s.names().iter().zip(s.generators()) {
        for r in singular_set(f, &candidate).points() {
            if exceptional_set_contains::<F>(data, &r) {
                continue;
            }
            if let Some(w) = search_persistent_fibre_word(&t, f, &r, &candidate, data, &opts.templates)? {
                let mut certificate = vec![format!("reference_config: {}", s.config_literal(&candidate))];
                certificate.extend(w.render(&t_name, name));
                let word = w.template.render(&w.exponents, &t_name, name);
                return Ok(Some(FinalOutcome::NotPurelyElliptic { word, certificate }));
            }
        }
    }
    notes.push("no persistent-fibre template certified within bounds".into());
    Ok(None)
}

/// Runs the whole pipeline. Positive verdicts are re-verified against every
/// generator; negative ones carry an exact certificate.
pub fn decide_scenario<F: Spectral>(s: &Scenario<F>, opts: &DecideOptions) -> Result<FinalReport<F>, PipelineError> {
    let classification = classify_projection(s, opts.word_bound, opts.places.clone())?;
    let mut notes = Vec::new();
    let finish = |outcome, notes| Ok(FinalReport { classification: classification.clone(), outcome, notes, options: opts.clone() });

    let base = Config::basepoint_config(s.basepoint());
    if s.fixes(&base) {
        return finish(FinalOutcome::FixedPointFound { config: base, route: "basepoint configuration".into() }, notes);
    }
    if F::finite_elements().is_some() {
        let outcome = finite_route(s, opts, &mut notes)?;
        return finish(outcome, notes);
    }
    if let Outcome::VeryProximalWitness { word, data, .. } = &classification.outcome {
        if let Some(outcome) = very_proximal_route(s, word, data, opts, &mut notes)? {
            return finish(outcome, notes);
        }
    }
    match purely_elliptic_check(s, opts.elliptic_bound, opts.closure_cap)? {
        EllipticVerdict::Counterexample { word, reason } => return finish(counterexample(s, &word, reason), notes),
        EllipticVerdict::Unresolved { word, reason } => notes.push(format!("{}: {reason}", s.word_name(&word))),
        _ => {}
    }
    for (word, e) in s.words(opts.elliptic_bound.min(2)) {
        if let FixedPointResult::Fixed(z) = build_fixed_point(&e, s.basepoint()) {
            if s.fixes(&z) {
                let route = format!("fixed point of {} is fixed by every generator", s.word_name(&word));
                return finish(FinalOutcome::FixedPointFound { config: z, route }, notes);
            }
        }
    }
    finish(
        FinalOutcome::Inconclusive {
            reason: format!("no verified fixed point or counterexample within bounds ({})", opts.render()),
        },
        notes,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::resprod::{BasedSpace, Perm};
    use crate::scalar::{Gf, Rational};

    fn x0() -> BasedSpace {
        BasedSpace::parse(&["a", "b"], "a", &["(a b)"]).unwrap()
    }

    fn swap() -> Perm {
        Perm::from_images(vec![1, 0]).unwrap()
    }

    #[test]
    fn trivial_group_fixes_the_basepoint() {
        let s = Scenario::<Rational>::new(x0(), vec![]).unwrap();
        let r = decide_scenario(&s, &DecideOptions::default()).unwrap();
        assert_eq!(r.outcome, FinalOutcome::FixedPointFound { config: Config::basepoint_config(0), route: "basepoint configuration".into() });
    }

    #[test]
    fn shift_is_not_purely_elliptic() {
        let f = WreathElement::<Rational>::new(
            2,
            [(ProjPoint::from_i64([1, 1, 0]), swap())],
            ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        );
        let s = Scenario::new(x0(), vec![("f".into(), f)]).unwrap();
        let r = decide_scenario(&s, &DecideOptions { word_bound: 2, ..Default::default() }).unwrap();
        match &r.outcome {
            FinalOutcome::NotPurelyElliptic { word, certificate } => {
                assert_eq!(word, "f");
                assert!(certificate.iter().any(|l| l.starts_with("fibre_certificate: l=1")), "{certificate:?}");
            }
            other => panic!("{other:?}"),
        }
        assert!(r.render(&s).starts_with("outcome: not-purely-elliptic\nword: f\n"));
    }

    #[test]
    fn very_proximal_element_with_fixable_cofactors() {
        let h = ProjMap::<Rational>::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let t = WreathElement::new(2, [(ProjPoint::from_i64([1, 1, 1]), swap()), (ProjPoint::from_i64([4, 2, 1]), swap())], h);
        let s = Scenario::new(x0(), vec![("t".into(), t)]).unwrap();
        let r = decide_scenario(&s, &DecideOptions { word_bound: 2, ..Default::default() }).unwrap();
        match &r.outcome {
            FinalOutcome::FixedPointFound { config, .. } => assert!(s.fixes(config)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finite_scenario_matches_oracle() {
        let h = ProjMap::<Gf<3>>::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let a = WreathElement::new(2, [(ProjPoint::from_i64([1, 1, 0]), swap())], h);
        let s = Scenario::new(x0(), vec![("a".into(), a)]).unwrap();
        let r = decide_scenario(&s, &DecideOptions { word_bound: 2, ..Default::default() }).unwrap();
        assert_eq!(r.outcome.label(), "not-purely-elliptic");
        assert_eq!(brute_force_fixed_point(&s).unwrap(), None);
    }
}
