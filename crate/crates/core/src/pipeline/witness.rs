use std::fmt;

use crate::bireg::{persistent_fibre, FibreVerdict};
use crate::projgeo::{ProjLine, ProjPoint};
use crate::resprod::{Config, WreathElement};
use crate::spectral::{eig_point, AttractorData, Spectral};

use super::adjust::exceptional_set_contains;
use super::PipelineError;

/// Word shapes built from a very proximal `t` and an element `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Template {
    /// `t^n f`
    PowerThenF,
    /// `t^N f t^n f`
    TwoPowers,
    /// `t^-n f t^n f`
    Conjugated,
    /// `t^-m f² t^n f`
    SquaredF,
}

impl Template {
    pub const ALL: [Template; 4] = [Template::PowerThenF, Template::TwoPowers, Template::Conjugated, Template::SquaredF];

    fn arity(self) -> usize {
        match self {
            Template::PowerThenF | Template::Conjugated => 1,
            Template::TwoPowers | Template::SquaredF => 2,
        }
    }

    /// The template as a word in `t` and `f`, given their renderings.
    pub fn render(self, exps: &[usize], t: &str, f: &str) -> String {
        let group = |w: &str| if w.contains(' ') { format!("({w})") } else { w.to_string() };
        let tp = |e: i64| if e == 1 { t.to_string() } else { format!("{}^{e}", group(t)) };
        let fp = f.to_string();
        match (self, exps) {
            (Template::PowerThenF, [n]) => format!("{} {fp}", tp(*n as i64)),
            (Template::TwoPowers, [big, n]) => format!("{} {fp} {} {fp}", tp(*big as i64), tp(*n as i64)),
            (Template::Conjugated, [n]) => format!("{} {fp} {} {fp}", tp(-(*n as i64)), tp(*n as i64)),
            (Template::SquaredF, [m, n]) => format!("{} {fp} {fp} {} {fp}", tp(-(*m as i64)), tp(*n as i64)),
            _ => unreachable!("exponent count matches the template"),
        }
    }

    pub fn element<F: Spectral>(self, t: &WreathElement<F>, f: &WreathElement<F>, exps: &[usize]) -> WreathElement<F> {
        let tp = |e: i64| t.pow(e);
        match (self, exps) {
            (Template::PowerThenF, [n]) => tp(*n as i64).multiply(f),
            (Template::TwoPowers, [big, n]) => tp(*big as i64).multiply(f).multiply(&tp(*n as i64)).multiply(f),
            (Template::Conjugated, [n]) => tp(-(*n as i64)).multiply(f).multiply(&tp(*n as i64)).multiply(f),
            (Template::SquaredF, [m, n]) => {
                tp(-(*m as i64)).multiply(f).multiply(f).multiply(&tp(*n as i64)).multiply(f)
            }
            _ => unreachable!("exponent count matches the template"),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.render(&vec![1; self.arity()], "t", "f").as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TemplateBounds {
    pub max_exponent: usize,
    pub horizon: usize,
}

impl Default for TemplateBounds {
    fn default() -> Self {
        TemplateBounds { max_exponent: 4, horizon: 24 }
    }
}

/// A template instance with a certified persistent fibre over `point`.
#[derive(Clone, Debug)]
pub struct FibreWitness<F> {
    pub template: Template,
    pub exponents: Vec<usize>,
    pub element: WreathElement<F>,
    pub point: ProjPoint<F>,
    pub verdict: FibreVerdict,
    /// Found after replacing `(t, f, r)` by `(t⁻¹, f⁻¹, f(r))`.
    pub symmetric: bool,
}

impl<F: Spectral> FibreWitness<F> {
    pub fn render(&self, t: &str, f: &str) -> Vec<String> {
        let (t, f) = if self.symmetric { (format!("{t}^-1"), format!("{f}^-1")) } else { (t.to_string(), f.to_string()) };
        let FibreVerdict::Certified { l, back, forward } = &self.verdict else { unreachable!("witnesses are certified") };
        vec![
            format!("template: {}", self.template),
            format!("exponents: {:?}", self.exponents),
            format!("element: {}", self.template.render(&self.exponents, &t, &f)),
            format!("fibre_point: {}", self.point.to_literal()),
            format!("fibre_certificate: l={l} window=[-{back}, {forward}]"),
            format!("symmetry_substitution: {}", self.symmetric),
        ]
    }
}

fn exponent_tuples(arity: usize, max: usize) -> Vec<Vec<usize>> {
    match arity {
        1 => (1..=max).map(|n| vec![n]).collect(),
        _ => (1..=max).flat_map(|a| (1..=max).map(move |b| vec![a, b])).collect(),
    }
}

fn off_line<F: Spectral>(p: &ProjPoint<F>, l: &ProjLine<F::Eig>) -> bool {
    !l.contains(&eig_point(p))
}

fn search<F: Spectral>(
    t: &WreathElement<F>,
    f: &WreathElement<F>,
    r: &ProjPoint<F>,
    z: &Config<F>,
    repelling: &ProjLine<F::Eig>,
    bounds: &TemplateBounds,
    symmetric: bool,
) -> Result<Option<FibreWitness<F>>, PipelineError> {
    // t^n f(r) heads to the attractor only when f(r) avoids the repelling line
    let fr_ok = off_line::<F>(&f.proj().apply(r), repelling);
    for template in Template::ALL {
        if template == Template::PowerThenF && !fr_ok {
            continue;
        }
        for exps in exponent_tuples(template.arity(), bounds.max_exponent) {
            let element = template.element(t, f, &exps);
            let verdict = persistent_fibre(&element, r, z, bounds.horizon)?;
            if verdict.is_certified() {
                return Ok(Some(FibreWitness { template, exponents: exps, element, point: r.clone(), verdict, symmetric }));
            }
        }
    }
    Ok(None)
}

/// First template instance (in template order, then exponents
/// lexicographically) with a certified persistent fibre over `r`; then the
/// same search for `(t⁻¹, f⁻¹, f(r))`.
pub fn search_persistent_fibre_word<F: Spectral>(
    t: &WreathElement<F>,
    f: &WreathElement<F>,
    r: &ProjPoint<F>,
    z: &Config<F>,
    data: &AttractorData<F::Eig>,
    bounds: &TemplateBounds,
) -> Result<Option<FibreWitness<F>>, PipelineError> {
    if exceptional_set_contains::<F>(data, r) {
        return Err(PipelineError::PointInExceptionalSet);
    }
    if &t.act(z) != z {
        return Err(PipelineError::ConfigNotFixed);
    }
    if let Some(w) = search(t, f, r, z, &data.line_minus, bounds, false)? {
        return Ok(Some(w));
    }
    let fr = f.proj().apply(r);
    if exceptional_set_contains::<F>(data, &fr) {
        return Ok(None);
    }
    search(&t.invert(), &f.invert(), &fr, z, &data.line_plus, bounds, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::resprod::Perm;
    use crate::scalar::Rational;
    use crate::spectral::{classify_proximality, Proximality};
    use crate::scalar::Place;

    fn setup() -> (WreathElement<Rational>, AttractorData<crate::scalar::QuadExt>) {
        let h = ProjMap::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let Proximality::VeryProximal(d) = classify_proximality(&h, Place::REAL) else { panic!() };
        (WreathElement::pure(2, h), d)
    }

    #[test]
    fn cofactor_only_element_gives_first_template() {
        let (t, d) = setup();
        let r = ProjPoint::from_i64([1, 1, 1]);
        let f = WreathElement::new(2, [(r.clone(), Perm::from_images(vec![1, 0]).unwrap())], ProjMap::identity());
        let z = Config::basepoint_config(0);
        let w = search_persistent_fibre_word(&t, &f, &r, &z, &d, &TemplateBounds::default()).unwrap().unwrap();
        assert_eq!(w.template, Template::PowerThenF);
        assert_eq!(w.exponents, vec![1]);
        assert!(!w.symmetric);
        assert_eq!(w.render("t", "f")[2], "element: t f");
    }

    #[test]
    fn biregular_elements_give_nothing() {
        let (t, d) = setup();
        let f = WreathElement::pure(2, ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]));
        let z = Config::basepoint_config(0);
        let bounds = TemplateBounds { max_exponent: 2, horizon: 8 };
        let r = ProjPoint::from_i64([1, 1, 1]);
        assert!(search_persistent_fibre_word(&t, &f, &r, &z, &d, &bounds).unwrap().is_none());
        let on_line = ProjPoint::from_i64([0, 1, 1]);
        assert_eq!(
            search_persistent_fibre_word(&t, &f, &on_line, &z, &d, &bounds).unwrap_err(),
            PipelineError::PointInExceptionalSet
        );
    }
}
