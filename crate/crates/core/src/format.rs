//! The scenario file format.
//!
//! A scenario file is line oriented UTF-8 text with the sections
//! `[based_space]`, `[ambient]`, `[gamma]` and an optional `[options]`.
//! Full-line comments start with `#`. The grammar is in `docs/scenario-grammar.md`.
//!
//! ```text
//! [based_space]
//! elements = a b
//! basepoint = a
//! generators = (a b)
//!
//! [ambient]
//! field = rational
//!
//! [gamma]
//! t = [[4,0,0],[0,2,0],[0,0,1]]
//! f = [[1,0,0],[0,1,0],[0,0,1]]
//! f at [1:1:1] -> (a b)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::pipeline::{DecideOptions, Scenario, TemplateBounds};
use crate::projgeo::{ProjMap, ProjPoint};
use crate::resprod::{BasedSpace, Perm, WreathElement};
use crate::scalar::{is_prime, parse_rational, ExactField, Gf, Place, QuadExt, Rational};
use crate::spectral::Spectral;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A value together with the 1-based position where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub line: usize,
    pub column: usize,
}

impl<T> Spanned<T> {
    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError { line: self.line, column: self.column, message: message.into() }
    }
}

/// The field the plane is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Rational,
    /// ℚ(√d) with `d` squarefree and not 1.
    Quadratic(u64),
    /// GF(p).
    Finite(u64),
}

/// Primes with a compiled finite field.
pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

impl Ambient {
    pub fn parse(s: &str) -> Result<Self, String> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["rational"] => Ok(Ambient::Rational),
            ["quadratic", d] => {
                let d: u64 = d.parse().map_err(|_| format!("bad radicand `{d}`"))?;
                if d < 2 || !crate::scalar::is_squarefree(d) {
                    return Err(format!("radicand {d} is not a squarefree integer > 1"));
                }
                Ok(Ambient::Quadratic(d))
            }
            ["gf", p] => {
                let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
                if !is_prime(p) {
                    return Err(format!("{p} is not prime"));
                }
                if !SUPPORTED_PRIMES.contains(&p) {
                    return Err(format!("GF({p}) is not supported; use one of {SUPPORTED_PRIMES:?}"));
                }
                Ok(Ambient::Finite(p))
            }
            _ => Err(format!("unknown field `{s}`; expected `rational`, `quadratic d` or `gf p`")),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ambient::Finite(_))
    }

    /// Runs `job` with the scalar type of this ambient field.
    pub fn dispatch<J: FieldJob>(&self, job: J) -> J::Output {
        match *self {
            Ambient::Rational => job.run::<Rational>(self),
            Ambient::Quadratic(_) => job.run::<QuadExt>(self),
            Ambient::Finite(2) => job.run::<Gf<2>>(self),
            Ambient::Finite(3) => job.run::<Gf<3>>(self),
            Ambient::Finite(5) => job.run::<Gf<5>>(self),
            Ambient::Finite(7) => job.run::<Gf<7>>(self),
            Ambient::Finite(11) => job.run::<Gf<11>>(self),
            Ambient::Finite(13) => job.run::<Gf<13>>(self),
            Ambient::Finite(p) => panic!("GF({p}) passed validation but has no instance"),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Rational => write!(f, "rational"),
            Ambient::Quadratic(d) => write!(f, "quadratic {d}"),
            Ambient::Finite(p) => write!(f, "gf {p}"),
        }
    }
}

/// A computation that is generic over the scalar field.
pub trait FieldJob {
    type Output;
    fn run<F: FileField>(self, ambient: &Ambient) -> Self::Output;
}

/// Scalar types a scenario file can be built over.
pub trait FileField: Spectral {
    fn admits(ambient: &Ambient) -> bool;

    /// Whether a parsed scalar lies in the declared field.
    fn lies_in(&self, _ambient: &Ambient) -> bool {
        true
    }
}

impl FileField for Rational {
    fn admits(ambient: &Ambient) -> bool {
        *ambient == Ambient::Rational
    }
}

impl FileField for QuadExt {
    fn admits(ambient: &Ambient) -> bool {
        matches!(ambient, Ambient::Quadratic(_))
    }

    fn lies_in(&self, ambient: &Ambient) -> bool {
        match ambient {
            Ambient::Quadratic(d) => self.radicand() == 0 || self.radicand() == *d,
            _ => false,
        }
    }
}

impl<const P: u64> FileField for Gf<P> {
    fn admits(ambient: &Ambient) -> bool {
        *ambient == Ambient::Finite(P)
    }
}

/// Recognised keys of the `[options]` section. Absent keys take the
/// command defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScenarioOptions {
    pub word_bound: Option<usize>,
    pub closure_cap: Option<usize>,
    pub elliptic_bound: Option<usize>,
    pub adjust_bound: Option<usize>,
    pub template_exponent: Option<usize>,
    pub horizon: Option<usize>,
    pub places: Option<Vec<Place>>,
    pub epsilon: Option<Rational>,
    pub nsd_samples: Option<usize>,
    pub nsd_cap: Option<usize>,
    pub max_steps: Option<usize>,
    /// Word naming the element used by `orbit`, `nsd` and `trajectory`.
    pub element: Option<String>,
    pub point: Option<String>,
}

const OPTION_KEYS: [&str; 13] = [
    "word_bound",
    "closure_cap",
    "elliptic_bound",
    "adjust_bound",
    "template_exponent",
    "horizon",
    "places",
    "epsilon",
    "nsd_samples",
    "nsd_cap",
    "max_steps",
    "element",
    "point",
];

impl ScenarioOptions {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let count = || -> Result<Option<usize>, String> {
            value.parse::<usize>().map(Some).map_err(|_| format!("`{key}` expects a nonnegative integer"))
        };
        match key {
            "word_bound" => self.word_bound = count()?,
            "closure_cap" => self.closure_cap = count()?,
            "elliptic_bound" => self.elliptic_bound = count()?,
            "adjust_bound" => self.adjust_bound = count()?,
            "template_exponent" => self.template_exponent = count()?,
            "horizon" => self.horizon = count()?,
            "nsd_samples" => self.nsd_samples = count()?,
            "nsd_cap" => self.nsd_cap = count()?,
            "max_steps" => self.max_steps = count()?,
            "places" => {
                let places = value
                    .split(',')
                    .map(|p| p.trim().parse::<Place>().map_err(|_| format!("bad place `{}`", p.trim())))
                    .collect::<Result<Vec<_>, _>>()?;
                self.places = Some(places);
            }
            "epsilon" => {
                let e = parse_rational(value).map_err(|e| e.to_string())?;
                self.epsilon = Some(e);
            }
            "element" => self.element = Some(value.to_string()),
            "point" => self.point = Some(value.to_string()),
            _ => return Err(format!("unknown option `{key}`")),
        }
        Ok(())
    }

    fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push(format!("{k} = {v}"));
            }
        };
        push("word_bound", self.word_bound.map(|x| x.to_string()));
        push("closure_cap", self.closure_cap.map(|x| x.to_string()));
        push("elliptic_bound", self.elliptic_bound.map(|x| x.to_string()));
        push("adjust_bound", self.adjust_bound.map(|x| x.to_string()));
        push("template_exponent", self.template_exponent.map(|x| x.to_string()));
        push("horizon", self.horizon.map(|x| x.to_string()));
        push(
            "places",
            self.places.as_ref().map(|ps| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
        );
        push("epsilon", self.epsilon.as_ref().map(|e| e.to_string()));
        push("nsd_samples", self.nsd_samples.map(|x| x.to_string()));
        push("nsd_cap", self.nsd_cap.map(|x| x.to_string()));
        push("max_steps", self.max_steps.map(|x| x.to_string()));
        push("element", self.element.clone());
        push("point", self.point.clone());
        out
    }

    /// Decision options with the file's overrides applied.
    pub fn decide_options(&self) -> DecideOptions {
        let d = DecideOptions::default();
        DecideOptions {
            word_bound: self.word_bound.unwrap_or(d.word_bound),
            closure_cap: self.closure_cap.unwrap_or(d.closure_cap),
            elliptic_bound: self.elliptic_bound.unwrap_or(d.elliptic_bound),
            adjust_bound: self.adjust_bound.unwrap_or(d.adjust_bound),
            templates: TemplateBounds {
                max_exponent: self.template_exponent.unwrap_or(d.templates.max_exponent),
                horizon: self.horizon.unwrap_or(d.templates.horizon),
            },
            places: self.places.clone().or(d.places),
        }
    }
}

/// One generator of the `[gamma]` section: its matrix and cofactor lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    pub name: Spanned<String>,
    pub matrix: Spanned<String>,
    pub cofactors: Vec<(Spanned<String>, Spanned<String>)>,
}

/// A parsed but not yet typed scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFile {
    pub elements: Spanned<Vec<String>>,
    pub basepoint: Spanned<String>,
    pub generators: Spanned<Vec<String>>,
    pub ambient: Spanned<Ambient>,
    pub gamma: Vec<GammaEntry>,
    pub options: ScenarioOptions,
    options_spans: BTreeMap<String, (usize, usize)>,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_element_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"()[]=#;,".contains(c))
}

/// Column (1-based, in characters) of byte offset `at` in `raw`.
fn column(raw: &str, at: usize) -> usize {
    raw[..at].chars().count() + 1
}

/// Byte offset of the first non-space character at or after `from`.
fn skip_spaces(raw: &str, from: usize) -> usize {
    from + (raw[from..].len() - raw[from..].trim_start().len())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    BasedSpace,
    Ambient,
    Gamma,
    Options,
}

impl Section {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "based_space" => Some(Section::BasedSpace),
            "ambient" => Some(Section::Ambient),
            "gamma" => Some(Section::Gamma),
            "options" => Some(Section::Options),
            _ => None,
        }
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut section: Option<Section> = None;
        let mut seen_sections: Vec<Section> = Vec::new();
        let mut kv: BTreeMap<(Section, String), Spanned<String>> = BTreeMap::new();
        let mut gamma: Vec<GammaEntry> = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let start = skip_spaces(raw, 0);
            let body = raw[start..].trim_end();
            let at = |off: usize, msg: String| FormatError { line, column: column(raw, off), message: msg };
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
                if !body.starts_with("[[") {
                    let sec = Section::parse(name.trim())
                        .ok_or_else(|| at(start, format!("unknown section `[{}]`", name.trim())))?;
                    if seen_sections.contains(&sec) {
                        return Err(at(start, format!("section `[{}]` appears twice", name.trim())));
                    }
                    seen_sections.push(sec);
                    section = Some(sec);
                    continue;
                }
            }
            let Some(sec) = section else {
                return Err(at(start, "content before the first section header".into()));
            };
            if sec == Section::Gamma {
                parse_gamma_line(raw, line, start, &mut gamma)?;
                continue;
            }
            let eq = raw.find('=').ok_or_else(|| at(start, "expected `key = value`".into()))?;
            let key = raw[start..eq].trim();
            if !is_identifier(key) {
                return Err(at(start, format!("bad key `{key}`")));
            }
            let known: &[&str] = match sec {
                Section::BasedSpace => &["elements", "basepoint", "generators"],
                Section::Ambient => &["field"],
                Section::Options => &OPTION_KEYS,
                Section::Gamma => unreachable!(),
            };
            if !known.contains(&key) {
                return Err(at(start, format!("unknown key `{key}`")));
            }
            let vstart = skip_spaces(raw, eq + 1);
            let value = Spanned { value: raw[vstart..].trim_end().to_string(), line, column: column(raw, vstart) };
            if kv.insert((sec, key.to_string()), value).is_some() {
                return Err(at(start, format!("duplicate key `{key}`")));
            }
        }

        let eof = FormatError { line: last_line.max(1), column: 1, message: String::new() };
        let missing = |what: &str| FormatError { message: format!("missing {what}"), ..eof.clone() };
        for (sec, name) in [(Section::BasedSpace, "based_space"), (Section::Ambient, "ambient"), (Section::Gamma, "gamma")] {
            if !seen_sections.contains(&sec) {
                return Err(missing(&format!("section `[{name}]`")));
            }
        }
        let mut take = |sec: Section, key: &str| kv.remove(&(sec, key.to_string()));

        let elements = take(Section::BasedSpace, "elements").ok_or_else(|| missing("key `elements`"))?;
        let names: Vec<String> = elements.value.split_whitespace().map(str::to_string).collect();
        if names.is_empty() {
            return Err(elements.err("no elements"));
        }
        if let Some(bad) = names.iter().find(|n| !is_element_name(n)) {
            return Err(elements.err(format!("bad element name `{bad}`")));
        }
        let elements = Spanned { value: names, line: elements.line, column: elements.column };
        let basepoint = take(Section::BasedSpace, "basepoint").ok_or_else(|| missing("key `basepoint`"))?;
        let generators = match take(Section::BasedSpace, "generators") {
            Some(g) => Spanned {
                value: g.value.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                line: g.line,
                column: g.column,
            },
            None => Spanned { value: Vec::new(), line: eof.line, column: 1 },
        };
        let field = take(Section::Ambient, "field").ok_or_else(|| missing("key `field`"))?;
        let ambient = Spanned {
            value: Ambient::parse(&field.value).map_err(|m| field.err(m))?,
            line: field.line,
            column: field.column,
        };

        let mut options = ScenarioOptions::default();
        let mut options_spans = BTreeMap::new();
        for key in OPTION_KEYS {
            if let Some(v) = take(Section::Options, key) {
                options.set(key, &v.value).map_err(|m| v.err(m))?;
                options_spans.insert(key.to_string(), (v.line, v.column));
            }
        }

        Ok(ScenarioFile { elements, basepoint, generators, ambient, gamma, options, options_spans })
    }

    fn option_err(&self, key: &str, message: String) -> FormatError {
        let (line, column) = self.options_spans.get(key).copied().unwrap_or((1, 1));
        FormatError { line, column, message }
    }

    pub fn based_space(&self) -> Result<BasedSpace, FormatError> {
        let names: Vec<&str> = self.elements.value.iter().map(String::as_str).collect();
        let gens: Vec<&str> = self.generators.value.iter().map(String::as_str).collect();
        if !self.elements.value.contains(&self.basepoint.value) {
            return Err(self.basepoint.err(format!("basepoint `{}` is not an element", self.basepoint.value)));
        }
        for g in &gens {
            Perm::parse_cycles(g, &self.elements.value).map_err(|e| self.generators.err(e.to_string()))?;
        }
        BasedSpace::parse(&names, &self.basepoint.value, &gens).map_err(|e| self.elements.err(e.to_string()))
    }

    /// Builds the typed scenario over `F`, which must match the declared field.
    pub fn build<F: FileField>(&self) -> Result<Scenario<F>, FormatError> {
        let ambient = self.ambient.value;
        if !F::admits(&ambient) {
            return Err(self.ambient.err(format!("scenario is over `{ambient}`")));
        }
        let x0 = self.based_space()?;
        let check_entries = |cells: Vec<&F>, at: &Spanned<String>| -> Result<(), FormatError> {
            match cells.into_iter().find(|x| !x.lies_in(&ambient)) {
                Some(x) => Err(at.err(format!("`{}` does not lie in {ambient}", x.to_literal()))),
                None => Ok(()),
            }
        };
        let mut gens = Vec::new();
        for entry in &self.gamma {
            let m = ProjMap::<F>::parse(&entry.matrix.value).map_err(|e| entry.matrix.err(e.to_string()))?;
            check_entries(m.lift().m.iter().flatten().collect(), &entry.matrix)?;
            let mut cof = Vec::new();
            for (p, g) in &entry.cofactors {
                let pt = ProjPoint::<F>::parse(&p.value).map_err(|e| p.err(e.to_string()))?;
                check_entries(pt.coords().iter().collect(), p)?;
                let perm = Perm::parse_cycles(&g.value, x0.names()).map_err(|e| g.err(e.to_string()))?;
                if !x0.contains(&perm) {
                    return Err(g.err(format!("`{}` is not in the group of the based space", g.value)));
                }
                cof.push((pt, perm));
            }
            gens.push((entry.name.value.clone(), WreathElement::new(x0.size(), cof, m)));
        }
        let s = Scenario::new(x0, gens).map_err(|e| self.elements.err(e.to_string()))?;
        if let Some(w) = &self.options.element {
            self.element_word(&s, w)?;
        }
        if let Some(p) = &self.options.point {
            let pt = ProjPoint::<F>::parse(p).map_err(|e| self.option_err("point", e.to_string()))?;
            if pt.coords().iter().any(|x| !x.lies_in(&ambient)) {
                return Err(self.option_err("point", format!("point does not lie in {ambient}")));
            }
        }
        if let Some(e) = &self.options.epsilon {
            if *e <= Rational::from_integer(0.into()) || *e >= Rational::from_integer(1.into()) {
                return Err(self.option_err("epsilon", "epsilon must lie strictly between 0 and 1".into()));
            }
        }
        Ok(s)
    }

    fn element_word<F: ExactField>(&self, s: &Scenario<F>, w: &str) -> Result<Word, FormatError> {
        Word::parse_with(w, s.names()).ok_or_else(|| self.option_err("element", format!("bad word `{w}`")))
    }

    /// The element named by the `element` option, or the first generator.
    pub fn element<F: ExactField>(&self, s: &Scenario<F>) -> Result<(String, WreathElement<F>), FormatError> {
        match &self.options.element {
            Some(w) => {
                let word = self.element_word(s, w)?;
                Ok((word.display_with(s.names()), s.eval(&word)))
            }
            None => match s.names().first() {
                Some(n) => Ok((n.clone(), s.generators()[0].clone())),
                None => Err(FormatError { line: 1, column: 1, message: "scenario has no generators".into() }),
            },
        }
    }

    /// The point named by the `point` option.
    pub fn point<F: ExactField>(&self) -> Result<Option<ProjPoint<F>>, FormatError> {
        self.options
            .point
            .as_ref()
            .map(|p| ProjPoint::<F>::parse(p).map_err(|e| self.option_err("point", e.to_string())))
            .transpose()
    }

    /// Canonical text of the file, printed from its typed form.
    pub fn canonical<F: FileField>(&self) -> Result<String, FormatError> {
        let s = self.build::<F>()?;
        Ok(print_scenario(&self.ambient.value, &s, &self.options))
    }
}

fn parse_gamma_line(raw: &str, line: usize, start: usize, gamma: &mut Vec<GammaEntry>) -> Result<(), FormatError> {
    let at = |off: usize, msg: String| FormatError { line, column: column(raw, off), message: msg };
    let rest = &raw[start..];
    let name_len = rest.find(|c: char| c.is_whitespace() || c == '=').unwrap_or(rest.len());
    let name = &rest[..name_len];
    if !is_identifier(name) {
        return Err(at(start, format!("bad generator name `{name}`")));
    }
    let after = skip_spaces(raw, start + name_len);
    let tail = &raw[after..];
    if let Some(m) = tail.strip_prefix('=') {
        if gamma.iter().any(|g| g.name.value == name) {
            return Err(at(start, format!("generator `{name}` defined twice")));
        }
        let mstart = skip_spaces(raw, after + 1);
        if m.trim().is_empty() {
            return Err(at(mstart, "missing matrix".into()));
        }
        gamma.push(GammaEntry {
            name: Spanned { value: name.to_string(), line, column: column(raw, start) },
            matrix: Spanned { value: raw[mstart..].trim_end().to_string(), line, column: column(raw, mstart) },
            cofactors: Vec::new(),
        });
        return Ok(());
    }
    let Some(ptail) = tail.strip_prefix("at").filter(|t| t.starts_with(char::is_whitespace)) else {
        return Err(at(after, "expected `= matrix` or `at point -> permutation`".into()));
    };
    let pstart = skip_spaces(raw, after + 2);
    let arrow = ptail.find("->").ok_or_else(|| at(pstart, "expected `->`".into()))?;
    let arrow = after + 2 + arrow;
    let point = raw[pstart..arrow].trim_end();
    if point.is_empty() {
        return Err(at(pstart, "missing point".into()));
    }
    let gstart = skip_spaces(raw, arrow + 2);
    let perm = raw[gstart..].trim_end();
    if perm.is_empty() {
        return Err(at(gstart, "missing permutation".into()));
    }
    let entry = gamma
        .iter_mut()
        .find(|g| g.name.value == name)
        .ok_or_else(|| at(start, format!("cofactor for `{name}` before its matrix")))?;
    if entry.cofactors.iter().any(|(p, _)| p.value == point) {
        return Err(at(pstart, format!("second cofactor for `{name}` at {point}")));
    }
    entry.cofactors.push((
        Spanned { value: point.to_string(), line, column: column(raw, pstart) },
        Spanned { value: perm.to_string(), line, column: column(raw, gstart) },
    ));
    Ok(())
}

/// Canonical text of a typed scenario. Parsing it gives back the same scenario.
pub fn print_scenario<F: ExactField>(ambient: &Ambient, s: &Scenario<F>, options: &ScenarioOptions) -> String {
    let x0 = s.based_space();
    let mut out = String::new();
    out.push_str("[based_space]\n");
    out.push_str(&format!("elements = {}\n", x0.names().join(" ")));
    out.push_str(&format!("basepoint = {}\n", x0.name(x0.basepoint())));
    let gens: Vec<String> = x0.generators().iter().map(|g| g.to_cycle_string(x0.names())).collect();
    if gens.is_empty() {
        out.push_str("generators =\n");
    } else {
        out.push_str(&format!("generators = {}\n", gens.join("; ")));
    }
    out.push_str(&format!("\n[ambient]\nfield = {ambient}\n\n[gamma]\n"));
    for (name, g) in s.names().iter().zip(s.generators()) {
        out.push_str(&format!("{name} = {}\n", g.proj().to_literal()));
        for c in g.cofactor_literal(x0) {
            out.push_str(&format!("{name} at {c}\n"));
        }
    }
    let opts = options.lines();
    if !opts.is_empty() {
        out.push_str("\n[options]\n");
        for l in opts {
            out.push_str(&l);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHIFT: &str = "\
[based_space]
elements = a b
basepoint = a
generators = (a b)

[ambient]
field = rational

[gamma]
t = [[4,0,0],[0,2,0],[0,0,1]]
f = [[1,0,0],[0,1,0],[0,0,1]]
f at [1:1:1] -> (a b)

[options]
word_bound = 3
places = real, padic(2)
epsilon = 1/4
element = t f^-1
point = [1:2:1]
";

    fn err(text: &str) -> FormatError {
        ScenarioFile::parse(text).and_then(|f| f.build::<Rational>().map(|_| ())).unwrap_err()
    }

    #[test]
    fn canonical_round_trip() {
        let file = ScenarioFile::parse(SHIFT).unwrap();
        assert_eq!(file.canonical::<Rational>().unwrap(), SHIFT);
        let s = file.build::<Rational>().unwrap();
        assert_eq!(s.names(), ["t", "f"]);
        assert_eq!(s.generators()[1].support().count(), 1);
        let (name, _) = file.element(&s).unwrap();
        assert_eq!(name, "t f^-1");
        assert_eq!(file.point::<Rational>().unwrap().unwrap().to_literal(), "[1:2:1]");
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# header\n\n{}", SHIFT.replace("[gamma]\n", "[gamma]\n  # generators\n"));
        let file = ScenarioFile::parse(&text).unwrap();
        assert_eq!(file.canonical::<Rational>().unwrap(), SHIFT);
    }

    #[test]
    fn errors_carry_positions() {
        let e = err(&SHIFT.replace("[[4,0,0]", "[[4,0]"));
        assert_eq!((e.line, e.column), (10, 5));
        let e = err(&SHIFT.replace("word_bound", "wordbound"));
        assert_eq!((e.line, e.column), (15, 1));
        assert!(e.message.contains("unknown key"));
        let e = err(&SHIFT.replace("-> (a b)", "-> (a c)"));
        assert_eq!((e.line, e.column), (12, 17));
        let e = err(&SHIFT.replace("[options]", "[extras]"));
        assert!(e.message.contains("unknown section"));
        let e = err(&SHIFT.replace("field = rational", "field = gf 4"));
        assert_eq!((e.line, e.column), (7, 9));
        let e = err(&SHIFT.replace("epsilon = 1/4", "epsilon = 3/2"));
        assert_eq!(e.line, 17);
        let e = err("elements = a\n");
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn field_must_match() {
        let file = ScenarioFile::parse(SHIFT).unwrap();
        assert!(file.build::<Gf<3>>().is_err());
        let q = SHIFT.replace("field = rational", "field = quadratic 2").replace("[[4,0,0]", "[[1+1*sqrt(2),0,0]");
        let file = ScenarioFile::parse(&q).unwrap();
        assert_eq!(file.canonical::<QuadExt>().unwrap(), q);
        let bad = q.replace("sqrt(2)", "sqrt(3)");
        assert!(ScenarioFile::parse(&bad).unwrap().build::<QuadExt>().is_err());
    }

    #[test]
    fn finite_dispatch() {
        struct Count;
        impl FieldJob for Count {
            type Output = usize;
            fn run<F: FileField>(self, _: &Ambient) -> usize {
                crate::projgeo::enumerate_points::<F>().map(|v| v.len()).unwrap_or(0)
            }
        }
        assert_eq!(Ambient::Finite(3).dispatch(Count), 13);
        assert_eq!(Ambient::Rational.dispatch(Count), 0);
    }

    #[test]
    fn empty_generator_lists() {
        let text = "[based_space]\nelements = a\nbasepoint = a\ngenerators =\n\n[ambient]\nfield = gf 2\n\n[gamma]\n";
        let file = ScenarioFile::parse(text).unwrap();
        assert_eq!(file.canonical::<Gf<2>>().unwrap(), text);
    }
}
