use std::collections::BTreeSet;

use wreathplane::bireg::{finite_orbit_fixed_coords, infinite_orbit_fixed_coords, walk_orbit, OrbitCoords, OrbitStatus};
use wreathplane::format::{Ambient, FieldJob, FileField, ScenarioFile};
use wreathplane::pipeline::{classify_projection, decide_scenario, nsd_constant, DecideOptions, FinalOutcome, Scenario};
use wreathplane::projgeo::{chordal_distance, ChordalContext, ProjPoint};
use wreathplane::resprod::WreathElement;
use wreathplane::scalar::{parse_rational, Field, Place, Rational};
use wreathplane::spectral::{classify_proximality, eig_point, Proximality};

use crate::svg::{self, ChartPoint};
use crate::{parse_suites, ClassifyArgs, CliError, DecideArgs, ElementArgs, NsdArgs, OrbitArgs, Output, TrajectoryArgs, TrajectoryFormat};

type Job = Result<Output, CliError>;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn parse_places(s: Option<&str>) -> Result<Option<Vec<Place>>, CliError> {
    s.map(|s| s.split(',').map(|p| p.trim().parse::<Place>().map_err(input)).collect())
        .transpose()
}

fn element<F: FileField>(file: &ScenarioFile, s: &Scenario<F>, word: Option<&str>) -> Result<(String, WreathElement<F>), CliError> {
    match word {
        Some(w) => {
            let word = s.parse_word(w).ok_or_else(|| input(format!("bad word `{w}`")))?;
            Ok((s.word_name(&word), s.eval(&word)))
        }
        None => file.element(s).map_err(input),
    }
}

fn point<F: FileField>(file: &ScenarioFile, ambient: &Ambient, flag: Option<&str>) -> Result<Option<ProjPoint<F>>, CliError> {
    match flag {
        Some(p) => {
            let pt = ProjPoint::<F>::parse(p).map_err(input)?;
            if pt.coords().iter().any(|x| !x.lies_in(ambient)) {
                return Err(input(format!("{p} does not lie in {ambient}")));
            }
            Ok(Some(pt))
        }
        None => file.point::<F>().map_err(input),
    }
}

pub(crate) struct Classify {
    pub(crate) file: ScenarioFile,
    pub(crate) args: ClassifyArgs,
}

impl FieldJob for Classify {
    type Output = Job;

    fn run<F: FileField>(self, _: &Ambient) -> Job {
        let s = self.file.build::<F>().map_err(input)?;
        let word_bound = self.args.word_bound.or(self.file.options.word_bound).unwrap_or(DecideOptions::default().word_bound);
        let places = parse_places(self.args.places.as_deref())?.or(self.file.options.places.clone());
        let report = classify_projection(&s, word_bound, places).map_err(input)?;
        Ok(Output::ok(report.render(s.names())))
    }
}

pub(crate) struct Decide {
    pub(crate) file: ScenarioFile,
    pub(crate) args: DecideArgs,
}

impl FieldJob for Decide {
    type Output = Job;

    fn run<F: FileField>(self, _: &Ambient) -> Job {
        let s = self.file.build::<F>().map_err(input)?;
        let mut opts = self.file.options.decide_options();
        if let Some(b) = self.args.word_bound {
            opts.word_bound = b;
        }
        if let Some(p) = parse_places(self.args.places.as_deref())? {
            opts.places = Some(p);
        }
        let report = decide_scenario(&s, &opts).map_err(input)?;
        let failed = match &report.outcome {
            FinalOutcome::FixedPointFound { config, .. } if !s.fixes(config) => {
                Some("reported fixed point is not fixed by every generator".to_string())
            }
            _ => None,
        };
        Ok(Output { text: report.render(&s), failed })
    }
}

pub(crate) struct Orbit {
    pub(crate) file: ScenarioFile,
    pub(crate) args: OrbitArgs,
}

const DEFAULT_ORBIT_STEPS: usize = 200;

fn status_line(status: &OrbitStatus) -> String {
    match status {
        OrbitStatus::Periodic(k) => format!("periodic period={k}"),
        OrbitStatus::InfiniteCertified { back, forward } => format!("infinite-certified back={back} forward={forward}"),
        OrbitStatus::Uncertified => "uncertified".into(),
    }
}

impl FieldJob for Orbit {
    type Output = Job;

    fn run<F: FileField>(self, ambient: &Ambient) -> Job {
        let ElementArgs { element: word, point: pflag } = &self.args.element;
        let s = self.file.build::<F>().map_err(input)?;
        let (name, t) = element(&self.file, &s, word.as_deref())?;
        let start = match point::<F>(&self.file, ambient, pflag.as_deref())? {
            Some(p) => p,
            None => t.support().next().cloned().ok_or_else(|| input("no --point given and the element has no support"))?,
        };
        let max_steps = self.args.max_steps.or(self.file.options.max_steps).unwrap_or(DEFAULT_ORBIT_STEPS);
        let bounding: BTreeSet<ProjPoint<F>> = t.support().cloned().collect();
        let walk = walk_orbit(t.proj(), &start, &bounding, max_steps);
        let x0 = s.based_space();
        let mut out = vec![
            format!("element: {name}"),
            format!("start: {}", start.to_literal()),
            format!("status: {}", status_line(&walk.status)),
            format!("window: {}..{}", -(walk.back as i64), walk.forward_len()),
        ];
        for (i, p) in walk.points.iter().enumerate() {
            let n = i as i64 - walk.back as i64;
            let g = t.cofactor_at(p);
            let cof = if g.is_identity() { String::new() } else { format!(" cofactor {}", g.to_cycle_string(x0.names())) };
            out.push(format!("{n} {}{cof}", p.to_literal()));
        }
        let coords = match walk.status {
            OrbitStatus::Periodic(_) => finite_orbit_fixed_coords(&t, &walk.points, s.basepoint()).ok(),
            OrbitStatus::InfiniteCertified { .. } => infinite_orbit_fixed_coords(&t, &walk, s.basepoint()).ok(),
            OrbitStatus::Uncertified => None,
        };
        out.push(match coords {
            Some(OrbitCoords::Coords(c)) => {
                let parts: Vec<String> = c.iter().map(|(p, v)| format!("{} -> {}", p.to_literal(), x0.name(*v))).collect();
                format!("fixed_coords: {{{}}}", parts.join(", "))
            }
            Some(OrbitCoords::NoFixedPoint(reason)) => format!("fixed_coords: none ({reason})"),
            None => "fixed_coords: unknown (orbit not certified)".into(),
        });
        Ok(Output::ok(out.join("\n") + "\n"))
    }
}

pub(crate) struct Nsd {
    pub(crate) file: ScenarioFile,
    pub(crate) args: NsdArgs,
    pub(crate) seed: u64,
}

pub const DEFAULT_EPSILON: (i64, i64) = (1, 4);

impl FieldJob for Nsd {
    type Output = Job;

    fn run<F: FileField>(self, _: &Ambient) -> Job {
        let s = self.file.build::<F>().map_err(input)?;
        let (name, t) = element(&self.file, &s, self.args.element.as_deref())?;
        let opts = &self.file.options;
        let epsilon = match &self.args.epsilon {
            Some(e) => parse_rational(e).map_err(input)?,
            None => opts.epsilon.clone().unwrap_or(Rational::new(DEFAULT_EPSILON.0.into(), DEFAULT_EPSILON.1.into())),
        };
        let place = match &self.args.place {
            Some(p) => p.parse::<Place>().map_err(input)?,
            None => opts.places.as_ref().and_then(|ps| ps.first().copied()).unwrap_or(Place::REAL),
        };
        let samples = self.args.samples.or(opts.nsd_samples).unwrap_or(wreathplane::checks::NSD_SAMPLES);
        let cap = self.args.cap.or(opts.nsd_cap).unwrap_or(wreathplane::checks::NSD_CAP);
        let report = nsd_constant(t.proj(), place, &epsilon, samples, cap, self.seed).map_err(input)?;
        Ok(Output::ok(format!("element: {name}\nseed: {}\n{}", self.seed, report.render())))
    }
}

pub(crate) struct Trajectory {
    pub(crate) file: ScenarioFile,
    pub(crate) args: TrajectoryArgs,
}

impl FieldJob for Trajectory {
    type Output = Job;

    fn run<F: FileField>(self, ambient: &Ambient) -> Job {
        let ElementArgs { element: word, point: pflag } = &self.args.element;
        let s = self.file.build::<F>().map_err(input)?;
        let (_, t) = element(&self.file, &s, word.as_deref())?;
        let start = point::<F>(&self.file, ambient, pflag.as_deref())?
            .ok_or_else(|| input("trajectory needs --point or a `point` option"))?;
        let place = self.args.place.parse::<Place>().map_err(input)?;
        let p_plus = match classify_proximality(t.proj(), place) {
            Proximality::VeryProximal(d) => Some(d.p_plus),
            Proximality::Proximal { p_plus, .. } => Some(p_plus),
            _ => None,
        };
        let ctx = ChordalContext::new(place);
        let mut x = start;
        let mut rows = Vec::new();
        for step in 0..=self.args.steps {
            let dist = p_plus
                .as_ref()
                .and_then(|p| chordal_distance(&eig_point(&x), p, &ctx).ok())
                .map(|d| d.to_f64());
            rows.push((step, x.clone(), dist));
            x = t.proj().apply(&x);
        }
        let text = match self.args.format {
            TrajectoryFormat::Csv => {
                let mut out = String::from("step,x1,x2,x3,dist_to_p_plus\n");
                for (step, p, d) in &rows {
                    let [a, b, c] = p.coords();
                    let d = d.map_or("na".to_string(), |d| format!("{d:.12}"));
                    out.push_str(&format!("{step},{},{},{},{d}\n", a.to_literal(), b.to_literal(), c.to_literal()));
                }
                out
            }
            TrajectoryFormat::Svg => {
                let chart = |v: &[f64; 3]| ChartPoint::from_homogeneous(*v);
                let pts: Vec<ChartPoint> = rows.iter().map(|(_, p, _)| chart(&p.coords().clone().map(|x| x.to_f64()))).collect();
                let target = p_plus.as_ref().map(|p| chart(&p.coords().clone().map(|x| Field::to_f64(&x))));
                svg::render(&pts, target)
            }
        };
        Ok(Output::ok(text))
    }
}

pub(crate) struct Fmt {
    pub(crate) file: ScenarioFile,
}

impl FieldJob for Fmt {
    type Output = Job;

    fn run<F: FileField>(self, _: &Ambient) -> Job {
        self.file.canonical::<F>().map(Output::ok).map_err(input)
    }
}

pub(crate) fn check(name: &str, seed: u64) -> Job {
    let mut text = String::new();
    let mut failed = Vec::new();
    for suite in parse_suites(name)? {
        let report = suite.run(seed);
        if !report.passed() {
            failed.push(suite.name());
        }
        text.push_str(&report.render());
    }
    let failed = (!failed.is_empty()).then(|| format!("suites failed: {}", failed.join(", ")));
    Ok(Output { text, failed })
}
