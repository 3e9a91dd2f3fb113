//! Property suites shared by the command line `check` command and the
//! acceptance tests. Every suite is deterministic for a given seed and
//! reports its case count and each failing case.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bireg::{build_fixed_point, default_horizon, persistent_fibre, walk_orbit, FibreVerdict, FixedPointResult};
use crate::linalg::dot;
use crate::pipeline::{
    brute_force_fixed_point, decide_scenario, line_fibration, nsd_constant, purely_elliptic_check, DecideOptions,
    EllipticVerdict, FinalOutcome, NsdOutcome, Scenario,
};
use crate::projgeo::{chordal_distance, ChordalContext, Distance, ProjMap, ProjPoint};
use crate::random;
use crate::resprod::{BasedSpace, Config, WreathElement};
use crate::scalar::{ExactField, Gf, Place, Rational};
use crate::spectral::{classify_proximality, eig_point, Proximality, Spectral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Metric,
    Algebra,
    Fixed,
    Proximal,
    Fibration,
    Decency,
    Nsd,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Metric, Suite::Algebra, Suite::Fixed, Suite::Proximal, Suite::Fibration, Suite::Decency, Suite::Nsd];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Algebra => "algebra",
            Suite::Fixed => "fixed",
            Suite::Proximal => "proximal",
            Suite::Fibration => "fibration",
            Suite::Decency => "decency",
            Suite::Nsd => "nsd",
        }
    }

    pub fn run(self, seed: u64) -> SuiteReport {
        match self {
            Suite::Metric => metric_suite(seed),
            Suite::Algebra => algebra_suite(seed),
            Suite::Fixed => fixed_suite(seed),
            Suite::Proximal => proximal_suite(seed),
            Suite::Fibration => fibration_suite(seed),
            Suite::Decency => decency_suite(seed),
            Suite::Nsd => nsd_suite(seed),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Counts worth reporting besides pass/fail.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "suite: {}\ncases: {}\nfailures: {}\n",
            self.suite,
            self.cases,
            self.failures.len()
        );
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("failure: {f}\n"));
        }
        out.push_str(&format!("result: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

fn rational_point(rng: &mut ChaCha8Rng, bound: i64) -> ProjPoint<Rational> {
    // mixes integer coordinates with small denominators
    loop {
        let v: [Rational; 3] = std::array::from_fn(|_| {
            let n = rng.gen_range(-bound..=bound);
            let d = rng.gen_range(1..=4);
            Rational::new(n.into(), d.into())
        });
        if let Ok(p) = ProjPoint::new(v) {
            return p;
        }
    }
}

pub const METRIC_TRIPLES: usize = 500;

/// Chordal metric axioms on random rational triples at the real place and
/// at the 2- and 5-adic places.
pub fn metric_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Metric);
    let mut rng = random::rng(seed);
    for place in [Place::REAL, Place::PAdic(2), Place::PAdic(5)] {
        let ctx = ChordalContext::new(place);
        let d = |a: &ProjPoint<Rational>, b: &ProjPoint<Rational>| chordal_distance(a, b, &ctx).expect("rational");
        for i in 0..METRIC_TRIPLES {
            let x = rational_point(&mut rng, 20);
            let y = rational_point(&mut rng, 20);
            // every tenth triple repeats a point to exercise the equality cases
            let z = if i % 10 == 0 { x.clone() } else { rational_point(&mut rng, 20) };
            let (xy, yx, yz, xz) = (d(&x, &y), d(&y, &x), d(&y, &z), d(&x, &z));
            let tag = || format!("{place} {} {} {}", x.to_literal(), y.to_literal(), z.to_literal());
            rep.check(xy == yx, || format!("symmetry {}", tag()));
            rep.check(d(&x, &x).is_zero() && (x == y) == xy.is_zero(), || format!("identity {}", tag()));
            rep.check([&xy, &yz, &xz].iter().all(|e| e.at_most_one()), || format!("bound {}", tag()));
            let tri = Distance::triangle_le(&xz, &xy, &yz) == Some(true);
            let ultra = matches!(place, Place::Real(_)) || Distance::ultrametric_le(&xz, &xy, &yz);
            rep.check(tri && ultra, || format!("triangle {}", tag()));
        }
    }
    rep
}

pub const ALGEBRA_TRIPLES: usize = 200;

fn algebra_family<F: ExactField>(rep: &mut SuiteReport, rng: &mut ChaCha8Rng, family: &str, x0: &BasedSpace, bound: i64) {
    let elem = |rng: &mut ChaCha8Rng| {
        let proj = random::map::<F>(rng, bound);
        random::element(rng, x0, proj, bound, 3)
    };
    let id = WreathElement::<F>::identity(x0.size());
    for _ in 0..ALGEBRA_TRIPLES {
        let (w1, w2, w3) = (elem(rng), elem(rng), elem(rng));
        let x = random::config::<F>(rng, x0, bound, 4);
        let w12 = w1.multiply(&w2);
        let inv = w1.invert();
        let ok = w12.act(&x) == w1.act(&w2.act(&x))
            && id.act(&x) == x
            && inv.act(&w1.act(&x)) == x
            && w1.multiply(&inv) == id
            && inv.multiply(&w1) == id
            && w12.multiply(&w3) == w1.multiply(&w2.multiply(&w3))
            && w1.multiply(&id) == w1
            && w12.is_member(x0)
            && inv.is_member(x0);
        rep.check(ok, || format!("{family}: axioms fail for x = {}", x.to_literal(x0)));
    }
}

/// Group axioms of the wreath group and compatibility of its action, on
/// three scenario families.
pub fn algebra_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Algebra);
    let mut rng = random::rng(seed);
    algebra_family::<Rational>(&mut rep, &mut rng, "rational/S3", &random::symmetric_space(3), 5);
    algebra_family::<Gf<3>>(&mut rep, &mut rng, "gf3/S2", &random::symmetric_space(2), 3);
    algebra_family::<Gf<2>>(&mut rep, &mut rng, "gf2/C4", &random::cyclic_space(4), 1);
    rep
}

pub const FIXED_SCENARIOS: usize = 50;

/// Solutions of `z_{o_n} = g_{o_n}(z_{o_{n-1}})` along a window whose two
/// ends lie outside the support, found by trying every assignment of values
/// to the stretches between consecutive support points.
fn window_solutions<F: ExactField>(t: &WreathElement<F>, window: &[ProjPoint<F>], basepoint: usize) -> Vec<Vec<usize>> {
    let cuts: Vec<usize> = (1..window.len()).filter(|&i| !t.cofactor_at(&window[i]).is_identity()).collect();
    let n = t.degree();
    let segments = cuts.len() + 1;
    let mut out = Vec::new();
    let total = n.pow(segments as u32);
    for code in 0..total {
        let vals: Vec<usize> = (0..segments).map(|k| code / n.pow(k as u32) % n).collect();
        if vals[0] != basepoint || vals[segments - 1] != basepoint {
            continue;
        }
        let ok = cuts.iter().enumerate().all(|(k, &i)| t.cofactor_at(&window[i]).apply(vals[k]) == vals[k + 1]);
        if ok {
            let mut seg = 0;
            let per_point = (0..window.len())
                .map(|i| {
                    if cuts.get(seg) == Some(&i) {
                        seg += 1;
                    }
                    vals[seg]
                })
                .collect();
            out.push(per_point);
        }
    }
    out
}

/// Fixed points assembled orbit by orbit, checked against an exhaustive
/// solve of the orbit recurrence; elements without fixed points are checked
/// against persistent-fibre certificates.
pub fn fixed_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Fixed);
    let mut rng = random::rng(seed);
    let (mut fixed, mut none) = (0, 0);
    for i in 0..FIXED_SCENARIOS {
        let x0 = random::symmetric_space(2 + i % 2);
        let t = random::hyperbolic_element::<Rational>(&mut rng, &x0, 3);
        let bp = x0.basepoint();
        let support: BTreeSet<ProjPoint<Rational>> = t.support().cloned().collect();
        let windows: Vec<_> = support.iter().map(|s| walk_orbit(t.proj(), s, &support, 2000)).collect();
        let tag = || format!("scenario {i}: {} with {}", t.proj().to_literal(), t.cofactor_literal(&x0).join(", "));
        if let Some(w) = windows.iter().find(|w| !w.is_infinite()) {
            rep.check(false, || format!("{}: orbit of {} not certified infinite", tag(), w.start.to_literal()));
            continue;
        }
        let solutions: Vec<Vec<Vec<usize>>> = windows.iter().map(|w| window_solutions(&t, &w.points, bp)).collect();
        let z = Config::<Rational>::basepoint_config(bp);
        let h_inv = t.proj().inverse();
        let horizon = default_horizon(&t, &z);
        let certified = support
            .iter()
            .flat_map(|p| [h_inv.apply(p), p.clone()])
            .any(|p| matches!(persistent_fibre(&t, &p, &z, horizon), Ok(FibreVerdict::Certified { .. })));
        match build_fixed_point(&t, bp) {
            FixedPointResult::Fixed(c) => {
                fixed += 1;
                rep.check(t.act(&c) == c, || format!("{}: not fixed", tag()));
                let agree = windows.iter().zip(&solutions).all(|(w, sols)| {
                    sols.len() == 1 && w.points.iter().zip(&sols[0]).all(|(p, v)| c.get(p) == *v)
                });
                let inside = c.support_points().all(|p| windows.iter().any(|w| w.points.contains(p)));
                rep.check(agree && inside, || format!("{}: disagrees with the recurrence solve", tag()));
                rep.check(!certified, || format!("{}: fixed point despite a persistent fibre", tag()));
            }
            FixedPointResult::NoFixedPoint { .. } => {
                none += 1;
                rep.check(solutions.iter().any(|s| s.is_empty()), || format!("{}: the recurrence has solutions", tag()));
                rep.check(certified, || format!("{}: no persistent fibre certificate", tag()));
            }
            FixedPointResult::Inconclusive(r) => rep.check(false, || format!("{}: inconclusive: {r}", tag())),
        }
    }
    rep.notes.push(format!("{fixed} with fixed points, {none} without"));
    rep
}

/// Hand-derived proximality labels.
pub fn proximal_fixtures() -> Vec<([[i64; 3]; 3], Place, &'static str)> {
    let d = |a: i64, b: i64, c: i64| [[a, 0, 0], [0, b, 0], [0, 0, c]];
    vec![
        (d(4, 2, 1), Place::REAL, "very-proximal"),
        (d(4, 2, 1), Place::PAdic(2), "very-proximal"),
        (d(4, 2, 1), Place::PAdic(3), "not-proximal"),
        (d(2, 1, 1), Place::REAL, "proximal"),
        (d(2, 2, 1), Place::REAL, "not-proximal"),
        (d(1, 1, 1), Place::REAL, "not-proximal"),
        (d(9, 3, 1), Place::PAdic(3), "very-proximal"),
        (d(3, 2, 1), Place::REAL, "very-proximal"),
        (d(3, 2, 1), Place::PAdic(2), "not-proximal"),
        (d(3, 2, 1), Place::PAdic(3), "not-proximal"),
        (d(-4, 2, 1), Place::REAL, "very-proximal"),
        (d(-2, 2, 1), Place::REAL, "not-proximal"),
        ([[2, 1, 0], [1, 1, 0], [0, 0, 1]], Place::REAL, "very-proximal"),
        ([[2, 1, 0], [1, 1, 0], [0, 0, 1]], Place::Real(crate::scalar::Embedding::Minus), "very-proximal"),
        ([[2, 1, 0], [0, 2, 0], [0, 0, 1]], Place::REAL, "not-proximal"),
        ([[1, 1, 0], [0, 1, 0], [0, 0, 4]], Place::REAL, "proximal"),
        (d(1, 2, 4), Place::PAdic(2), "very-proximal"),
        (d(8, 1, 1), Place::PAdic(2), "not-proximal"),
        (d(25, 5, 1), Place::PAdic(5), "very-proximal"),
        (d(6, 3, 1), Place::PAdic(3), "proximal"),
    ]
}

pub const PROXIMAL_STARTS: usize = 100;
pub const PROXIMAL_STEPS: usize = 200;
/// Convergence radius around `p₊`, as `1 / PROXIMAL_TOLERANCE_INV`.
pub const PROXIMAL_TOLERANCE_INV: i64 = 1_000_000;

/// Steps until `t^n(x)` is within `10⁻⁶` of `p₊`, if at most `PROXIMAL_STEPS`.
fn steps_to_attractor<F: Spectral>(t: &ProjMap<F>, x: &ProjPoint<F>, p_plus: &ProjPoint<F::Eig>, place: Place) -> Option<usize> {
    let ctx = ChordalContext::new(place);
    let tol = Rational::new(1.into(), PROXIMAL_TOLERANCE_INV.into());
    let mut y = x.clone();
    for n in 0..=PROXIMAL_STEPS {
        if chordal_distance(&eig_point(&y), p_plus, &ctx).ok()?.lt(&tol) {
            return Some(n);
        }
        y = t.apply(&y);
    }
    None
}

/// Proximality labels on the fixtures, and convergence of power iteration
/// to `p₊` from random rational points off the repelling line.
pub fn proximal_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Proximal);
    let mut rng = random::rng(seed);
    let mut slowest = 0;
    for (m, place, label) in proximal_fixtures() {
        let t = ProjMap::<Rational>::from_i64(m);
        let verdict = classify_proximality(&t, place);
        let tag = format!("{} at {place}", t.to_literal());
        rep.check(verdict.label() == label, || format!("{tag}: {} instead of {label}", verdict.label()));
        let Proximality::VeryProximal(data) = verdict else { continue };
        let mut tried = 0;
        while tried < PROXIMAL_STARTS {
            let x = random::point::<Rational>(&mut rng, 50);
            if dot(eig_point(&x).coords(), data.line_minus.dual()).is_zero() {
                continue;
            }
            tried += 1;
            let steps = steps_to_attractor(&t, &x, &data.p_plus, place);
            if let Some(n) = steps {
                slowest = slowest.max(n);
            }
            rep.check(steps.is_some(), || format!("{tag}: {} does not converge", x.to_literal()));
        }
    }
    rep.notes.push(format!("slowest convergence: {slowest} steps"));
    rep
}

pub const FIBRATION_CONFIGS: usize = 50;

fn fibration_family<F: ExactField>(rep: &mut SuiteReport, rng: &mut ChaCha8Rng, field: &str, scenarios: usize) {
    let x0 = random::symmetric_space(3);
    for i in 0..scenarios {
        let u: ProjPoint<F> = random::point(rng, 1);
        let gens: Vec<(String, WreathElement<F>)> = (0..2)
            .map(|k| {
                let proj = loop {
                    let m = random::map::<F>(rng, 2);
                    if m.fixes(&u) {
                        break m;
                    }
                };
                (["a", "b"][k].to_string(), random::element(rng, &x0, proj, 1, 3))
            })
            .collect();
        let s = Scenario::new(x0.clone(), gens).expect("valid scenario");
        let configs: Vec<Config<F>> = (0..FIBRATION_CONFIGS).map(|_| random::config(rng, &x0, 1, 4)).collect();
        let tag = format!("{field} scenario {i}, u = {}", u.to_literal());
        match line_fibration(&s, &u) {
            Ok(fib) => {
                let c = fib.validate(&s, 2, &configs);
                rep.check(c.bijection, || format!("{tag}: phi is not a bijection"));
                rep.check(c.e0_fixed, || format!("{tag}: some fibre map moves [1:0]"));
                rep.check(c.homomorphism && c.homomorphism_pairs == 16, || format!("{tag}: psi is not a homomorphism"));
                rep.check(c.equivariance && c.equivariance_checks == 17 * FIBRATION_CONFIGS, || {
                    format!("{tag}: equivariance fails")
                });
            }
            Err(e) => rep.check(false, || format!("{tag}: {e}")),
        }
    }
}

/// Line fibrations over GF(2) and GF(3): bijection, homomorphism on all
/// ordered pairs of generators and inverses, equivariance on all words of
/// length at most 2 and random configurations.
pub fn fibration_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Fibration);
    let mut rng = random::rng(seed);
    fibration_family::<Gf<2>>(&mut rep, &mut rng, "gf2", 5);
    fibration_family::<Gf<3>>(&mut rep, &mut rng, "gf3", 5);
    rep
}

pub const DECENCY_SCENARIOS: usize = 40;

fn decency_case<F: Spectral>(rep: &mut SuiteReport, s: &Scenario<F>, tag: &str, tally: &mut [usize; 4]) {
    let opts = DecideOptions::default();
    let oracle = brute_force_fixed_point(s).expect("finite scenario");
    let elliptic = purely_elliptic_check(s, opts.word_bound, opts.closure_cap).expect("finite scenario");
    let report = decide_scenario(s, &opts).expect("finite scenario");
    let found = matches!(report.outcome, FinalOutcome::FixedPointFound { .. });
    let refuted = matches!(report.outcome, FinalOutcome::NotPurelyElliptic { .. });
    let counterexample = matches!(elliptic, EllipticVerdict::Counterexample { .. });
    let exhaustive_yes = matches!(elliptic, EllipticVerdict::Yes { exhaustive: true, .. });

    if let FinalOutcome::FixedPointFound { config, .. } = &report.outcome {
        rep.check(s.fixes(config), || format!("{tag}: reported fixed point is not fixed"));
    }
    rep.check(oracle.is_some() == found, || {
        format!("{tag}: oracle {} but decide says {}", oracle.is_some(), report.outcome.label())
    });
    rep.check(!(counterexample && oracle.is_some()), || format!("{tag}: counterexample word but a fixed point exists"));
    rep.check(!refuted || counterexample, || format!("{tag}: decide refutes but the closure check does not"));
    if s.based_space().is_decent() && exhaustive_yes {
        tally[3] += 1;
        rep.check(oracle.is_some() && !refuted, || format!("{tag}: purely elliptic with decent X0 but no fixed point"));
    }
    tally[match report.outcome {
        FinalOutcome::FixedPointFound { .. } => 0,
        FinalOutcome::NotPurelyElliptic { .. } => 1,
        FinalOutcome::Inconclusive { .. } => 2,
    }] += 1;
}

/// Agreement of the decision pipeline with the brute-force oracles on
/// finite scenarios, and fixed points for purely elliptic groups over decent spaces.
pub fn decency_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Decency);
    let mut rng = random::rng(seed);
    let mut tally = [0usize; 4];
    for i in 0..DECENCY_SCENARIOS {
        if i % 2 == 0 {
            let s = random::finite_scenario::<Gf<2>>(&mut rng);
            decency_case(&mut rep, &s, &format!("gf2 scenario {i}"), &mut tally);
        } else {
            let s = random::finite_scenario::<Gf<3>>(&mut rng);
            decency_case(&mut rep, &s, &format!("gf3 scenario {i}"), &mut tally);
        }
    }
    rep.notes.push(format!(
        "{} fixed point found, {} not purely elliptic, {} inconclusive; decent and purely elliptic {} times",
        tally[0], tally[1], tally[2], tally[3]
    ));
    rep
}

pub const NSD_SAMPLES: usize = 10_000;
pub const NSD_CAP: usize = 500;

/// Uniform neighbourhood constants `N` for `diag(4,2,1)` at the real place
/// for three values of `ε`, and for `diag(q²,q,1)` at the `q`-adic place.
pub fn nsd_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Nsd);
    let t = ProjMap::<Rational>::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
    let mut previous: Option<usize> = None;
    // ε grows along the loop, so N may only stay or drop
    for den in [8, 4, 2] {
        let eps = Rational::new(1.into(), den.into());
        let r = nsd_constant(&t, Place::REAL, &eps, NSD_SAMPLES, NSD_CAP, seed);
        match r {
            Ok(r) => match r.outcome {
                NsdOutcome::Constant(n) => {
                    rep.notes.push(format!("real eps=1/{den}: N = {n} over {} samples", r.samples));
                    rep.check(n <= NSD_CAP, || format!("eps=1/{den}: N = {n} above cap"));
                    rep.check(previous.map_or(true, |p| n <= p), || format!("eps=1/{den}: N = {n} grew"));
                    previous = Some(n);
                }
                NsdOutcome::Failed { sample } => rep.check(false, || format!("eps=1/{den}: failed at {sample}")),
            },
            Err(e) => rep.check(false, || format!("eps=1/{den}: {e}")),
        }
    }
    for q in [2i64, 3] {
        let t = ProjMap::<Rational>::from_i64([[q * q, 0, 0], [0, q, 0], [0, 0, 1]]);
        let eps = Rational::new(1.into(), q.into());
        match nsd_constant(&t, Place::PAdic(q as u64), &eps, NSD_SAMPLES, NSD_CAP, seed) {
            Ok(r) => match r.outcome {
                NsdOutcome::Constant(n) => {
                    rep.notes.push(format!("{q}-adic eps=1/{q}: N = {n} over {} patterns", r.samples));
                    rep.check(true, String::new);
                }
                NsdOutcome::Failed { sample } => rep.check(false, || format!("{q}-adic: failed at {sample}")),
            },
            Err(e) => rep.check(false, || format!("{q}-adic: {e}")),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn window_solver_on_a_swap_pair() {
        // two swaps along one orbit cancel; one alone has no solution
        let x0 = random::symmetric_space(2);
        let h = ProjMap::<Rational>::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
        let swap = x0.generators()[0].clone();
        let (p, q) = (ProjPoint::from_i64([1, 1, 1]), ProjPoint::from_i64([4, 2, 1]));
        let window = vec![ProjPoint::from_i64([1, 2, 4]), p.clone(), q.clone(), ProjPoint::from_i64([16, 4, 1])];
        let both = WreathElement::new(2, [(p.clone(), swap.clone()), (q, swap.clone())], h.clone());
        assert_eq!(window_solutions(&both, &window, 0), vec![vec![0, 1, 0, 0]]);
        let one = WreathElement::new(2, [(p, swap)], h);
        assert!(window_solutions(&one, &window, 0).is_empty());
    }
}
