use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Mat3, Vec3};
use crate::projgeo::{chordal_distance, distance_to_line, ChordalContext, ProjLine, ProjMap, ProjPoint};
use crate::scalar::{Field, Literal, Place, Rational};
use crate::spectral::{classify_proximality, eig_map, AttractorData, Proximality, Spectral};

use super::PipelineError;

/// Largest absolute coordinate of the random grid.
const GRID: i64 = 50;
/// Valuation window of the p-adic patterns.
const PATTERN_RADIUS: i64 = 4;
const ADVERSARIAL_DEPTH: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NsdOutcome {
    Constant(usize),
    /// Some sample fails at every `N ≤ cap`; the sample failing at `cap` is kept.
    Failed { sample: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsdReport {
    pub outcome: NsdOutcome,
    pub place: Place,
    pub epsilon: Rational,
    pub samples: usize,
    /// Samples outside `N_ε(P₋)` and outside `N_ε(P₊)` respectively.
    pub forward_domain: usize,
    pub backward_domain: usize,
    pub cap: usize,
}

impl NsdReport {
    pub fn render(&self) -> String {
        let outcome = match &self.outcome {
            NsdOutcome::Constant(n) => format!("nsd: N = {n}"),
            NsdOutcome::Failed { sample } => format!("nsd: failed up to cap, sample {sample}"),
        };
        format!(
            "{outcome}\nplace: {}\nepsilon: {}\nsamples: {} (forward domain {}, backward domain {})\ncap: {}\n",
            self.place,
            self.epsilon.to_literal(),
            self.samples,
            self.forward_domain,
            self.backward_domain,
            self.cap
        )
    }
}

fn combine<E: Field>(coeffs: &[E; 3], basis: [&Vec3<E>; 3]) -> Vec3<E> {
    std::array::from_fn(|j| {
        (0..3).fold(E::zero(), |acc, i| acc + coeffs[i].clone() * basis[i][j].clone())
    })
}

fn power_of(q: u64, e: i64) -> Rational {
    let p = num_traits::pow(Rational::from_integer(BigInt::from(q)), e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        Rational::one() / p
    }
}

/// The deterministic sample set. Real places: adversarial points at
/// geometrically shrinking offsets from both exceptional lines, then a seeded
/// integer grid. p-adic places: every valuation pattern in a window, written
/// in the eigenbasis.
fn samples<F: Spectral>(data: &AttractorData<F::Eig>, count: usize, seed: u64) -> Vec<ProjPoint<F::Eig>> {
    let mut out = Vec::new();
    let from_rat = |r: Rational| F::from_rational(&r).expect("rational").to_eig();
    let (pp, pm, pn) = (data.p_plus.coords(), data.p_mid.coords(), data.p_minus.coords());
    match data.place {
        Place::PAdic(q) => {
            let range: Vec<Option<i64>> =
                std::iter::once(None).chain((-PATTERN_RADIUS..=PATTERN_RADIUS).map(Some)).collect();
            for a in &range {
                for b in &range {
                    for c in &range {
                        let coeff = [a, b, c].map(|v| match v {
                            None => F::Eig::zero(),
                            Some(e) => from_rat(power_of(q, *e)),
                        });
                        if let Ok(p) = ProjPoint::new(combine(&coeff, [pp, pm, pn])) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        Place::Real(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 1..=ADVERSARIAL_DEPTH {
                let delta = power_of(2, -(k as i64));
                for (s, r) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
                    let (s, r) = (from_rat(Rational::from_integer(s.into())), from_rat(Rational::from_integer(r.into())));
                    let d = from_rat(delta.clone());
                    for coeff in [[d.clone(), s.clone(), r.clone()], [r.clone(), s.clone(), d.clone()]] {
                        if let Ok(p) = ProjPoint::new(combine(&coeff, [pp, pm, pn])) {
                            out.push(p);
                        }
                    }
                }
            }
            while out.len() < count {
                let v: Vec3<F::Eig> = std::array::from_fn(|_| F::from_i64(rng.gen_range(-GRID..=GRID)).to_eig());
                if let Ok(p) = ProjPoint::new(v) {
                    out.push(p);
                }
            }
            out.truncate(count);
        }
    }
    out
}

fn step<E: Field + Ord>(m: &Mat3<E>, xs: &mut [ProjPoint<E>]) {
    for x in xs.iter_mut() {
        *x = ProjPoint::new(m.mul_vec(x.coords())).expect("invertible");
    }
}

/// First sample not within `ε` of `target`, rendered.
fn first_outside<E>(xs: &[ProjPoint<E>], target: &ProjPoint<E>, eps: &Rational, ctx: &ChordalContext) -> Result<Option<String>, PipelineError>
where
    E: crate::scalar::ExactField + crate::scalar::Valued,
{
    for x in xs {
        if !chordal_distance(x, target, ctx)?.lt(eps) {
            return Ok(Some(x.to_literal()));
        }
    }
    Ok(None)
}

fn outside_line<E>(xs: Vec<ProjPoint<E>>, l: &ProjLine<E>, eps: &Rational, ctx: &ChordalContext) -> Result<Vec<ProjPoint<E>>, PipelineError>
where
    E: crate::scalar::ExactField + crate::scalar::Valued,
{
    let mut out = Vec::new();
    for x in xs {
        if !distance_to_line(&x, l, ctx)?.lt(eps) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Smallest `N ≤ cap` such that `t^N` sends every sample outside `N_ε(P₋)`
/// into `B_ε(p₊)` and `t^{-N}` sends every sample outside `N_ε(P₊)` into
/// `B_ε(p₋)`. All comparisons with `ε` are exact. The sample set does not
/// depend on `ε`, so `N` can only shrink as `ε` grows.
pub fn nsd_constant<F: Spectral>(
    t: &ProjMap<F>,
    place: Place,
    epsilon: &Rational,
    sample_count: usize,
    cap: usize,
    seed: u64,
) -> Result<NsdReport, PipelineError> {
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(PipelineError::BadEpsilon);
    }
    let data = match classify_proximality(t, place) {
        Proximality::VeryProximal(d) => d,
        _ => return Err(PipelineError::NotVeryProximal(place.to_string())),
    };
    let ctx = ChordalContext::new(place);
    let all = samples::<F>(&data, sample_count, seed);
    let total = all.len();
    let mut fwd = outside_line(all.clone(), &data.line_minus, epsilon, &ctx)?;
    let mut bwd = outside_line(all, &data.line_plus, epsilon, &ctx)?;
    let (forward_domain, backward_domain) = (fwd.len(), bwd.len());
    let em = eig_map(t);
    let m = em.lift().clone();
    let m_inv = em.inverse().lift().clone();
    let mut outcome = NsdOutcome::Failed { sample: String::new() };
    for n in 1..=cap {
        step(&m, &mut fwd);
        step(&m_inv, &mut bwd);
        let bad = match first_outside(&fwd, &data.p_plus, epsilon, &ctx)? {
            Some(s) => Some(s),
            None => first_outside(&bwd, &data.p_minus, epsilon, &ctx)?,
        };
        match bad {
            None => {
                outcome = NsdOutcome::Constant(n);
                break;
            }
            Some(sample) => outcome = NsdOutcome::Failed { sample },
        }
    }
    Ok(NsdReport {
        outcome,
        place,
        epsilon: epsilon.clone(),
        samples: total,
        forward_domain,
        backward_domain,
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn diag(a: i64, b: i64, c: i64) -> ProjMap<Rational> {
        ProjMap::from_i64([[a, 0, 0], [0, b, 0], [0, 0, c]])
    }

    #[test]
    fn real_constants_shrink_as_epsilon_grows() {
        let t = diag(4, 2, 1);
        let mut last = usize::MAX;
        for eps in [rat(1, 8), rat(1, 4), rat(1, 2)] {
            let r = nsd_constant(&t, Place::REAL, &eps, 300, 500, 0).unwrap();
            let NsdOutcome::Constant(n) = r.outcome else { panic!("{r:?}") };
            assert!(n <= last);
            last = n;
        }
    }

    #[test]
    fn padic_patterns() {
        for q in [2i64, 3] {
            let t = diag(q * q, q, 1);
            let r = nsd_constant(&t, Place::PAdic(q as u64), &rat(1, q), 0, 500, 0).unwrap();
            assert!(matches!(r.outcome, NsdOutcome::Constant(_)), "{r:?}");
            assert_eq!(r.samples, 9 * 9 * 9 + 3 * 9 * 9 + 3 * 9 + 0);
        }
    }

    #[test]
    fn preconditions() {
        let t = diag(4, 2, 1);
        assert_eq!(nsd_constant(&t, Place::REAL, &rat(1, 1), 10, 10, 0), Err(PipelineError::BadEpsilon));
        assert!(matches!(
            nsd_constant(&diag(1, 1, 2), Place::REAL, &rat(1, 4), 10, 10, 0),
            Err(PipelineError::NotVeryProximal(_))
        ));
    }
}
