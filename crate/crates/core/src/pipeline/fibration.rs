use std::collections::BTreeMap;

use crate::linalg::{Mat2, Vec3};
use crate::projgeo::p1::{P1Map, P1Point};
use crate::projgeo::{enumerate_points, lines_through, span_line, ProjLine, ProjPoint};
use crate::resprod::{Config, Perm, WreathElement};
use crate::scalar::ExactField;
use crate::words::evaluated_words;

use super::{PipelineError, Scenario};

type FibrePoint<F> = (usize, P1Point<F>);

/// The image of a wreath element fixing `u` in the fibred group: a
/// permutation of the pencil, one map of `P¹` per line, the cofactor at `u`
/// and cofactors indexed by (line, fibre point).
#[derive(Clone, Debug)]
pub struct FibredElement<F> {
    pub line_perm: Perm,
    /// `fibre[l]` carries the fibre over the preimage of `l` to the fibre over `l`.
    pub fibre: Vec<P1Map<F>>,
    pub at_u: Perm,
    pub cofactor: BTreeMap<FibrePoint<F>, Perm>,
}

/// A configuration in fibred coordinates: the value at `u` and the
/// non-basepoint values on the fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibredConfig<F> {
    pub at_u: usize,
    pub fibres: BTreeMap<FibrePoint<F>, usize>,
}

impl<F: ExactField> FibredElement<F> {
    fn cofactor_at(&self, x: &FibrePoint<F>) -> Perm {
        self.cofactor.get(x).cloned().unwrap_or_else(|| Perm::identity(self.at_u.degree()))
    }

    fn preimage(&self, (l, y): &FibrePoint<F>) -> FibrePoint<F> {
        let src = self.line_perm.inverse().apply(*l);
        (src, self.fibre[*l].inverse().apply(y))
    }

    fn image(&self, (l, y): &FibrePoint<F>) -> FibrePoint<F> {
        let dst = self.line_perm.apply(*l);
        (dst, self.fibre[dst].apply(y))
    }

    /// `self ∘ other`, with fibre maps `(hh')_l = h_l h'_{h⁻¹(l)}`.
    pub fn multiply(&self, other: &Self) -> Self {
        let line_perm = self.line_perm.compose(&other.line_perm);
        let inv = self.line_perm.inverse();
        let fibre = (0..self.fibre.len())
            .map(|l| self.fibre[l].compose(&other.fibre[inv.apply(l)]))
            .collect();
        let mut keys: Vec<FibrePoint<F>> = self.cofactor.keys().cloned().collect();
        keys.extend(other.cofactor.keys().map(|x| self.image(x)));
        let mut cofactor = BTreeMap::new();
        for x in keys {
            let g = self.cofactor_at(&x).compose(&other.cofactor_at(&self.preimage(&x)));
            if !g.is_identity() {
                cofactor.insert(x, g);
            }
        }
        FibredElement { line_perm, fibre, at_u: self.at_u.compose(&other.at_u), cofactor }
    }

    pub fn act(&self, y: &FibredConfig<F>, basepoint: usize) -> FibredConfig<F> {
        let mut keys: Vec<FibrePoint<F>> = self.cofactor.keys().cloned().collect();
        keys.extend(y.fibres.keys().map(|x| self.image(x)));
        let mut fibres = BTreeMap::new();
        for x in keys {
            let pre = self.preimage(&x);
            let v = self.cofactor_at(&x).apply(*y.fibres.get(&pre).unwrap_or(&basepoint));
            if v != basepoint {
                fibres.insert(x, v);
            }
        }
        FibredConfig { at_u: self.at_u.apply(y.at_u), fibres }
    }

    pub fn fixes_e0(&self) -> bool {
        self.fibre.iter().all(|m| m.apply(&P1Point::e0()) == P1Point::e0())
    }
}

impl<F: ExactField> PartialEq for FibredElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.line_perm == other.line_perm
            && self.fibre == other.fibre
            && self.at_u == other.at_u
            && self.cofactor == other.cofactor
    }
}

/// Outcome of the exhaustive checks on a fibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationCheck {
    pub lines: usize,
    pub points: usize,
    pub bijection: bool,
    pub e0_fixed: bool,
    pub homomorphism_pairs: usize,
    pub homomorphism: bool,
    pub equivariance_checks: usize,
    pub equivariance: bool,
}

impl FibrationCheck {
    pub fn passed(&self) -> bool {
        self.bijection && self.e0_fixed && self.homomorphism && self.equivariance
    }
}

/// The decomposition of the plane minus a common fixed point `u` into the
/// pencil of lines through `u`, each fibre identified with `P¹ ∖ [1:0]` via
/// the basis `(u, b_l)`.
#[derive(Clone, Debug)]
pub struct FibratedScenario<F> {
    pub u: ProjPoint<F>,
    pub lines: Vec<ProjLine<F>>,
    /// `b_l`: the least point of each line other than `u`.
    pub bases: Vec<ProjPoint<F>>,
    pub phi: BTreeMap<ProjPoint<F>, FibrePoint<F>>,
    pub generators: Vec<FibredElement<F>>,
    degree: usize,
    basepoint: usize,
}

/// Coefficients `(α, β)` of `v = α a + β b` for independent `a`, `b`.
fn coefficients<F: ExactField>(a: &Vec3<F>, b: &Vec3<F>, v: &Vec3<F>) -> (F, F) {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
        if !det.is_zero() {
            let alpha = (v[i].clone() * b[j].clone() - v[j].clone() * b[i].clone()) / det.clone();
            let beta = (a[i].clone() * v[j].clone() - a[j].clone() * v[i].clone()) / det;
            return (alpha, beta);
        }
    }
    unreachable!("independent vectors")
}

impl<F: ExactField> FibratedScenario<F> {
    fn line_index(&self, l: &ProjLine<F>) -> usize {
        self.lines.iter().position(|m| m == l).expect("line through u")
    }

    /// `ψ(γ)` for an element fixing `u`.
    pub fn psi(&self, w: &WreathElement<F>) -> FibredElement<F> {
        let h = w.proj();
        let u = self.u.coords();
        let hu = h.apply_vec(u);
        let c = (0..3).find(|&i| !u[i].is_zero()).map(|i| hu[i].clone() / u[i].clone()).expect("nonzero");
        let mut images = vec![0; self.lines.len()];
        let mut fibre = vec![P1Map::identity(); self.lines.len()];
        for (src, line) in self.lines.iter().enumerate() {
            let dst = self.line_index(&h.apply_line(line));
            images[src] = dst;
            let hb = h.apply_vec(self.bases[src].coords());
            let (gamma, delta) = coefficients(u, self.bases[dst].coords(), &hb);
            fibre[dst] = P1Map::new(Mat2::new([[c.clone(), gamma], [F::zero(), delta]])).expect("invertible");
        }
        let cofactor = w
            .cofactor()
            .filter(|(p, _)| **p != self.u)
            .map(|(p, g)| (self.phi[p].clone(), g.clone()))
            .collect();
        FibredElement {
            line_perm: Perm::from_images(images).expect("bijection of the pencil"),
            fibre,
            at_u: w.cofactor_at(&self.u),
            cofactor,
        }
    }

    pub fn phi_config(&self, z: &Config<F>) -> FibredConfig<F> {
        FibredConfig {
            at_u: z.get(&self.u),
            fibres: z.support().filter(|(p, _)| **p != self.u).map(|(p, v)| (self.phi[p].clone(), *v)).collect(),
        }
    }

    pub fn identity(&self) -> FibredElement<F> {
        FibredElement {
            line_perm: Perm::identity(self.lines.len()),
            fibre: vec![P1Map::identity(); self.lines.len()],
            at_u: Perm::identity(self.degree),
            cofactor: BTreeMap::new(),
        }
    }

    /// Exhaustive checks: `φ` is a bijection onto the fibres minus `[1:0]`,
    /// every fibre map fixes `[1:0]`, `ψ` respects products of all ordered
    /// pairs of generators and inverses, and `φ(γx) = ψ(γ)φ(x)` for every
    /// word of length at most `word_len` and every sample configuration.
    pub fn validate(&self, s: &Scenario<F>, word_len: usize, configs: &[Config<F>]) -> FibrationCheck {
        let points = enumerate_points::<F>().expect("finite");
        let mut images: Vec<&FibrePoint<F>> = self.phi.values().collect();
        images.sort();
        images.dedup();
        let q = points.len() - 1;
        let per_line = q / self.lines.len();
        let bijection = self.phi.len() == q
            && images.len() == q
            && images.iter().all(|(_, y)| *y != P1Point::e0())
            && (0..self.lines.len()).all(|l| images.iter().filter(|(m, _)| *m == l).count() == per_line);

        let mut alphabet: Vec<WreathElement<F>> = Vec::new();
        for g in s.generators() {
            alphabet.push(g.clone());
            alphabet.push(g.invert());
        }
        let psis: Vec<FibredElement<F>> = alphabet.iter().map(|g| self.psi(g)).collect();
        let e0_fixed = psis.iter().all(|p| p.fixes_e0());
        let mut homomorphism_pairs = 0;
        let mut homomorphism = true;
        for (a, pa) in alphabet.iter().zip(&psis) {
            for (b, pb) in alphabet.iter().zip(&psis) {
                homomorphism_pairs += 1;
                homomorphism &= self.psi(&a.multiply(b)) == pa.multiply(pb);
            }
        }

        let gens_psi: Vec<FibredElement<F>> = s.generators().iter().map(|g| self.psi(g)).collect();
        let invs_psi: Vec<FibredElement<F>> = gens_psi.iter().map(|g| self.psi_inverse(g)).collect();
        let fibred_words = evaluated_words(&gens_psi, &invs_psi, &self.identity(), word_len, |a, b| a.multiply(b));
        let mut words = vec![(s.identity(), self.identity())];
        words.extend(s.words(word_len).into_iter().zip(fibred_words).map(|((_, w), (_, f))| (w, f)));
        let mut equivariance_checks = 0;
        let mut equivariance = true;
        for (w, fw) in &words {
            for x in configs {
                equivariance_checks += 1;
                equivariance &= self.phi_config(&w.act(x)) == fw.act(&self.phi_config(x), self.basepoint);
            }
        }
        FibrationCheck {
            lines: self.lines.len(),
            points: points.len(),
            bijection,
            e0_fixed,
            homomorphism_pairs,
            homomorphism,
            equivariance_checks,
            equivariance,
        }
    }

    fn psi_inverse(&self, g: &FibredElement<F>) -> FibredElement<F> {
        let line_perm = g.line_perm.inverse();
        let fibre = (0..g.fibre.len()).map(|l| g.fibre[g.line_perm.apply(l)].inverse()).collect();
        let cofactor = g.cofactor.iter().map(|(x, p)| (g.preimage(x), p.inverse())).collect();
        FibredElement { line_perm, fibre, at_u: g.at_u.inverse(), cofactor }
    }
}

/// Builds the fibration of a finite scenario at a point fixed by every generator.
pub fn line_fibration<F: ExactField>(s: &Scenario<F>, u: &ProjPoint<F>) -> Result<FibratedScenario<F>, PipelineError> {
    let points = enumerate_points::<F>().map_err(|_| PipelineError::InfiniteAmbient)?;
    for (name, g) in s.names().iter().zip(s.generators()) {
        if !g.proj().fixes(u) {
            return Err(PipelineError::PointNotFixed(name.clone()));
        }
    }
    let lines = lines_through(u)?;
    let bases: Vec<ProjPoint<F>> = lines
        .iter()
        .map(|l| points.iter().find(|p| *p != u && l.contains(p)).expect("a line has two points").clone())
        .collect();
    let mut phi = BTreeMap::new();
    for x in points.iter().filter(|p| *p != u) {
        let l = span_line(u, x)?;
        let idx = lines.iter().position(|m| *m == l).expect("line through u");
        let (alpha, beta) = coefficients(u.coords(), bases[idx].coords(), x.coords());
        phi.insert(x.clone(), (idx, P1Point::new([alpha, beta])?));
    }
    let mut fib = FibratedScenario {
        u: u.clone(),
        lines,
        bases,
        phi,
        generators: Vec::new(),
        degree: s.based_space().size(),
        basepoint: s.basepoint(),
    };
    fib.generators = s.generators().iter().map(|g| fib.psi(g)).collect();
    Ok(fib)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::ProjMap;
    use crate::resprod::BasedSpace;
    use crate::scalar::{Gf, Rational};

    fn x0() -> BasedSpace {
        BasedSpace::parse(&["a", "b", "c"], "a", &["(a b c)"]).unwrap()
    }

    #[test]
    fn gf2_pencil_has_three_blocks_of_two() {
        let s = Scenario::<Gf<2>>::new(x0(), vec![]).unwrap();
        let fib = line_fibration(&s, &ProjPoint::from_i64([1, 0, 0])).unwrap();
        assert_eq!(fib.lines.len(), 3);
        assert_eq!(fib.phi.len(), 6);
        let check = fib.validate(&s, 2, &[Config::basepoint_config(0)]);
        assert!(check.bijection);
        let id = WreathElement::identity(3);
        assert_eq!(fib.psi(&id), fib.identity());
    }

    #[test]
    fn gf3_generators_fixing_u() {
        let u = ProjPoint::<Gf<3>>::from_i64([1, 0, 0]);
        let c = Perm::from_images(vec![1, 2, 0]).unwrap();
        let a = WreathElement::new(
            3,
            [(ProjPoint::from_i64([0, 1, 0]), c.clone()), (u.clone(), c.inverse())],
            ProjMap::from_i64([[1, 1, 2], [0, 2, 1], [0, 0, 1]]),
        );
        let b = WreathElement::new(
            3,
            [(ProjPoint::from_i64([1, 1, 1]), c.clone())],
            ProjMap::from_i64([[2, 0, 1], [0, 1, 0], [0, 1, 1]]),
        );
        let s = Scenario::new(x0(), vec![("a".into(), a), ("b".into(), b)]).unwrap();
        let fib = line_fibration(&s, &u).unwrap();
        let configs = vec![
            Config::basepoint_config(0),
            Config::from_entries(0, [(ProjPoint::from_i64([0, 1, 1]), 2), (u.clone(), 1)]),
        ];
        let check = fib.validate(&s, 2, &configs);
        assert!(check.passed(), "{check:?}");
        assert_eq!(check.homomorphism_pairs, 16);
    }

    #[test]
    fn rejections() {
        let s = Scenario::<Gf<2>>::new(
            x0(),
            vec![("t".into(), WreathElement::pure(3, ProjMap::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]])))],
        )
        .unwrap();
        assert!(matches!(line_fibration(&s, &ProjPoint::from_i64([1, 0, 0])), Err(PipelineError::PointNotFixed(_))));
        let r = Scenario::<Rational>::new(x0(), vec![]).unwrap();
        assert!(matches!(line_fibration(&r, &ProjPoint::from_i64([1, 0, 0])), Err(PipelineError::InfiniteAmbient)));
    }
}
