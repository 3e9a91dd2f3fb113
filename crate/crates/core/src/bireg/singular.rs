use std::collections::BTreeSet;

use crate::projgeo::ProjPoint;
use crate::resprod::{Config, WreathElement};
use crate::scalar::ExactField;

use super::BiregError;

/// `f(z)_{f(p)} = z_{f(p)}`, evaluated as `g_{h(p)} · z_p = z_{h(p)}`.
pub fn is_biregular<F: ExactField>(f: &WreathElement<F>, p: &ProjPoint<F>, z: &Config<F>) -> bool {
    let hp = f.proj().apply(p);
    f.cofactor_at(&hp).apply(z.get(p)) == z.get(&hp)
}

/// Points over which `f` or `f⁻¹` is singular with respect to `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSet<F> {
    pub forward: BTreeSet<ProjPoint<F>>,
    pub backward: BTreeSet<ProjPoint<F>>,
}

impl<F: ExactField> SingularSet<F> {
    pub fn points(&self) -> BTreeSet<ProjPoint<F>> {
        self.forward.union(&self.backward).cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty() && self.backward.is_empty()
    }
}

/// Scans the finite candidate set outside of which both equations reduce to
/// `x₀ = x₀`.
pub fn singular_set<F: ExactField>(f: &WreathElement<F>, z: &Config<F>) -> SingularSet<F> {
    let h = f.proj();
    let h_inv = h.inverse();
    let f_inv = f.invert();
    let zs: Vec<&ProjPoint<F>> = z.support_points().collect();
    let mut fwd_cands: BTreeSet<ProjPoint<F>> = zs.iter().map(|p| (*p).clone()).collect();
    fwd_cands.extend(zs.iter().map(|p| h_inv.apply(p)));
    fwd_cands.extend(f.support().map(|p| h_inv.apply(p)));
    let mut bwd_cands: BTreeSet<ProjPoint<F>> = zs.iter().map(|p| (*p).clone()).collect();
    bwd_cands.extend(zs.iter().map(|p| h.apply(p)));
    bwd_cands.extend(f.support().cloned());
    SingularSet {
        forward: fwd_cands.into_iter().filter(|p| !is_biregular(f, p, z)).collect(),
        backward: bwd_cands.into_iter().filter(|p| !is_biregular(&f_inv, p, z)).collect(),
    }
}

/// A biregularity claim about `element` over `point` for `config`.
#[derive(Clone, Debug)]
pub struct BiregEvidence<F> {
    pub element: WreathElement<F>,
    pub point: ProjPoint<F>,
    pub config: Config<F>,
    pub biregular: bool,
}

impl<F: ExactField> PartialEq for BiregEvidence<F> {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
            && self.point == other.point
            && self.config == other.config
            && self.biregular == other.biregular
    }
}

impl<F: ExactField> BiregEvidence<F> {
    pub fn evaluate(element: WreathElement<F>, point: ProjPoint<F>, config: Config<F>) -> Self {
        let biregular = is_biregular(&element, &point, &config);
        BiregEvidence { element, point, config, biregular }
    }
}

/// From `f₁` biregular over `p` and `f₂` biregular over `f₁(p)`, concludes that
/// `f₂ f₁` is biregular over `p`. Returns `None` when no conclusion follows.
pub fn compose_biregularity<F: ExactField>(
    first: &BiregEvidence<F>,
    second: &BiregEvidence<F>,
) -> Result<Option<BiregEvidence<F>>, BiregError> {
    if second.point != first.element.proj().apply(&first.point) || second.config != first.config {
        return Err(BiregError::ChainMismatch);
    }
    if !(first.biregular && second.biregular) {
        return Ok(None);
    }
    Ok(Some(BiregEvidence {
        element: second.element.multiply(&first.element),
        point: first.point.clone(),
        config: first.config.clone(),
        biregular: true,
    }))
}

/// From `f` biregular over `p`, concludes that `f⁻¹` is biregular over `f(p)`.
pub fn invert_biregularity<F: ExactField>(e: &BiregEvidence<F>) -> Option<BiregEvidence<F>> {
    e.biregular.then(|| BiregEvidence {
        element: e.element.invert(),
        point: e.element.proj().apply(&e.point),
        config: e.config.clone(),
        biregular: true,
    })
}
