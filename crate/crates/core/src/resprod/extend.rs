use crate::linalg::Mat3;
use crate::projgeo::{ProjMap, ProjPoint};
use crate::scalar::{ExactField, QuadExt, Rational};

use super::{Config, ResprodError, WreathElement};

/// A field embedding `F → K`, used to enlarge the indexing plane.
pub trait FieldEmbedding<K> {
    fn embed(&self) -> K;
}

impl<F: ExactField> FieldEmbedding<F> for F {
    fn embed(&self) -> F {
        self.clone()
    }
}

impl FieldEmbedding<QuadExt> for Rational {
    fn embed(&self) -> QuadExt {
        QuadExt::rational(self.clone())
    }
}

fn embed_point<F: ExactField + FieldEmbedding<K>, K: ExactField>(p: &ProjPoint<F>) -> Result<ProjPoint<K>, ResprodError> {
    ProjPoint::new(p.coords().each_ref().map(|x| x.embed())).map_err(|_| ResprodError::NotEmbeddable)
}

/// The same configuration over a larger plane, with basepoint coordinates at
/// every new point.
pub fn extend_config<F, K>(x: &Config<F>) -> Result<Config<K>, ResprodError>
where
    F: ExactField + FieldEmbedding<K>,
    K: ExactField,
{
    let mut out = Config::basepoint_config(x.basepoint());
    for (p, &v) in x.support() {
        out.set(embed_point(p)?, v);
    }
    Ok(out)
}

pub fn extend_element<F, K>(w: &WreathElement<F>) -> Result<WreathElement<K>, ResprodError>
where
    F: ExactField + FieldEmbedding<K>,
    K: ExactField,
{
    let m = w.proj().lift();
    let lifted: Mat3<K> = Mat3::new(m.m.each_ref().map(|r| r.each_ref().map(|x| x.embed())));
    let proj = ProjMap::new(lifted).map_err(|_| ResprodError::NotEmbeddable)?;
    let cof = w
        .cofactor()
        .map(|(p, g)| Ok((embed_point(p)?, g.clone())))
        .collect::<Result<Vec<_>, ResprodError>>()?;
    Ok(WreathElement::new(w.degree(), cof, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resprod::Perm;

    #[test]
    fn extension_preserves_support() {
        let x: Config<Rational> = Config::basepoint_config(0);
        let y: Config<QuadExt> = extend_config(&x).unwrap();
        assert!(y.is_basepoint());
        let p = ProjPoint::<Rational>::from_i64([1, 2, 3]);
        let x = Config::from_entries(0, [(p, 1)]);
        let y: Config<QuadExt> = extend_config(&x).unwrap();
        assert_eq!(y.support_len(), 1);
        let w = WreathElement::new(
            2,
            [(ProjPoint::from_i64([0, 1, 0]), Perm::from_images(vec![1, 0]).unwrap())],
            ProjMap::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        );
        let we: WreathElement<QuadExt> = extend_element(&w).unwrap();
        assert_eq!(extend_config::<_, QuadExt>(&w.act(&x)).unwrap(), we.act(&y));
    }
}
