use std::cmp::Ordering;

use crate::linalg::Mat2;
use crate::poly::Poly;
use crate::scalar::{compare_abs, Place};
use crate::words::{reduced_words, Word};

use super::Spectral;

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Witness<F: Spectral> {
    pub word: Word,
    pub matrix: Mat2<F>,
    /// Eigenvalue of larger absolute value at `place`.
    pub lambda: F::Eig,
    pub place: Place,
}

fn hyperbolic_at<F: Spectral>(m: &Mat2<F>) -> Option<(F::Eig, Place)> {
    let cp = Poly::new(vec![m.det(), -m.trace(), F::one()]);
    let split = F::split(&cp);
    if split.unresolved_degree > 0 {
        return None;
    }
    let eigs: Vec<F::Eig> = split.roots.iter().map(|(v, _)| v.clone()).collect();
    let det = m.det().to_eig();
    let entries: Vec<F> = m.m.iter().flatten().filter(|x| !x.is_zero()).cloned().collect();
    for place in F::relevant_places(&entries, &eigs) {
        for l in &eigs {
            // |λ|² ≠ |det| means the determinant-normalized element has an
            // eigenvalue off the unit circle
            match compare_abs(&(l.clone() * l.clone()), &det, &place) {
                Ok(Ordering::Greater) => return Some((l.clone(), place)),
                Ok(Ordering::Less) => {
                    let other = det.clone() / l.clone();
                    return Some((other, place));
                }
                _ => {}
            }
        }
    }
    None
}

/// Bounded search for an element whose normalized eigenvalues leave the unit
/// circle. Commutators of generator pairs are tried first, then all reduced
/// words by length.
pub fn sl2_hyperbolic_witness<F: Spectral>(ms: &[Mat2<F>], word_bound: usize) -> Option<Sl2Witness<F>> {
    let invs: Vec<Mat2<F>> = ms.iter().map(|m| m.inverse().expect("invertible")).collect();
    let eval = |w: &Word| w.eval(&Mat2::identity(), ms, &invs, |a, b| a * b);
    let mut candidates = Vec::new();
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            candidates.push(Word::commutator(&Word::gen(i), &Word::gen(j)));
        }
    }
    candidates.extend(reduced_words(ms.len(), word_bound));
    for word in candidates {
        let matrix = eval(&word);
        if let Some((lambda, place)) = hyperbolic_at(&matrix) {
            return Some(Sl2Witness { word, matrix, lambda, place });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field, QuadExt, Rational};

    #[test]
    fn examples() {
        let d = Mat2::new([[rat(2, 1), rat(0, 1)], [rat(0, 1), rat(1, 2)]]);
        let w = sl2_hyperbolic_witness(&[d], 3).unwrap();
        assert_eq!(w.word.len(), 1);
        assert_eq!(w.lambda, QuadExt::from_i64(2));

        let rot = Mat2::<Rational>::from_i64([[0, -1], [1, 0]]);
        assert!(sl2_hyperbolic_witness(&[rot], 4).is_none());

        let s = Mat2::<Rational>::from_i64([[1, 1], [0, 1]]);
        let t = Mat2::<Rational>::from_i64([[1, 0], [1, 1]]);
        let w = sl2_hyperbolic_witness(&[s, t], 4).unwrap();
        assert_eq!(w.word, Word::commutator(&Word::gen(0), &Word::gen(1)));
        assert_eq!(w.matrix.trace(), rat(3, 1));
        assert!(w.lambda.to_f64() > 1.0);
    }
}
