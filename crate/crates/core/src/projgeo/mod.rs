//! The projective plane over a field, its lines and collineations, and the
//! chordal metric at a place.

mod chordal;
mod enumerate;
mod line;
mod map;
pub mod p1;
mod point;

use thiserror::Error;

pub use chordal::{chordal_distance, distance_to_line, ChordalContext, Distance, NormKind};
pub use enumerate::{enumerate_points, lines_through, all_lines};
pub use line::{intersect_lines, line_point_incidence, span_line, ProjLine};
pub use map::ProjMap;
pub use point::ProjPoint;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("enumeration requires a finite field")]
    InfiniteField,
    #[error("malformed literal `{0}`")]
    Literal(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Splits `a,b,c` at top-level commas (commas inside brackets or parentheses are kept).
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn strip_brackets(s: &str) -> Option<&str> {
    s.trim().strip_prefix('[')?.strip_suffix(']')
}
