//! Exact computations for wreath-type groups acting on restricted products
//! indexed by a projective plane.

pub mod bireg;
pub mod checks;
pub mod format;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod projgeo;
pub mod random;
pub mod resprod;
pub mod scalar;
pub mod spectral;
pub mod words;

pub use scalar::{Gf, QuadExt, Rational};
