//! Restricted products over the plane and the wreath group acting on them.

mod based;
mod config;
mod extend;
mod perm;
mod wreath;

use thiserror::Error;

pub use based::BasedSpace;
pub use config::Config;
pub use extend::{extend_config, extend_element, FieldEmbedding};
pub use perm::Perm;
pub use wreath::WreathElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResprodError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("malformed permutation `{0}`")]
    BadPermutation(String),
    #[error("group generated by the permutations exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("projective part does not fix {0}")]
    NotFixed(String),
    #[error("ambient plane does not embed")]
    NotEmbeddable,
}
