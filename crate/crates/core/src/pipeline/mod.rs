//! The decision pipeline: classification of the projective part, witness
//! searches, the line fibration over finite planes and exhaustive oracles.

mod adjust;
mod classify;
mod decide;
mod fibration;
mod finite;
mod nsd;
mod scenario;
mod witness;

use thiserror::Error;

use crate::bireg::BiregError;
use crate::projgeo::GeometryError;
use crate::resprod::ResprodError;
use crate::scalar::ScalarError;

pub use adjust::{adjust_fixed_point, exceptional_set_contains, AdjustOutcome};
pub use classify::{classify_projection, ClassificationReport, Outcome};
pub use decide::{decide_scenario, DecideOptions, FinalOutcome, FinalReport};
pub use fibration::{line_fibration, FibratedScenario, FibredElement, FibrationCheck};
pub use finite::{brute_force_fixed_point, count_fixed_points, purely_elliptic_check, EllipticVerdict};
pub use nsd::{nsd_constant, NsdOutcome, NsdReport};
pub use scenario::Scenario;
pub use witness::{search_persistent_fibre_word, FibreWitness, Template, TemplateBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("the ambient plane is infinite")]
    InfiniteAmbient,
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("generator {0} does not fix the chosen point")]
    PointNotFixed(String),
    #[error("the map is not very proximal at {0}")]
    NotVeryProximal(String),
    #[error("epsilon must lie strictly between 0 and 1")]
    BadEpsilon,
    #[error("configuration is not fixed by the given element")]
    ConfigNotFixed,
    #[error("point lies in the exceptional set")]
    PointInExceptionalSet,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Resprod(#[from] ResprodError),
    #[error(transparent)]
    Bireg(#[from] BiregError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
