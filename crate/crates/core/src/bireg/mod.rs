//! Biregularity of wreath elements with respect to a configuration, and the
//! fixed-point constructions built on it.

mod fibre;
mod fixed;
mod orbit;
mod singular;

use thiserror::Error;

pub use fibre::{default_horizon, persistent_fibre, FibreVerdict};
pub use fixed::{build_fixed_point, finite_orbit_fixed_coords, infinite_orbit_fixed_coords, FixedPointResult, OrbitCoords};
pub use orbit::{point_height, walk_orbit, OrbitStatus, OrbitWalk};
pub use singular::{compose_biregularity, invert_biregularity, is_biregular, singular_set, BiregEvidence, SingularSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiregError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("evidence chain does not match: second element must be evaluated at the image point")]
    ChainMismatch,
    #[error("orbit walk is not certified infinite")]
    NotInfinite,
    #[error("points do not form a single cycle of the projective part")]
    NotACycle,
}
