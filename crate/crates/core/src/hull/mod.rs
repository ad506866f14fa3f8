//! Hull membership, emptiness certificates and bounds on the number of hulls.

mod bounds;
mod certificate;
mod cover_check;
mod membership;
mod ncut;
mod profile;
mod sampling;

use thiserror::Error;

pub use bounds::{default_witnesses, hull_bounds, HullBounds};
pub use certificate::{
    emptiness_certificate, DirectionSlab, Emptiness, EmptyCertificate, HullCertificate, InfeasibleSelection,
    NonEmptyCertificate,
};
pub use cover_check::{bounding_radius, halfspace_cover_check, CoverOutcome, HalfSpace};
pub use membership::{graph_membership, membership, min_crossing, GraphMembership, Membership, MembershipTranscript, StratumKind};
pub use ncut::{ncut_classify, NcutReport};
pub use profile::{admissible_offsets, directional_profile, CrossingProfile, IntervalUnion};
pub use sampling::{sample_normals, sampled_min_count, SampledMin};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("point on curve")]
    PointOnCurve,
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("number of trials must be at least 1")]
    InvalidTrials,
    #[error("input has no vertices")]
    EmptyInput,
}
