//! Simplicial cones, chamber decompositions, galleries, walls, arrangement
//! recognition, and ray reduction. All decisions are exact.

mod arrangement;
mod cone;
mod decomposition;

pub use arrangement::{
    chambers_of_arrangement, hyperplane_normal, ray_reduction, recognize_arrangement,
    row_ops_to_unit, Arrangement, RecognitionReport,
};
pub use cone::{shared_facet, Membership, SimplicialCone, Wall};
pub use decomposition::{ChamberDecomposition, OrientedWall, VerificationReport};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector cannot span a ray")]
    ZeroRay,
    #[error("cone generators are linearly dependent")]
    DegenerateCone,
    #[error("duplicate generator ray")]
    DuplicateGenerator,
    #[error("unknown chamber label: {0}")]
    UnknownLabel(String),
    #[error("duplicate chamber label: {0}")]
    DuplicateLabel(String),
    #[error("verify first: decomposition has violations: {0}")]
    VerifyFirst(String),
    #[error("not an extremal ray of the decomposition")]
    NotExtremalRay,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("dual graph is disconnected")]
    DisconnectedDualGraph,
    #[error("reference straddles wall")]
    ReferenceStraddlesWall,
    #[error("wall has no recorded sides")]
    WallWithoutSides,
    #[error("chambers {0} and {1} are not neighbours")]
    NotNeighbours(String, String),
}
