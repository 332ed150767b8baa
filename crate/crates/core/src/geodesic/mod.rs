//! Paths and minimal geodesics in the total Grassmannian, and
//! between-point predicates.

pub mod between;
pub mod path;

pub use between::{
    is_between_dfs, is_between_dg, line_between_construct, lift_between, segment_exists_dfs, BetweenCase,
};
pub use path::{
    grassmannian_geodesic, intrinsic_distance, minimal_geodesic, null_path, type1_path, type2_path, EventKind,
    Path, PathEvent, PathKind, PathPiece, RotationLeg, Topology,
};
