//! Asymmetric distances, angles and minimal geodesics between linear
//! subspaces of possibly different dimensions in `ℝⁿ` or `ℂⁿ`.
//!
//! Every quantity is a function of the principal angles between two
//! subspaces, and most of them are available through more than one
//! independent computation route so the routes can check each other:
//!
//! * [`principal`] computes principal angles and aligned principal bases.
//! * [`metrics`] holds the nine asymmetric metrics, their diameters,
//!   symmetrizations and a catalog of older (mostly symmetric) distances.
//! * [`exterior`] implements the exterior algebra: wedge, inner product,
//!   contraction and projection of multivectors.
//! * [`angle`] computes the asymmetric angle `Θ(V, W)` by five routes.
//! * [`geodesic`] builds structured paths (rotation legs plus dimension
//!   jumps) and between-point predicates.
//! * [`harness`] generates random subspaces and runs property suites.
//!
//! ```
//! use subspace_geometry::{metrics::{asym_distance, MetricKind}, Subspace};
//!
//! let line = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0]]).unwrap();
//! let plane = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
//! assert_eq!(asym_distance(MetricKind::FubiniStudy, &line, &plane).unwrap(), 0.0);
//! assert_eq!(asym_distance(MetricKind::FubiniStudy, &plane, &line).unwrap(), std::f64::consts::FRAC_PI_2);
//! ```

pub mod angle;
pub mod error;
pub mod exterior;
pub mod geodesic;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod principal;
pub mod subspace;
pub mod worked_examples;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use subspace::{FieldTag, Subspace, ToleranceProfile};
