use thiserror::Error;

use crate::subspace::FieldTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("scalar field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("input contains a non-finite entry")]
    NonFinite,

    #[error("input is rank deficient: {0}")]
    RankDeficient(String),

    #[error("columns are not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("ambient dimension {0} exceeds the exterior algebra limit of 32")]
    RepresentationLimit(usize),

    #[error("metric {0} is not supported here: {1}")]
    UnsupportedMetric(&'static str, &'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}
