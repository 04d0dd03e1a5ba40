use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("inconsistent dimensions: {0}")]
    Dimension(String),

    #[error("non-integer charge entry at row {row}, column {col}")]
    NonIntegerCharge { row: usize, col: usize },

    #[error("non-minimal generating set: {smaller} is contained in {larger}")]
    NonMinimalGenerators { smaller: VertexSet, larger: VertexSet },

    #[error("invalid fan data: {0}")]
    InvalidFan(String),

    #[error("empty list of maximal cones")]
    EmptyConeList,

    #[error("model has no maximal cone data")]
    MissingFan,

    #[error("resource limit exceeded: {what} is {actual}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("projected boundary not a complex (chain degree {degree})")]
    NotAComplex { degree: isize },

    #[error("degree {0} is not in the degree set")]
    DegreeNotPresent(VertexSet),

    #[error("neg-group for {sigma} is infinite")]
    InfiniteGroup { sigma: VertexSet },

    #[error(
        "non-finite cohomology: input fan likely not complete \
         (alpha {alpha:?}, degree {degree})"
    )]
    NonFinite { alpha: Vec<i64>, degree: VertexSet },

    #[error("cohomological degree {index} outside 0..={dimension}")]
    DegreeOutOfRange { index: usize, dimension: usize },
}
