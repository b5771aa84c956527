use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("support set is empty")]
    EmptySupport,

    #[error("Newton polyhedron does not meet every coordinate axis")]
    NotConvenient,

    #[error("point {0:?} already lies in the Newton polyhedron")]
    PointInPolyhedron(Vec<i64>),

    #[error("point {0:?} has a negative coordinate")]
    NotLattice(Vec<i64>),

    #[error("coordinate {value} exceeds the supported maximum {max}")]
    CoordinateTooLarge { value: i64, max: i64 },

    #[error("expected a point of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),

    #[error("halfspace intersection is empty")]
    EmptyIntersection,

    #[error("halfspace intersection is unbounded")]
    UnboundedIntersection,

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("unit-pyramid predicate disagrees with the Newton numbers at {point:?}: before {before}, after {after}")]
    PredicateMismatch { point: Vec<i64>, before: i64, after: i64 },
}
