use thiserror::Error;

/// Errors raised while constructing geometric objects or dispatching queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector cannot represent a projective point")]
    ZeroVector,

    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,

    #[error("flat basis must be linearly independent and nonempty")]
    DependentBasis,

    #[error("line through two points requires projectively distinct points")]
    CoincidentPoints,

    #[error("response count {k} out of range for dimension {d}")]
    ResponseCountOutOfRange { k: usize, d: usize },

    #[error(
        "unsupported flat dimensions ({hdim1}, {hdim2}): only flats spanned by \
         one or two homogeneous points are handled"
    )]
    UnsupportedFlatDimension { hdim1: usize, hdim2: usize },

    #[error("degenerate flat specification: {0}")]
    DegenerateFlatSpec(String),

    #[error("query requires at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}
