use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("interior point violates constraint {index} (slack {slack:e})")]
    InfeasibleInterior { index: usize, slack: f64 },
    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),
    #[error("basis vectors are linearly dependent (|det| = {0:e})")]
    SingularBasis(f64),
    #[error("spheres overlap: shortest distance {0} < 2")]
    OverlappingSpheres(f64),
    #[error("tetrahedron edge {0} < 2")]
    EdgeTooShort(f64),
    #[error("vertex sphere crosses the opposite face (height {0} < 1)")]
    HeightTooShort(f64),
    #[error("expected a positive value, got {0}")]
    NonPositive(f64),
    #[error("at least 10000 samples are required, got {0}")]
    TooFewSamples(u64),
    #[error("center is not strictly inside the cell")]
    CenterOutside,
}
