use gaugeloc_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad complex specification: {0}")]
    BadSpec(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("cochains live on different complexes")]
    ComplexMismatch,
    #[error("cochain is nonzero on collar cell {cell}")]
    SupportLeak { cell: String },
    #[error("bad time profile: {0}")]
    BadProfile(String),
    #[error("time-coupling block singular at slice {slice} ({block})")]
    NonHyperbolic { slice: usize, block: String },
    #[error("source is nonzero within the time margin at cell {cell}")]
    MarginViolation { cell: String },
    #[error("propagated field reaches the spatial boundary at cell {cell}; enlarge the window or shrink the source")]
    ShadowOverflow { cell: String },
    #[error("degree-1 integer cohomology has torsion (Smith factor {factor})")]
    TorsionDetected { factor: String },
    #[error("causal shadows of the two regions intersect")]
    ShadowsIntersect,
    #[error("time window too thin: {0}")]
    WindowTooThin(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, Error>;
