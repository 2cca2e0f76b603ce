use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("weight space mismatch: expected `{expected}`, got `{got}`")]
    SpaceMismatch { expected: String, got: String },

    #[error("not a finite-type Cartan matrix: {0}")]
    NonFiniteCartan(String),

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("word of length {0} exceeds the configured degree cap {1}")]
    DegreeCap(usize, usize),

    #[error("degenerate bilinear form: {0}")]
    DegenerateForm(String),

    #[error("catalog invariant `{identity}` violated: {detail}")]
    CatalogInvalid { identity: String, detail: String },

    #[error("unknown group `{0}` (built-ins: SL2R, Sp4R, SL2C)")]
    UnknownGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("catalog schema error at {path}: {detail}")]
    Schema { path: String, detail: String },

    #[error("no matched class within the window (norm bound too small): {0}")]
    WindowTooSmall(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
