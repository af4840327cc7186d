use alloc::string::String;

/// Errors raised anywhere in the core pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a squarefree integer greater than 1")]
    InvalidRadicand(i64),
    #[error("discriminant {0} is not a positive non-square")]
    InvalidDiscriminant(i64),
    #[error("form ({0}, {1}, {2}) is not reduced")]
    NotReduced(i64, i64, i64),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("automorph parity failure for form ({0}, {1}, {2})")]
    AutomorphParity(i64, i64, i64),
    #[error("matrix is not hyperbolic (|trace| = {0})")]
    NotHyperbolic(i128),
    #[error("word represents an element of finite order")]
    FiniteOrder,
    #[error("empty word")]
    EmptyWord,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("duplicate cyclic word {0}")]
    DuplicateWord(String),
    #[error("word {0} is a boundary orbit of the template")]
    BoundaryWord(String),
    #[error("word {0} is not primitive")]
    NotPrimitive(String),
    #[error("malformed DT code: {0}")]
    DtSyntax(String),
    #[error("DT code cannot be realized: {0}")]
    DtUnrealizable(String),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("triangulation failure: {0}")]
    Triangulation(String),
    #[error("fit needs at least two accepted points, got {0}")]
    TooFewPoints(usize),
    #[error("fit abscissae are all equal")]
    ConstantAbscissa,
}

pub type Result<T> = core::result::Result<T, Error>;
