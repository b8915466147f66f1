use thiserror::Error;

/// Error type shared by every module.
///
/// The variants mirror how callers are expected to react: `Domain` and
/// `SingularInput` are bad arguments, `Resource` is a refused (not failed)
/// computation, the rest are numerical breakdowns that carry diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside an operation's contract (parity, width, sign, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured cost cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// Evaluation left the representable floating-point range.
    #[error("numeric range error: {0}")]
    NumericRange(String),

    /// Input sits on a singularity of the formula being evaluated.
    #[error("singular input: {0}")]
    SingularInput(String),

    /// A search or refinement failed to isolate its target.
    #[error("search failure: {0}")]
    SearchFailure(String),

    /// Working precision is insufficient for the requested computation.
    #[error("precision error: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
