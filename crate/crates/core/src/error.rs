use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// The `Display` form of each variant starts with a category prefix
/// (`PARSE/`, `DOMAIN/`, `BUDGET/`, `IO/`) so command-line diagnostics can be
/// matched by category.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file or text.
    #[error("PARSE/{0}")]
    Parse(String),

    /// Parameters outside the domain of an operation.
    #[error("DOMAIN/{0}")]
    Domain(String),

    /// A time or work budget ran out before the computation finished.
    #[error("BUDGET/{0}")]
    Budget(String),

    /// A search was capped before finding an exact answer. The true value is
    /// at least `lower_bound`.
    #[error("BUDGET/{what} cap exceeded; value is at least {lower_bound}")]
    CapExceeded { what: &'static str, lower_bound: usize },

    #[error("IO/{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn parse<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}
