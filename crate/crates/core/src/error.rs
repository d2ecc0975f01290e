use alloc::string::String;

/// Errors raised by the library.
///
/// Negative answers to the questions the library asks (no spanning component,
/// not a closed surface, no double cover) are values, not errors. Errors are
/// reserved for inputs outside an operation's domain and for exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("operation requires a {expected}-uniform hypergraph, got k = {found}")]
    UnsupportedUniformity { expected: usize, found: usize },

    #[error("vertex {0} has no link component (it lies in no edge)")]
    NoComponent(u32),

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("connected sum precondition violated: {0}")]
    GluePrecondition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! param {
    ($($arg:tt)*) => {
        $crate::Error::InvalidParameter(alloc::format!($($arg)*))
    };
}
pub(crate) use param;
