//! Error type shared across the crate.
//!
//! Every fallible public operation returns [`Result`]. The variants are
//! coarse on purpose: they map one-to-one onto the process exit codes used
//! by the `sdnb` binary, and carry a human-readable message with the
//! specifics.

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input parameters are syntactically valid but outside the supported
    /// range (e.g. composite `p`, zero degree, `p` too large).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested object provably does not exist for these parameters
    /// (e.g. a self-dual normal basis for an extension of degree divisible
    /// by 4 in characteristic 2, or a non-weakly-ramified local extension).
    #[error("existence: {0}")]
    Existence(String),

    /// The operation is not defined on the given inputs (e.g. a relative
    /// trace to a field that is not a subfield).
    #[error("domain error: {0}")]
    Domain(String),

    /// A search that can legitimately come up empty did so
    /// (e.g. no root of the polynomial lies in the field).
    #[error("not found: {0}")]
    NotFound(String),

    /// p-adic working precision was exhausted before the result could be
    /// certified to the requested precision.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// A certificate failed verification.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A certificate file could not be parsed or has an unknown schema.
    #[error("malformed certificate: {0}")]
    Malformed(String),

    /// An internal invariant was violated; always a bug in this crate.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the `sdnb` binary uses for this error.
    ///
    /// * `2` — bad input: parameter/domain problems, provable non-existence,
    ///   empty search results, malformed certificate files.
    /// * `3` — precision exhaustion (retry with a higher `--prec`).
    /// * `1` — verification failures and internal errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::Existence(_)
            | Error::Domain(_)
            | Error::NotFound(_)
            | Error::Malformed(_) => 2,
            Error::Precision(_) => 3,
            Error::Verification(_) | Error::Internal(_) => 1,
        }
    }
}
