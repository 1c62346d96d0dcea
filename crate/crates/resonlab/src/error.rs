//! Error taxonomy shared by all modules.

/// Crate-wide error type.
///
/// The CLI maps every variant to exit code 1; usage problems are handled
/// by the argument parser and exit with code 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed a desk-scale memory or iteration guard.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A requested accuracy target cannot be certified with the given
    /// evaluation parameters.
    #[error("precision target unreachable: {0}")]
    Precision(String),

    /// Evaluation at (or too close to) a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A denominator is too close to zero for a trustworthy division.
    #[error("near-zero denominator: {0}")]
    NearZero(String),

    /// The principal character was passed where only nonprincipal ones
    /// make sense (L(s, χ₀) inherits the ζ pole at s = 1).
    #[error("principal character is excluded: {0}")]
    PrincipalCharacter(String),

    /// No resonator budget satisfies the requested constraint set.
    #[error("no admissible budget: {constraint} is violated ({detail})")]
    Infeasible {
        constraint: &'static str,
        detail: String,
    },

    /// The two evaluation routes of a moment identity disagree beyond
    /// tolerance; this is a test-failure signal, not a recoverable state.
    #[error("moment identity violated: {0}")]
    IdentityViolation(String),

    /// The operation is not defined for this resonator kind.
    #[error("unsupported resonator kind: {0}")]
    UnsupportedKind(String),

    /// File emission failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
