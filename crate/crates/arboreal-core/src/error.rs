use thiserror::Error;

/// Errors shared across the crate.
///
/// Operations that can only fail on malformed input return `Result`; internal
/// identities that must hold by construction are enforced with assertions
/// instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division is not exact over the integers")]
    InexactDivision,

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial of degree {expected} required, got degree {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("polynomial has a non-real or non-positive root")]
    NonPositiveRoots,

    #[error("polynomial has an integer root at {0}")]
    IntegerRoot(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("interval does not isolate a root (sign pattern inconsistent)")]
    BadInterval,

    #[error("signs of F(k_i) do not alternate; not an interlacing set")]
    SignAlternation,

    #[error("weight vectors must all come from the same side")]
    MixedSides,

    #[error("weight vectors must all share the same polynomial")]
    MixedPolynomials,

    #[error("expected {expected} multipliers, got {got}")]
    MultiplierCount { expected: usize, got: usize },

    #[error("F({0}) = 0: key collides with a root of F")]
    KeyIsRoot(u64),

    #[error("branch map is empty")]
    EmptyTree,

    #[error("{what} has {size} vertices, above the cap of {cap}")]
    SizeExceeded {
        what: &'static str,
        size: String,
        cap: String,
    },

    #[error("no coprime opposite-sign pair reachable from the monoid state")]
    NoCoprimePair,

    #[error("k_max must be at least 4, got {0}")]
    KMaxTooSmall(u64),

    #[error("invalid certificate JSON: {0}")]
    BadCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
