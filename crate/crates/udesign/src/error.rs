use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    InvalidDegree,
    #[error("field order {0} exceeds the configured size cap {1}")]
    FieldSizeCap(u128, u128),
    #[error("field is not an extension of the given base")]
    NotExtension,
    #[error("basis is linearly dependent (singular Gram matrix)")]
    SingularGram,
    #[error("phase points live in different phase spaces")]
    MismatchedSpaces,
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("group closure exceeded cap of {0} elements")]
    ClosureCap(usize),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("metaplectic synthesis degenerate after {0} retries")]
    MetaplecticDegenerate(usize),
    #[error("group does not act transitively on the nonzero phase-space points")]
    NotTransitive,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("ensemble is not flagged as closed under multiplication up to phase")]
    NotClosedUpToPhase,
    #[error("matrix {index} fails the unitarity check (defect {defect:.3e})")]
    NotUnitary { index: usize, defect: f64 },
    #[error("operation capped at dimension {cap}, got {got}")]
    DimensionCap { cap: usize, got: usize },
    #[error("ensemble failed order-{t} design verification (gap {gap:.3e})")]
    NotVerified { t: usize, gap: f64 },
    #[error("subspace is not isotropic under the symplectic form")]
    NotIsotropic,
    #[error("character is inconsistent on the subspace")]
    BadCharacter,
    #[error("basis {0} is neither maximally entangled nor product")]
    MixedBasis(usize),
    #[error("projector set is not orthogonal and complete")]
    BadProjectorSet,
    #[error("malformed design file: {0}")]
    MalformedFile(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
