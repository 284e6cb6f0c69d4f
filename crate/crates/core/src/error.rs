use crate::axioms::AxiomViolation;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element set universe does not match the matroid's ground set")]
    UniverseMismatch,

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("label `{0}` is already present in the ground set")]
    LabelCollision(String),

    #[error("ground set has {0} elements; at most {max} are supported", max = crate::kernel::MAX_ELEMENTS)]
    GroundSetTooLarge(usize),

    #[error("duplicate set in cyclic-flat presentation: {0}")]
    DuplicateFlat(String),

    #[error("presentation violates the cyclic-flat axioms ({} violation(s))", .0.len())]
    InvalidPresentation(Vec<AxiomViolation>),

    #[error("{0} is not a flat of the matroid")]
    NotAFlat(String),

    #[error("{0} is not a cyclic flat of the presentation")]
    NotACyclicFlat(String),

    #[error("collection of flats is not a modular cut: {0}")]
    NotAModularCut(String),

    #[error("modular cut belongs to a different host matroid")]
    HostMismatch,

    #[error("rank {rank} out of range 0..={max}")]
    RankOutOfRange { rank: u32, max: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certificate failed: {0}")]
    Certificate(String),

    #[error("invalid {what} file: {detail}")]
    Format { what: &'static str, detail: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
