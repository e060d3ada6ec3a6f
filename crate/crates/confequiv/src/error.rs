use thiserror::Error;

/// Errors shared across the crate. Variants are named for the contract they
/// enforce rather than the call site that raises them.
#[derive(Debug, Error)]
pub enum Error {
    /// A group definition failed validation (non-Latin-square table, mismatched
    /// permutation degrees, zero order, unbuildable product, ...).
    #[error("invalid group definition: {0}")]
    InvalidGroupSpec(String),

    /// An operation that requires full enumeration was applied to an infinite view.
    #[error("operation requires a finite group: {0}")]
    UnsupportedOnInfinite(String),

    /// A word referenced a generator index outside 1..=n or had mismatched shape.
    #[error("bad representative pair: {0}")]
    BadRepresentativePair(String),

    /// An element left the region where a partition or enumeration is defined.
    #[error("scope violation: {0}")]
    ScopeViolation(String),

    /// Two objects that must share shape (universe, bounds, kind) do not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A claimed quotient map is not a surjective homomorphism.
    #[error("not an epimorphism: {0}")]
    NotEpimorphism(String),

    /// A claimed normal subgroup fails the conjugation scan (or is not a subgroup).
    #[error("not normal: {0}")]
    NotNormal(String),

    /// A tuple that must generate the group does not.
    #[error("not generating: {0}")]
    NotGenerating(String),

    /// The operation does not support this configuration kind.
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),

    /// The set description cannot be interpreted over this group.
    #[error("unsupported set description: {0}")]
    UnsupportedDescription(String),

    /// The operation is only defined on the unquotiented matrix group.
    #[error("unsupported on quotient: {0}")]
    UnsupportedOnQuotient(String),

    /// An enumeration guard tripped; pass explicit limits to override.
    #[error("too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
