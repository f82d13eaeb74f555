//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation of a Laurent polynomial with negative exponents at a
    /// non-invertible scalar.
    #[error("cannot evaluate at a non-invertible scalar: {0}")]
    NonInvertibleEval(String),

    /// A modulus that is not usable (composite, equal to the working prime
    /// p, or dividing q).
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    /// Multiplicative order of zero requested.
    #[error("multiplicative order of zero is undefined")]
    ZeroElement,

    /// A root datum that fails validation.
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    /// Enumeration exceeded the element cap; the group is treated as
    /// infinite.
    #[error("group enumeration exceeded cap of {cap} elements")]
    InfiniteGroup { cap: usize },

    /// Operands from different Weyl groups.
    #[error("operands belong to different groups")]
    MixedGroups,

    /// Operands from different monodromic blocks.
    #[error("operands belong to different blocks (product is zero); pass permissive=true to get 0")]
    CrossBlockProduct,

    /// Operation not available for twisted (non-split) data.
    #[error("unsupported for twisted data: {0}")]
    UnsupportedTwisted(String),

    /// qτw - 1 is singular, so the fixed torus is not finite.
    #[error("singular endomorphism: {0}")]
    SingularTorusMatrix(String),

    /// A brute-force oracle was asked to enumerate beyond its cap.
    #[error("oracle out of range: {0}")]
    OracleOutOfRange(String),

    /// A conjectural feature was requested without the explicit flag.
    #[error("conjectural feature requested without the conjectural flag: {0}")]
    GatedConjectural(String),

    /// An identity that the library asserts failed to hold.
    #[error("identity violation: {0}")]
    IdentityViolation(String),

    /// Invalid multiplicity table.
    #[error("invalid multiplicity table: {0}")]
    InvalidNMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
