use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("d must be a negative integer, got {0}")]
    NonNegativeD(i64),
    #[error("d must be squarefree, got {0}")]
    NotSquarefree(i64),
    #[error("field discriminant {0} outside supported range |d_K| <= 10^4")]
    DiscriminantTooLarge(i64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration bound {0} exceeds the 10^7 cap")]
    EnumerationTooLarge(f64),
    #[error("modulus norm {0} exceeds the 10^5 cap")]
    ModulusTooLarge(u64),
    #[error("relation search exceeded its enumeration budget: {0}")]
    RelationBudget(String),
    #[error("ideal is not coprime to the modulus")]
    NotCoprime,
    #[error("modulus must be a principal prime ideal")]
    NotPrincipal,
    #[error("operation rejects the principal character")]
    PrincipalCharacter,
    #[error("operation requires a primitive character")]
    NotPrimitive,
    #[error("operation requires an imprimitive character")]
    NotImprimitive,
    #[error("shift t must be a nonzero nonunit")]
    UnitShift,
}
