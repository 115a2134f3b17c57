use thiserror::Error;

use crate::exactmath::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("unsupported characteristic {0} (need a prime in 2..=251)")]
    BadCharacteristic(u32),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotASubspace,
    #[error("not local/augmented-nilpotent: {0}")]
    NotAugmentedNilpotent(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not contained in the radical")]
    NotInRadical,
    #[error("not p-nilpotent: {0}")]
    NotPNilpotent(String),
    #[error("invalid restricted Lie algebra: {0}")]
    InvalidLie(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("characteristic must be {expected}, found {found}")]
    WrongCharacteristic { expected: u8, found: u8 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
