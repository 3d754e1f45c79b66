use std::fmt;

use thiserror::Error;

/// Which pair axiom a bracket table violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Antisymmetry,
    WeightAdditivity,
    HCompatibility,
    Jacobi,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::WeightAdditivity => "weight-additivity",
            Axiom::HCompatibility => "h-compatibility",
            Axiom::Jacobi => "jacobi",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a rank-3 family is not an extension of the constant family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotExtensionReason {
    /// Weight multiset differs from {-2, 0, 2}.
    WrongWeights(Vec<i64>),
    /// `[X, Y]` vanishes identically.
    DegenerateBracket,
    /// The H-coordinate of `[X, Y]` has at least two nonzero terms.
    NonMonomial { coefficient: String },
    /// Classification is only defined over the affine line.
    NotAffine,
}

impl NotExtensionReason {
    pub fn name(&self) -> &'static str {
        match self {
            NotExtensionReason::WrongWeights(_) => "WrongWeights",
            NotExtensionReason::DegenerateBracket => "DegenerateBracket",
            NotExtensionReason::NonMonomial { .. } => "NonMonomial",
            NotExtensionReason::NotAffine => "NotAffine",
        }
    }
}

impl fmt::Display for NotExtensionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotExtensionReason::WrongWeights(w) => write!(f, "weights {w:?} are not {{-2, 0, 2}}"),
            NotExtensionReason::DegenerateBracket => f.write_str("[X, Y] vanishes identically"),
            NotExtensionReason::NonMonomial { coefficient } => {
                write!(f, "[X, Y] = ({coefficient}) H is not a monomial multiple of H")
            }
            NotExtensionReason::NotAffine => f.write_str("family is not over the affine line"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit of the base ring")]
    NotAUnit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed family: {0}")]
    Malformed(String),
    #[error("{axiom} violated at basis indices {witness:?}")]
    Validation { axiom: Axiom, witness: Vec<usize> },
    #[error("elements or morphisms belong to different families")]
    FamilyMismatch,
    #[error("fiber at 0 of a family over the punctured line")]
    PuncturedAtZero,
    #[error("family is already over the punctured line")]
    AlreadyPunctured,
    #[error("not an extension of the constant family: {0}")]
    NotExtension(NotExtensionReason),
    #[error("basis is not canonical: {0}")]
    NotCanonical(String),
    #[error("no uniqueness witness: {0}")]
    NoWitness(String),
    #[error("invalid morphism parameters: {0}")]
    InvalidMorphism(String),
    #[error("morphisms do not compose: {0}")]
    ChainMismatch(String),
    #[error("non-localized application needs x^{0}")]
    NegativeExponent(i64),
    #[error("degree bound {bound} too small: {reason}")]
    DegreeBoundTooSmall { bound: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
