use thiserror::Error;

use crate::ring::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different variable registries")]
    RegistryMismatch,
    #[error("variable `{0}` is not in the registry")]
    UnknownVariable(String),
    #[error("variable `{0}` appears twice in the registry")]
    DuplicateVariable(String),
    #[error("cannot substitute zero for invertible variable `{0}`")]
    ZeroSubstitution(String),
    #[error("substitution value for `{0}` is not a monomial")]
    NonMonomialSubstitution(String),
    #[error("polynomial is not a unit of the Laurent ring (not a monomial)")]
    NotAUnit,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad tensor leg label `{0}` (expected 12, 13 or 23)")]
    BadLeg(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operand letters carry more than one colour")]
    MixedColours,
    #[error("colour tags must be invertible; got zero")]
    ZeroColour,
    #[error("deformation parameter q = {0} is a degenerate point")]
    DegenerateQ(Rational),
    #[error("pairing block has rank zero")]
    RankZero,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
