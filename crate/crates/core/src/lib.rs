//! Exact symbolic verification of a coloured quantum group: coloured
//! R-matrices, coloured Hopf structure maps, coloured RTT relations and
//! the dual pairing with the enveloping algebra.
//!
//! All arithmetic is exact, over Laurent polynomials with rational
//! coefficients in `q` and the colour variables.

pub mod checks;
pub mod error;
pub mod exec;
pub mod freealg;
pub mod linalg;
pub mod model;
pub mod pairing;
pub mod ring;
pub mod selftest;
pub mod tensor;

pub use error::{Error, Result};
pub use exec::Exec;
pub use freealg::{
    cp_mul, fa_add, fa_concat, fa_substitute_colours, ColourTag, FreeElem, Letter, Word,
};
pub use model::{Generator, ModelSpec, UElem};
pub use ring::{rat, LaurentPoly, Rational, Substitution, VarRegistry};
pub use tensor::{embed_leg, kron, Leg, RingMatrix};
