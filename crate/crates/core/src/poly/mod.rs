//! Exact polynomial arithmetic over prime fields, Gröbner bases for
//! submodules of graded free modules, and Hilbert series.

mod field;
mod groebner;
mod hilbert;
mod linalg;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod quotient;
mod ring;
mod submodule;
mod vector;

pub use field::Field;
pub use groebner::{groebner, normal_form};
pub use hilbert::HilbertSeries;
pub use linalg::{rref, Matrix, RowSpace};
pub use parse::parse_poly;
pub use poly::Poly;
pub use quotient::{GradedQuotient, Piece};
pub use ring::{Mono, MonoOrder, PolyRing, MAX_VARS};
pub use submodule::{colon, colon_ideal, eliminate_vars, intersect, preimage, syzygies, FreeSubmodule, Lifter};
pub use vector::{ModOrder, Term, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("characteristic {0} is not an odd prime below 2^31")]
    BadCharacteristic(u32),
    #[error("at most {} variables are supported, got {0}", MAX_VARS)]
    TooManyVariables(usize),
    #[error("degree weights must be positive, one per variable")]
    BadWeights,
    #[error("variable '{0}' declared twice")]
    DuplicateVariable(String),
    #[error("generator has rank {found}, ambient rank is {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}
