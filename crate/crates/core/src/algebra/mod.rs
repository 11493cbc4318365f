//! The Cohen algebras `A^R(y_1, ..., y_n)` and their block versions `A_n^R[k]`.

mod element;
mod monomial;
mod substitution;
mod text;

use num_bigint::BigInt;
use thiserror::Error;

pub use element::{iterated_bracket, shuffle_expand, shuffle_expand_indices, AlgebraElement, Shape};
pub use monomial::{admissible_words, basis, monomial_mul, Monomial, MAX_GENERATORS};
pub use substitution::{IndexMap, WindowConvention};
pub use text::parse_element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Shape, Shape),
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("block size must be positive")]
    BadBlockSize,
    #[error("block of length {got}, expected {expected}")]
    BlockLength { expected: usize, got: usize },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("window of length {l} does not divide n = {n}")]
    WindowShape { l: usize, n: usize },
    #[error("empty bracket")]
    EmptyBracket,
    #[error("augmentation {0} is not a unit")]
    NotUnit(BigInt),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
