//! Cohen algebras and groups over `Z` and `Z/m`, their lower central series
//! and the natural transformations `θ_n` into tensor algebras.

pub mod algebra;
pub mod exec;
pub mod group;
pub mod lcs;
pub mod linalg;
pub mod ring;
pub mod tensor;
pub mod verify;

pub use algebra::{AlgebraElement, AlgebraError, Monomial, Shape, WindowConvention};
pub use exec::Execution;
pub use group::{Caveat, GroupElement, GroupError};
pub use linalg::{ExactMatrix, LinalgError, Submodule};
pub use ring::{RingError, RingSpec, Scalar};
pub use tensor::{CTensorInput, FreeModule, LinearMapMatrix, TensorElement, TensorError};
