//! Exact linear algebra over ℤ, ℚ and F₂.

mod gf2;
mod hermite;
mod lattice;
mod matrix;
mod rational;
mod smith;

pub use gf2::{rank_mod2, row_mod2, BitVec, Gf2Echelon};
pub use hermite::{hermite_rows, row_lattice_contains, same_row_lattice};
pub use lattice::{
    cokernel, complete_to_unimodular, has_even_torsion, is_primitive_rows, kernel_lattice,
    AbelianGroupPresentation,
};
pub use matrix::IntMatrix;
pub use rational::RatMatrix;
pub use smith::{invariant_factors, smith, unimodular_inverse, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("rows are not primitive (do not span a direct summand)")]
    NotPrimitive,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
