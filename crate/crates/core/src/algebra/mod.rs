//! Finite-dimensional associative algebras by structure constants.

mod augmented;
pub mod catalog;
mod graded;
mod ops;
mod presentation;

pub use augmented::{radical_filtration, AugmentedAlgebra, RadicalFiltration};
pub use graded::{associated_graded, Frame, GradedAlgebra};
pub use ops::{quotient_algebra, quotient_presentation, tensor_algebra, Ideal};
pub use presentation::{sparse_collect, sparse_from_dense, sparse_to_dense, AlgebraPresentation, SparseVec, ValidationReport};
