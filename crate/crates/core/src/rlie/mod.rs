//! Restricted Lie algebras: validation, series, dimension subalgebras, heights.

pub mod catalog;
mod cyclic;
mod presentation;
mod series;

pub use cyclic::{cyclic_decomposition, decompose_into_cyclics, CyclicDecomposition, Decomposability};
pub use presentation::{LieValidationReport, RestrictedLiePresentation};
pub use series::{
    adapted_presentation, center, dimension_subalgebras, dimension_subalgebras_with, exponent, gamma, graded_lie,
    lower_central_series, nilpotency_class, restricted_closure, span_of_powers, structure_queries, DimensionChain,
    StructureReport,
};
