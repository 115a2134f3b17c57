//! Restricted enveloping algebras by PBW rewriting, and bases of the family L(m,n;s).

mod env;
mod pbw;
mod graded_map;
mod words;

pub use crate::rlie::catalog::make_family;
pub use env::{
    build_uenv, build_uenv_adapted, lie_intersect_omega, omega_power_basis, pbw_algebra, pmap_eval, recorded_pmap,
    EnvelopingAlgebra,
};
pub use pbw::PbwEngine;
pub use graded_map::{check_generator_map, compare_graded_envelopes, GeneratorMapReport};
pub use words::{family_fmb, word_image_basis, FamilyFmb, WordBasis, WordFailure};
