//! Exact computation with filtered multiplicative bases of local algebras.

pub mod algebra;
pub mod error;
pub mod exactmath;
pub mod json;
pub mod mbasis;
pub mod pgroup;
pub mod rlie;
pub mod uenv;

pub use error::{Error, Result};
