//! Multiplicative and filtered multiplicative bases: verification, quotients
//! by regular ideals, closure search, and transport to the graded algebra.

mod heisenberg;
mod probe;
pub mod random;
mod rays;
mod search;
mod transport;
mod verify;

pub use heisenberg::{certify_heisenberg_type, HeisenbergReport, HeisenbergWitness, StageResult};
pub use probe::{obstruction_probe, obstruction_probe_with, CommutatorVerdict, FactCheck, ProbeReport};
pub use rays::{ray_decomposition, kernel_regular_basis, quotient_basis, NotRegular, QuotientBasis, RayDecomposition};
pub use search::{closure_of, closure_search_fmb, generator_set_count, SearchConfig, SearchMode, SearchOutcome};
pub use transport::transport_fmb_to_gr;
pub use verify::{
    check_regular, closure_fact_holds, reverify, verify_fmb, verify_multiplicative, BasisCandidate, BasisFailure,
    Checked, FmbCertificate, Product, ProductTable, Regularity,
};
