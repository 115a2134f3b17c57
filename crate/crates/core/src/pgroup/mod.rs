//! Finite p-groups by Cayley table: dimension subgroups, the associated
//! restricted Lie algebra, group algebras and their graded algebras.

pub mod catalog;
mod jennings;
mod quillen;
mod report;
mod series;
mod table;

pub use jennings::{jennings_lie, jennings_lie_with_transversals, JenningsData, Layer};
pub use quillen::{quillen_check, quillen_check_with};
pub use report::{corollary2_report, is_powerful, Corollary2Report, SearchSummary, Verdict};
pub use series::{
    dimension_subgroups, dimension_subgroups_check, group_algebra, series_group, DimensionSubgroupReport, SeriesKind,
};
pub use table::{GroupTable, Subgroup};
