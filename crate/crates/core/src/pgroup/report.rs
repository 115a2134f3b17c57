use serde::Serialize;

use crate::error::Result;
use crate::exactmath::{unit_vector, Field, Vector};
use crate::mbasis::{closure_search_fmb, generator_set_count, obstruction_probe, ProbeReport, SearchConfig};
use crate::rlie::nilpotency_class;

use super::jennings::jennings_lie;
use super::series::{group_algebra, series_group, SeriesKind};
use super::table::GroupTable;

/// `G' ⊆ G^4` for `p = 2`, `G' ⊆ G^p` for odd `p`.
pub fn is_powerful(g: &GroupTable) -> bool {
    let derived = g.commutator_with_whole(&g.whole());
    let k = if g.p() == 2 { 4 } else { g.p() as u64 };
    GroupTable::is_subset(&derived, &g.power_subgroup(&g.whole(), k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub statement: String,
    /// `"powerful"` or `"lie-class-2"` for the theorem, `"search"` otherwise.
    pub branch: String,
    /// `"theorem"` or `"computed"`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub status: String,
    pub evaluated: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Corollary2Report {
    pub p: u8,
    pub order: usize,
    /// Nilpotency class of `G` (0 for the trivial group).
    pub group_class: usize,
    pub powerful: bool,
    pub lie_dim: usize,
    pub lie_labels: Vec<String>,
    pub lie_class: Option<usize>,
    /// Number of generators, `dim D_1/D_2`.
    pub generators: usize,
    pub verdict: Option<Verdict>,
    pub search: Option<SearchSummary>,
    pub probe: Option<ProbeReport>,
}

/// Structural data on `G` and `FG` relevant to the existence of an f.m.b.
///
/// For odd `p` and `G` of class 2 the verdict is the known nonexistence
/// result, labelled with source `"theorem"`. An exhaustive closure search is
/// run only when the number of generator sets is within `budget`; its
/// verdicts carry source `"computed"`. The probe runs on `u(L(G) ⊗ F)` when
/// `L(G)` has class 2 and at least three generators.
pub fn corollary2_report(g: &GroupTable, field: Field, budget: u64) -> Result<Corollary2Report> {
    let lcs = series_group(g, SeriesKind::LowerCentral);
    let group_class = lcs.iter().position(|s| s.len() == 1).unwrap_or(lcs.len());
    let powerful = is_powerful(g);
    let data = jennings_lie(g)?;
    let lie = data.lie.extend_scalars(field)?;
    let lie_class = nilpotency_class(&lie);
    let generators = data.basis_layers.iter().filter(|&&l| l == 1).count();

    let mut verdict = None;
    if g.p() > 2 && group_class == 2 {
        let branch = if lie_class == Some(1) { "powerful" } else { "lie-class-2" };
        verdict = Some(Verdict {
            statement: "no f.m.b. (theorem: odd p, class 2)".into(),
            branch: branch.into(),
            source: "theorem".into(),
        });
    }

    let fg = group_algebra(g, field)?;
    let layers = fg.filtration().layer_dims();
    let t = layers.get(1).copied().unwrap_or(0);
    let r2 = fg.filtration().power(2).dim();
    let mut search = None;
    let affordable = generator_set_count(field.p() as u32, t, r2).is_some_and(|c| c <= budget as u128);
    if affordable {
        let outcome = closure_search_fmb(&fg, SearchConfig { budget, seed: 0 })?;
        if verdict.is_none() {
            let statement = match outcome.status() {
                "found" => Some("f.m.b. found"),
                "exhausted" => Some("no f.m.b. (exhaustive search)"),
                _ => None,
            };
            verdict = statement.map(|s| Verdict { statement: s.into(), branch: "search".into(), source: "computed".into() });
        }
        search = Some(SearchSummary { status: outcome.status().into(), evaluated: outcome.evaluated() });
    }

    let mut probe = None;
    if lie_class == Some(2) && generators >= 3 {
        let pos: Vec<usize> = (0..lie.dim()).filter(|&k| data.basis_layers[k] == 1).take(3).collect();
        let e = |k: usize| -> Vector { unit_vector(field, lie.dim(), k) };
        probe = Some(obstruction_probe(&lie, &[e(pos[0]), e(pos[1]), e(pos[2])])?);
    }

    Ok(Corollary2Report {
        p: g.p(),
        order: g.order(),
        group_class,
        powerful,
        lie_dim: lie.dim(),
        lie_labels: lie.labels().to_vec(),
        lie_class,
        generators,
        verdict,
        search,
        probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn powerful_examples() {
        assert!(is_powerful(&c4()));
        assert!(!is_powerful(&d8()));
        assert!(!is_powerful(&q8()));
        assert!(!is_powerful(&extraspecial_27_exp3()));
        assert!(is_powerful(&extraspecial_27_exp9()));
    }

    #[test]
    fn extraspecial_exponent_three() {
        let r = corollary2_report(&extraspecial_27_exp3(), f(3), 1000).unwrap();
        assert_eq!(r.group_class, 2);
        assert_eq!(r.lie_class, Some(2));
        let v = r.verdict.unwrap();
        assert_eq!(v.source, "theorem");
        assert_eq!(v.branch, "lie-class-2");
        assert!(r.probe.is_none());
    }

    #[test]
    fn extraspecial_exponent_nine_is_the_powerful_branch() {
        let r = corollary2_report(&extraspecial_27_exp9(), f(3), 1000).unwrap();
        assert_eq!(r.lie_class, Some(1));
        assert_eq!(r.verdict.unwrap().branch, "powerful");
    }

    #[test]
    fn dihedral_gets_no_structural_verdict() {
        let r = corollary2_report(&d8(), f(2), 0).unwrap();
        assert!(r.verdict.is_none());
        assert_eq!(r.lie_labels, vec!["a", "b", "a^2"]);
        assert!(!r.powerful);
    }

    #[test]
    fn cyclic_four_is_found_by_search() {
        let r = corollary2_report(&c4(), f(2), 1000).unwrap();
        assert_eq!(r.group_class, 1);
        assert_eq!(r.search.unwrap().status, "found");
        assert_eq!(r.verdict.unwrap().source, "computed");
    }
}
