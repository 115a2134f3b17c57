use serde::Serialize;

use crate::algebra::AugmentedAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::unit_vector;

use super::table::{GroupTable, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `γ_1 = G, γ_{i+1} = (γ_i, G)`.
    LowerCentral,
    /// `G^{p^j}` for `j = 0, 1, ...`.
    Power,
    /// `D_n = Π_{i p^j >= n} γ_i^{p^j}`.
    Dimension,
}

/// The requested chain, from `G` down to the first trivial term (inclusive).
pub fn series_group(g: &GroupTable, kind: SeriesKind) -> Vec<Subgroup> {
    match kind {
        SeriesKind::LowerCentral => lower_central(g),
        SeriesKind::Power => {
            let mut out = vec![g.whole()];
            let mut k = 1u64;
            while out.last().expect("nonempty").len() > 1 {
                k *= g.p() as u64;
                out.push(g.power_subgroup(&g.whole(), k));
            }
            out
        }
        SeriesKind::Dimension => dimension_subgroups(g),
    }
}

fn lower_central(g: &GroupTable) -> Vec<Subgroup> {
    let mut out = vec![g.whole()];
    loop {
        let next = g.commutator_with_whole(out.last().expect("nonempty"));
        let done = next.len() == 1 || &next == out.last().expect("nonempty");
        out.push(next);
        if done {
            return out;
        }
    }
}

/// `D_n` by the product formula for `n = 1, 2, ...` until trivial.
pub fn dimension_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let gammas = lower_central(g);
    let gamma = |i: usize| gammas.get(i - 1).cloned().unwrap_or_else(|| g.trivial());
    let p = g.p() as usize;
    let mut out = Vec::new();
    for n in 1.. {
        let mut d = g.trivial();
        for i in 1..=n.max(gammas.len()) {
            if gamma(i).len() == 1 {
                break;
            }
            // smallest j with i p^j >= n
            let mut pj = 1;
            while i * pj < n {
                pj *= p;
            }
            d = g.join(&d, &g.power_subgroup(&gamma(i), pj as u64));
        }
        let trivial = d.len() == 1;
        out.push(d);
        if trivial {
            return out;
        }
    }
    unreachable!()
}

/// `F G` with basis the group elements and augmentation `ε(g) = 1`.
pub fn group_algebra(g: &GroupTable, field: crate::exactmath::Field) -> Result<AugmentedAlgebra> {
    if field.p() != g.p() {
        return Err(Error::WrongCharacteristic { expected: g.p(), found: field.p() });
    }
    let n = g.order();
    let entries = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, g.mul(a, b), field.one()));
    let a = crate::algebra::AlgebraPresentation::from_entries(
        field,
        g.labels().to_vec(),
        entries,
        unit_vector(field, n, g.identity()),
    )?;
    AugmentedAlgebra::new(a, vec![field.one(); n])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionSubgroupReport {
    /// `|D_n|` by the product formula, `n = 1, 2, ...`.
    pub product_orders: Vec<usize>,
    /// `|{g : g - 1 ∈ ω^n}|`.
    pub algebra_orders: Vec<usize>,
    pub agree: bool,
}

/// Compares the product formula with `D_n = G ∩ (1 + ω^n)` computed in `F_p G`.
pub fn dimension_subgroups_check(g: &GroupTable, bound: usize) -> Result<DimensionSubgroupReport> {
    if g.order() > bound {
        return Err(Error::InvalidInput(format!("group order {} exceeds the bound {bound}", g.order())));
    }
    let field = crate::exactmath::Field::prime(g.p() as u32)?;
    let fg = group_algebra(g, field)?;
    let n = g.order();
    let one = unit_vector(field, n, g.identity());
    let depth: Vec<usize> = (0..n)
        .map(|x| {
            let v = crate::exactmath::sub(&unit_vector(field, n, x), &one);
            fg.filtration().depth(&v).unwrap_or(usize::MAX)
        })
        .collect();
    let product = dimension_subgroups(g);
    let mut algebra_chain = Vec::new();
    for k in 1.. {
        let d: Subgroup = (0..n).filter(|&x| depth[x] >= k).collect();
        let trivial = d.len() == 1;
        algebra_chain.push(d);
        if trivial {
            break;
        }
    }
    let agree = product == algebra_chain;
    Ok(DimensionSubgroupReport {
        product_orders: product.iter().map(Vec::len).collect(),
        algebra_orders: algebra_chain.iter().map(Vec::len).collect(),
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog::*;

    fn orders(s: &[Subgroup]) -> Vec<usize> {
        s.iter().map(Vec::len).collect()
    }

    #[test]
    fn dihedral_series() {
        let g = d8();
        assert_eq!(orders(&series_group(&g, SeriesKind::LowerCentral)), vec![8, 2, 1]);
        assert_eq!(orders(&series_group(&g, SeriesKind::Dimension)), vec![8, 2, 1]);
        assert_eq!(orders(&series_group(&g, SeriesKind::Power)), vec![8, 2, 1]);
    }

    #[test]
    fn cyclic_four() {
        assert_eq!(orders(&dimension_subgroups(&c4())), vec![4, 2, 1]);
    }

    #[test]
    fn elementary_abelian() {
        let g = crate::pgroup::catalog::unitriangular(2).unwrap();
        assert_eq!(g.order(), 8);
        let c2xc2 = {
            let t = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
            GroupTable::new(2, t, None).unwrap()
        };
        assert_eq!(orders(&dimension_subgroups(&c2xc2)), vec![4, 1]);
    }

    #[test]
    fn both_definitions_agree() {
        for g in [c2(), c4(), d8(), q8(), m16(), extraspecial_27_exp3(), extraspecial_27_exp9()] {
            let r = dimension_subgroups_check(&g, 64).unwrap();
            assert!(r.agree, "{:?}", r);
        }
        assert_eq!(dimension_subgroups_check(&extraspecial_27_exp3(), 64).unwrap().product_orders, vec![27, 3, 1]);
        assert_eq!(dimension_subgroups_check(&c2(), 64).unwrap().product_orders, vec![2, 1]);
    }

    #[test]
    fn group_algebra_shapes() {
        let f2 = crate::exactmath::Field::prime(2).unwrap();
        let a = group_algebra(&d8(), f2).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.filtration().power(1).dim(), 7);
        assert_eq!(a.filtration().nilpotency_index(), 5);
        assert!(group_algebra(&extraspecial_27_exp3(), f2).is_err());
    }
}
