use crate::algebra::associated_graded;
use crate::error::{Error, Result};
use crate::exactmath::{sub, Field, Vector};
use crate::uenv::{check_generator_map, GeneratorMapReport};

use super::jennings::{jennings_lie, JenningsData};
use super::series::group_algebra;
use super::table::GroupTable;

/// Compares `gr(FG)` with `u(L(G) ⊗ F)` through the map sending the Lie
/// basis element `g D_{i+1}` to the class of `g - 1` in `ω^i/ω^{i+1}`.
pub fn quillen_check(g: &GroupTable, field: Field) -> Result<GeneratorMapReport> {
    let data = jennings_lie(g)?;
    quillen_check_with(g, field, &data)
}

pub fn quillen_check_with(g: &GroupTable, field: Field, data: &JenningsData) -> Result<GeneratorMapReport> {
    let fg = group_algebra(g, field)?;
    let gr = associated_graded(&fg)?;
    let lie = data.lie.extend_scalars(field)?;
    if (field.p() as usize).pow(lie.dim() as u32) != g.order() {
        return Err(Error::Verification(format!("p^{} differs from |G| = {}", lie.dim(), g.order())));
    }
    let one = fg.algebra().unit().clone();
    let letters: Vec<Vector> = (0..lie.dim())
        .map(|k| {
            let x = fg.algebra().basis_vector(data.basis_elements[k]);
            gr.frame().project(&sub(&x, &one), data.basis_layers[k])
        })
        .collect();
    check_generator_map(&lie, &data.basis_layers, &gr, &letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog::*;

    fn check(g: GroupTable) -> GeneratorMapReport {
        let f = Field::prime(g.p() as u32).unwrap();
        let r = quillen_check(&g, f).unwrap();
        assert!(r.isomorphic, "{r:?}");
        assert_eq!(r.source_dims, r.target_dims);
        r
    }

    #[test]
    fn shipped_groups() {
        assert_eq!(check(d8()).target_dims, vec![1, 2, 2, 2, 1]);
        assert_eq!(check(c4()).target_dims, vec![1, 1, 1, 1]);
        assert_eq!(check(c2()).target_dims, vec![1, 1]);
        check(q8());
        check(m16());
        assert_eq!(check(extraspecial_27_exp3()).target_dims.iter().sum::<usize>(), 27);
        check(extraspecial_27_exp9());
    }

    #[test]
    fn wrong_field() {
        let f3 = Field::prime(3).unwrap();
        assert!(quillen_check(&d8(), f3).is_err());
    }
}
