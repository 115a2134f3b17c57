use serde::Serialize;

use crate::algebra::{associated_graded, sparse_to_dense, GradedAlgebra};
use crate::error::Result;
use crate::exactmath::{axpy, sub, FieldValue, Matrix, Vector};
use crate::rlie::{dimension_subalgebras, graded_lie, RestrictedLiePresentation};

use super::env::{build_uenv, pbw_algebra};
use super::pbw::PbwEngine;

/// Outcome of extending a map on generators `L → gr(A)` to `u(L) → gr(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorMapReport {
    /// Bracket and p-map relations of `L` hold for the images.
    pub well_defined: bool,
    pub bijective: bool,
    pub multiplicative: bool,
    /// Graded dimensions of `u(L)` with letter `k` in degree `degrees[k]`.
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub isomorphic: bool,
    pub failure: Option<String>,
}

/// Checks that `x_k ↦ letters[k]` defines an isomorphism `u(L) → gr(A)` of
/// graded algebras.
pub fn check_generator_map(
    l: &RestrictedLiePresentation,
    degrees: &[usize],
    target: &GradedAlgebra,
    letters: &[Vector],
) -> Result<GeneratorMapReport> {
    let field = l.field();
    let n = l.dim();
    let gra = target.algebra().algebra();
    let u = pbw_algebra(l)?;
    let ua = u.algebra().algebra();
    let lift = |v: &[FieldValue]| -> Vector {
        let mut out = gra.zero();
        for (c, x) in v.iter().zip(letters) {
            axpy(&mut out, c, x);
        }
        out
    };

    let mut failure = None;
    let mut well_defined = true;
    'rel: for a in 0..n {
        for b in 0..n {
            let lhs = lift(&l.bracket(&l.basis_vector(a), &l.basis_vector(b)));
            let rhs = sub(&gra.mul(&letters[a], &letters[b]), &gra.mul(&letters[b], &letters[a]));
            if lhs != rhs {
                well_defined = false;
                failure = Some(format!("bracket relation fails on ({}, {})", l.labels()[a], l.labels()[b]));
                break 'rel;
            }
        }
        let pm = lift(&sparse_to_dense(field, n, l.basis_pmap(a)));
        if pm != gra.pow(&letters[a], field.p() as u64) {
            well_defined = false;
            failure = Some(format!("p-map relation fails on {}", l.labels()[a]));
            break;
        }
    }

    // image of each PBW monomial x_0^{e_0} x_1^{e_1} ...
    let images: Vec<Vector> = (0..u.dim())
        .map(|m| {
            let mut out = gra.unit().clone();
            for (k, &e) in u.exponents(m).iter().enumerate() {
                out = gra.mul(&out, &gra.pow(&letters[k], e as u64));
            }
            out
        })
        .collect();
    let phi = Matrix::from_rows(field, gra.dim(), images.clone())?;
    let rank = phi.rank();
    let bijective = u.dim() == gra.dim() && rank == u.dim();
    if !bijective && failure.is_none() {
        failure = Some(format!("map has rank {rank} on dimensions {} and {}", u.dim(), gra.dim()));
    }
    let mut multiplicative = well_defined;
    if multiplicative {
        'mul: for i in 0..u.dim() {
            for j in 0..u.dim() {
                let lhs = phi.apply(&ua.mul(&ua.basis_vector(i), &ua.basis_vector(j)));
                if lhs != gra.mul(&images[i], &images[j]) {
                    multiplicative = false;
                    failure.get_or_insert_with(|| format!("not multiplicative on monomials {i}, {j}"));
                    break 'mul;
                }
            }
        }
    }

    let mut source_dims = Vec::new();
    for m in 0..u.dim() {
        let deg: usize = u.exponents(m).iter().zip(degrees).map(|(e, d)| e * d).sum();
        if source_dims.len() <= deg {
            source_dims.resize(deg + 1, 0);
        }
        source_dims[deg] += 1;
    }
    let target_dims = target.graded_dims();
    if source_dims != target_dims && failure.is_none() {
        failure = Some("graded dimensions differ".into());
    }
    let isomorphic = well_defined && bijective && multiplicative && source_dims == target_dims;
    Ok(GeneratorMapReport { well_defined, bijective, multiplicative, source_dims, target_dims, isomorphic, failure })
}

/// `gr(L)` together with the comparison of `u(gr(L))` and `gr(u(L))` under the
/// map sending a basis element of height `m` to its class in `ω^m/ω^{m+1}`.
pub fn compare_graded_envelopes(l: &RestrictedLiePresentation) -> Result<(RestrictedLiePresentation, GeneratorMapReport)> {
    let chain = dimension_subalgebras(l)?;
    let mut engine = PbwEngine::new(l.clone())?;
    let gr_l = graded_lie(&mut engine, &chain)?;
    let u = build_uenv(l, &chain)?;
    let gr_u = associated_graded(u.algebra())?;
    let heights = chain.heights();
    let letters: Vec<Vector> = (0..l.dim()).map(|k| gr_u.frame().project(&u.letter(k), heights[k])).collect();
    let report = check_generator_map(&gr_l, heights, &gr_u, &letters)?;
    Ok((gr_l, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rlie::catalog::{heisenberg, l_alpha, l_d8, nilcyclic};
    use crate::exactmath::Field;

    #[test]
    fn graded_envelopes_agree() {
        let f2 = Field::prime(2).unwrap();
        for l in [heisenberg(3).unwrap(), l_d8(), nilcyclic(f2, 3), l_alpha(2).unwrap()] {
            let (_, r) = compare_graded_envelopes(&l).unwrap();
            assert!(r.isomorphic, "{r:?}");
        }
    }

    #[test]
    fn wrong_images_are_caught() {
        let l = l_d8();
        let u = pbw_algebra(&l).unwrap();
        let gr = associated_graded(u.algebra()).unwrap();
        // send z to zero
        let mut letters: Vec<Vector> = (0..3).map(|k| gr.frame().project(&u.letter(k), [1, 1, 2][k])).collect();
        letters[2] = gr.algebra().algebra().zero();
        let r = check_generator_map(&l, &[1, 1, 2], &gr, &letters).unwrap();
        assert!(!r.well_defined && !r.isomorphic);
    }
}
