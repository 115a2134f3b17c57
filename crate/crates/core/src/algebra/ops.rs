use crate::error::{Error, Result};
use crate::exactmath::{dot, Matrix, Subspace, Vector};

use super::augmented::AugmentedAlgebra;
use super::presentation::{sparse_from_dense, AlgebraPresentation};

/// A two-sided ideal, verified on basis products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn new(a: &AlgebraPresentation, space: Subspace) -> Result<Self> {
        if space.ambient() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: space.ambient() });
        }
        for j in space.basis() {
            for i in 0..a.dim() {
                let b = a.basis_vector(i);
                if !space.contains(&a.mul(&b, j)) {
                    return Err(Error::NotAnIdeal(format!("{} · v ∉ J", a.labels()[i])));
                }
                if !space.contains(&a.mul(j, &b)) {
                    return Err(Error::NotAnIdeal(format!("v · {} ∉ J", a.labels()[i])));
                }
            }
        }
        Ok(Ideal { space })
    }

    /// The two-sided ideal generated by `generators`.
    pub fn generated_by(a: &AlgebraPresentation, generators: &[Vector]) -> Result<Self> {
        let mut space = Subspace::from_vectors(a.field(), a.dim(), generators.iter().cloned());
        loop {
            let before = space.dim();
            let basis: Vec<Vector> = space.basis().to_vec();
            for v in &basis {
                for i in 0..a.dim() {
                    let b = a.basis_vector(i);
                    space.insert(a.mul(&b, v));
                    space.insert(a.mul(v, &b));
                }
            }
            if space.dim() == before {
                break;
            }
        }
        Ideal::new(a, space)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `A/J` with basis the images of the standard basis vectors outside the
/// pivot columns of `J`, together with the projection matrix (`dim A` rows).
pub fn quotient_presentation(a: &AlgebraPresentation, j: &Ideal) -> Result<(AlgebraPresentation, Matrix)> {
    let field = a.field();
    let n = a.dim();
    let space = j.space();
    let keep: Vec<usize> = (0..n).filter(|c| !space.pivots().contains(c)).collect();
    let project = |v: &Vector| -> Vector {
        let r = space.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let projection = Matrix::from_rows(field, keep.len(), (0..n).map(|i| project(&a.basis_vector(i))).collect())?;
    let mut mult = Vec::with_capacity(keep.len() * keep.len());
    for &i in &keep {
        for &k in &keep {
            let prod = a.mul(&a.basis_vector(i), &a.basis_vector(k));
            mult.push(sparse_from_dense(&project(&prod)));
        }
    }
    let labels = keep.iter().map(|&i| a.labels()[i].clone()).collect();
    let unit = project(a.unit());
    let b = AlgebraPresentation::new(field, labels, mult, unit)?;
    Ok((b, projection))
}

/// `A/J` for an ideal inside the radical; the augmentation factors through.
pub fn quotient_algebra(a: &AugmentedAlgebra, j: &Ideal) -> Result<(AugmentedAlgebra, Matrix)> {
    if !j.space().is_subspace_of(a.aug_ideal()) {
        return Err(Error::NotInRadical);
    }
    let (b, projection) = quotient_presentation(a.algebra(), j)?;
    let keep: Vec<usize> = (0..a.dim()).filter(|c| !j.space().pivots().contains(c)).collect();
    // basis element c of A maps to itself in A/J for c outside the pivots
    let eps: Vector = keep.iter().map(|&c| a.augmentation()[c].clone()).collect();
    debug_assert!((0..a.dim()).all(|i| dot(projection.row(i), &eps) == a.augmentation()[i]));
    Ok((AugmentedAlgebra::new(b, eps)?, projection))
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j`.
pub fn tensor_algebra(a: &AugmentedAlgebra, b: &AugmentedAlgebra) -> Result<AugmentedAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let (pa, pb) = (a.algebra(), b.algebra());
    let (na, nb) = (pa.dim(), pb.dim());
    let mut mult = Vec::with_capacity(na * nb * na * nb);
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let left = pa.basis_product(i1, i2);
                    let right = pb.basis_product(j1, j2);
                    mult.push(
                        left.iter()
                            .flat_map(|(k, c)| right.iter().map(move |(l, d)| (k * nb + l, c * d)))
                            .collect(),
                    );
                }
            }
        }
    }
    let kron = |u: &Vector, v: &Vector| -> Vector { u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect() };
    let labels = pa
        .labels()
        .iter()
        .flat_map(|la| pb.labels().iter().map(move |lb| format!("{la}⊗{lb}")))
        .collect();
    let unit = kron(pa.unit(), pb.unit());
    let eps = kron(a.augmentation(), b.augmentation());
    let p = AlgebraPresentation::new(a.field(), labels, mult, unit)?;
    AugmentedAlgebra::new(p, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{augment_at_unit, truncated_free, truncated_polynomial};
    use crate::exactmath::{unit_vector, Field};

    #[test]
    fn quotient_of_truncated_polynomial() {
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 4)).unwrap();
        let j = Ideal::new(a.algebra(), Subspace::from_vectors(f2, 4, [unit_vector(f2, 4, 3)])).unwrap();
        let (b, _) = quotient_algebra(&a, &j).unwrap();
        assert_eq!(b.algebra(), &truncated_polynomial(f2, 3));
    }

    #[test]
    fn quotient_of_truncated_free_algebra() {
        let f2 = Field::prime(2).unwrap();
        let t = truncated_free(f2, &["x", "y"], 2);
        let e = |i| unit_vector(f2, 7, i);
        let j = Ideal::new(
            t.algebra(),
            Subspace::from_vectors(f2, 7, [crate::exactmath::add(&e(4), &e(5)), e(3)]),
        )
        .unwrap();
        let (b, proj) = quotient_algebra(&t, &j).unwrap();
        assert_eq!(b.dim(), 5);
        assert!(b.algebra().validate().is_valid());
        // projection is multiplicative on basis pairs
        for i in 0..7 {
            for k in 0..7 {
                let lhs = proj.apply(&t.algebra().mul(&e(i), &e(k)));
                let rhs = b.algebra().mul(proj.row(i), proj.row(k));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn non_ideal_and_non_radical_are_rejected() {
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 4)).unwrap();
        let x = Subspace::from_vectors(f2, 4, [unit_vector(f2, 4, 2)]);
        assert!(matches!(Ideal::new(a.algebra(), x), Err(Error::NotAnIdeal(_))));
        let all = Ideal::new(a.algebra(), Subspace::full(f2, 4)).unwrap();
        assert_eq!(quotient_algebra(&a, &all).unwrap_err(), Error::NotInRadical);
    }

    #[test]
    fn tensor_with_trivial_algebra_is_identity() {
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 3)).unwrap();
        let one = augment_at_unit(truncated_polynomial(f2, 1)).unwrap();
        let t = tensor_algebra(&a, &one).unwrap();
        let relabeled = t.algebra().clone().with_labels(a.labels().to_vec()).unwrap();
        assert_eq!(&relabeled, a.algebra());
    }

    #[test]
    fn tensor_of_dual_numbers() {
        let f2 = Field::prime(2).unwrap();
        let d = augment_at_unit(truncated_polynomial(f2, 2)).unwrap();
        let t = tensor_algebra(&d, &d).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.algebra().validate().is_valid());
        assert_eq!(t.filtration().dims(), vec![4, 3, 1, 0]);
    }
}
