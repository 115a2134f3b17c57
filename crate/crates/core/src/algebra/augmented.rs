use crate::error::{Error, Result};
use crate::exactmath::{dot, Matrix, Subspace, Vector};

use super::presentation::AlgebraPresentation;

/// The chain `A = R^0 ⊇ R^1 ⊇ ... ⊇ R^c = 0` of radical powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalFiltration {
    powers: Vec<Subspace>,
}

impl RadicalFiltration {
    /// `R^i`; zero beyond the nilpotency index.
    pub fn power(&self, i: usize) -> Subspace {
        match self.powers.get(i) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.powers[0].field(), self.powers[0].ambient()),
        }
    }

    pub fn powers(&self) -> &[Subspace] {
        &self.powers
    }

    /// `dim R^0, dim R^1, ..., dim R^c = 0`.
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }

    /// `dim R^i / R^{i+1}` for `i = 0..c`.
    pub fn layer_dims(&self) -> Vec<usize> {
        self.powers.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }

    /// Least `c` with `R^c = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }

    /// Largest `k` with `v ∈ R^k`; `None` for the zero vector.
    pub fn depth(&self, v: &[crate::exactmath::FieldValue]) -> Option<usize> {
        let c = self.nilpotency_index();
        if crate::exactmath::is_zero(v) {
            return None;
        }
        (0..c).rev().find(|&k| self.powers[k].contains(v))
    }
}

/// An algebra with an augmentation `ε: A -> F` whose kernel is nilpotent, so
/// that `rad(A) = ker ε` and `A = F·1 ⊕ rad(A)`.
#[derive(Clone, Debug)]
pub struct AugmentedAlgebra {
    algebra: AlgebraPresentation,
    augmentation: Vector,
    filtration: RadicalFiltration,
}

impl AugmentedAlgebra {
    /// Checks that `ε` is an algebra map onto `F` and computes the powers of its kernel.
    pub fn new(algebra: AlgebraPresentation, augmentation: Vector) -> Result<Self> {
        let n = algebra.dim();
        let field = algebra.field();
        if augmentation.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: augmentation.len() });
        }
        for x in &augmentation {
            field.check(x)?;
        }
        if !dot(&augmentation, algebra.unit()).is_one() {
            return Err(Error::NotAugmentedNilpotent("augmentation does not send 1 to 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let mut prod = field.zero();
                for (k, c) in algebra.basis_product(i, j) {
                    prod = &prod + &(c * &augmentation[*k]);
                }
                if prod != &augmentation[i] * &augmentation[j] {
                    return Err(Error::NotAugmentedNilpotent(format!(
                        "augmentation is not multiplicative on ({}, {})",
                        algebra.labels()[i],
                        algebra.labels()[j]
                    )));
                }
            }
        }
        let functional = Matrix::from_rows(field, 1, augmentation.iter().map(|x| vec![x.clone()]).collect())?;
        let kernel = functional.kernel();
        let filtration = powers_of_ideal(&algebra, kernel)?;
        Ok(AugmentedAlgebra { algebra, augmentation, filtration })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn augmentation(&self) -> &Vector {
        &self.augmentation
    }

    pub fn aug_ideal(&self) -> &Subspace {
        &self.filtration.powers[1]
    }

    pub fn filtration(&self) -> &RadicalFiltration {
        &self.filtration
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> crate::exactmath::Field {
        self.algebra.field()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn into_parts(self) -> (AlgebraPresentation, Vector) {
        (self.algebra, self.augmentation)
    }
}

/// The radical filtration of an augmented algebra.
pub fn radical_filtration(a: &AugmentedAlgebra) -> &RadicalFiltration {
    a.filtration()
}

/// `I ⊇ I^2 ⊇ ...` for an ideal `I`, failing if `I` is not nilpotent within `dim A` steps.
///
/// Uses `I^{k+1} = I^k · Γ` where `Γ` spans `I` modulo `I^2`: every element of
/// `I^{k+1}` is a sum of words of length at least `k+1` in `Γ` when `I` is nilpotent.
fn powers_of_ideal(algebra: &AlgebraPresentation, ideal: Subspace) -> Result<RadicalFiltration> {
    let field = algebra.field();
    let n = algebra.dim();
    let full = Subspace::full(field, n);
    let mut square = Subspace::zero(field, n);
    for a in ideal.basis() {
        for b in ideal.basis() {
            square.insert(algebra.mul(a, b));
        }
    }
    if square == ideal && !ideal.is_zero() {
        return Err(Error::NotAugmentedNilpotent("augmentation ideal equals its square".into()));
    }
    if !square.is_subspace_of(&ideal) {
        return Err(Error::NotAugmentedNilpotent("kernel of the augmentation is not an ideal".into()));
    }
    let generators = ideal.quotient_reps(&square)?;
    let mut powers = vec![full, ideal.clone()];
    if !ideal.is_zero() {
        powers.push(square);
    }
    while !powers.last().expect("nonempty").is_zero() {
        if powers.len() > n + 2 {
            return Err(Error::NotAugmentedNilpotent("augmentation ideal is not nilpotent".into()));
        }
        let last = powers.last().expect("nonempty");
        let mut next = Subspace::zero(field, n);
        for r in last.basis() {
            for g in &generators {
                next.insert(algebra.mul(r, g));
            }
        }
        if next == *last {
            return Err(Error::NotAugmentedNilpotent("augmentation ideal is not nilpotent".into()));
        }
        powers.push(next);
    }
    Ok(RadicalFiltration { powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{truncated_free, truncated_polynomial};
    use crate::exactmath::{unit_vector, Field};

    #[test]
    fn truncated_polynomial_filtration() {
        let f2 = Field::prime(2).unwrap();
        let a = truncated_polynomial(f2, 4);
        let aug = AugmentedAlgebra::new(a, unit_vector(f2, 4, 0)).unwrap();
        assert_eq!(aug.filtration().dims(), vec![4, 3, 2, 1, 0]);
        assert_eq!(aug.filtration().nilpotency_index(), 4);
        assert_eq!(aug.filtration().depth(&unit_vector(f2, 4, 2)), Some(2));
    }

    #[test]
    fn truncated_free_filtration() {
        let f2 = Field::prime(2).unwrap();
        let t = truncated_free(f2, &["x", "y"], 2);
        assert_eq!(t.filtration().dims(), vec![7, 6, 4, 0]);
    }

    #[test]
    fn non_nilpotent_augmentation_is_rejected() {
        let f2 = Field::prime(2).unwrap();
        // F_2 x F_2 with augmentation onto the first factor: kernel is idempotent.
        let labels = vec!["e".to_string(), "f".to_string()];
        let one = f2.one();
        let a = crate::algebra::AlgebraPresentation::from_entries(
            f2,
            labels,
            vec![(0, 0, 0, one.clone()), (1, 1, 1, one.clone())],
            vec![one.clone(), one.clone()],
        )
        .unwrap();
        let err = AugmentedAlgebra::new(a, vec![one.clone(), f2.zero()]).unwrap_err();
        assert!(matches!(err, Error::NotAugmentedNilpotent(_)));
    }
}
