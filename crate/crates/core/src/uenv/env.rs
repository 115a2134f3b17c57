use crate::algebra::{sparse_to_dense, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldValue, Matrix, Subspace, Vector};
use crate::rlie::{adapted_presentation, dimension_subalgebras_with, DimensionChain, RestrictedLiePresentation};

use super::pbw::PbwEngine;

/// `u(L)` in a PBW monomial basis, with the Lie basis used for the monomials.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    lie: RestrictedLiePresentation,
    /// Letter `i` expressed in the coordinates of the input algebra.
    to_input: Vec<Vector>,
    heights: Option<Vec<usize>>,
    algebra: AugmentedAlgebra,
    weights: Vec<usize>,
}

impl EnvelopingAlgebra {
    fn from_engine(
        mut engine: PbwEngine,
        to_input: Vec<Vector>,
        heights: Option<Vec<usize>>,
    ) -> Result<Self> {
        let a = engine.to_algebra()?;
        let eps = unit_vector(a.field(), a.dim(), 0);
        let algebra = AugmentedAlgebra::new(a, eps)?;
        let lie = engine.lie().clone();
        let weights = (0..lie.dim()).map(|i| engine.letter_index(i)).collect();
        Ok(EnvelopingAlgebra { lie, to_input, heights, algebra, weights })
    }

    pub fn algebra(&self) -> &AugmentedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> AugmentedAlgebra {
        self.algebra
    }

    /// The Lie algebra in the basis of PBW letters.
    pub fn lie(&self) -> &RestrictedLiePresentation {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn p(&self) -> usize {
        self.lie.p() as usize
    }

    /// Heights of the letters, when the letters form an adapted basis.
    pub fn heights(&self) -> Option<&[usize]> {
        self.heights.as_deref()
    }

    pub fn letters_in_input(&self) -> &[Vector] {
        &self.to_input
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        let p = self.p();
        self.weights.iter().map(|w| (idx / w) % p).collect()
    }

    /// `ν(x_1^{a_1} ... x_n^{a_n}) = Σ a_i ν(x_i)`.
    pub fn monomial_heights(&self) -> Option<Vec<usize>> {
        let h = self.heights.as_ref()?;
        Some(
            (0..self.dim())
                .map(|m| self.exponents(m).iter().zip(h).map(|(a, v)| a * v).sum())
                .collect(),
        )
    }

    /// The element `x_i` of `u(L)`.
    pub fn letter(&self, i: usize) -> Vector {
        unit_vector(self.lie.field(), self.dim(), self.weights[i])
    }

    /// `v ∈ L` (letter coordinates) as an element of `u(L)`.
    pub fn embed(&self, v: &[FieldValue]) -> Vector {
        let mut out = self.algebra.algebra().zero();
        for (i, c) in v.iter().enumerate() {
            out[self.weights[i]] = c.clone();
        }
        out
    }

    /// Letter coordinates of `u` if it lies in `L`.
    pub fn lie_part(&self, u: &[FieldValue]) -> Option<Vector> {
        let mut out = self.lie.zero();
        for (m, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = self.weights.iter().position(|&w| w == m)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    /// The subspace `L` of `u(L)`.
    pub fn lie_subspace(&self) -> Subspace {
        Subspace::from_vectors(self.lie.field(), self.dim(), (0..self.lie.dim()).map(|i| self.letter(i)))
    }

    /// Letter coordinates of an input-basis vector.
    pub fn from_input(&self, v: &[FieldValue]) -> Result<Vector> {
        let m = Matrix::from_rows(self.lie.field(), self.lie.dim(), self.to_input.clone())?;
        Ok(m.inverse()?.apply(v))
    }
}

/// `u(L)` on the given basis of `L` (no heights attached).
pub fn pbw_algebra(l: &RestrictedLiePresentation) -> Result<EnvelopingAlgebra> {
    l.ensure_valid()?;
    let to_input = (0..l.dim()).map(|i| l.basis_vector(i)).collect();
    EnvelopingAlgebra::from_engine(PbwEngine::new(l.clone())?, to_input, None)
}

/// `u(L)` on the adapted basis of `chain`, so that monomial heights describe `ω^n`.
pub fn build_uenv(l: &RestrictedLiePresentation, chain: &DimensionChain) -> Result<EnvelopingAlgebra> {
    l.ensure_valid()?;
    let mut engine = PbwEngine::new(l.clone())?;
    let adapted = adapted_presentation(&mut engine, chain)?;
    EnvelopingAlgebra::from_engine(
        PbwEngine::new(adapted)?,
        chain.adapted_basis().to_vec(),
        Some(chain.heights().to_vec()),
    )
}

/// Computes the dimension subalgebras and builds `u(L)` on the adapted basis.
pub fn build_uenv_adapted(l: &RestrictedLiePresentation) -> Result<(DimensionChain, EnvelopingAlgebra)> {
    l.ensure_valid()?;
    let mut engine = PbwEngine::new(l.clone())?;
    let chain = dimension_subalgebras_with(&mut engine)?;
    let u = build_uenv(l, &chain)?;
    Ok((chain, u))
}

/// `ω(L)^n` as the span of monomials of height at least `n`.
pub fn omega_power_basis(u: &EnvelopingAlgebra, n: usize) -> Result<Subspace> {
    let heights = u
        .monomial_heights()
        .ok_or_else(|| Error::InvalidInput("u(L) was not built on an adapted basis".into()))?;
    let field = u.lie.field();
    let dim = u.dim();
    Ok(Subspace::from_vectors(
        field,
        dim,
        heights.iter().enumerate().filter(|(_, &h)| h >= n).map(|(m, _)| unit_vector(field, dim, m)),
    ))
}

/// `L ∩ ω(L)^m` in letter coordinates, computed from the radical filtration of `u(L)`.
pub fn lie_intersect_omega(u: &EnvelopingAlgebra, m: usize) -> Result<Subspace> {
    let meet = u.lie_subspace().intersect(&u.algebra.filtration().power(m))?;
    let vecs = meet.basis().iter().map(|v| u.lie_part(v).expect("lies in L")).collect::<Vec<_>>();
    Ok(Subspace::from_vectors(u.lie.field(), u.lie.dim(), vecs))
}

/// `v^{[p]}` for `v ∈ L` (letter coordinates), evaluated in `u(L)`.
pub fn pmap_eval(u: &EnvelopingAlgebra, v: &[FieldValue]) -> Result<Vector> {
    let x = u.embed(v);
    let power = u.algebra.algebra().pow(&x, u.p() as u64);
    u.lie_part(&power)
        .ok_or_else(|| Error::InvalidLie("p-th power of a Lie element left L inside u(L)".into()))
}

/// The p-map images of the letters as recorded in the presentation.
pub fn recorded_pmap(u: &EnvelopingAlgebra, i: usize) -> Vector {
    sparse_to_dense(u.lie.field(), u.lie.dim(), u.lie.basis_pmap(i))
}
