use std::collections::BTreeMap;

use crate::algebra::{quotient_presentation, AlgebraPresentation, Ideal};
use crate::error::{Error, Result};
use crate::exactmath::{is_zero, sub, Matrix, Subspace, Vector};

use super::verify::{verify_multiplicative, BasisCandidate, ProductTable};

/// The index bookkeeping that turns a basis of `A` into a basis of `A/K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDecomposition {
    /// `a_i ∈ K`.
    pub i0: Vec<usize>,
    /// `i ∉ I_0` with some later `j ∉ I_0` and `a_i - a_j ∈ K`.
    pub i1: Vec<usize>,
    /// The least such `j`, for each `i ∈ I_1`.
    pub next: BTreeMap<usize, usize>,
    /// `I_1` minus the image of `next`: the starting points of the rays.
    pub i2: Vec<usize>,
    /// `i, next(i), next(next(i)), ...` for each `i ∈ I_2`.
    pub rays: Vec<Vec<usize>>,
    /// The starting point of the ray through each `i ∈ I_1`.
    pub root: BTreeMap<usize, usize>,
    /// Everything outside `I_0` and the image of `next`.
    pub i3: Vec<usize>,
    /// `a_i (i ∈ I_0)` followed by `a_i - a_next(i) (i ∈ I_1)`.
    pub k1: Vec<Vector>,
}

/// The ray decomposition together with the resulting quotient basis.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub decomposition: RayDecomposition,
    pub quotient: AlgebraPresentation,
    /// `dim A × dim B`; row `i` is the image of the `i`-th basis vector of `A`.
    pub projection: Matrix,
    /// `ψ(a_i)` for `i ∈ I_3`, in the order of `I_3`.
    pub basis: BasisCandidate,
    pub table: ProductTable,
}

/// `K` is not spanned by regular elements; `witness` is a vector of `K` outside their span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotRegular {
    pub witness: Vector,
}

/// Computes the ray decomposition of `bs` with respect to `k`.
///
/// Returns `Err(NotRegular)` if `K` has no `bs`-regular basis, which happens
/// exactly when the vectors `K_1` fail to span `K`.
pub fn ray_decomposition(bs: &BasisCandidate, k: &Subspace) -> Result<std::result::Result<RayDecomposition, NotRegular>> {
    let a = &bs.vectors;
    let n = a.len();
    if k.ambient() != n || a.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: k.ambient() });
    }
    let field = k.field();
    let i0: Vec<usize> = (0..n).filter(|&i| k.contains(&a[i])).collect();
    let in_i0 = |i: usize| i0.binary_search(&i).is_ok();
    let mut next = BTreeMap::new();
    for i in (0..n).filter(|&i| !in_i0(i)) {
        if let Some(j) = (i + 1..n).find(|&j| !in_i0(j) && k.contains(&sub(&a[i], &a[j]))) {
            next.insert(i, j);
        }
    }
    let i1: Vec<usize> = next.keys().copied().collect();
    let image: Vec<usize> = next.values().copied().collect();
    let mut sorted_image = image.clone();
    sorted_image.sort_unstable();
    sorted_image.dedup();
    if sorted_image.len() != image.len() {
        return Err(Error::Verification("successor map is not injective".into()));
    }
    let in_image = |i: usize| sorted_image.binary_search(&i).is_ok();
    let i2: Vec<usize> = i1.iter().copied().filter(|&i| !in_image(i)).collect();
    let mut rays = Vec::new();
    let mut root = BTreeMap::new();
    for &start in &i2 {
        let mut ray = vec![start];
        let mut cur = start;
        while let Some(&j) = next.get(&cur) {
            root.insert(cur, start);
            ray.push(j);
            cur = j;
        }
        rays.push(ray);
    }
    if root.len() != i1.len() {
        return Err(Error::Verification("some element of I_1 lies on no ray".into()));
    }
    let i3: Vec<usize> = (0..n).filter(|&i| !in_i0(i) && !in_image(i)).collect();
    let k1: Vec<Vector> = i0
        .iter()
        .map(|&i| a[i].clone())
        .chain(next.iter().map(|(&i, &j)| sub(&a[i], &a[j])))
        .collect();
    let span = Subspace::from_vectors(field, n, k1.iter().cloned());
    if span.dim() != k1.len() {
        return Err(Error::Verification("K_1 is linearly dependent".into()));
    }
    if let Some(w) = k.basis().iter().find(|v| !span.contains(v)) {
        return Ok(Err(NotRegular { witness: w.clone() }));
    }
    Ok(Ok(RayDecomposition { i0, i1, next, i2, rays, root, i3, k1 }))
}

/// Builds the multiplicative basis of `A/K` induced by a multiplicative basis
/// of `A` and an ideal with a regular basis.
pub fn quotient_basis(
    a: &AlgebraPresentation,
    bs: &BasisCandidate,
    k: &Ideal,
) -> Result<std::result::Result<QuotientBasis, NotRegular>> {
    if let Err(e) = verify_multiplicative(a, bs)? {
        return Err(Error::InvalidInput(format!("basis of A is not multiplicative: {e}")));
    }
    let decomposition = match ray_decomposition(bs, k.space())? {
        Ok(d) => d,
        Err(e) => return Ok(Err(e)),
    };
    let (quotient, projection) = quotient_presentation(a, k)?;
    let vectors: Vec<Vector> = decomposition.i3.iter().map(|&i| projection.apply(&bs.vectors[i])).collect();
    let basis = BasisCandidate { vectors, unit_required: false };
    let table = verify_multiplicative(&quotient, &basis)?
        .map_err(|e| Error::Verification(format!("induced quotient basis is not multiplicative: {e}")))?;
    Ok(Ok(QuotientBasis { decomposition, quotient, projection, basis, table }))
}

/// A regular basis of `Ker ψ` built from the members of `bs` that vanish under
/// `ψ` and the differences of members with equal nonzero images.
///
/// `psi` is `dim A × dim B`; `j` selects the members whose images form a
/// multiplicative basis of `B`. The span of the result is checked against the
/// kernel and a mismatch is reported as a verification error.
pub fn kernel_regular_basis(
    a: &AlgebraPresentation,
    bs: &BasisCandidate,
    psi: &Matrix,
    b: &AlgebraPresentation,
    j: &[usize],
) -> Result<Vec<Vector>> {
    let n = a.dim();
    if bs.len() != n || psi.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: psi.nrows() });
    }
    if psi.ncols() != b.dim() {
        return Err(Error::DimensionMismatch { expected: b.dim(), found: psi.ncols() });
    }
    if j.iter().any(|&i| i >= n) {
        return Err(Error::InvalidInput("index outside the basis".into()));
    }
    let images: Vec<Vector> = bs.vectors.iter().map(|v| psi.apply(v)).collect();
    let bs_b = BasisCandidate::new(j.iter().map(|&i| images[i].clone()).collect());
    if let Err(e) = verify_multiplicative(b, &bs_b)? {
        return Err(Error::InvalidInput(format!("selected images are not a multiplicative basis of B: {e}")));
    }
    let mut span = Subspace::zero(a.field(), n);
    let mut z = Vec::new();
    let take = |v: Vector, span: &mut Subspace, z: &mut Vec<Vector>| {
        if span.insert(v.clone()) {
            z.push(v);
        }
    };
    for i in 0..n {
        if is_zero(&images[i]) {
            take(bs.vectors[i].clone(), &mut span, &mut z);
        }
    }
    for i in 0..n {
        if is_zero(&images[i]) {
            continue;
        }
        for k in i + 1..n {
            if images[i] == images[k] {
                take(sub(&bs.vectors[i], &bs.vectors[k]), &mut span, &mut z);
            }
        }
    }
    if span != psi.kernel() {
        return Err(Error::Verification("regular vectors do not span the kernel".into()));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{truncated_free, truncated_polynomial};
    use crate::exactmath::{unit_vector, Field};

    fn standard(f: Field, n: usize) -> BasisCandidate {
        BasisCandidate::new((0..n).map(|i| unit_vector(f, n, i)).collect())
    }

    #[test]
    fn truncated_free_quotient() {
        let f2 = Field::prime(2).unwrap();
        let t = truncated_free(f2, &["x", "y"], 2);
        let a = t.algebra();
        let e = |i| unit_vector(f2, 7, i);
        // 1, x, y, x^2, xy, yx, y^2
        let k = Ideal::new(a, Subspace::from_vectors(f2, 7, [e(3), sub(&e(4), &e(5))])).unwrap();
        let q = quotient_basis(a, &standard(f2, 7), &k).unwrap().unwrap();
        assert_eq!(q.decomposition.i0, vec![3]);
        assert_eq!(q.decomposition.i1, vec![4]);
        assert_eq!(q.decomposition.next[&4], 5);
        assert_eq!(q.decomposition.rays, vec![vec![4, 5]]);
        assert_eq!(q.decomposition.i3, vec![0, 1, 2, 4, 6]);
        assert_eq!(q.quotient.dim(), 5);

        let z = kernel_regular_basis(a, &standard(f2, 7), &q.projection, &q.quotient, &[0, 1, 2, 4, 6]).unwrap();
        assert_eq!(z, vec![e(3), sub(&e(4), &e(5))]);
    }

    #[test]
    fn zero_ideal_keeps_basis() {
        let f3 = Field::prime(3).unwrap();
        let a = truncated_polynomial(f3, 3);
        let k = Ideal::new(&a, Subspace::zero(f3, 3)).unwrap();
        let q = quotient_basis(&a, &standard(f3, 3), &k).unwrap().unwrap();
        assert!(q.decomposition.i0.is_empty() && q.decomposition.i1.is_empty());
        assert_eq!(q.decomposition.i3, vec![0, 1, 2]);
        let id = Matrix::identity(f3, 3);
        assert!(kernel_regular_basis(&a, &standard(f3, 3), &id, &a, &[0, 1, 2]).unwrap().is_empty());
    }

    #[test]
    fn truncating_a_power() {
        let f2 = Field::prime(2).unwrap();
        let a = truncated_polynomial(f2, 4);
        let k = Ideal::new(&a, Subspace::from_vectors(f2, 4, [unit_vector(f2, 4, 3)])).unwrap();
        let q = quotient_basis(&a, &standard(f2, 4), &k).unwrap().unwrap();
        let z = kernel_regular_basis(&a, &standard(f2, 4), &q.projection, &q.quotient, &[0, 1, 2]).unwrap();
        assert_eq!(z, vec![unit_vector(f2, 4, 3)]);
    }

    #[test]
    fn non_regular_ideal_reports_witness() {
        // x^2 + y^2... take span{x^2 + xy} in the truncated free algebra over F_3:
        // no member and no difference of members lies in it.
        let f3 = Field::prime(3).unwrap();
        let t = truncated_free(f3, &["x", "y"], 2);
        let a = t.algebra();
        let v = crate::exactmath::add(&unit_vector(f3, 7, 3), &unit_vector(f3, 7, 4));
        let k = Ideal::new(a, Subspace::from_vectors(f3, 7, [v.clone()])).unwrap();
        let out = quotient_basis(a, &standard(f3, 7), &k).unwrap();
        assert_eq!(out.unwrap_err().witness, v);
    }

    #[test]
    fn chain_of_three_equal_classes() {
        // x^2 ≡ xy ≡ yx: one ray of length three, two differences in K_1.
        let f2 = Field::prime(2).unwrap();
        let t = truncated_free(f2, &["x", "y"], 2);
        let a = t.algebra();
        let e = |i| unit_vector(f2, 7, i);
        let k = Ideal::new(a, Subspace::from_vectors(f2, 7, [sub(&e(3), &e(4)), sub(&e(4), &e(5))])).unwrap();
        let q = quotient_basis(a, &standard(f2, 7), &k).unwrap().unwrap();
        assert_eq!(q.decomposition.rays, vec![vec![3, 4, 5]]);
        assert_eq!(q.decomposition.root[&4], 3);
        assert_eq!(q.decomposition.i3, vec![0, 1, 2, 3, 6]);
    }
}
