use serde::Serialize;

use crate::algebra::sparse_to_dense;
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldValue, Matrix, Subspace, Vector};

use super::catalog::nilcyclic;
use super::presentation::RestrictedLiePresentation;
use super::series::combination_label;

/// `L ≅ c_(s_1) ⊕ c_(s_2) ⊕ ...` with the chain basis realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    /// Nonincreasing exponents summing to `dim L`.
    pub exponents: Vec<usize>,
    /// One generator per exponent.
    pub generators: Vec<Vector>,
    /// `g, g^[p], ..., g^{[p]^{s-1}}` for each generator in turn.
    pub basis: Vec<Vector>,
}

impl CyclicDecomposition {
    /// The direct sum of nilcyclics with these exponents.
    pub fn model(&self, l: &RestrictedLiePresentation) -> Result<RestrictedLiePresentation> {
        let mut acc = RestrictedLiePresentation::abelian(l.field(), Vec::new(), Vec::new())?;
        for &s in &self.exponents {
            acc = acc.direct_sum(&nilcyclic(l.field(), s))?;
        }
        Ok(acc)
    }

    /// `L` in the chain basis; equal to [`Self::model`] up to labels when the decomposition is correct.
    pub fn transformed(&self, l: &RestrictedLiePresentation) -> Result<RestrictedLiePresentation> {
        let p = pmap_matrix(l);
        let pmaps: Vec<Vector> = self.basis.iter().map(|v| p.apply(v)).collect();
        let labels = self.basis.iter().map(|v| combination_label(v, l.labels())).collect();
        l.change_basis(&self.basis, &pmaps, labels)
    }
}

fn pmap_matrix(l: &RestrictedLiePresentation) -> Matrix {
    let rows = (0..l.dim()).map(|i| sparse_to_dense(l.field(), l.dim(), l.basis_pmap(i))).collect();
    Matrix::from_rows(l.field(), l.dim(), rows).expect("square")
}

/// Decomposes an abelian p-nilpotent algebra over `F_p` into nilcyclics.
///
/// On such an algebra the p-map is an `F_p`-linear nilpotent operator `P`, so
/// the decomposition is its Jordan form: generators of blocks of size exactly `k`
/// are chosen in `ker P^k` modulo `ker P^{k-1} + P(ker P^{k+1})`.
pub fn cyclic_decomposition(l: &RestrictedLiePresentation) -> Result<CyclicDecomposition> {
    if !l.field().is_prime_field() {
        return Err(Error::Unsupported("the p-map is only semilinear over F_p(t)".into()));
    }
    if !l.is_abelian() {
        return Err(Error::InvalidLie("cyclic decomposition needs an abelian algebra".into()));
    }
    let n = l.dim();
    let field = l.field();
    let p = pmap_matrix(l);
    let mut kernels = vec![Subspace::zero(field, n)];
    let mut power = Matrix::identity(field, n);
    while kernels.last().expect("nonempty").dim() < n {
        if kernels.len() > n {
            return Err(Error::NotPNilpotent("p-map is not nilpotent".into()));
        }
        power = power.mul(&p);
        kernels.push(power.kernel());
    }
    let top = kernels.len() - 1;
    let mut sized: Vec<(usize, Vec<Vector>)> = Vec::new();
    for k in (1..=top).rev() {
        let above = kernels.get(k + 1).unwrap_or(&kernels[top]);
        let image = Subspace::from_vectors(field, n, above.basis().iter().map(|v| p.apply(v)));
        let floor = kernels[k - 1].sum(&image.intersect(&kernels[k])?)?;
        sized.push((k, kernels[k].quotient_reps(&floor)?));
    }
    let mut exponents = Vec::new();
    let mut generators = Vec::new();
    let mut basis = Vec::new();
    for (k, gens) in sized {
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..k {
                basis.push(cur.clone());
                cur = p.apply(&cur);
            }
            exponents.push(k);
            generators.push(g);
        }
    }
    Ok(CyclicDecomposition { exponents, generators, basis })
}

/// Whether an abelian p-nilpotent algebra is a direct sum of nilcyclics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposability {
    /// `None` when the method does not apply.
    pub decomposable: Option<bool>,
    /// Dimension of `{ v : v^[p] = 0 }`.
    pub kernel_dim: usize,
    /// Dimension of the span of `L^[p]`.
    pub image_dim: usize,
    pub method: &'static str,
}

/// Decides decomposability into nilcyclics.
///
/// Over `F_p` this is always possible (see [`cyclic_decomposition`]). Over
/// `F_p(t)` the p-map is only semilinear; when it squares to zero, `L` is a sum
/// of copies of `c_(1)` and `c_(2)` exactly when the kernel and the span of the
/// image have complementary dimensions. Other cases are reported as undecided.
pub fn decompose_into_cyclics(l: &RestrictedLiePresentation) -> Result<Decomposability> {
    if !l.is_abelian() {
        return Err(Error::InvalidLie("cyclic decomposition needs an abelian algebra".into()));
    }
    let n = l.dim();
    let field = l.field();
    let m = pmap_matrix(l);
    let image_dim = m.rank();
    if field.is_prime_field() {
        let kernel_dim = m.kernel().dim();
        cyclic_decomposition(l)?;
        return Ok(Decomposability { decomposable: Some(true), kernel_dim, image_dim, method: "jordan" });
    }
    // v = sum a_i e_i is killed iff (a_i^p) is a relation among the rows of m
    // with coefficients in K^p; split each entry along 1, t, ..., t^{p-1}.
    let p = field.p() as usize;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n * p);
        for k in 0..n {
            row.extend(split_over_pth_powers(field, &m.row(i)[k])?);
        }
        rows.push(row);
    }
    let split = Matrix::from_rows(field, n * p, rows)?;
    let kernel_dim = n - split.rank();
    let semilinear = |v: &[FieldValue]| -> Vector {
        let mut out = l.zero();
        for (i, c) in v.iter().enumerate() {
            crate::exactmath::axpy(&mut out, &c.pow(p as u64), m.row(i));
        }
        out
    };
    let square_zero = (0..n).all(|i| crate::exactmath::is_zero(&semilinear(m.row(i))));
    let decomposable = square_zero.then_some(kernel_dim + image_dim == n);
    let method = if square_zero { "square-zero" } else { "undecided" };
    Ok(Decomposability { decomposable, kernel_dim, image_dim, method })
}

/// Coordinates `c_0, ..., c_{p-1}` in `K^p` (written as elements of `F_p(s)`,
/// `s = t^p`) with `c = sum c_q t^q`.
fn split_over_pth_powers(field: Field, c: &FieldValue) -> Result<Vec<FieldValue>> {
    let p = field.p();
    let FieldValue::Rational(r) = c else {
        return Err(Error::Unsupported("expected an element of F_p(t)".into()));
    };
    // c = num den^{p-1} / den^p and den^p = den(s)
    let mut f = r.num().clone();
    for _ in 1..p {
        f = f.mul(r.den(), p);
    }
    let den: Vec<i64> = r.den().coeffs().iter().map(|&x| x as i64).collect();
    (0..p as usize)
        .map(|q| {
            let part: Vec<i64> = f.coeffs().iter().skip(q).step_by(p as usize).map(|&x| x as i64).collect();
            let part = if part.is_empty() { vec![0] } else { part };
            field.ratio(part, den.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::rlie::catalog::abelian_zero;

    fn rank_oracle(l: &RestrictedLiePresentation) -> Vec<usize> {
        // blocks of size >= k: rank(P^{k-1}) - rank(P^k)
        let p = pmap_matrix(l);
        let n = l.dim();
        let mut ranks = vec![n];
        let mut m = Matrix::identity(l.field(), n);
        while *ranks.last().unwrap() > 0 {
            m = m.mul(&p);
            ranks.push(m.rank());
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut out = Vec::new();
        for k in (1..=at_least.len()).rev() {
            let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            out.extend(std::iter::repeat(k).take(exact));
        }
        out
    }

    fn check(l: &RestrictedLiePresentation, expected: &[usize]) {
        let d = cyclic_decomposition(l).unwrap();
        assert_eq!(d.exponents, expected);
        assert_eq!(rank_oracle(l), expected);
        let model = d.model(l).unwrap();
        let t = d.transformed(l).unwrap().with_labels(model.labels().to_vec()).unwrap();
        assert_eq!(t, model);
    }

    #[test]
    fn zero_p_map() {
        let f2 = Field::prime(2).unwrap();
        check(&abelian_zero(f2, &["x", "y", "z"]), &[1, 1, 1]);
    }

    #[test]
    fn single_chain() {
        check(&nilcyclic(Field::prime(2).unwrap(), 2), &[2]);
    }

    #[test]
    fn two_squares_to_one() {
        let f2 = Field::prime(2).unwrap();
        let l = RestrictedLiePresentation::abelian(
            f2,
            vec!["x".into(), "y".into(), "z".into()],
            vec![vec![(2, f2.one())], vec![(2, f2.one())], vec![]],
        )
        .unwrap();
        check(&l, &[2, 1]);
        let d = cyclic_decomposition(&l).unwrap();
        assert_eq!(d.generators[1], vec![f2.one(), f2.one(), f2.zero()]);
    }

    #[test]
    fn mixed_blocks_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let c = nilcyclic(f3, 3).direct_sum(&nilcyclic(f3, 1)).unwrap().direct_sum(&nilcyclic(f3, 2)).unwrap();
        check(&c, &[3, 2, 1]);
    }

    #[test]
    fn rejects_rational_and_nonabelian() {
        assert!(cyclic_decomposition(&crate::rlie::catalog::l_alpha(2).unwrap()).is_err());
        assert!(cyclic_decomposition(&crate::rlie::catalog::l_d8()).is_err());
    }

    #[test]
    fn l_t_does_not_decompose() {
        let l = crate::rlie::catalog::l_alpha(2).unwrap();
        let d = decompose_into_cyclics(&l).unwrap();
        assert_eq!((d.kernel_dim, d.image_dim), (1, 1));
        assert_eq!(d.decomposable, Some(false));
    }

    #[test]
    fn square_parameter_decomposes() {
        // x^[2] = t^2 z: x + t y is killed
        let f = Field::rational_function(2).unwrap();
        let t2 = f.ratio(vec![0, 0, 1], vec![1]).unwrap();
        let l = RestrictedLiePresentation::abelian(
            f,
            vec!["x".into(), "y".into(), "z".into()],
            vec![vec![(2, t2)], vec![(2, f.one())], vec![]],
        )
        .unwrap();
        let d = decompose_into_cyclics(&l).unwrap();
        assert_eq!((d.kernel_dim, d.image_dim), (2, 1));
        assert_eq!(d.decomposable, Some(true));
    }

    #[test]
    fn prime_field_always_decomposes() {
        let d = decompose_into_cyclics(&nilcyclic(Field::prime(3).unwrap(), 2)).unwrap();
        assert_eq!(d.decomposable, Some(true));
        assert_eq!((d.kernel_dim, d.image_dim), (1, 1));
    }
}
