use std::collections::HashMap;

use crate::algebra::{sparse_collect, AlgebraPresentation, SparseVec};
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldValue, Vector};
use crate::rlie::RestrictedLiePresentation;

/// Restricted PBW normal forms in `u(L)` for the ordered basis of `L`.
///
/// Monomials `x_1^{a_1} ... x_n^{a_n}` with `0 <= a_i < p` are indexed in mixed
/// radix with `a_1` most significant. Products are computed by multiplying on
/// the right by one letter at a time, rewriting
/// `x_j x_i -> x_i x_j + [x_j, x_i]` for `j > i` and `x_i^p -> x_i^{[p]}`.
#[derive(Clone, Debug)]
pub struct PbwEngine {
    lie: RestrictedLiePresentation,
    p: usize,
    n: usize,
    weights: Vec<usize>,
    memo: HashMap<(usize, usize), SparseVec>,
}

impl PbwEngine {
    pub fn new(lie: RestrictedLiePresentation) -> Result<Self> {
        let p = lie.p() as usize;
        let n = lie.dim();
        let count = (p as u128).checked_pow(n as u32).filter(|&c| c <= 1 << 24);
        if count.is_none() {
            return Err(Error::Unsupported(format!("u(L) of dimension {p}^{n} is too large")));
        }
        let mut weights = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * p;
        }
        Ok(PbwEngine { lie, p, n, weights, memo: HashMap::new() })
    }

    pub fn lie(&self) -> &RestrictedLiePresentation {
        &self.lie
    }

    pub fn monomial_count(&self) -> usize {
        self.p.pow(self.n as u32)
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        self.weights.iter().map(|w| (idx / w) % self.p).collect()
    }

    pub fn index(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    /// Index of the degree-one monomial `x_i`.
    pub fn letter_index(&self, i: usize) -> usize {
        self.weights[i]
    }

    /// Letters of a monomial in order, with multiplicity.
    pub fn letters(&self, idx: usize) -> Vec<usize> {
        self.exponents(idx).iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a)).collect()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.exponents(idx).iter().sum()
    }

    /// Normal form of `m * x_k` for the monomial with index `idx`.
    pub fn right_mul_letter(&mut self, idx: usize, k: usize) -> SparseVec {
        if let Some(v) = self.memo.get(&(idx, k)) {
            return v.clone();
        }
        let exps = self.exponents(idx);
        let one = self.lie.field().one();
        let last = exps.iter().rposition(|&a| a > 0);
        let result = match last {
            Some(j) if j > k => {
                // m = m' x_j with j > k: m x_k = (m' x_k) x_j + m' [x_j, x_k]
                let prime = idx - self.weights[j];
                let first = self.right_mul_letter(prime, k);
                let mut terms = Vec::new();
                for (b, c) in first {
                    for (m, d) in self.right_mul_letter(b, j) {
                        terms.push((m, &c * &d));
                    }
                }
                let br = self.lie.basis_bracket(j, k).clone();
                for (l, c) in br {
                    for (m, d) in self.right_mul_letter(prime, l) {
                        terms.push((m, &c * &d));
                    }
                }
                sparse_collect(terms)
            }
            Some(j) if j == k && exps[k] + 1 == self.p => {
                let prefix = idx - exps[k] * self.weights[k];
                let pm = self.lie.basis_pmap(k).clone();
                let mut terms = Vec::new();
                for (l, c) in pm {
                    for (m, d) in self.right_mul_letter(prefix, l) {
                        terms.push((m, &c * &d));
                    }
                }
                sparse_collect(terms)
            }
            _ => vec![(idx + self.weights[k], one)],
        };
        self.memo.insert((idx, k), result.clone());
        result
    }

    /// `a * x_k` for a sparse element `a`.
    pub fn mul_letter(&mut self, a: &SparseVec, k: usize) -> SparseVec {
        let mut terms = Vec::new();
        for (m, c) in a {
            for (r, d) in self.right_mul_letter(*m, k) {
                terms.push((r, c * &d));
            }
        }
        sparse_collect(terms)
    }

    pub fn mul(&mut self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (m, c) in b {
            let mut cur = a.clone();
            for k in self.letters(*m) {
                cur = self.mul_letter(&cur, k);
            }
            terms.extend(cur.into_iter().map(|(r, d)| (r, &d * c)));
        }
        sparse_collect(terms)
    }

    /// The element of `u(L)` corresponding to `v ∈ L`.
    pub fn embed(&self, v: &[FieldValue]) -> SparseVec {
        sparse_collect(v.iter().enumerate().map(|(i, c)| (self.weights[i], c.clone())))
    }

    /// Reads back an element of `u(L)` lying in `L`.
    pub fn extract(&self, u: &SparseVec) -> Option<Vector> {
        let mut out = self.lie.zero();
        for (m, c) in u {
            let i = self.weights.iter().position(|w| w == m)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    /// `v^{[p]}` evaluated as the associative `p`-th power inside `u(L)`.
    pub fn pmap(&mut self, v: &[FieldValue]) -> Result<Vector> {
        let e = self.embed(v);
        let mut acc = e.clone();
        for _ in 1..self.p {
            acc = self.mul(&acc, &e);
        }
        self.extract(&acc)
            .ok_or_else(|| Error::InvalidLie("p-th power of a Lie element left L inside u(L)".into()))
    }

    /// `v^{[p]^j}`.
    pub fn pmap_iter(&mut self, v: &[FieldValue], j: u32) -> Result<Vector> {
        let mut cur = v.to_vec();
        for _ in 0..j {
            cur = self.pmap(&cur)?;
        }
        Ok(cur)
    }

    /// Display label of a monomial.
    pub fn monomial_label(&self, idx: usize) -> String {
        let exps = self.exponents(idx);
        let mut out = String::new();
        for (i, &a) in exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let l = &self.lie.labels()[i];
            let simple = l.chars().all(|c| c.is_alphanumeric());
            match (a, simple) {
                (1, _) => out.push_str(l),
                (_, true) => out.push_str(&format!("{l}^{a}")),
                (_, false) => out.push_str(&format!("({l})^{a}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// The full structure-constant table of `u(L)` in the monomial basis.
    pub fn to_algebra(&mut self) -> Result<AlgebraPresentation> {
        let n = self.monomial_count();
        let field = self.lie.field();
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut cur = vec![(a, field.one())];
                for k in self.letters(b) {
                    cur = self.mul_letter(&cur, k);
                }
                mult.push(cur);
            }
        }
        let labels = (0..n).map(|i| self.monomial_label(i)).collect();
        AlgebraPresentation::new(field, labels, mult, unit_vector(field, n, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::rlie::catalog;

    #[test]
    fn heisenberg_swap() {
        let mut e = PbwEngine::new(catalog::heisenberg(3).unwrap()).unwrap();
        let f3 = Field::prime(3).unwrap();
        let y = vec![(e.letter_index(1), f3.one())];
        let x = vec![(e.letter_index(0), f3.one())];
        let yx = e.mul(&y, &x);
        // yx = xy - z
        let xy = e.index(&[1, 1, 0]);
        let z = e.letter_index(2);
        assert_eq!(yx, vec![(z, f3.from_int(2)), (xy, f3.one())]);
    }

    #[test]
    fn nilcyclic_is_truncated_polynomial() {
        let f2 = Field::prime(2).unwrap();
        let mut e = PbwEngine::new(catalog::nilcyclic(f2, 2)).unwrap();
        let a = e.to_algebra().unwrap();
        assert!(a.validate().is_valid());
        // x * x = x^[2]
        assert_eq!(a.basis_product(2, 2), &vec![(1, f2.one())]);
        assert_eq!(e.monomial_label(3), "xx^[2]");
    }

    #[test]
    fn pmap_of_sums() {
        let f2 = Field::prime(2).unwrap();
        let mut e = PbwEngine::new(catalog::l_d8()).unwrap();
        let xy = vec![f2.one(), f2.one(), f2.zero()];
        assert!(crate::exactmath::is_zero(&e.pmap(&xy).unwrap()));
        let mut h = PbwEngine::new(catalog::heisenberg(3).unwrap()).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert!(crate::exactmath::is_zero(&h.pmap(&[f3.one(), f3.one(), f3.zero()]).unwrap()));
    }
}
