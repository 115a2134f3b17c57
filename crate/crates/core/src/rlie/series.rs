use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::{format_combination, is_zero, FieldValue, Matrix, Subspace, Vector};
use crate::uenv::PbwEngine;

use super::presentation::RestrictedLiePresentation;

/// `γ_1 = L ⊇ γ_2 ⊇ ...` down to the first zero term (or to where it stabilizes).
pub fn lower_central_series(l: &RestrictedLiePresentation) -> Vec<Subspace> {
    let n = l.dim();
    let mut out = vec![Subspace::full(l.field(), n)];
    loop {
        let last = out.last().expect("nonempty");
        let mut next = Subspace::zero(l.field(), n);
        for i in 0..n {
            for v in last.basis() {
                next.insert(l.bracket(&l.basis_vector(i), v));
            }
        }
        let done = next.is_zero() || &next == last;
        out.push(next);
        if done {
            return out;
        }
    }
}

/// `γ_i(L)` (1-based); zero past the end of the series.
pub fn gamma(series: &[Subspace], i: usize) -> Subspace {
    series.get(i - 1).cloned().unwrap_or_else(|| series.last().expect("nonempty").clone())
}

/// Least `c` with `γ_{c+1} = 0`; `None` if the series stabilizes above zero.
pub fn nilpotency_class(l: &RestrictedLiePresentation) -> Option<usize> {
    lower_central_series(l).iter().position(Subspace::is_zero)
}

pub fn center(l: &RestrictedLiePresentation) -> Subspace {
    let n = l.dim();
    // z is central iff [z, x_j] = 0 for all j: left kernel of the n x n^2 matrix of brackets
    let rows = (0..n)
        .map(|i| (0..n).flat_map(|j| l.bracket(&l.basis_vector(i), &l.basis_vector(j))).collect())
        .collect();
    Matrix::from_rows(l.field(), n * n, rows).expect("shape").kernel()
}

/// Smallest subspace containing `gens` closed under the bracket and the p-map.
pub fn restricted_closure(engine: &mut PbwEngine, gens: impl IntoIterator<Item = Vector>) -> Result<Subspace> {
    let l = engine.lie().clone();
    let mut space = Subspace::from_vectors(l.field(), l.dim(), gens);
    loop {
        let before = space.dim();
        let basis = space.basis().to_vec();
        for a in &basis {
            for b in &basis {
                space.insert(l.bracket(a, b));
            }
            space.insert(engine.pmap(a)?);
        }
        if space.dim() == before {
            return Ok(space);
        }
    }
}

/// Distinct sample points for polynomial interpolation over `F_p(t)`:
/// `0, ..., p-1, t, t+1, ..., t^2, ...`.
fn sample_points(field: crate::exactmath::Field, count: usize) -> Vec<FieldValue> {
    let p = field.p() as i64;
    let t = field.t();
    let mut out = Vec::with_capacity(count);
    let mut power = field.zero();
    while out.len() < count {
        for c in 0..p {
            if out.len() == count {
                break;
            }
            out.push(&power + &field.from_int(c));
        }
        power = match (&t, power.is_zero()) {
            (Some(t), true) => t.clone(),
            (Some(t), false) => &power * t,
            (None, _) => break,
        };
    }
    out
}

/// The span of `{ v^{[p]^j} : v ∈ S }`.
///
/// Over `F_p` every element of `S` is enumerated up to scalars (since
/// `(λv)^{[p]^j} = λ v^{[p]^j}`). Over `F_p(t)` the map is polynomial of degree
/// `p^j` in the coordinates, so its image spans the same space as its values on a
/// grid with `p^j + 1` points per coordinate.
pub fn span_of_powers(engine: &mut PbwEngine, s: &Subspace, j: u32) -> Result<Subspace> {
    let l = engine.lie().clone();
    let field = l.field();
    let basis = s.basis().to_vec();
    let d = basis.len();
    let mut out = Subspace::zero(field, l.dim());
    if d == 0 {
        return Ok(out);
    }
    if j == 0 {
        return Ok(s.clone());
    }
    let limit: u128 = 1 << 20;
    let points: Vec<FieldValue>;
    if field.is_prime_field() {
        let p = field.p() as u128;
        if p.pow(d as u32) > limit {
            return Err(Error::Unsupported(format!("{}^{} points to enumerate", p, d)));
        }
        points = (0..field.p() as i64).map(|c| field.from_int(c)).collect();
    } else {
        let per_axis = (field.p() as u128).pow(j) + 1;
        if per_axis.checked_pow(d as u32).is_none_or(|c| c > limit) {
            return Err(Error::Unsupported(format!("{per_axis}^{d} grid points")));
        }
        points = sample_points(field, per_axis as usize);
    }
    let prime = field.is_prime_field();
    let mut idx = vec![0usize; d];
    loop {
        // over F_p only projective representatives: first nonzero coordinate is 1
        let lead = idx.iter().position(|&c| c != 0);
        let take = match lead {
            None => false,
            Some(k) => !prime || idx[k] == 1,
        };
        if take {
            let mut v = l.zero();
            for (c, b) in idx.iter().zip(&basis) {
                crate::exactmath::axpy(&mut v, &points[*c], b);
            }
            let w = engine.pmap_iter(&v, j)?;
            if !is_zero(&w) {
                out.insert(w);
            }
        }
        let mut pos = 0;
        loop {
            if pos == d {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < points.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The dimension subalgebras `D_m(L)` with heights and an adapted basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionChain {
    /// `terms[m - 1] = D_m`, ending with the first zero term.
    terms: Vec<Subspace>,
    /// Adapted basis vectors, in order of nondecreasing height.
    basis: Vec<Vector>,
    heights: Vec<usize>,
}

impl DimensionChain {
    /// `D_m` for `m >= 1`; zero beyond the chain.
    pub fn d(&self, m: usize) -> Subspace {
        assert!(m >= 1);
        self.terms.get(m - 1).cloned().unwrap_or_else(|| self.terms.last().expect("nonempty").clone())
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn adapted_basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Largest `m` with `v ∈ D_m`; `None` for zero.
    pub fn height(&self, v: &[FieldValue]) -> Option<usize> {
        if is_zero(v) {
            return None;
        }
        (1..=self.terms.len()).rev().find(|&m| self.terms[m - 1].contains(v))
    }
}

/// `D_m(L) = Σ_{i p^j >= m} γ_i(L)^{[p]^j}`.
pub fn dimension_subalgebras(l: &RestrictedLiePresentation) -> Result<DimensionChain> {
    l.ensure_valid()?;
    let mut engine = PbwEngine::new(l.clone())?;
    dimension_subalgebras_with(&mut engine)
}

pub fn dimension_subalgebras_with(engine: &mut PbwEngine) -> Result<DimensionChain> {
    let l = engine.lie().clone();
    let n = l.dim();
    let field = l.field();
    let p = l.p() as usize;
    let series = lower_central_series(&l);
    let class = series.iter().position(Subspace::is_zero).unwrap_or(series.len());
    let mut cache: HashMap<(usize, u32), Subspace> = HashMap::new();
    let mut terms = Vec::new();
    for m in 1.. {
        let mut dm = Subspace::zero(field, n);
        for i in 1..=class {
            let mut j = 0u32;
            while i * p.pow(j) < m {
                j += 1;
            }
            if !cache.contains_key(&(i, j)) {
                let gi = gamma(&series, i);
                let pw = span_of_powers(engine, &gi, j)?;
                let t = restricted_closure(engine, pw.basis().to_vec())?;
                cache.insert((i, j), t);
            }
            dm = dm.sum(&cache[&(i, j)])?;
        }
        let zero = dm.is_zero();
        terms.push(dm);
        if zero {
            break;
        }
        // every element of a p-nilpotent L has exponent at most dim L, so the
        // i = 1 term vanishes once p^j > p^{dim L}
        let mut j = 0u32;
        while p.pow(j) < m {
            j += 1;
        }
        if j as usize > n {
            return Err(Error::NotPNilpotent("some element has exponent larger than dim L".into()));
        }
    }
    let (basis, heights) = adapted_basis(&terms);
    Ok(DimensionChain { terms, basis, heights })
}

/// Greedy completion from the deepest nonzero term upward; within a height the
/// echelon basis vectors of `D_m` are scanned in order.
fn adapted_basis(terms: &[Subspace]) -> (Vec<Vector>, Vec<usize>) {
    let field = terms[0].field();
    let n = terms[0].ambient();
    let mut span = Subspace::zero(field, n);
    let mut layers: Vec<(usize, Vec<Vector>)> = Vec::new();
    for m in (1..=terms.len()).rev() {
        let mut layer = Vec::new();
        for v in terms[m - 1].basis() {
            if span.insert(v.clone()) {
                layer.push(v.clone());
            }
        }
        layers.push((m, layer));
    }
    layers.reverse();
    let mut basis = Vec::new();
    let mut heights = Vec::new();
    for (m, layer) in layers {
        for v in layer {
            basis.push(v);
            heights.push(m);
        }
    }
    (basis, heights)
}

/// `L` re-expressed in the adapted basis of `chain`.
pub fn adapted_presentation(engine: &mut PbwEngine, chain: &DimensionChain) -> Result<RestrictedLiePresentation> {
    let l = engine.lie().clone();
    let basis = chain.adapted_basis();
    let pmaps = basis.iter().map(|v| engine.pmap(v)).collect::<Result<Vec<_>>>()?;
    let labels = basis.iter().map(|v| combination_label(v, l.labels())).collect();
    l.change_basis(basis, &pmaps, labels)
}

pub(crate) fn combination_label(v: &[FieldValue], labels: &[String]) -> String {
    let s = format_combination(v, labels);
    if s.contains('+') || s.contains('·') {
        format!("({s})")
    } else {
        s
    }
}

/// Least `n` with `z^{[p]^n} = 0` for every `z ∈ S`.
pub fn exponent(engine: &mut PbwEngine, s: &[Vector]) -> Result<usize> {
    let dim = engine.lie().dim();
    let mut best = 0;
    for z in s {
        let mut cur = z.clone();
        let mut k = 0;
        while !is_zero(&cur) {
            if k > dim {
                return Err(Error::NotPNilpotent("element is not p-nilpotent".into()));
            }
            cur = engine.pmap(&cur)?;
            k += 1;
        }
        best = best.max(k);
    }
    Ok(best)
}

/// Summary of [`structure_queries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub class: Option<usize>,
    pub center: Subspace,
    pub is_p_nilpotent: bool,
}

pub fn structure_queries(l: &RestrictedLiePresentation) -> Result<StructureReport> {
    l.ensure_valid()?;
    let is_p_nilpotent = match dimension_subalgebras(l) {
        Ok(_) => true,
        Err(Error::NotPNilpotent(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(StructureReport { class: nilpotency_class(l), center: center(l), is_p_nilpotent })
}

/// `gr(L) = ⊕ D_n/D_{n+1}` in the images of the adapted basis.
pub fn graded_lie(engine: &mut PbwEngine, chain: &DimensionChain) -> Result<RestrictedLiePresentation> {
    let adapted = adapted_presentation(engine, chain)?;
    let n = adapted.dim();
    let h = chain.heights();
    let keep = |v: &crate::algebra::SparseVec, deg: usize| -> crate::algebra::SparseVec {
        v.iter().filter(|(k, _)| h[*k] == deg).cloned().collect()
    };
    let mut bracket = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            bracket.push(keep(adapted.basis_bracket(a, b), h[a] + h[b]));
        }
    }
    let p = adapted.p() as usize;
    let pmap = (0..n).map(|a| keep(adapted.basis_pmap(a), p * h[a])).collect();
    let labels = adapted
        .labels()
        .iter()
        .zip(h)
        .map(|(l, m)| format!("{l}@{m}"))
        .collect();
    RestrictedLiePresentation::new(adapted.field(), labels, bracket, pmap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::rlie::catalog;

    #[test]
    fn heisenberg_chain() {
        let h = catalog::heisenberg(3).unwrap();
        let c = dimension_subalgebras(&h).unwrap();
        assert_eq!(c.dims(), vec![3, 1, 0]);
        assert_eq!(c.heights(), &[1, 1, 2]);
        assert_eq!(nilpotency_class(&h), Some(2));
        assert_eq!(center(&h).dim(), 1);
        let s = lower_central_series(&h);
        assert_eq!(s[1].dim(), 1);
        assert!(s[2].is_zero());
    }

    #[test]
    fn d8_chain() {
        let l = catalog::l_d8();
        let c = dimension_subalgebras(&l).unwrap();
        assert_eq!(c.dims(), vec![3, 1, 0]);
        assert_eq!(c.heights(), &[1, 1, 2]);
        let mut e = PbwEngine::new(l.clone()).unwrap();
        let full = Subspace::full(l.field(), 3);
        let sq = span_of_powers(&mut e, &full, 1).unwrap();
        assert_eq!(restricted_closure(&mut e, sq.basis().to_vec()).unwrap().dim(), 1);
    }

    #[test]
    fn l_alpha_chain() {
        let l = catalog::l_alpha(2).unwrap();
        let c = dimension_subalgebras(&l).unwrap();
        assert_eq!(c.dims(), vec![3, 1, 0]);
        assert_eq!(c.heights(), &[1, 1, 2]);
    }

    #[test]
    fn nilcyclic_exponent_and_heights() {
        let f2 = Field::prime(2).unwrap();
        let c3 = catalog::nilcyclic(f2, 3);
        let mut e = PbwEngine::new(c3.clone()).unwrap();
        assert_eq!(exponent(&mut e, &[c3.basis_vector(0)]).unwrap(), 3);
        let chain = dimension_subalgebras(&c3).unwrap();
        assert_eq!(chain.heights(), &[1, 2, 4]);
        assert_eq!(nilpotency_class(&c3), Some(1));
    }

    #[test]
    fn non_nilpotent_p_map_is_rejected() {
        let f2 = Field::prime(2).unwrap();
        let l = RestrictedLiePresentation::abelian(f2, vec!["x".into()], vec![vec![(0, f2.one())]]).unwrap();
        assert!(matches!(dimension_subalgebras(&l), Err(Error::NotPNilpotent(_))));
        assert!(!structure_queries(&l).unwrap().is_p_nilpotent);
    }

    #[test]
    fn graded_heisenberg_is_heisenberg() {
        let h = catalog::heisenberg(3).unwrap();
        let chain = dimension_subalgebras(&h).unwrap();
        let mut e = PbwEngine::new(h.clone()).unwrap();
        let gr = graded_lie(&mut e, &chain).unwrap();
        let relabeled = gr.with_labels(h.labels().to_vec()).unwrap();
        assert_eq!(relabeled, h);
    }

    #[test]
    fn graded_l_alpha_keeps_p_map() {
        let l = catalog::l_alpha(2).unwrap();
        let chain = dimension_subalgebras(&l).unwrap();
        let mut e = PbwEngine::new(l.clone()).unwrap();
        let gr = graded_lie(&mut e, &chain).unwrap();
        assert_eq!(gr.dim(), 3);
        assert!(gr.is_abelian());
        assert_eq!(gr.basis_pmap(0), &vec![(2, l.field().t().unwrap())]);
    }
}
