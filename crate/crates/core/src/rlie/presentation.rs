use std::collections::BTreeMap;

use crate::algebra::{sparse_collect, sparse_from_dense, sparse_to_dense, SparseVec};
use crate::error::{Error, Result};
use crate::exactmath::{axpy, is_zero, zero_vector, Field, FieldValue, Matrix, Vector};

/// A restricted Lie algebra given by brackets and `p`-map images of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLiePresentation {
    field: Field,
    labels: Vec<String>,
    /// Row-major `dim * dim` table; entry `i * dim + j` is `[x_i, x_j]`.
    bracket: Vec<SparseVec>,
    pmap: Vec<SparseVec>,
}

/// Result of [`RestrictedLiePresentation::validate`]; empty iff valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieValidationReport {
    pub skew_failures: Vec<(usize, usize)>,
    pub jacobi_failures: Vec<(usize, usize, usize)>,
    pub restricted_failures: Vec<usize>,
}

impl LieValidationReport {
    pub fn is_valid(&self) -> bool {
        self.skew_failures.is_empty() && self.jacobi_failures.is_empty() && self.restricted_failures.is_empty()
    }
}

impl RestrictedLiePresentation {
    pub fn new(field: Field, labels: Vec<String>, bracket: Vec<SparseVec>, pmap: Vec<SparseVec>) -> Result<Self> {
        let n = labels.len();
        if bracket.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: bracket.len() });
        }
        if pmap.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: pmap.len() });
        }
        let check = |v: SparseVec| -> Result<SparseVec> {
            for (k, c) in &v {
                if *k >= n {
                    return Err(Error::InvalidLie(format!("basis index {k} out of range")));
                }
                field.check(c)?;
            }
            Ok(sparse_collect(v))
        };
        let bracket = bracket.into_iter().map(check).collect::<Result<_>>()?;
        let pmap = pmap.into_iter().map(check).collect::<Result<_>>()?;
        Ok(RestrictedLiePresentation { field, labels, bracket, pmap })
    }

    /// Builds from `(i, j, k, c)` bracket entries and `(i, k, c)` p-map entries.
    /// When no entry is given for `(j, i)`, the bracket `[x_j, x_i]` is taken to be `-[x_i, x_j]`.
    pub fn from_entries(
        field: Field,
        labels: Vec<String>,
        bracket: impl IntoIterator<Item = (usize, usize, usize, FieldValue)>,
        pmap: impl IntoIterator<Item = (usize, usize, FieldValue)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut given: BTreeMap<(usize, usize), Vec<(usize, FieldValue)>> = BTreeMap::new();
        for (i, j, k, c) in bracket {
            if i >= n || j >= n {
                return Err(Error::InvalidLie(format!("bracket pair ({i},{j}) out of range")));
            }
            given.entry((i, j)).or_default().push((k, c));
        }
        let mut table = vec![Vec::new(); n * n];
        for (&(i, j), v) in &given {
            table[i * n + j] = v.clone();
            if !given.contains_key(&(j, i)) {
                table[j * n + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
            }
        }
        let mut pm = vec![Vec::new(); n];
        for (i, k, c) in pmap {
            if i >= n {
                return Err(Error::InvalidLie(format!("p-map index {i} out of range")));
            }
            pm[i].push((k, c));
        }
        Self::new(field, labels, table, pm)
    }

    /// The abelian algebra of dimension `labels.len()` with the given p-map.
    pub fn abelian(field: Field, labels: Vec<String>, pmap: Vec<SparseVec>) -> Result<Self> {
        let n = labels.len();
        Self::new(field, labels, vec![Vec::new(); n * n], pmap)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u8 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.bracket[i * self.dim() + j]
    }

    pub fn basis_pmap(&self, i: usize) -> &SparseVec {
        &self.pmap[i]
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &FieldValue)> + '_ {
        let n = self.dim();
        self.bracket.iter().enumerate().flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn pmap_entries(&self) -> impl Iterator<Item = (usize, usize, &FieldValue)> + '_ {
        self.pmap.iter().enumerate().flat_map(|(i, v)| v.iter().map(move |(k, c)| (i, *k, c)))
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        crate::exactmath::unit_vector(self.field, self.dim(), i)
    }

    pub fn bracket(&self, u: &[FieldValue], v: &[FieldValue]) -> Vector {
        let n = self.dim();
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.bracket[i * n + j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// `ad u` acting on row vectors: row `j` is `[u, x_j]`.
    pub fn ad(&self, u: &[FieldValue]) -> Matrix {
        let rows = (0..self.dim()).map(|j| self.bracket(u, &self.basis_vector(j))).collect();
        Matrix::from_rows(self.field, self.dim(), rows).expect("square")
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(Vec::is_empty)
    }

    /// Checks skew symmetry, the Jacobi identity on basis triples, and
    /// `(ad x_i)^p = ad(x_i^{[p]})` for every basis element.
    pub fn validate(&self) -> LieValidationReport {
        let n = self.dim();
        let mut report = LieValidationReport::default();
        for i in 0..n {
            for j in i..n {
                let ij = &self.bracket[i * n + j];
                let ji: SparseVec = self.bracket[j * n + i].iter().map(|(k, c)| (*k, -c)).collect();
                if *ij != sparse_collect(ji) || (i == j && !ij.is_empty()) {
                    report.skew_failures.push((i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (xi, xj, xk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let mut s = self.bracket(&xi, &self.bracket(&xj, &xk));
                    axpy(&mut s, &self.field.one(), &self.bracket(&xj, &self.bracket(&xk, &xi)));
                    axpy(&mut s, &self.field.one(), &self.bracket(&xk, &self.bracket(&xi, &xj)));
                    if !is_zero(&s) {
                        report.jacobi_failures.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let lhs = self.ad(&self.basis_vector(i)).pow(self.p() as u64);
            let rhs = self.ad(&sparse_to_dense(self.field, n, &self.pmap[i]));
            if lhs != rhs {
                report.restricted_failures.push(i);
            }
        }
        report
    }

    /// Fails with a description of the first violation.
    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if let Some((i, j)) = r.skew_failures.first() {
            return Err(Error::InvalidLie(format!("bracket not skew on ({}, {})", self.labels[*i], self.labels[*j])));
        }
        if let Some((i, j, k)) = r.jacobi_failures.first() {
            return Err(Error::InvalidLie(format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.labels[*i], self.labels[*j], self.labels[*k]
            )));
        }
        if let Some(i) = r.restricted_failures.first() {
            return Err(Error::InvalidLie(format!("(ad {0})^p != ad({0}^[p])", self.labels[*i])));
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Re-expresses the algebra in the basis given by `rows`; `pmaps[a]` must be
    /// the p-th power of `rows[a]` in the old coordinates.
    pub fn change_basis(&self, rows: &[Vector], pmaps: &[Vector], labels: Vec<String>) -> Result<Self> {
        let n = self.dim();
        let inv = Matrix::from_rows(self.field, n, rows.to_vec())?.inverse()?;
        let mut bracket = Vec::with_capacity(n * n);
        for a in rows {
            for b in rows {
                bracket.push(sparse_from_dense(&inv.apply(&self.bracket(a, b))));
            }
        }
        let pmap = pmaps.iter().map(|v| sparse_from_dense(&inv.apply(v))).collect();
        Self::new(self.field, labels, bracket, pmap)
    }

    /// `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (n, m) = (self.dim(), other.dim());
        let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, c)| (k + n, c.clone())).collect() };
        let mut bracket = vec![Vec::new(); (n + m) * (n + m)];
        for i in 0..n {
            for j in 0..n {
                bracket[i * (n + m) + j] = self.bracket[i * n + j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                bracket[(i + n) * (n + m) + j + n] = shift(&other.bracket[i * m + j]);
            }
        }
        let pmap = self.pmap.iter().cloned().chain(other.pmap.iter().map(shift)).collect();
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Self::new(self.field, labels, bracket, pmap)
    }

    /// Extension of scalars, e.g. from `F_p` to `F_p(t)`.
    pub fn extend_scalars(&self, field: Field) -> Result<Self> {
        let lift = |v: &SparseVec| -> Result<SparseVec> {
            v.iter().map(|(k, c)| Ok((*k, field.embed(c)?))).collect()
        };
        let bracket = self.bracket.iter().map(lift).collect::<Result<_>>()?;
        let pmap = self.pmap.iter().map(lift).collect::<Result<_>>()?;
        Self::new(field, self.labels.clone(), bracket, pmap)
    }
}
