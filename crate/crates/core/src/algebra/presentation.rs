use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::{axpy, is_zero, unit_vector, zero_vector, Field, FieldValue, Vector};

/// Sorted `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, FieldValue)>;

/// Collects terms into a canonical sparse vector.
pub fn sparse_collect(terms: impl IntoIterator<Item = (usize, FieldValue)>) -> SparseVec {
    let mut acc: BTreeMap<usize, FieldValue> = BTreeMap::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        match acc.get_mut(&k) {
            Some(x) => *x = &*x + &c,
            None => {
                acc.insert(k, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn sparse_from_dense(v: &[FieldValue]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn sparse_to_dense(field: Field, n: usize, v: &SparseVec) -> Vector {
    let mut out = zero_vector(field, n);
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

/// A finite-dimensional associative algebra given by structure constants
/// `b_i b_j = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// Row-major `dim * dim` table of products of basis elements.
    mult: Vec<SparseVec>,
    unit: Vector,
}

/// Result of [`AlgebraPresentation::validate`]. Empty iff the presentation is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub associativity_failures: Vec<(usize, usize, usize)>,
    pub unit_failures: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

impl AlgebraPresentation {
    /// Builds a presentation from a full product table; `mult[i * dim + j]` is `b_i b_j`.
    pub fn new(field: Field, labels: Vec<String>, mult: Vec<SparseVec>, unit: Vector) -> Result<Self> {
        let dim = labels.len();
        if mult.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: mult.len() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: unit.len() });
        }
        for x in &unit {
            field.check(x)?;
        }
        let mut canonical = Vec::with_capacity(mult.len());
        for entry in mult {
            for (k, c) in &entry {
                if *k >= dim {
                    return Err(Error::InvalidAlgebra(format!("basis index {k} out of range")));
                }
                field.check(c)?;
            }
            canonical.push(sparse_collect(entry));
        }
        Ok(AlgebraPresentation { field, dim, labels, mult: canonical, unit })
    }

    /// Builds a presentation from `(i, j, k, c)` entries; missing products are zero.
    pub fn from_entries(
        field: Field,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, FieldValue)>,
        unit: Vector,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut mult = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim {
                return Err(Error::InvalidAlgebra(format!("basis pair ({i},{j}) out of range")));
            }
            mult[i * dim + j].push((k, c));
        }
        Self::new(field, labels, mult, unit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    /// All `(i, j, k, c)` structure constants in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &FieldValue)> + '_ {
        self.mult.iter().enumerate().flat_map(move |(ij, v)| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            v.iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn mul(&self, a: &[FieldValue], b: &[FieldValue]) -> Vector {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.mult[i * self.dim + j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[FieldValue], e: u64) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Left multiplication by `a` as a matrix acting on row vectors: `v -> a v`.
    pub fn left_mul_rows(&self, a: &[FieldValue]) -> Vec<Vector> {
        (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect()
    }

    fn sparse_mul_basis_left(&self, v: &SparseVec, k: usize) -> SparseVec {
        sparse_collect(
            v.iter()
                .flat_map(|(l, c)| self.mult[l * self.dim + k].iter().map(move |(m, d)| (*m, c * d))),
        )
    }

    fn sparse_mul_basis_right(&self, i: usize, v: &SparseVec) -> SparseVec {
        sparse_collect(
            v.iter()
                .flat_map(|(l, c)| self.mult[i * self.dim + l].iter().map(move |(m, d)| (*m, c * d))),
        )
    }

    /// Checks associativity on all basis triples and the unit laws on all basis elements.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i * n + j];
                for k in 0..n {
                    let lhs = self.sparse_mul_basis_left(ij, k);
                    let rhs = self.sparse_mul_basis_right(i, &self.mult[j * n + k]);
                    if lhs != rhs {
                        report.associativity_failures.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                report.unit_failures.push(i);
            }
        }
        report
    }

    /// Relabels the basis.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// The structure constants with respect to a new basis given by the rows of `basis`.
    pub fn change_basis(&self, basis: &[Vector], labels: Vec<String>) -> Result<Self> {
        let m = crate::exactmath::Matrix::from_rows(self.field, self.dim, basis.to_vec())?;
        let inv = m.inverse()?;
        let n = self.dim;
        let mut mult = Vec::with_capacity(n * n);
        for a in basis {
            for b in basis {
                mult.push(sparse_from_dense(&inv.apply(&self.mul(a, b))));
            }
        }
        let unit = inv.apply(&self.unit);
        Self::new(self.field, labels, mult, unit)
    }

    /// Whether `v * w == w * v` for all basis elements `w`.
    pub fn is_central(&self, v: &[FieldValue]) -> bool {
        (0..self.dim).all(|j| {
            let b = self.basis_vector(j);
            let mut d = self.mul(v, &b);
            axpy(&mut d, &-&self.field.one(), &self.mul(&b, v));
            is_zero(&d)
        })
    }
}
