//! Dense exact linear algebra: vectors, matrices and canonical subspaces.
//!
//! Vectors are rows; a matrix `M` acts on the right, `v -> v * M`.

use std::fmt;

use super::field::{Field, FieldValue};
use crate::error::{Error, Result};

pub type Vector = Vec<FieldValue>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[FieldValue]) -> bool {
    v.iter().all(FieldValue::is_zero)
}

/// `y += a * x`.
#[inline]
pub fn axpy(y: &mut [FieldValue], a: &FieldValue, x: &[FieldValue]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale(v: &[FieldValue], a: &FieldValue) -> Vector {
    v.iter().map(|x| a * x).collect()
}

pub fn add(a: &[FieldValue], b: &[FieldValue]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[FieldValue], b: &[FieldValue]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[FieldValue], b: &[FieldValue]) -> FieldValue {
    let mut acc = match a.first() {
        Some(x) => x.field().zero(),
        None => return b.first().map(|x| x.field().zero()).expect("dot of empty vectors"),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Index of the first nonzero entry.
pub fn leading_index(v: &[FieldValue]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Renders `v` as a linear combination of labelled basis elements.
pub fn format_combination(v: &[FieldValue], labels: &[String]) -> String {
    let mut out = String::new();
    for (x, label) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if x.is_one() {
            out.push_str(label);
        } else if x.is_simple() {
            out.push_str(&format!("{x}·{label}"));
        } else {
            out.push_str(&format!("({x})·{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A dense matrix with entries in a single field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vector>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: r.len() });
            }
            for x in r {
                field.check(x)?;
            }
        }
        Ok(Matrix { field, ncols, rows })
    }

    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix { field, ncols, rows: vec![zero_vector(field, ncols); nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix { field, ncols: n, rows: (0..n).map(|i| unit_vector(field, n, i)).collect() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldValue {
        &self.rows[i][j]
    }

    /// `v * self`.
    pub fn apply(&self, v: &[FieldValue]) -> Vector {
        debug_assert_eq!(v.len(), self.rows.len());
        let mut out = zero_vector(self.field, self.ncols);
        for (c, row) in v.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.ncols, other.nrows());
        Matrix {
            field: self.field,
            ncols: other.ncols,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { field: self.field, ncols: self.rows.len(), rows }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.ncols);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.ncols, self.rows.iter().cloned())
    }

    /// The left kernel `{ v : v * self = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let n = self.rows.len();
        let augmented = self.rows.iter().enumerate().map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit_vector(self.field, n, i));
            row
        });
        let big = Subspace::from_vectors(self.field, self.ncols + n, augmented);
        let kernel_rows = big
            .rows
            .iter()
            .filter(|r| is_zero(&r[..self.ncols]))
            .map(|r| r[self.ncols..].to_vec());
        Subspace::from_vectors(self.field, n, kernel_rows)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows.len();
        if n != self.ncols {
            return Err(Error::DimensionMismatch { expected: n, found: self.ncols });
        }
        let augmented = self.rows.iter().enumerate().map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit_vector(self.field, n, i));
            row
        });
        let big = Subspace::from_vectors(self.field, 2 * n, augmented);
        if big.dim() != n || big.pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Verification("matrix is singular".into()));
        }
        Ok(Matrix { field: self.field, ncols: n, rows: big.rows.iter().map(|r| r[n..].to_vec()).collect() })
    }
}

/// A subspace stored by its reduced row-echelon basis. The representation is
/// canonical, so two subspaces are equal iff their representations are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

/// Row-reduces `rows` into canonical form.
pub fn rref(field: Field, ncols: usize, rows: impl IntoIterator<Item = Vector>) -> Subspace {
    Subspace::from_vectors(field, ncols, rows)
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the basis; the result is zero iff `v` was in the span.
    pub fn reduce_in_place(&self, v: &mut [FieldValue]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let coeff = -&v[c];
                axpy(v, &coeff, row);
            }
        }
    }

    pub fn reduce(&self, v: &[FieldValue]) -> Vector {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w
    }

    pub fn contains(&self, v: &[FieldValue]) -> bool {
        v.len() == self.ambient && is_zero(&self.reduce(v))
    }

    /// Adds `v` to the subspace, keeping the basis in reduced row-echelon form.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce_in_place(&mut v);
        let Some(c) = leading_index(&v) else {
            return false;
        };
        let inv = v[c].inv().expect("nonzero pivot");
        v = scale(&v, &inv);
        for row in self.rows.iter_mut() {
            if !row[c].is_zero() {
                let coeff = -&row[c];
                axpy(row, &coeff, &v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v);
        true
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[FieldValue]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    /// Intersection by the Zassenhaus method.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let zero = zero_vector(self.field, n);
        let stacked = self
            .rows
            .iter()
            .map(|u| {
                let mut r = u.clone();
                r.extend(u.iter().cloned());
                r
            })
            .chain(other.rows.iter().map(|v| {
                let mut r = v.clone();
                r.extend(zero.iter().cloned());
                r
            }));
        let big = Subspace::from_vectors(self.field, 2 * n, stacked);
        let rows = big.rows.iter().filter(|r| is_zero(&r[..n])).map(|r| r[n..].to_vec());
        Ok(Subspace::from_vectors(self.field, n, rows))
    }

    /// For `V ⊆ self`, vectors of `self` forming a basis modulo `V`.
    ///
    /// The representatives are the echelon basis of the projection of `self`
    /// onto the complement of `V`'s pivot columns, which depends only on the two
    /// subspaces.
    pub fn quotient_reps(&self, v: &Subspace) -> Result<Vec<Vector>> {
        self.check_ambient(v)?;
        if !v.is_subspace_of(self) {
            return Err(Error::NotASubspace);
        }
        let reduced = self.rows.iter().map(|r| v.reduce(r));
        Ok(Subspace::from_vectors(self.field, self.ambient, reduced).rows)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(field: Field, rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect()
    }

    #[test]
    fn rref_examples() {
        let f2 = Field::prime(2).unwrap();
        let s = rref(f2, 2, vecs(f2, &[&[1, 1], &[0, 1]]));
        assert_eq!(s.basis(), vecs(f2, &[&[1, 0], &[0, 1]]).as_slice());
        let s = rref(f2, 2, vecs(f2, &[&[1, 1], &[1, 1]]));
        assert_eq!(s.basis(), vecs(f2, &[&[1, 1]]).as_slice());

        let ft = Field::rational_function(2).unwrap();
        let t = ft.t().unwrap();
        let s = rref(ft, 2, vec![vec![t.clone(), ft.one()]]);
        assert_eq!(s.basis(), &[vec![ft.one(), t.inv().unwrap()]]);
    }

    #[test]
    fn subspace_operation_examples() {
        let f2 = Field::prime(2).unwrap();
        let u = rref(f2, 2, vecs(f2, &[&[1, 0], &[0, 1]]));
        let v = rref(f2, 2, vecs(f2, &[&[0, 1]]));
        assert_eq!(u.quotient_reps(&v).unwrap().len(), 1);
        assert_eq!(v.quotient_reps(&u), Err(Error::NotASubspace));

        let a = rref(f2, 2, vecs(f2, &[&[1, 1]]));
        let b = rref(f2, 2, vecs(f2, &[&[1, 0]]));
        assert!(a.intersect(&b).unwrap().is_zero());

        let w = rref(f2, 3, vecs(f2, &[&[1, 1, 0], &[0, 0, 1]]));
        assert!(w.contains(&vecs(f2, &[&[1, 1, 1]])[0]));
        assert!(!w.contains(&vecs(f2, &[&[1, 0, 1]])[0]));
    }

    #[test]
    fn kernel_and_inverse() {
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_rows(f3, 2, vecs(f3, &[&[1, 2], &[2, 1], &[1, 1]])).unwrap();
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in k.basis() {
            assert!(is_zero(&m.apply(v)));
        }
        let sq = Matrix::from_rows(f3, 2, vecs(f3, &[&[1, 2], &[0, 1]])).unwrap();
        let inv = sq.inverse().unwrap();
        assert_eq!(sq.mul(&inv), Matrix::identity(f3, 2));
        let sing = Matrix::from_rows(f3, 2, vecs(f3, &[&[1, 2], &[2, 1]])).unwrap();
        assert!(sing.inverse().is_err());
    }
}
