use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, AugmentedAlgebra, Frame};
use crate::error::{Error, Result};
use crate::exactmath::{is_zero, sub, FieldValue, Matrix, Subspace, Vector};

/// A proposed basis, as coordinate vectors in the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCandidate {
    pub vectors: Vec<Vector>,
    pub unit_required: bool,
}

impl BasisCandidate {
    pub fn new(vectors: Vec<Vector>) -> Self {
        BasisCandidate { vectors, unit_required: false }
    }

    pub fn with_unit(vectors: Vec<Vector>) -> Self {
        BasisCandidate { vectors, unit_required: true }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `b_i b_j` is zero or a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Product {
    Zero,
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    n: usize,
    entries: Vec<Product>,
}

impl ProductTable {
    pub fn get(&self, i: usize, j: usize) -> Product {
        self.entries[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn entries(&self) -> &[Product] {
        &self.entries
    }

    pub fn from_entries(n: usize, entries: Vec<Product>) -> Self {
        ProductTable { n, entries }
    }
}

/// Why a candidate is not a (filtered) multiplicative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisFailure {
    Dependent,
    UnitMissing,
    /// `b_i b_j` is neither zero nor a member; its coordinates in the candidate are given.
    NotClosed { i: usize, j: usize, coords: Vector },
    /// The number of members of depth `>= layer` differs from `dim R^layer`.
    F1Mismatch { layer: usize, expected: usize, found: usize },
    /// Members `i`, `j` lie outside `R^k` but are congruent modulo `R^k`.
    F2Violation { k: usize, i: usize, j: usize },
}

impl std::fmt::Display for BasisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisFailure::Dependent => write!(f, "candidate is linearly dependent"),
            BasisFailure::UnitMissing => write!(f, "candidate does not contain the unit"),
            BasisFailure::NotClosed { i, j, .. } => write!(f, "product b{i}·b{j} is neither zero nor a member"),
            BasisFailure::F1Mismatch { layer, expected, found } => {
                write!(f, "{found} members in rad^{layer}, expected {expected}")
            }
            BasisFailure::F2Violation { k, i, j } => write!(f, "b{i} ≡ b{j} mod rad^{k}"),
        }
    }
}

pub type Checked<T> = std::result::Result<T, BasisFailure>;

/// Coordinates of the product relative to the candidate: zero, a member, or neither.
fn classify(coords: &[FieldValue]) -> Option<Product> {
    let mut found = None;
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || found.is_some() {
            return None;
        }
        found = Some(k);
    }
    Some(found.map_or(Product::Zero, Product::Index))
}

/// Checks that `C` is a basis with `C ∪ {0}` closed under multiplication.
pub fn verify_multiplicative(a: &AlgebraPresentation, c: &BasisCandidate) -> Result<Checked<ProductTable>> {
    let n = a.dim();
    if c.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.len() });
    }
    for v in &c.vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    if c.unit_required && !c.vectors.iter().any(|v| v == a.unit()) {
        return Ok(Err(BasisFailure::UnitMissing));
    }
    let inv = match Matrix::from_rows(a.field(), n, c.vectors.clone())?.inverse() {
        Ok(m) => m,
        Err(_) => return Ok(Err(BasisFailure::Dependent)),
    };
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let coords = inv.apply(&a.mul(&c.vectors[i], &c.vectors[j]));
            match classify(&coords) {
                Some(p) => entries.push(p),
                None => return Ok(Err(BasisFailure::NotClosed { i, j, coords })),
            }
        }
    }
    Ok(Ok(ProductTable { n, entries }))
}

/// A verified filtered multiplicative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmbCertificate {
    pub candidate: BasisCandidate,
    pub table: ProductTable,
    /// `d(i) = max{k : b_i ∈ R^k}`.
    pub depths: Vec<usize>,
    /// Number of members of depth exactly `k`, for `k = 0..c`.
    pub layer_counts: Vec<usize>,
}

impl FmbCertificate {
    pub fn members_of_depth(&self, d: usize) -> Vec<usize> {
        (0..self.depths.len()).filter(|&i| self.depths[i] == d).collect()
    }
}

/// Checks (F1) and (F2) on top of multiplicativity.
pub fn verify_fmb(a: &AugmentedAlgebra, c: &BasisCandidate) -> Result<Checked<FmbCertificate>> {
    let table = match verify_multiplicative(a.algebra(), c)? {
        Ok(t) => t,
        Err(e) => return Ok(Err(e)),
    };
    let frame = Frame::new(a)?;
    let r = a.filtration();
    let depths: Vec<usize> = c
        .vectors
        .iter()
        .map(|v| frame.depth(v).expect("basis vectors are nonzero"))
        .collect();
    let nil = r.nilpotency_index();
    let mut layer_counts = vec![0; nil];
    for &d in &depths {
        layer_counts[d] += 1;
    }
    for layer in 0..=nil {
        let found = depths.iter().filter(|&&d| d >= layer).count();
        let expected = r.power(layer).dim();
        if found != expected {
            return Ok(Err(BasisFailure::F1Mismatch { layer, expected, found }));
        }
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let diff = frame.depth(&sub(&c.vectors[i], &c.vectors[j])).expect("distinct members");
            let top = depths[i].max(depths[j]);
            if diff > top {
                return Ok(Err(BasisFailure::F2Violation { k: diff, i, j }));
            }
        }
    }
    Ok(Ok(FmbCertificate { candidate: c.clone(), table, depths, layer_counts }))
}

/// Re-checks a certificate from scratch without the frame: products are
/// recomputed and compared with the table, depths are recomputed by subspace
/// membership, and (F1) is checked by spanning each `R^k`.
pub fn reverify(a: &AugmentedAlgebra, cert: &FmbCertificate) -> std::result::Result<(), String> {
    let alg = a.algebra();
    let b = &cert.candidate.vectors;
    let n = alg.dim();
    if b.len() != n || cert.table.len() != n {
        return Err("size mismatch".into());
    }
    if Subspace::from_vectors(alg.field(), n, b.iter().cloned()).dim() != n {
        return Err("members are dependent".into());
    }
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&b[i], &b[j]);
            let ok = match cert.table.get(i, j) {
                Product::Zero => is_zero(&prod),
                Product::Index(k) => prod == b[k],
            };
            if !ok {
                return Err(format!("table entry ({i},{j}) is wrong"));
            }
        }
    }
    let r = a.filtration();
    for (i, v) in b.iter().enumerate() {
        if r.depth(v) != Some(cert.depths[i]) {
            return Err(format!("depth of member {i} is wrong"));
        }
    }
    for k in 0..=r.nilpotency_index() {
        let members = (0..n).filter(|&i| cert.depths[i] >= k).map(|i| b[i].clone());
        if Subspace::from_vectors(alg.field(), n, members) != r.power(k) {
            return Err(format!("members of depth >= {k} do not span rad^{k}"));
        }
    }
    Ok(())
}

/// For each `n >= 1`, every member of depth `n + 1` is a product of a depth-1
/// member and a depth-`n` member.
pub fn closure_fact_holds(cert: &FmbCertificate) -> bool {
    let top = cert.layer_counts.len();
    for n in 1..top.saturating_sub(1) {
        let mut hit = vec![false; cert.depths.len()];
        for i in cert.members_of_depth(1) {
            for j in cert.members_of_depth(n) {
                if let Product::Index(k) = cert.table.get(i, j) {
                    hit[k] = true;
                }
            }
        }
        if cert.members_of_depth(n + 1).iter().any(|&k| !hit[k]) {
            return false;
        }
    }
    true
}

/// How a vector sits relative to a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "tag")]
pub enum Regularity {
    Member { index: usize },
    Difference { plus: usize, minus: usize },
    NotRegular,
}

/// Tags each vector as a member `e_i`, a difference `e_j - e_k`, or not regular,
/// according to its coordinates in the basis `c`.
pub fn check_regular(c: &BasisCandidate, vectors: &[Vector]) -> Result<Vec<Regularity>> {
    let n = c.len();
    let field = c
        .vectors
        .first()
        .map(|v| v[0].field())
        .ok_or_else(|| Error::InvalidInput("empty basis".into()))?;
    let inv = Matrix::from_rows(field, n, c.vectors.clone())?.inverse()?;
    vectors
        .iter()
        .map(|v| {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            Ok(regularity(&inv.apply(v)))
        })
        .collect()
}

pub(crate) fn regularity(coords: &[FieldValue]) -> Regularity {
    let nz: Vec<usize> = (0..coords.len()).filter(|&k| !coords[k].is_zero()).collect();
    match nz.as_slice() {
        [i] if coords[*i].is_one() => Regularity::Member { index: *i },
        [i, j] => {
            let (a, b) = (&coords[*i], &coords[*j]);
            if a.is_one() && (-b).is_one() {
                Regularity::Difference { plus: *i, minus: *j }
            } else if b.is_one() && (-a).is_one() {
                Regularity::Difference { plus: *j, minus: *i }
            } else {
                Regularity::NotRegular
            }
        }
        _ => Regularity::NotRegular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{augment_at_unit, truncated_polynomial};
    use crate::exactmath::{unit_vector, Field};

    fn dual(f: Field) -> AugmentedAlgebra {
        augment_at_unit(truncated_polynomial(f, 2)).unwrap()
    }

    #[test]
    fn dual_numbers_word_basis() {
        let f2 = Field::prime(2).unwrap();
        let a = dual(f2);
        let c = BasisCandidate::new(vec![unit_vector(f2, 2, 0), unit_vector(f2, 2, 1)]);
        let t = verify_multiplicative(a.algebra(), &c).unwrap().unwrap();
        assert_eq!(t.get(1, 1), Product::Zero);
        let cert = verify_fmb(&a, &c).unwrap().unwrap();
        assert_eq!(cert.depths, vec![0, 1]);
        assert!(reverify(&a, &cert).is_ok());
    }

    #[test]
    fn one_plus_x_is_multiplicative_not_filtered() {
        let f2 = Field::prime(2).unwrap();
        let a = dual(f2);
        let c = BasisCandidate::new(vec![unit_vector(f2, 2, 0), vec![f2.one(), f2.one()]]);
        assert!(verify_multiplicative(a.algebra(), &c).unwrap().is_ok());
        assert!(matches!(verify_fmb(&a, &c).unwrap(), Err(BasisFailure::F1Mismatch { layer: 1, .. })));
    }

    #[test]
    fn truncated_polynomial_depths() {
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 4)).unwrap();
        let c = BasisCandidate::with_unit((0..4).map(|i| unit_vector(f2, 4, i)).collect());
        let cert = verify_fmb(&a, &c).unwrap().unwrap();
        assert_eq!(cert.depths, vec![0, 1, 2, 3]);
        assert!(closure_fact_holds(&cert));
    }

    #[test]
    fn f2_violation_is_found() {
        // F_2[x,y]/(x,y)^2 with basis 1, x, x+y: multiplicative since all products
        // in the radical vanish, but x ≡ x+y fails nothing; instead take
        // F_2[x]/(x^3) with 1, x, x+x^2: products x(x+x^2) = x^2 is not a member.
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 3)).unwrap();
        let c = BasisCandidate::new(vec![
            unit_vector(f2, 3, 0),
            unit_vector(f2, 3, 1),
            vec![f2.zero(), f2.one(), f2.one()],
        ]);
        assert!(matches!(verify_multiplicative(a.algebra(), &c).unwrap(), Err(BasisFailure::NotClosed { .. })));
    }

    #[test]
    fn regularity_tags() {
        let f3 = Field::prime(3).unwrap();
        let c = BasisCandidate::new((0..5).map(|i| unit_vector(f3, 5, i)).collect());
        let e = |i| unit_vector(f3, 5, i);
        let tags = check_regular(
            &c,
            &[e(2), sub(&e(1), &e(4)), crate::exactmath::add(&e(1), &e(2))],
        )
        .unwrap();
        assert_eq!(
            tags,
            vec![
                Regularity::Member { index: 2 },
                Regularity::Difference { plus: 1, minus: 4 },
                Regularity::NotRegular
            ]
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f2 = Field::prime(2).unwrap();
        let a = dual(f2);
        assert!(verify_multiplicative(a.algebra(), &BasisCandidate::new(vec![unit_vector(f2, 2, 0)])).is_err());
    }
}
