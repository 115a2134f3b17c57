use crate::error::{Error, Result};
use crate::exactmath::{format_combination, Matrix, Vector};

use super::augmented::AugmentedAlgebra;
use super::presentation::{sparse_from_dense, AlgebraPresentation};

/// A basis of `A` adapted to its radical filtration: the unit, then coset
/// representatives of `R^1/R^2`, then of `R^2/R^3`, and so on.
#[derive(Clone, Debug)]
pub struct Frame {
    reps: Vec<Vector>,
    layer_of: Vec<usize>,
    layer_start: Vec<usize>,
    /// Row `k` holds the frame coordinates of the standard basis vector `e_k`.
    coords: Matrix,
}

impl Frame {
    pub fn new(a: &AugmentedAlgebra) -> Result<Self> {
        let r = a.filtration();
        let c = r.nilpotency_index();
        let mut reps = vec![a.algebra().unit().clone()];
        let mut layer_of = vec![0];
        let mut layer_start = vec![0];
        for i in 1..c {
            layer_start.push(reps.len());
            for v in r.power(i).quotient_reps(&r.power(i + 1))? {
                reps.push(v);
                layer_of.push(i);
            }
        }
        layer_start.push(reps.len());
        let m = Matrix::from_rows(a.field(), a.dim(), reps.clone())?;
        let coords = m.inverse()?;
        Ok(Frame { reps, layer_of, layer_start, coords })
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    pub fn layer_of(&self) -> &[usize] {
        &self.layer_of
    }

    /// Number of layers, i.e. the nilpotency index of the radical (at least 1).
    pub fn layer_count(&self) -> usize {
        self.layer_start.len() - 1
    }

    /// Frame indices belonging to layer `i`.
    pub fn layer(&self, i: usize) -> std::ops::Range<usize> {
        if i + 1 >= self.layer_start.len() {
            let n = self.reps.len();
            return n..n;
        }
        self.layer_start[i]..self.layer_start[i + 1]
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        (0..self.layer_count()).map(|i| self.layer(i).len()).collect()
    }

    /// Coordinates of `v` in the frame.
    pub fn coordinates(&self, v: &[crate::exactmath::FieldValue]) -> Vector {
        self.coords.apply(v)
    }

    /// The image in `gr(A)` of `v ∈ R^i` modulo `R^{i+1}`: its frame coordinates
    /// on layer `i`, zero elsewhere.
    pub fn project(&self, v: &[crate::exactmath::FieldValue], i: usize) -> Vector {
        let mut c = self.coordinates(v);
        let keep = self.layer(i);
        for (k, x) in c.iter_mut().enumerate() {
            if !keep.contains(&k) {
                *x = self.coords.field().zero();
            }
        }
        c
    }

    /// Largest `k` with `v ∈ R^k`, read off the frame coordinates.
    pub fn depth(&self, v: &[crate::exactmath::FieldValue]) -> Option<usize> {
        let c = self.coordinates(v);
        c.iter().position(|x| !x.is_zero()).map(|k| self.layer_of[k])
    }
}

/// `gr(A) = ⊕ R^i/R^{i+1}` in the basis of frame images.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    algebra: AugmentedAlgebra,
    frame: Frame,
}

impl GradedAlgebra {
    pub fn algebra(&self) -> &AugmentedAlgebra {
        &self.algebra
    }

    /// The frame of the source algebra; `gr(A)` basis element `k` is the image of `frame.reps()[k]`.
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Degree of each basis element of `gr(A)`.
    pub fn degrees(&self) -> &[usize] {
        self.frame.layer_of()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.frame.layer_dims()
    }

    /// Basis pairs violating `(layer i)(layer j) ⊆ layer i+j`.
    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        let deg = self.degrees();
        let p = self.algebra.algebra();
        let mut out = Vec::new();
        for a in 0..p.dim() {
            for b in 0..p.dim() {
                if p.basis_product(a, b).iter().any(|(k, _)| deg[*k] != deg[a] + deg[b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn rep_label(v: &[crate::exactmath::FieldValue], labels: &[String], layer: usize) -> String {
    let combo = format_combination(v, labels);
    if combo.contains(' ') {
        format!("({combo})@{layer}")
    } else {
        format!("{combo}@{layer}")
    }
}

/// The associated graded algebra of `A` with respect to its radical filtration.
pub fn associated_graded(a: &AugmentedAlgebra) -> Result<GradedAlgebra> {
    let frame = Frame::new(a)?;
    let n = a.dim();
    let field = a.field();
    let alg = a.algebra();
    let mut mult = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let d = frame.layer_of[x] + frame.layer_of[y];
            let prod = alg.mul(&frame.reps[x], &frame.reps[y]);
            mult.push(sparse_from_dense(&frame.project(&prod, d)));
        }
    }
    let labels = (0..n).map(|k| rep_label(&frame.reps[k], a.labels(), frame.layer_of[k])).collect();
    let unit = crate::exactmath::unit_vector(field, n, 0);
    let p = AlgebraPresentation::new(field, labels, mult, unit.clone())?;
    let gr = AugmentedAlgebra::new(p, unit)?;
    if gr.filtration().layer_dims() != frame.layer_dims() {
        return Err(Error::Verification("gr(A) filtration does not match its grading".into()));
    }
    Ok(GradedAlgebra { algebra: gr, frame })
}
