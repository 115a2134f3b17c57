use serde::Serialize;

use crate::algebra::{quotient_presentation, AlgebraPresentation, Ideal};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Subspace};
use crate::rlie::catalog::make_family;
use crate::uenv::pbw_algebra;

use super::rays::ray_decomposition;
use super::verify::{verify_fmb, BasisCandidate};

/// Data claimed to exhibit `A ≅ u(L(m,n;s))/J`.
#[derive(Clone, Debug)]
pub struct HeisenbergWitness {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    /// An f.m.b. of `u(L(m,n;s))` in PBW coordinates.
    pub basis: BasisCandidate,
    pub ideal: Subspace,
    /// Rows are the images in `A` of the basis of `u(L(m,n;s))/J` produced by
    /// [`quotient_presentation`].
    pub iso: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageResult {
    pub stage: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergReport {
    pub certified: bool,
    pub first_failure: Option<&'static str>,
    /// Stages in order; stages after the first failure are not run.
    pub stages: Vec<StageResult>,
}

const STAGES: [&str; 3] = ["fmb", "regular-ideal", "isomorphism"];

/// Checks a Heisenberg-type witness for `A`. This verifies the witness; it
/// does not decide whether some witness exists.
pub fn certify_heisenberg_type(a: &AlgebraPresentation, w: &HeisenbergWitness) -> Result<HeisenbergReport> {
    if a.field().p() != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: a.field().p() });
    }
    let l = make_family(w.m, w.n, w.s, 2)?;
    let u = pbw_algebra(&l)?;
    let ua = u.algebra();
    let mut stages = Vec::new();

    let fmb = verify_fmb(ua, &w.basis)?;
    stages.push(StageResult {
        stage: STAGES[0],
        passed: fmb.is_ok(),
        detail: fmb.as_ref().err().map_or("basis verified".into(), |e| e.to_string()),
    });
    if fmb.is_ok() {
        let stage = match Ideal::new(ua.algebra(), w.ideal.clone()) {
            Err(e) => (false, e.to_string(), None),
            Ok(j) => match ray_decomposition(&w.basis, j.space())? {
                Ok(_) => (true, format!("ideal of dimension {} with a regular basis", j.dim()), Some(j)),
                Err(_) => (false, "ideal has no regular basis".into(), None),
            },
        };
        stages.push(StageResult { stage: STAGES[1], passed: stage.0, detail: stage.1 });
        if let Some(j) = stage.2 {
            let (q, _) = quotient_presentation(ua.algebra(), &j)?;
            let (passed, detail) = check_iso(&q, a, &w.iso)?;
            stages.push(StageResult { stage: STAGES[2], passed, detail });
        }
    }
    let first_failure = stages.iter().find(|s| !s.passed).map(|s| s.stage);
    let certified = stages.len() == STAGES.len() && first_failure.is_none();
    Ok(HeisenbergReport { certified, first_failure, stages })
}

fn check_iso(q: &AlgebraPresentation, a: &AlgebraPresentation, iso: &Matrix) -> Result<(bool, String)> {
    if iso.nrows() != q.dim() || iso.ncols() != a.dim() {
        return Ok((false, format!("map is {}x{}, expected {}x{}", iso.nrows(), iso.ncols(), q.dim(), a.dim())));
    }
    if iso.rank() != q.dim() {
        return Ok((false, "map is not bijective".into()));
    }
    if &iso.apply(q.unit()) != a.unit() {
        return Ok((false, "unit is not preserved".into()));
    }
    for i in 0..q.dim() {
        for j in 0..q.dim() {
            let lhs = iso.apply(&q.mul(&q.basis_vector(i), &q.basis_vector(j)));
            let rhs = a.mul(iso.row(i), iso.row(j));
            if lhs != rhs {
                return Ok((false, format!("not multiplicative on ({}, {})", q.labels()[i], q.labels()[j])));
            }
        }
    }
    Ok((true, "bijective and multiplicative".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::truncated_polynomial;
    use crate::exactmath::Field;
    use crate::uenv::word_image_basis;

    fn h1_witness(ideal: Subspace) -> (AlgebraPresentation, HeisenbergWitness) {
        let u = pbw_algebra(&make_family(0, 1, 1, 2).unwrap()).unwrap();
        let ua = u.algebra().algebra();
        let words = word_image_basis(u.algebra(), &[u.letter(0), u.letter(1)]).unwrap().unwrap();
        let j = Ideal::new(ua, ideal.clone()).unwrap();
        let (q, _) = quotient_presentation(ua, &j).unwrap();
        let iso = Matrix::identity(ua.field(), q.dim());
        (q, HeisenbergWitness { m: 0, n: 1, s: 1, basis: words.candidate, ideal, iso })
    }

    #[test]
    fn envelope_itself() {
        let f2 = Field::prime(2).unwrap();
        let (a, w) = h1_witness(Subspace::zero(f2, 8));
        let r = certify_heisenberg_type(&a, &w).unwrap();
        assert!(r.certified, "{r:?}");
    }

    #[test]
    fn quotient_by_top_word() {
        let f2 = Field::prime(2).unwrap();
        let u = pbw_algebra(&make_family(0, 1, 1, 2).unwrap()).unwrap();
        let ua = u.algebra().algebra();
        let (x, y) = (u.letter(0), u.letter(1));
        let top = ua.mul(&ua.mul(&x, &y), &ua.mul(&x, &y));
        let (a, w) = h1_witness(Subspace::from_vectors(f2, 8, [top]));
        assert_eq!(a.dim(), 7);
        assert!(certify_heisenberg_type(&a, &w).unwrap().certified);
    }

    #[test]
    fn wrong_map_names_the_stage() {
        let f2 = Field::prime(2).unwrap();
        let (a, mut w) = h1_witness(Subspace::zero(f2, 8));
        w.iso = Matrix::zero(f2, 8, 8);
        let r = certify_heisenberg_type(&a, &w).unwrap();
        assert!(!r.certified);
        assert_eq!(r.first_failure, Some("isomorphism"));
    }

    #[test]
    fn odd_characteristic_is_an_error() {
        let f3 = Field::prime(3).unwrap();
        let a = truncated_polynomial(f3, 3);
        let f2 = Field::prime(2).unwrap();
        let (_, w) = h1_witness(Subspace::zero(f2, 8));
        assert!(matches!(certify_heisenberg_type(&a, &w), Err(Error::WrongCharacteristic { .. })));
    }
}
