use crate::algebra::{AugmentedAlgebra, GradedAlgebra};
use crate::error::{Error, Result};

use super::verify::{verify_fmb, BasisCandidate, FmbCertificate, Product};

/// Carries an f.m.b. of `A` over to `gr(A)`: each member of depth `i` is
/// replaced by its image in `R^i/R^{i+1}`.
///
/// The graded products predicted from the table of `A` (the image of
/// `b_i b_j` in layer `d_i + d_j`, or zero if it is deeper) are compared
/// with the products computed in `gr(A)`, and the result is verified.
pub fn transport_fmb_to_gr(a: &AugmentedAlgebra, cert: &FmbCertificate, gr: &GradedAlgebra) -> Result<FmbCertificate> {
    if gr.algebra().dim() != a.dim() || cert.candidate.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: gr.algebra().dim() });
    }
    let frame = gr.frame();
    let vectors = cert
        .candidate
        .vectors
        .iter()
        .zip(&cert.depths)
        .map(|(v, &d)| frame.project(v, d))
        .collect();
    let candidate = BasisCandidate { vectors, unit_required: cert.candidate.unit_required };
    let graded = verify_fmb(gr.algebra(), &candidate)?
        .map_err(|e| Error::Verification(format!("transported basis is not an f.m.b. of gr(A): {e}")))?;
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let predicted = match cert.table.get(i, j) {
                Product::Index(k) if cert.depths[k] == cert.depths[i] + cert.depths[j] => Product::Index(k),
                _ => Product::Zero,
            };
            if graded.table.get(i, j) != predicted {
                return Err(Error::Verification(format!("graded product ({i},{j}) differs from the prediction")));
            }
        }
    }
    if graded.depths != cert.depths {
        return Err(Error::Verification("depths changed under transport".into()));
    }
    Ok(graded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{augment_at_unit, truncated_polynomial};
    use crate::algebra::{associated_graded, tensor_algebra};
    use crate::exactmath::{unit_vector, Field};
    use crate::mbasis::verify::reverify;

    fn standard_cert(a: &AugmentedAlgebra) -> FmbCertificate {
        let n = a.dim();
        let c = BasisCandidate::new((0..n).map(|i| unit_vector(a.field(), n, i)).collect());
        verify_fmb(a, &c).unwrap().unwrap()
    }

    #[test]
    fn truncated_polynomial_transports_to_itself() {
        let f2 = Field::prime(2).unwrap();
        let a = augment_at_unit(truncated_polynomial(f2, 4)).unwrap();
        let gr = associated_graded(&a).unwrap();
        let cert = standard_cert(&a);
        let g = transport_fmb_to_gr(&a, &cert, &gr).unwrap();
        assert_eq!(g.table, cert.table);
        assert!(reverify(gr.algebra(), &g).is_ok());
    }

    #[test]
    fn tensor_of_dual_numbers() {
        let f2 = Field::prime(2).unwrap();
        let d = augment_at_unit(truncated_polynomial(f2, 2)).unwrap();
        let a = tensor_algebra(&d, &d).unwrap();
        let gr = associated_graded(&a).unwrap();
        let g = transport_fmb_to_gr(&a, &standard_cert(&a), &gr).unwrap();
        assert_eq!(g.layer_counts, vec![1, 2, 1]);
    }
}
