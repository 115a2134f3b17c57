use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::catalog::monomial_algebra;
use crate::algebra::{AugmentedAlgebra, Ideal};
use crate::error::Result;
use crate::exactmath::{sub, unit_vector, Field, Vector};

/// A random factor-closed word set on two letters, of size at most `max_dim`.
///
/// Words are added length by length; a word is a candidate once both of its
/// maximal proper factors are present.
pub fn random_monomial_algebra<R: Rng>(rng: &mut R, field: Field, max_dim: usize) -> Result<AugmentedAlgebra> {
    let letters = 2;
    let mut words: BTreeSet<Vec<usize>> = BTreeSet::new();
    words.insert(Vec::new());
    for l in 0..letters {
        words.insert(vec![l]);
    }
    let mut frontier: Vec<Vec<usize>> = (0..letters).map(|l| vec![l]).collect();
    while !frontier.is_empty() && words.len() < max_dim {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..letters {
                let mut v = w.clone();
                v.push(l);
                if words.contains(&v[1..].to_vec()) && words.contains(&v[..v.len() - 1].to_vec()) && !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        next.shuffle(rng);
        let mut kept = Vec::new();
        for v in next {
            if words.len() < max_dim && rng.gen_bool(0.6) {
                words.insert(v.clone());
                kept.push(v);
            }
        }
        kept.sort();
        frontier = kept;
    }
    monomial_algebra(field, &["x", "y"], &words)
}

/// The ideal generated by one or two random regular elements of the radical:
/// basis words or differences of two basis words. Such an ideal is spanned by
/// (signed) words and differences of words, so it has a regular basis.
pub fn random_regular_ideal<R: Rng>(rng: &mut R, a: &AugmentedAlgebra) -> Result<Ideal> {
    let n = a.dim();
    let field = a.field();
    let count = rng.gen_range(1..=2);
    let gens: Vec<Vector> = (0..count)
        .map(|_| {
            let i = rng.gen_range(1..n);
            let e = unit_vector(field, n, i);
            if n > 2 && rng.gen_bool(0.5) {
                let mut j = rng.gen_range(1..n);
                while j == i {
                    j = rng.gen_range(1..n);
                }
                sub(&e, &unit_vector(field, n, j))
            } else {
                e
            }
        })
        .collect();
    Ideal::generated_by(a.algebra(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mbasis::rays::{kernel_regular_basis, quotient_basis};
    use crate::mbasis::verify::BasisCandidate;
    use crate::exactmath::Subspace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_algebras_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_monomial_algebra(&mut rng, Field::prime(2).unwrap(), 10).unwrap();
            assert!(a.dim() <= 10);
            assert!(a.algebra().validate().is_valid());
        }
    }

    #[test]
    fn round_trip_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 0..30 {
            let field = Field::prime(if k % 2 == 0 { 2 } else { 3 }).unwrap();
            let a = random_monomial_algebra(&mut rng, field, 10).unwrap();
            let ideal = random_regular_ideal(&mut rng, &a).unwrap();
            let n = a.dim();
            let bs = BasisCandidate::new((0..n).map(|i| unit_vector(field, n, i)).collect());
            let q = quotient_basis(a.algebra(), &bs, &ideal).unwrap().unwrap();
            let z = kernel_regular_basis(a.algebra(), &bs, &q.projection, &q.quotient, &q.decomposition.i3)
                .unwrap();
            assert_eq!(&Subspace::from_vectors(field, n, z), ideal.space());
        }
    }
}
