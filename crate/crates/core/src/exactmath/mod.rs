//! Exact scalars (`F_p`, `F_p(t)`) and dense exact linear algebra.

mod field;
mod linalg;
mod poly;

pub use field::{field_arith, ArithOp, Field, FieldKind, FieldValue, Fp, RatFn};
pub use linalg::{
    add, axpy, dot, format_combination, is_zero, leading_index, rref, scale, sub, unit_vector, zero_vector, Matrix,
    Subspace, Vector,
};
pub use poly::Poly;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn prime_vectors(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(0..p as i64, cols), rows)
    }

    fn to_vectors(field: Field, raw: &[Vec<i64>]) -> Vec<Vector> {
        raw.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect()
    }

    proptest! {
        #[test]
        fn rref_ignores_row_order(raw in prime_vectors(3, 5, 6), seed in any::<u64>()) {
            let f = Field::prime(3).unwrap();
            let rows = to_vectors(f, &raw);
            let mut shuffled = rows.clone();
            let n = shuffled.len();
            for i in 0..n {
                let j = ((seed >> (i * 7 % 60)) as usize + i) % n;
                shuffled.swap(i, j);
            }
            prop_assert_eq!(rref(f, 6, rows), rref(f, 6, shuffled));
        }

        #[test]
        fn dimension_formula(a in prime_vectors(2, 4, 7), b in prime_vectors(2, 4, 7)) {
            let f = Field::prime(2).unwrap();
            let u = rref(f, 7, to_vectors(f, &a));
            let v = rref(f, 7, to_vectors(f, &b));
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        }

        #[test]
        fn pth_power_witness_prime(x in 0i64..251, pi in 0usize..4) {
            let p = [2u32, 3, 5, 7][pi];
            let f = Field::prime(p).unwrap();
            let a = f.from_int(x);
            let ap = a.pow(p as u64);
            prop_assert_eq!(ap.is_pth_power(), Some(a));
        }

        #[test]
        fn pth_power_witness_rational(
            num in proptest::collection::vec(0i64..5, 1..4),
            den in proptest::collection::vec(0i64..5, 1..4),
            pi in 0usize..3,
        ) {
            let p = [2u32, 3, 5][pi];
            let f = Field::rational_function(p).unwrap();
            let mut den = den;
            if den.iter().all(|&c| c % p as i64 == 0) {
                den[0] = 1;
            }
            let a = f.ratio(num, den).unwrap();
            let ap = a.pow(p as u64);
            prop_assert_eq!(ap.is_pth_power(), Some(a));
        }
    }
}
