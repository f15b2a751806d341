//! Property-based checks of the exact linear algebra kernel: the rank
//! theorems and solver round trips must hold identically over the
//! rationals and over a prime field.

use proptest::prelude::*;

use dsplit_core::matrix::Matrix;
use dsplit_core::FieldSpec;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rational),
        Just(FieldSpec::gf(10007).unwrap()),
        Just(FieldSpec::gf(2).unwrap()),
    ]
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-6i64..=6, r * c).prop_map(move |entries| {
            let mut m = Matrix::zero(f, r, c);
            for (k, e) in entries.into_iter().enumerate() {
                m.set(k / c, k % c, f.from_i64(e));
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in small_matrix()) {
        let ker = a.kernel_basis();
        prop_assert!(a.mul(&ker).is_zero());
        prop_assert_eq!(a.rank() + ker.cols(), a.cols());
        prop_assert_eq!(ker.rank(), ker.cols());
    }

    #[test]
    fn rref_preserves_rank(a in small_matrix()) {
        let (r, pivots) = a.rref();
        prop_assert_eq!(pivots.len(), a.rank());
        prop_assert_eq!(r.rank(), a.rank());
    }

    #[test]
    fn transpose_rank(a in small_matrix()) {
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn solve_round_trip(a in small_matrix(), xs in proptest::collection::vec(-6i64..=6, 1..5)) {
        // consistent systems are always solved
        let f = a.field();
        let x: Vec<_> = (0..a.cols()).map(|j| f.from_i64(*xs.get(j).unwrap_or(&1))).collect();
        let b = a.mul_vec(&x);
        let sol = a.solve(&b).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(a.mul_vec(&sol.unwrap()), b);
    }

    #[test]
    fn inverse_when_invertible(a in small_matrix()) {
        if a.rows() == a.cols() {
            match a.inverse() {
                Some(inv) => prop_assert!(a.mul(&inv).is_identity()),
                None => prop_assert!(a.rank() < a.rows()),
            }
        }
    }

    #[test]
    fn column_space_dimension(a in small_matrix()) {
        let cs = a.column_space_basis();
        prop_assert_eq!(cs.cols(), a.rank());
        prop_assert_eq!(cs.rank(), a.rank());
    }

    #[test]
    fn scalar_format_parse_round_trip(f in fields(), n in -40i64..=40, d in 1i64..=9) {
        let s = match f.inv(&f.from_i64(d)) {
            Some(dinv) => f.mul(&f.from_i64(n), &dinv),
            None => f.from_i64(n),
        };
        let text = f.format(&s);
        prop_assert_eq!(f.parse(&text).unwrap(), s);
    }
}
