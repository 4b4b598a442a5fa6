//! Exact linear-algebra invariants on random cyclotomic and rational matrices.

use proptest::prelude::*;
use quasicomm::scalar::{int, CycNum, CyclotomicField, Rational};
use quasicomm::Matrix;

fn cyc(order: u32, coeffs: Vec<i64>) -> CycNum {
    CycNum::from_poly(CyclotomicField::new(order), coeffs.into_iter().map(int).collect())
}

/// Random square matrix over Q(ζ_N) with small integer coordinates.
fn cyc_matrix(max_n: usize) -> impl Strategy<Value = Matrix<CycNum>> {
    (prop_oneof![Just(1u32), Just(3), Just(4), Just(5)], 1..=max_n).prop_flat_map(|(order, n)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), n * n).prop_map(move |cells| {
            let data = cells.into_iter().map(|c| cyc(order, c)).collect();
            Matrix::from_vec(n, n, data).unwrap()
        })
    })
}

fn rat_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(-4i64..=4, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(int).collect()).unwrap())
}

fn same_order_pair(n: usize) -> impl Strategy<Value = (Matrix<CycNum>, Matrix<CycNum>)> {
    prop_oneof![Just(1u32), Just(3), Just(4)].prop_flat_map(move |order| {
        let m = proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), n * n)
            .prop_map(move |cells| Matrix::from_vec(n, n, cells.into_iter().map(|c| cyc(order, c)).collect()).unwrap());
        (m.clone(), m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cayley_hamilton(a in cyc_matrix(6)) {
        let p = a.char_poly().unwrap();
        prop_assert!(a.eval_poly(&p).unwrap().is_zero());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(same_order_pair)) {
        let lhs = (&a * &b).determinant().unwrap();
        let rhs = a.determinant().unwrap() * b.determinant().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nullspace_vectors_are_exact_and_independent(a in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| rat_matrix(r, c))) {
        let basis = a.nullspace();
        prop_assert_eq!(a.rank() + basis.len(), a.cols());
        for v in &basis {
            prop_assert!((&a * v).is_zero());
        }
        if !basis.is_empty() {
            let refs: Vec<&Matrix<Rational>> = basis.iter().collect();
            let mut stacked = refs[0].clone();
            for v in &refs[1..] {
                stacked = stacked.hstack(v).unwrap();
            }
            prop_assert_eq!(stacked.rank(), basis.len());
            // A together with its kernel vectors as extra rows has full column rank.
            let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
            rows.extend(basis.iter().map(|v| v.data().to_vec()));
            prop_assert_eq!(Matrix::from_rows(rows).unwrap().rank(), a.cols());
        }
    }

    #[test]
    fn kron_mixed_product(
        a in rat_matrix(2, 3), c in rat_matrix(3, 2),
        b in rat_matrix(2, 2), d in rat_matrix(2, 1),
    ) {
        let lhs = &a.kron(&b).unwrap() * &c.kron(&d).unwrap();
        let rhs = (&a * &c).kron(&(&b * &d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_preserves_char_poly(a in rat_matrix(4, 4), shears in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..6)) {
        let mut s = Matrix::<Rational>::eye(4);
        for (i, j, c) in shears {
            if i != j {
                let v = s.get(i, j) + &int(c);
                s.set(i, j, v);
            }
        }
        prop_assume!(!s.determinant().unwrap().eq(&int(0)));
        prop_assert_eq!(a.conjugate(&s).unwrap().char_poly().unwrap(), a.char_poly().unwrap());
    }
}
