use graphcx_core::linalg::{P1, P2};
use graphcx_core::{FieldTag, SparseMatrix, Q};
use proptest::prelude::*;

fn dense(rows: usize, cols: usize, v: &[i64]) -> SparseMatrix {
    let t = (0..rows * cols).filter(|&i| v[i] != 0).map(|i| (i / cols, i % cols, Q::from(v[i]))).collect();
    SparseMatrix::from_triplets(rows, cols, FieldTag::Rational, t)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// A 50×30 times 30×50 product with a unit-triangular factor pair has rank 30.
    #[test]
    fn product_of_rank_thirty(a in proptest::collection::vec(-9i64..=9, 50 * 30), b in proptest::collection::vec(-9i64..=9, 30 * 50)) {
        let mut a = a;
        let mut b = b;
        // Identity blocks on top of A and on the left of B pin the rank.
        for i in 0..30 {
            for j in 0..30 {
                a[i * 30 + j] = (i == j) as i64;
                b[i * 50 + j] = (i == j) as i64;
            }
        }
        let m = dense(50, 30, &a).mul(&dense(30, 50, &b));
        prop_assert_eq!(m.rank_over(FieldTag::Prime(P1)).unwrap(), 30);
        prop_assert_eq!(m.rank_over(FieldTag::Prime(P2)).unwrap(), 30);
        prop_assert_eq!(m.rank_over(FieldTag::Rational).unwrap(), 30);
    }

    /// Sparse elimination agrees with the dense path and with ℚ.
    #[test]
    fn large_sparse_ranks_agree(seed in proptest::collection::vec((0usize..600, 0usize..520, -3i64..=3), 1500..3000)) {
        let t: Vec<_> = seed.into_iter().filter(|e| e.2 != 0).map(|(r, c, v)| (r, c, Q::from(v))).collect();
        let m = SparseMatrix::from_triplets(600, 520, FieldTag::Rational, t);
        let q = m.rank_over(FieldTag::Rational).unwrap();
        prop_assert_eq!(m.rank_over(FieldTag::Prime(P1)).unwrap(), q);
        prop_assert_eq!(m.rank_over(FieldTag::Prime(P2)).unwrap(), q);
    }
}
