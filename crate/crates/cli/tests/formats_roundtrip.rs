//! Read-after-write round trips of every file format.

use std::collections::BTreeMap;

use graphcx::formats::{read_basis, read_matrix, table_csv, table_from_json, table_to_json, write_basis, write_matrix};
use graphcx_core::{generate_basis, CohomologyTable, ComplexId, EnumOptions, Family, FieldTag, SparseMatrix, Q};
use proptest::prelude::*;

fn arb_field() -> impl Strategy<Value = FieldTag> {
    prop_oneof![Just(FieldTag::Rational), Just(FieldTag::Prime(32003)), Just(FieldTag::Prime(65521))]
}

fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..12, 1usize..12, arb_field()).prop_flat_map(|(r, c, f)| {
        proptest::collection::vec((0..r, 0..c, -50i64..50, 1i64..7), 0..40).prop_map(move |t| {
            let t = t.into_iter().map(|(i, j, n, d)| (i, j, Q::new(n, d))).collect();
            SparseMatrix::from_triplets(r, c, f, t)
        })
    })
}

fn arb_table() -> impl Strategy<Value = CohomologyTable> {
    (
        0usize..Family::ALL.len(),
        1i32..5,
        1usize..6,
        arb_field(),
        proptest::collection::btree_map(-20i32..20, (0usize..50, 0usize..50), 0..8),
        any::<bool>(),
    )
        .prop_map(|(f, d, g, field, m, truncated)| {
            let dims: BTreeMap<i32, usize> = m.iter().map(|(&k, &(h, _))| (k, h)).collect();
            let basis_sizes = m.iter().map(|(&k, &(h, c))| (k, h + c)).collect();
            CohomologyTable {
                id: ComplexId::new(Family::ALL[f], d).unwrap(),
                g,
                field,
                reported: dims.keys().copied().collect(),
                dims,
                basis_sizes,
                truncated,
            }
        })
}

proptest! {
    #[test]
    fn matrices_round_trip(m in arb_matrix()) {
        let text = write_matrix(&m);
        let back = read_matrix(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(write_matrix(&back), text);
    }

    #[test]
    fn tables_round_trip_through_json(t in arb_table()) {
        let back = table_from_json(&table_to_json(&t)).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(table_csv(&back).lines().count(), t.dims.len() + 1);
    }
}

#[test]
fn bases_round_trip() {
    for (f, d, g) in [(Family::Gc, 2, 3), (Family::DGc, 3, 2), (Family::GcTDd1, 2, 2), (Family::RdGc4Edge, 2, 2)] {
        let c = ComplexId::new(f, d).unwrap();
        let (lo, hi) = c.spec().degree_range(g, 5).unwrap();
        for k in lo..=hi {
            let b = generate_basis(c, g, k, EnumOptions::new(5)).unwrap();
            let text = write_basis(&b);
            let back = read_basis(&text).unwrap();
            assert_eq!(back.elems, b.elems);
            assert_eq!((back.id, back.g, back.k), (b.id, b.g, b.k));
            assert_eq!(write_basis(&back), text);
        }
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(read_basis("#complex=nope;d=2;g=1;deg=0;count=0\n").is_err());
    assert!(read_basis("#complex=GC;d=2;g=3;deg=0;count=2\nn=2;colors=bb;edges=0-1:d\n").is_err());
    assert!(read_matrix("#rows=1;cols=1;field=Fp:4\n").is_err());
    assert!(read_matrix("#rows=1;cols=1;field=Q\n0 0\n").is_err());
    assert!(table_from_json("{\"complex\":\"GC\"}").is_err());
}
