//! Bases against exhaustive enumeration of edge multisets, one vertex count
//! at a time, filtered by the generator predicate and deduplicated by
//! canonical form.

use std::collections::{BTreeMap, BTreeSet};

use graphcx_core::oracle::brute_force_basis;
use graphcx_core::{canonicalize, generate_basis, ComplexId, EnumOptions, Family, LabeledGraph};

fn compare(id: ComplexId, g: usize, vmax: usize) -> usize {
    let expected: BTreeMap<i32, BTreeSet<String>> =
        brute_force_basis(id, g, vmax).into_iter().map(|(k, v)| (k, v.iter().map(|x| x.encode()).collect())).collect();
    let mut got: BTreeMap<i32, BTreeSet<String>> = BTreeMap::new();
    if let Some((lo, hi)) = id.spec().degree_range(g, vmax) {
        for k in lo..=hi {
            let b = generate_basis(id, g, k, EnumOptions::new(vmax)).unwrap();
            for x in &b.elems {
                assert_eq!(x.loop_number().unwrap(), g);
                assert_eq!(id.spec().degree(x).unwrap(), k);
            }
            if !b.is_empty() {
                got.insert(k, b.elems.iter().map(|x| x.encode()).collect());
            }
        }
    }
    assert_eq!(got, expected, "{id} g={g}");
    got.values().map(|s| s.len()).sum()
}

fn all_families(g: usize, vmax: usize) {
    let mut total = 0;
    for f in Family::ALL {
        for d in [2, 3] {
            if let Ok(id) = ComplexId::new(f, d) {
                total += compare(id, g, vmax);
            }
        }
    }
    assert!(total > 0);
}

#[test]
fn every_family_at_loop_order_one() {
    all_families(1, 5);
}

#[test]
fn every_family_at_loop_order_two() {
    all_families(2, 4);
}

#[test]
fn gc_and_dgc_at_loop_order_three() {
    for d in [2, 3] {
        compare(ComplexId::new(Family::Gc, d).unwrap(), 3, 5);
        compare(ComplexId::new(Family::DGc, d).unwrap(), 3, 5);
    }
}

#[test]
fn tetrahedron_is_the_gc2_degree_zero_basis() {
    let id = ComplexId::new(Family::Gc, 2).unwrap();
    let b = generate_basis(id, 3, 0, EnumOptions::new(4)).unwrap();
    let dot = graphcx_core::EdgeKind::Dotted;
    let tet = LabeledGraph::black(4, &[(0, 1, dot), (0, 2, dot), (0, 3, dot), (1, 2, dot), (1, 3, dot), (2, 3, dot)])
        .unwrap();
    assert_eq!(b.len(), brute_force_basis(id, 3, 4)[&0].len());
    assert!(b.index_of(&canonicalize(&tet, &id.spec().recipe).graph).is_some());
}
