//! Insertion and bracket identities on small generators.

use graphcx_core::differential::lie_bracket_chains;
use graphcx_core::{
    delta, delta_chain, generate_basis, lie_bracket, pre_lie_insert, Chain, ComplexId, EdgeKind, EnumOptions, Family,
    LabeledGraph, Q,
};

fn id(f: Family, d: i32) -> ComplexId {
    ComplexId::new(f, d).unwrap()
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::from(1)
    } else {
        Q::from(1)
    }
}

/// Generators with at most `vmax` vertices at loop orders `1..=gmax`.
fn small(c: ComplexId, gmax: usize, vmax: usize) -> Vec<LabeledGraph> {
    let mut out = Vec::new();
    for g in 1..=gmax {
        if let Some((lo, hi)) = c.spec().degree_range(g, vmax) {
            for k in lo..=hi {
                out.extend(generate_basis(c, g, k, EnumOptions::new(vmax)).unwrap().elems);
            }
        }
    }
    out
}

fn single(c: ComplexId, g: &LabeledGraph) -> Chain {
    let mut x = Chain::zero(c);
    x.add_graph(g, Q::from(1), &c.spec().recipe);
    x
}

#[test]
fn delta_is_insertion_of_an_edge() {
    for d in [2, 3] {
        let c = id(Family::DGc, d);
        let edge = LabeledGraph::black(2, &[(0, 1, EdgeKind::Solid)]).unwrap();
        let theta =
            LabeledGraph::black(2, &[(0, 1, EdgeKind::Solid), (0, 1, EdgeKind::Solid), (1, 0, EdgeKind::Solid)])
                .unwrap();
        let mut graphs = vec![theta];
        graphs.extend(small(c, 2, 4));
        for a in graphs {
            let deg = c.spec().degree(&a).unwrap();
            let lhs = delta(&c, &a).unwrap();
            let rhs = pre_lie_insert(&c, &a, &edge).unwrap().scaled(sign(deg % 2 != 0));
            assert!(lhs.difference(&rhs).is_zero(), "d={d} {}", a.encode());
        }
    }
}

#[test]
fn bracket_is_graded_antisymmetric() {
    for (f, d) in [(Family::Gc, 3), (Family::DGc, 2), (Family::DGc, 3)] {
        let c = id(f, d);
        let gs = small(c, 2, 4);
        let spec = c.spec();
        for a in &gs {
            for b in &gs {
                let (da, db) = (spec.degree(a).unwrap(), spec.degree(b).unwrap());
                let mut s = lie_bracket(&c, a, b).unwrap();
                s.add_chain(&lie_bracket(&c, b, a).unwrap(), sign((da * db) % 2 != 0));
                assert!(s.is_zero());
            }
            let aa = lie_bracket(&c, a, a).unwrap();
            let aoa = pre_lie_insert(&c, a, a).unwrap();
            if spec.degree(a).unwrap() % 2 == 0 {
                assert!(aa.is_zero());
            } else {
                assert!(aa.difference(&aoa.scaled(Q::from(2))).is_zero());
            }
        }
    }
}

#[test]
fn jacobi_identity() {
    for (f, d, gmax) in [(Family::Gc, 3, 3), (Family::DGc, 2, 2)] {
        let c = id(f, d);
        let spec = c.spec();
        let gs = small(c, gmax, 3);
        assert_eq!(gs.len(), 2);
        for a in &gs {
            for b in &gs {
                for e in &gs {
                    let (x, y, z) = (single(c, a), single(c, b), single(c, e));
                    let (da, db) = (spec.degree(a).unwrap(), spec.degree(b).unwrap());
                    let lhs = lie_bracket_chains(&c, &x, &lie_bracket_chains(&c, &y, &z).unwrap()).unwrap();
                    let mut rhs = lie_bracket_chains(&c, &lie_bracket_chains(&c, &x, &y).unwrap(), &z).unwrap();
                    let t = lie_bracket_chains(&c, &y, &lie_bracket_chains(&c, &x, &z).unwrap()).unwrap();
                    rhs.add_chain(&t, sign((da * db) % 2 != 0));
                    assert!(lhs.difference(&rhs).is_zero());
                }
            }
        }
    }
}

#[test]
fn delta_is_a_derivation_of_the_bracket() {
    for (f, d) in [(Family::Gc, 3), (Family::DGc, 2), (Family::DGc, 3)] {
        let c = id(f, d);
        let spec = c.spec();
        let gs = small(c, 2, 4);
        for a in &gs {
            for b in &gs {
                let da = spec.degree(a).unwrap();
                let lhs = delta_chain(&c, &lie_bracket(&c, a, b).unwrap());
                let mut rhs = lie_bracket_chains(&c, &delta(&c, a).unwrap(), &single(c, b)).unwrap();
                let t = lie_bracket_chains(&c, &single(c, a), &delta(&c, b).unwrap()).unwrap();
                rhs.add_chain(&t, sign(da % 2 != 0));
                assert!(lhs.difference(&rhs).is_zero(), "{} {}", a.encode(), b.encode());
            }
        }
    }
}

#[test]
fn insertion_outside_gc_and_dgc_is_rejected() {
    let c = id(Family::RdGc4Edge, 2);
    let e = LabeledGraph::black(2, &[(0, 1, EdgeKind::Solid)]).unwrap();
    assert!(pre_lie_insert(&c, &e, &e).is_err());
}
