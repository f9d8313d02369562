//! Canonical forms against an all-permutations oracle on graphs with at most
//! six vertices.

use graphcx_core::oracle::canonicalize_agrees;
use graphcx_core::{canonicalize, ComplexId, Edge, EdgeKind, Family, LabeledGraph, OrientationRecipe, VertexColor};
use proptest::prelude::*;

fn parity(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        odd ^= len > 0 && len % 2 == 0;
    }
    odd
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

fn recipes() -> Vec<(OrientationRecipe, Vec<EdgeKind>, Vec<VertexColor>)> {
    let mut out = Vec::new();
    for f in [Family::Gc, Family::DGc, Family::HatOGc, Family::RdGc4Edge, Family::GcTDd1, Family::GcWedge] {
        for d in [2, 3] {
            let spec = ComplexId::new(f, d).unwrap().spec();
            let kinds: Vec<EdgeKind> = EdgeKind::ALL.iter().copied().filter(|&k| spec.kinds.contains(&k)).collect();
            let colors: Vec<VertexColor> =
                VertexColor::ALL.iter().copied().filter(|&c| spec.colors.contains(&c)).collect();
            out.push((spec.recipe, kinds, colors));
        }
    }
    out
}

/// Vertex count, raw edges, color codes and recipe index.
type Case = (usize, Vec<(usize, usize, usize)>, Vec<usize>, usize);

fn arb_case() -> impl Strategy<Value = Case> {
    (1usize..=6, 0usize..12).prop_flat_map(|(n, r)| {
        (
            Just(n),
            proptest::collection::vec((0..n, 0..n, 0usize..4), 0..=9),
            proptest::collection::vec(0usize..2, n),
            Just(r),
        )
    })
}

fn build(raw: &[(usize, usize, usize)], cols: &[usize], kinds: &[EdgeKind], colors: &[VertexColor]) -> LabeledGraph {
    let edges =
        raw.iter().filter(|(t, h, _)| t != h).map(|&(t, h, k)| Edge::new(t, h, kinds[k % kinds.len()])).collect();
    let cs = cols.iter().map(|&c| colors[c % colors.len()]).collect();
    LabeledGraph::new(cs, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_matches_permutation_oracle((_n, raw, cols, r) in arb_case()) {
        let all = recipes();
        let (recipe, kinds, colors) = &all[r % all.len()];
        let g = build(&raw, &cols, kinds, colors);
        prop_assert!(canonicalize_agrees(&g, recipe), "{}", g.encode());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((n, raw, cols, r) in arb_case(), seed in any::<u64>()) {
        let all = recipes();
        let (recipe, kinds, colors) = &all[r % all.len()];
        let g = build(&raw, &cols, kinds, colors);
        let perms = permutations(n);
        let p = &perms[(seed as usize) % perms.len()];
        let cs: Vec<VertexColor> = {
            let mut v = vec![VertexColor::Black; n];
            for i in 0..n { v[p[i]] = g.color(i); }
            v
        };
        let es: Vec<Edge> = g.edges().iter().map(|e| Edge::new(p[e.tail()], p[e.head()], e.kind)).collect();
        let h = LabeledGraph::new(cs, es).unwrap();
        let (a, b) = (canonicalize(&g, recipe), canonicalize(&h, recipe));
        prop_assert_eq!(a.is_zero, b.is_zero);
        prop_assert_eq!(&a.graph, &b.graph);
        if !a.is_zero {
            // h is g with vertices renamed: same monomial up to odd-vertex parity.
            let odd: Vec<usize> = (0..n).filter(|&v| recipe.is_odd_color(g.color(v))).collect();
            let mut by_new = odd.clone();
            by_new.sort_by_key(|&v| p[v]);
            let perm: Vec<usize> = by_new.iter().map(|v| odd.iter().position(|w| w == v).unwrap()).collect();
            let rel = if parity(&perm) { -1 } else { 1 };
            prop_assert_eq!(a.sign as i32, rel * b.sign as i32);
        }
    }
}

#[test]
fn tetrahedron_relabeled_by_an_even_edge_permutation() {
    let d = EdgeKind::Dotted;
    let recipe = ComplexId::new(Family::Gc, 2).unwrap().spec().recipe;
    let a = LabeledGraph::black(4, &[(0, 1, d), (0, 2, d), (0, 3, d), (1, 2, d), (1, 3, d), (2, 3, d)]).unwrap();
    // Vertex 3-cycle (0 1 2): edges map 01→12, 02→10, 03→13, 12→20, 13→23, 23→03.
    let b = LabeledGraph::black(4, &[(1, 2, d), (1, 0, d), (1, 3, d), (2, 0, d), (2, 3, d), (0, 3, d)]).unwrap();
    let (ca, cb) = (canonicalize(&a, &recipe), canonicalize(&b, &recipe));
    assert!(!ca.is_zero);
    assert_eq!(ca.encoding(), cb.encoding());
    assert_eq!(ca.sign, cb.sign);
}
