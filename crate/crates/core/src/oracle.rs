//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here is used by the library itself.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonicalize, OrientationRecipe};
use crate::family::ComplexId;
use crate::graph::{Edge, LabeledGraph, VertexColor};

fn odd_permutation(p: &[usize]) -> bool {
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

/// Parity of the permutation taking `items` (in order) to their order
/// sorted by `key`.
fn sort_parity<K: Ord>(items: &[usize], key: impl Fn(usize) -> K) -> bool {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| key(items[i]));
    odd_permutation(&order)
}

/// Relabels by `p`, orients flippable edges from the lower to the higher
/// endpoint and sorts the edges. Returns `(h, s)` with `g = s·h`, or `None`
/// when two identical odd edges make `g` vanish.
pub fn relabel_sorted(g: &LabeledGraph, r: &OrientationRecipe, p: &[usize]) -> Option<(LabeledGraph, i8)> {
    let n = g.num_vertices();
    let mut neg = false;
    let mut colors = vec![VertexColor::Black; n];
    for v in 0..n {
        colors[p[v]] = g.color(v);
    }
    let odd_v: Vec<usize> = (0..n).filter(|&v| r.is_odd_color(g.color(v))).collect();
    neg ^= sort_parity(&odd_v, |v| p[v]);
    let mut edges = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        let (mut t, mut h) = (p[e.tail()], p[e.head()]);
        if t > h {
            if let Some(s) = r.flip_sign(e.kind) {
                core::mem::swap(&mut t, &mut h);
                neg ^= s < 0;
            }
        }
        edges.push(Edge::new(t, h, e.kind));
    }
    let mut sorted = edges.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1] && r.is_odd_kind(w[0].kind)) {
        return None;
    }
    let odd_e: Vec<usize> = (0..edges.len()).filter(|&i| r.is_odd_kind(edges[i].kind)).collect();
    neg ^= sort_parity(&odd_e, |i| edges[i]);
    Some((LabeledGraph::from_parts(colors, sorted), if neg { -1 } else { 1 }))
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

/// Result of the all-permutations canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleForm {
    /// Smallest relabeled, sorted form.
    pub key: LabeledGraph,
    /// `g = sign · key`; meaningless when `zero`.
    pub sign: i8,
    pub zero: bool,
}

/// Minimum over all vertex relabelings; zero if some relabeling fixes the
/// minimum with the opposite sign. Exponential in the vertex count.
pub fn permutation_form(g: &LabeledGraph, r: &OrientationRecipe) -> OracleForm {
    let mut best: Option<(LabeledGraph, i8)> = None;
    let mut zero = false;
    for p in permutations(g.num_vertices()) {
        let Some((h, s)) = relabel_sorted(g, r, &p) else {
            let key = relabel_sorted(g, &OrientationRecipe::UNDIRECTED, &p).unwrap().0;
            return OracleForm { key, sign: 1, zero: true };
        };
        match &best {
            Some((b, bs)) if *b == h => zero |= *bs != s,
            Some((b, _)) if *b < h => {}
            _ => best = Some((h, s)),
        }
    }
    let (key, sign) = best.expect("at least one permutation");
    OracleForm { key, sign: if zero { 1 } else { sign }, zero }
}

/// Whether [`canonicalize`] agrees with [`permutation_form`] on `g`: same
/// vanishing, an isomorphic representative, and consistent signs.
pub fn canonicalize_agrees(g: &LabeledGraph, r: &OrientationRecipe) -> bool {
    let c = canonicalize(g, r);
    let o = permutation_form(g, r);
    if c.is_zero || o.zero {
        return c.is_zero == o.zero;
    }
    let rep = permutation_form(&c.graph, r);
    rep.key == o.key && !rep.zero && c.sign * rep.sign == o.sign
}

fn multisets(slots: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for s in start..slots {
        cur.push(s);
        multisets(slots, k, s, cur, f);
        cur.pop();
    }
}

/// Every generator with at most `vmax` vertices at loop order `g`, by degree,
/// found by listing all edge multisets and colorings for each vertex count.
pub fn brute_force_basis(id: ComplexId, g: usize, vmax: usize) -> BTreeMap<i32, BTreeSet<LabeledGraph>> {
    let spec = id.spec();
    let mut out: BTreeMap<i32, BTreeSet<LabeledGraph>> = BTreeMap::new();
    for v in 2..=vmax {
        let e = v + g - 1;
        let mut slots = Vec::new();
        for &kind in spec.kinds {
            for t in 0..v {
                for h in 0..v {
                    if t != h && (t < h || !spec.recipe.flippable(kind)) {
                        slots.push(Edge::new(t, h, kind));
                    }
                }
            }
        }
        let nc = spec.colors.len();
        let ncol = nc.pow(v as u32);
        multisets(slots.len(), e, 0, &mut Vec::new(), &mut |pick| {
            let edges: Vec<Edge> = pick.iter().map(|&i| slots[i]).collect();
            for code in 0..ncol {
                let mut c = code;
                let colors = (0..v)
                    .map(|_| {
                        let x = spec.colors[c % nc];
                        c /= nc;
                        x
                    })
                    .collect();
                let x = LabeledGraph::from_parts(colors, edges.clone());
                if !spec.is_generator(&x) {
                    continue;
                }
                let cf = canonicalize(&x, &spec.recipe);
                if !cf.is_zero {
                    if let Ok(k) = spec.degree(&x) {
                        out.entry(k).or_default().insert(cf.graph);
                    }
                }
            }
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use crate::graph::EdgeKind;

    #[test]
    fn parity_of_small_permutations() {
        assert!(!odd_permutation(&[0, 1, 2]));
        assert!(odd_permutation(&[1, 0, 2]));
        assert!(!odd_permutation(&[1, 2, 0]));
    }

    #[test]
    fn double_odd_edge_vanishes() {
        let r = ComplexId::new(Family::Gc, 2).unwrap().spec().recipe;
        let d = EdgeKind::Dotted;
        let g = LabeledGraph::black(2, &[(0, 1, d), (1, 0, d)]).unwrap();
        assert!(permutation_form(&g, &r).zero);
        assert!(canonicalize_agrees(&g, &r));
    }
}
