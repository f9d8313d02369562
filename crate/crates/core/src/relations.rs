//! IHX relations of the trivalent oriented complex.
//!
//! Contracting a solid edge of a trivalent graph produces one four-valent
//! vertex; the trivalent part of its differential re-expands that vertex in
//! the three possible ways with both directions of the new edge.

use alloc::vec::Vec;

use crate::chain::Chain;
use crate::cohomology::coordinates;
use crate::differential::delta_unchecked;
use crate::enumerate::{generate_basis, EnumOptions};
use crate::error::Result;
use crate::family::{ComplexId, Family};
use crate::graph::{Edge, EdgeKind, LabeledGraph};
use crate::linalg::{FieldTag, SparseMatrix};

/// Contracts edge `i`, merging its head into its tail. `None` if another
/// edge joins the same two vertices.
pub fn contract(g: &LabeledGraph, i: usize) -> Option<LabeledGraph> {
    let e = g.edges()[i];
    let (a, b) = (e.tail(), e.head());
    let relabel = |v: usize| -> usize {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let mut edges = Vec::with_capacity(g.num_edges() - 1);
    for (j, f) in g.edges().iter().enumerate() {
        if j == i {
            continue;
        }
        let (t, h) = (relabel(f.tail()), relabel(f.head()));
        if t == h {
            return None;
        }
        edges.push(Edge::new(t, h, f.kind));
    }
    let mut colors = g.colors().to_vec();
    colors.remove(b);
    LabeledGraph::new(colors, edges).ok()
}

/// IHX relation matrix in degree `k`: rows are the basis of `oGC3`, one
/// column per trivalent generator and contractible solid edge. Empty for
/// every other family.
pub fn relation_matrix(c: ComplexId, g: usize, k: i32, opts: EnumOptions, field: FieldTag) -> Result<SparseMatrix> {
    if c.family != Family::OGc3 {
        return Ok(SparseMatrix::zero(0, 0, field));
    }
    let spec = c.spec();
    let amb = ComplexId::new(Family::HatOGc, c.d)?.spec();
    let basis = generate_basis(c, g, k, opts)?;
    let mut cols = Vec::new();
    for x in &basis.elems {
        for (i, e) in x.edges().iter().enumerate() {
            if e.kind != EdgeKind::Solid {
                continue;
            }
            let Some(y) = contract(x, i) else { continue };
            if !amb.is_generator(&y) {
                continue;
            }
            let mut ch = Chain::zero(c);
            delta_unchecked(&amb, &y, &mut ch);
            ch.retain(|t| spec.survives(t, &t.valence_profile()));
            cols.push(coordinates(&ch, &basis, "IHX")?);
        }
    }
    Ok(SparseMatrix::from_columns(basis.len(), field, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_of_a_double_edge_is_rejected() {
        let s = EdgeKind::Solid;
        let g = LabeledGraph::black(2, &[(0, 1, s), (0, 1, s), (0, 1, s)]).unwrap();
        assert!(contract(&g, 0).is_none());
        let t = LabeledGraph::black(3, &[(0, 1, s), (1, 2, s), (0, 2, s)]).unwrap();
        let c = contract(&t, 0).unwrap();
        assert_eq!((c.num_vertices(), c.num_edges()), (2, 2));
    }

    #[test]
    fn other_families_have_no_relations() {
        let id = ComplexId::new(Family::Gc, 2).unwrap();
        let m = relation_matrix(id, 3, 0, EnumOptions::new(6), FieldTag::Rational).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }
}
