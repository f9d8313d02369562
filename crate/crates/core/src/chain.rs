//! Formal sums of canonical generators and the monomial builder that turns
//! local graph surgery into signed terms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::canon::{canonicalize, OrientationRecipe};
use crate::family::{ComplexId, ComplexSpec};
use crate::graph::{Edge, EdgeKind, LabeledGraph, VertexColor};

/// Exact coefficient of a chain.
pub type Q = Ratio<i64>;

/// Finite linear combination of canonical generators of one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub complex: ComplexId,
    terms: BTreeMap<LabeledGraph, Q>,
}

impl Chain {
    pub fn zero(complex: ComplexId) -> Chain {
        Chain { complex, terms: BTreeMap::new() }
    }

    /// Adds `coef` times an already canonical generator.
    pub fn add_canonical(&mut self, g: LabeledGraph, coef: Q) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coef` times an arbitrary labeled graph, canonicalizing it.
    pub fn add_graph(&mut self, g: &LabeledGraph, coef: Q, recipe: &OrientationRecipe) {
        let c = canonicalize(g, recipe);
        if !c.is_zero {
            self.add_canonical(c.graph, coef * Q::from(c.sign as i64));
        }
    }

    pub fn add_chain(&mut self, other: &Chain, scale: Q) {
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), *c * scale);
        }
    }

    pub fn scaled(mut self, s: Q) -> Chain {
        if s.is_zero() {
            self.terms.clear();
        } else {
            for c in self.terms.values_mut() {
                *c *= s;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &LabeledGraph) -> Q {
        self.terms.get(g).copied().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LabeledGraph, &Q)> {
        self.terms.iter()
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&LabeledGraph) -> bool) {
        self.terms.retain(|g, _| keep(g));
    }

    /// `self - other`, ignoring the complex tags.
    pub fn difference(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_chain(other, -Q::one());
        out
    }
}

/// One factor of a graded-commutative monomial. Vertex ids are arbitrary
/// distinct labels resolved when the monomial is turned into a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Obj {
    V(u16, VertexColor),
    E(u16, u16, EdgeKind),
}

/// Ordered factors of a generator: vertices first, then edges.
pub(crate) fn monomial(g: &LabeledGraph) -> Vec<Obj> {
    let mut out = Vec::with_capacity(g.num_vertices() + g.num_edges());
    out.extend(g.colors().iter().enumerate().map(|(i, &c)| Obj::V(i as u16, c)));
    out.extend(g.edges().iter().map(|e| Obj::E(e.tail as u16, e.head as u16, e.kind)));
    out
}

pub(crate) fn is_odd(spec: &ComplexSpec, o: &Obj) -> bool {
    match *o {
        Obj::V(_, c) => spec.recipe.is_odd_color(c),
        Obj::E(_, _, k) => spec.recipe.is_odd_kind(k),
    }
}

/// Parity of the total degree of `objs`.
pub(crate) fn odd_count(spec: &ComplexSpec, objs: &[Obj]) -> bool {
    objs.iter().filter(|o| is_odd(spec, o)).count() % 2 == 1
}

/// Moves all vertices in front of all edges, keeping relative orders, and
/// returns the resulting graph together with the Koszul sign (`true` = minus).
pub(crate) fn normalize(spec: &ComplexSpec, objs: &[Obj]) -> (LabeledGraph, bool) {
    let mut neg = false;
    let mut odd_edges_seen = 0usize;
    let mut max_id = 0u16;
    for o in objs {
        match *o {
            Obj::V(id, _) => {
                max_id = max_id.max(id);
                if is_odd(spec, o) && odd_edges_seen % 2 == 1 {
                    neg = !neg;
                }
            }
            Obj::E(..) => {
                if is_odd(spec, o) {
                    odd_edges_seen += 1;
                }
            }
        }
    }
    let mut index = vec![u16::MAX; max_id as usize + 1];
    let mut colors = Vec::new();
    for o in objs {
        if let Obj::V(id, c) = *o {
            index[id as usize] = colors.len() as u16;
            colors.push(c);
        }
    }
    let mut edges = Vec::new();
    for o in objs {
        if let Obj::E(t, h, k) = *o {
            let (t, h) = (index[t as usize], index[h as usize]);
            debug_assert!(t != u16::MAX && h != u16::MAX);
            edges.push(Edge { tail: t as u8, head: h as u8, kind: k });
        }
    }
    (LabeledGraph::from_parts(colors, edges), neg)
}

pub(crate) fn signed(coef: Q, neg: bool) -> Q {
    if neg {
        -coef
    } else {
        coef
    }
}

/// Whether any edge in the object list is a tadpole.
pub(crate) fn has_tadpole(objs: &[Obj]) -> bool {
    objs.iter().any(|o| matches!(*o, Obj::E(t, h, _) if t == h))
}

pub(crate) fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}
