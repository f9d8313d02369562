//! Chain maps between families.
//!
//! Edge-local maps substitute every edge of a generator by a short signed sum
//! of object sequences, in place; the product over all edges is expanded and
//! each term normalized like a differential term.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::chain::{monomial, Chain, Obj, Q};
use crate::differential::{accept, white_blacken};
use crate::error::{Error, Result};
use crate::family::{ComplexId, Family};
use crate::graph::{EdgeKind, LabeledGraph, VertexColor};

/// Flavor of a two-color family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lambda {
    /// Targeted: some vertex without outgoing solid edges.
    T,
    /// Oriented: no closed paths of solid edges.
    Or,
}

/// Chain maps known to the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapId {
    /// Both directions of every dotted edge.
    F,
    /// Dotted edge to a bivalent source minus a bivalent target.
    S,
    /// Four-edge complex to directed graphs.
    Z,
    /// Like [`MapId::S`], from the two-edge oriented complex.
    J,
    /// Reversal of all edges.
    Iota,
    /// Recolor white and dotted, then blacken one vertex.
    FLambda(Lambda),
    /// [`MapId::F`] followed by the wheeled projection.
    Mu,
    /// All-black graphs into the two-color complex.
    Inclusion,
    /// Quotient projection.
    Projection,
}

impl MapId {
    pub const ALL: [MapId; 10] = [
        MapId::F,
        MapId::S,
        MapId::Z,
        MapId::J,
        MapId::Iota,
        MapId::FLambda(Lambda::T),
        MapId::FLambda(Lambda::Or),
        MapId::Mu,
        MapId::Inclusion,
        MapId::Projection,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MapId::F => "f",
            MapId::S => "s",
            MapId::Z => "z",
            MapId::J => "j",
            MapId::Iota => "iota",
            MapId::FLambda(Lambda::T) => "F_t",
            MapId::FLambda(Lambda::Or) => "F_or",
            MapId::Mu => "mu",
            MapId::Inclusion => "inclusion",
            MapId::Projection => "projection",
        }
    }

    pub fn from_tag(s: &str) -> Option<MapId> {
        MapId::ALL.iter().copied().find(|m| m.tag() == s)
    }

    /// Target complex of the map applied to `src`.
    pub fn target(self, src: ComplexId) -> Result<ComplexId> {
        use Family::*;
        let d = src.d;
        let t = match (self, src.family) {
            (MapId::F, Gc | GcSimple) => Some((DGc, d)),
            (MapId::Mu, Gc | GcSimple) => Some((GcWheeled, d)),
            (MapId::S, BarGc2Edge) => Some((DGc, d)),
            (MapId::S, BarTGc) => Some((TGc, d)),
            (MapId::S, BarSGc) => Some((SGc, d)),
            (MapId::J, HatOGc) => Some((OGc, d)),
            (MapId::Z, RdGc4Edge) => Some((DGc, d)),
            (MapId::Iota, TGc) => Some((SGc, d)),
            (MapId::Iota, SGc) => Some((TGc, d)),
            (MapId::Iota, GcWedge) => Some((GcVee, d)),
            (MapId::Iota, GcVee) => Some((GcWedge, d)),
            (
                MapId::Iota,
                f @ (DGc | DGcGeq2 | OGc | OGcGeq2 | StGc | SoTGc | GcWedgeVee | GcVeePlusWedge | XSt | GcWheeled
                | GcStGeq3 | GcSPlusTGeq3),
            ) => Some((f, d)),
            (MapId::FLambda(Lambda::T), Gc) => Some((GcTDd1, d)),
            (MapId::FLambda(Lambda::Or), Gc) => Some((GcOrDd1, d)),
            (MapId::Inclusion, BarTGc) if d >= 2 => Some((GcTDd1, d - 1)),
            (MapId::Inclusion, HatOGc) if d >= 2 => Some((GcOrDd1, d - 1)),
            (MapId::Projection, StGc) => Some((XSt, d)),
            (MapId::Projection, DGc) => Some((GcWheeled, d)),
            (MapId::Projection, HatOGc) => Some((OGc3, d)),
            (MapId::Projection, Gc) => Some((GcLeq4, d)),
            _ => None,
        };
        match t {
            Some((f, d)) => ComplexId::new(f, d),
            None => Err(Error::IncompatibleMap { map: self.tag(), family: src.family.tag() }),
        }
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

type Options = Vec<(Q, Vec<Obj>)>;

/// Image of one edge `t → h` of `kind`; `fresh` and `fresh + 1` are unused
/// vertex ids reserved for this edge.
fn edge_rule(m: MapId, n: i32, t: u16, h: u16, kind: EdgeKind, fresh: u16) -> Options {
    let one = Q::one();
    let s = EdgeKind::Solid;
    let v = fresh;
    match (m, kind) {
        (MapId::F | MapId::Mu, EdgeKind::Dotted) => {
            vec![(one, vec![Obj::E(t, h, s)]), (Q::from(sgn(n % 2 != 0)), vec![Obj::E(h, t, s)])]
        }
        (MapId::S | MapId::J, EdgeKind::Dotted) => vec![
            (one, vec![Obj::V(v, VertexColor::Black), Obj::E(v, t, s), Obj::E(v, h, s)]),
            (-one, vec![Obj::V(v, VertexColor::Black), Obj::E(t, v, s), Obj::E(h, v, s)]),
        ],
        (MapId::Z, EdgeKind::TDotted) => {
            vec![(-one, vec![Obj::V(v, VertexColor::Black), Obj::E(t, v, s), Obj::E(h, v, s)])]
        }
        (MapId::Z, EdgeKind::SDotted) => {
            vec![(-one, vec![Obj::V(v, VertexColor::Black), Obj::E(v, t, s), Obj::E(v, h, s)])]
        }
        (MapId::Z, EdgeKind::Wavy) => {
            // t → a ← b → h, edges listed outer-outer-middle.
            let (a, b) = (fresh, fresh + 1);
            let bl = VertexColor::Black;
            vec![
                (one, vec![Obj::V(a, bl), Obj::V(b, bl), Obj::E(t, a, s), Obj::E(b, h, s), Obj::E(b, a, s)]),
                (
                    Q::from(sgn((n - 1) % 2 != 0)),
                    vec![Obj::V(a, bl), Obj::V(b, bl), Obj::E(h, a, s), Obj::E(b, t, s), Obj::E(b, a, s)],
                ),
            ]
        }
        (MapId::Iota, _) => vec![(one, vec![Obj::E(h, t, kind)])],
        _ => vec![(one, vec![Obj::E(t, h, kind)])],
    }
}

fn expand(
    spec: &crate::family::ComplexSpec,
    verts: &[Obj],
    rules: &[Options],
    i: usize,
    coef: Q,
    acc: &mut Vec<Obj>,
    out: &mut Chain,
) {
    if i == rules.len() {
        let mut objs = verts.to_vec();
        objs.extend_from_slice(acc);
        accept(spec, &objs, coef, out);
        return;
    }
    for (c, seq) in &rules[i] {
        let len = acc.len();
        acc.extend_from_slice(seq);
        expand(spec, verts, rules, i + 1, coef * *c, acc, out);
        acc.truncate(len);
    }
}

/// Applies `m` to a generator of `src`.
pub fn apply_map(m: MapId, src: ComplexId, g: &LabeledGraph) -> Result<Chain> {
    let tgt = m.target(src)?;
    let sspec = src.spec();
    if !sspec.is_generator(g) {
        return Err(Error::NotGenerator(sspec.tag()));
    }
    let tspec = tgt.spec();
    let mut out = Chain::zero(tgt);
    match m {
        MapId::Inclusion | MapId::Projection => {
            if tspec.is_generator(g) {
                out.add_graph(g, Q::one(), &tspec.recipe);
            }
        }
        MapId::FLambda(_) => {
            let white = LabeledGraph::from_parts(
                vec![VertexColor::White; g.num_vertices()],
                g.edges().iter().map(|e| crate::graph::Edge { kind: EdgeKind::Dotted, ..*e }).collect(),
            );
            let deg = sspec.degree(g)?;
            let mut sum = Chain::zero(tgt);
            for v in 0..white.num_vertices() {
                white_blacken(&tspec, &white, v, &mut sum);
            }
            out.add_chain(&sum, Q::from(sgn(deg.rem_euclid(2) == 1)));
        }
        _ => {
            let n = src.n();
            let nv = g.num_vertices() as u16;
            let base = monomial(g);
            let verts = &base[..g.num_vertices()];
            let rules: Vec<Options> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| edge_rule(m, n, e.tail as u16, e.head as u16, e.kind, nv + 2 * i as u16))
                .collect();
            let coef = if m == MapId::Iota {
                let (v, e) = (g.num_vertices(), g.num_edges());
                let odd = if n % 2 == 0 { (v + e + 1) % 2 == 1 } else { (v + 1) % 2 == 1 };
                Q::from(sgn(odd))
            } else {
                Q::one()
            };
            expand(&tspec, verts, &rules, 0, coef, &mut Vec::new(), &mut out);
        }
    }
    Ok(out)
}

/// Applies `m` termwise to a chain of its source complex.
pub fn apply_map_chain(m: MapId, x: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(m.target(x.complex)?);
    for (g, c) in x.iter() {
        out.add_chain(&apply_map(m, x.complex, g)?, *c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_on_single_dotted_edge() {
        // Two vertices and one dotted edge is not a generator, so exercise the
        // rule directly.
        let r = edge_rule(MapId::F, 2, 0, 1, EdgeKind::Dotted, 2);
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].0, Q::one());
        let r = edge_rule(MapId::F, 3, 0, 1, EdgeKind::Dotted, 2);
        assert_eq!(r[1].0, -Q::one());
    }

    #[test]
    fn targets() {
        let gc = ComplexId::new(Family::Gc, 2).unwrap();
        assert_eq!(MapId::F.target(gc).unwrap().family, Family::DGc);
        assert!(MapId::Z.target(gc).is_err());
        let bt = ComplexId::new(Family::BarTGc, 3).unwrap();
        assert_eq!(MapId::Inclusion.target(bt).unwrap(), ComplexId::new(Family::GcTDd1, 2).unwrap());
        for m in MapId::ALL {
            assert_eq!(MapId::from_tag(m.tag()), Some(m));
        }
    }
}
