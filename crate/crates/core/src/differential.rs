//! The differential of every family, split into its parts, and the pre-Lie
//! insertion with its Lie bracket.
//!
//! Each part acts as a degree-one derivation of the ordered monomial: the
//! object at a site is replaced in place by a short sequence of new objects,
//! the term picks up the parity of everything in front of the site, and the
//! result is reordered to vertices-then-edges with the Koszul sign.

use alloc::vec::Vec;

use num_traits::One;

use crate::chain::{factorial, has_tadpole, monomial, normalize, odd_count, signed, Chain, Obj, Q};
use crate::error::{Error, Result};
use crate::family::{ComplexId, ComplexSpec, Family, Retype};
use crate::graph::{EdgeKind, LabeledGraph, VertexColor};

/// A summand of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaPart {
    /// Split a black vertex along a new edge.
    VertexSplit,
    /// Change the type of one edge.
    EdgeRetype,
    /// Split a white vertex along a new dotted edge.
    WhiteSplit,
    /// Turn a white vertex black, possibly sprouting new white vertices.
    WhiteBlacken,
}

impl DeltaPart {
    pub const ALL: [DeltaPart; 4] =
        [DeltaPart::VertexSplit, DeltaPart::EdgeRetype, DeltaPart::WhiteSplit, DeltaPart::WhiteBlacken];
}

/// Normalizes a term, applies the dropping rules of `spec` and adds it.
pub(crate) fn accept(spec: &ComplexSpec, objs: &[Obj], coef: Q, out: &mut Chain) {
    if has_tadpole(objs) {
        return;
    }
    let (g, neg) = normalize(spec, objs);
    let prof = g.valence_profile();
    if !spec.local_ok(&g, &prof) || !spec.survives(&g, &prof) {
        return;
    }
    out.add_graph(&g, signed(coef, neg), &spec.recipe);
}

/// Incident half-edges of `v` as `(edge index, v is the tail)`.
fn half_edges(g: &LabeledGraph, v: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail() == v {
            out.push((i, true));
        }
        if e.head() == v {
            out.push((i, false));
        }
    }
    out
}

/// Moves the listed half-edges of the monomial onto vertex `to`.
fn reattach(objs: &mut [Obj], nv: usize, moves: &[(usize, bool)], to: u16) {
    for &(ei, is_tail) in moves {
        if let Obj::E(t, h, _) = &mut objs[nv + ei] {
            if is_tail {
                *t = to;
            } else {
                *h = to;
            }
        }
    }
}

fn splice(base: &[Obj], at: usize, with: &[Obj]) -> Vec<Obj> {
    let mut v = Vec::with_capacity(base.len() + with.len());
    v.extend_from_slice(&base[..at]);
    v.extend_from_slice(with);
    v.extend_from_slice(&base[at + 1..]);
    v
}

/// Two-way split of vertex `v` with a new edge of `kind` from the old id to
/// a fresh id; every ordered subset of half-edges moves to the fresh vertex.
fn split_vertex(
    spec: &ComplexSpec,
    g: &LabeledGraph,
    v: usize,
    color: VertexColor,
    kind: EdgeKind,
    coef: Q,
    out: &mut Chain,
) {
    let nv = g.num_vertices();
    let base = monomial(g);
    let pre = odd_count(spec, &base[..v]);
    let hes = half_edges(g, v);
    let h = hes.len();
    let fresh = nv as u16;
    let min = spec.min_valence;
    let rep = [Obj::V(v as u16, color), Obj::V(fresh, color), Obj::E(v as u16, fresh, kind)];
    for mask in 0u32..(1u32 << h) {
        let c = mask.count_ones() as usize;
        if c + 1 < min || h - c + 1 < min {
            continue;
        }
        let moves: Vec<(usize, bool)> = (0..h).filter(|&j| mask >> j & 1 == 1).map(|j| hes[j]).collect();
        let mut objs = splice(&base, v, &rep);
        reattach(&mut objs, nv + 2, &moves, fresh);
        accept(spec, &objs, signed(coef, pre), out);
    }
}

fn vertex_split(spec: &ComplexSpec, g: &LabeledGraph, v: usize, out: &mut Chain) {
    let Some(kind) = spec.split_kind else { return };
    let coef = if spec.recipe.flippable(kind) { Q::new(1, 2) } else { Q::one() };
    split_vertex(spec, g, v, VertexColor::Black, kind, coef, out);
}

fn white_split(spec: &ComplexSpec, g: &LabeledGraph, v: usize, out: &mut Chain) {
    split_vertex(spec, g, v, VertexColor::White, EdgeKind::Dotted, Q::new(1, 2), out);
}

/// Replacements of one edge under the retyping part.
fn retype_targets(rule: Retype, kind: EdgeKind) -> &'static [(EdgeKind, i64)] {
    match (rule, kind) {
        (Retype::SolidToDotted, EdgeKind::Solid) => &[(EdgeKind::Dotted, 1)],
        (Retype::FourEdge, EdgeKind::Solid) => &[(EdgeKind::TDotted, 1), (EdgeKind::SDotted, -1)],
        (Retype::FourEdge, EdgeKind::SDotted) | (Retype::FourEdge, EdgeKind::TDotted) => &[(EdgeKind::Wavy, 1)],
        _ => &[],
    }
}

fn edge_retype(spec: &ComplexSpec, g: &LabeledGraph, i: usize, out: &mut Chain) {
    let e = g.edges()[i];
    let targets = retype_targets(spec.retype, e.kind);
    if targets.is_empty() {
        return;
    }
    let base = monomial(g);
    let at = g.num_vertices() + i;
    let pre = odd_count(spec, &base[..at]);
    for &(k, c) in targets {
        let objs = splice(&base, at, &[Obj::E(e.tail as u16, e.head as u16, k)]);
        accept(spec, &objs, signed(Q::from(c), pre), out);
    }
}

/// `∘ ⇝ Σ_k (1/k!)` black vertex with `k` outgoing solid edges to new whites.
pub(crate) fn white_blacken(spec: &ComplexSpec, g: &LabeledGraph, v: usize, out: &mut Chain) {
    let nv = g.num_vertices();
    let base = monomial(g);
    let pre = odd_count(spec, &base[..v]);
    let hes = half_edges(g, v);
    let h = hes.len();
    // The operator passes the white vertex itself as well.
    let pre = pre ^ spec.recipe.is_odd_color(VertexColor::White);
    for k in 0..=h / 2 {
        let mut rep = Vec::with_capacity(1 + 2 * k);
        rep.push(Obj::V(v as u16, VertexColor::Black));
        for i in 0..k {
            let w = (nv + i) as u16;
            rep.push(Obj::V(w, VertexColor::White));
            rep.push(Obj::E(v as u16, w, EdgeKind::Solid));
        }
        let coef = signed(Q::new(1, factorial(k)), pre);
        // Every half-edge goes to the black vertex (slot 0) or one new white.
        let slots = k + 1;
        let mut assign = alloc::vec![0usize; h];
        loop {
            let mut counts = alloc::vec![0usize; slots];
            for &a in &assign {
                counts[a] += 1;
            }
            if counts[0] + k >= spec.min_valence && counts[1..].iter().all(|&c| c + 1 >= spec.min_valence) {
                let mut objs = splice(&base, v, &rep);
                for (j, &a) in assign.iter().enumerate() {
                    if a > 0 {
                        reattach(&mut objs, nv + rep.len() - 1, &[hes[j]], (nv + a - 1) as u16);
                    }
                }
                accept(spec, &objs, coef, out);
            }
            // Next assignment in base `slots`.
            let mut j = 0;
            while j < h {
                assign[j] += 1;
                if assign[j] < slots {
                    break;
                }
                assign[j] = 0;
                j += 1;
            }
            if j == h {
                break;
            }
        }
    }
}

fn part_into(spec: &ComplexSpec, part: DeltaPart, g: &LabeledGraph, site: usize, out: &mut Chain) {
    match part {
        DeltaPart::VertexSplit if g.color(site) == VertexColor::Black => vertex_split(spec, g, site, out),
        DeltaPart::EdgeRetype => edge_retype(spec, g, site, out),
        DeltaPart::WhiteSplit if spec.white_parts && g.color(site) == VertexColor::White => {
            white_split(spec, g, site, out)
        }
        DeltaPart::WhiteBlacken if spec.white_parts && g.color(site) == VertexColor::White => {
            white_blacken(spec, g, site, out)
        }
        _ => {}
    }
}

/// One part of the differential at one site (a vertex for the splitting
/// parts, an edge for retyping).
pub fn delta_part(c: &ComplexId, part: DeltaPart, g: &LabeledGraph, site: usize) -> Result<Chain> {
    let spec = c.spec();
    let in_range = match part {
        DeltaPart::EdgeRetype => site < g.num_edges(),
        _ => site < g.num_vertices(),
    };
    if !in_range {
        return Err(Error::BadSite(site));
    }
    let applicable = match part {
        DeltaPart::VertexSplit => g.color(site) == VertexColor::Black && spec.split_kind.is_some(),
        DeltaPart::EdgeRetype => !retype_targets(spec.retype, g.edges()[site].kind).is_empty(),
        DeltaPart::WhiteSplit | DeltaPart::WhiteBlacken => spec.white_parts && g.color(site) == VertexColor::White,
    };
    if !applicable {
        return Err(Error::BadSite(site));
    }
    let mut out = Chain::zero(*c);
    part_into(&spec, part, g, site, &mut out);
    Ok(out)
}

/// Differential of an arbitrary labeled graph, without the generator check.
pub fn delta_unchecked(spec: &ComplexSpec, g: &LabeledGraph, out: &mut Chain) {
    for v in 0..g.num_vertices() {
        match g.color(v) {
            VertexColor::Black => vertex_split(spec, g, v, out),
            VertexColor::White if spec.white_parts => {
                white_split(spec, g, v, out);
                white_blacken(spec, g, v, out);
            }
            VertexColor::White => {}
        }
    }
    if spec.retype != Retype::None {
        for i in 0..g.num_edges() {
            edge_retype(spec, g, i, out);
        }
    }
}

/// Differential of a generator.
///
/// For quotient families the terms are projected onto the surviving
/// generators; for closure quotients this is the differential of the
/// representatives, before dividing by the relations.
pub fn delta(c: &ComplexId, g: &LabeledGraph) -> Result<Chain> {
    let spec = c.spec();
    if !spec.is_generator(g) {
        return Err(Error::NotGenerator(spec.tag()));
    }
    let mut out = Chain::zero(*c);
    delta_unchecked(&spec, g, &mut out);
    Ok(out)
}

/// Differential applied termwise to a chain.
pub fn delta_chain(c: &ComplexId, x: &Chain) -> Chain {
    let spec = c.spec();
    let mut out = Chain::zero(*c);
    for (g, coef) in x.iter() {
        let mut part = Chain::zero(*c);
        delta_unchecked(&spec, g, &mut part);
        out.add_chain(&part, *coef);
    }
    out
}

fn pre_lie_spec(c: &ComplexId) -> Result<ComplexSpec> {
    match c.family {
        Family::Gc
        | Family::GcSimple
        | Family::GcGeq2
        | Family::DGc
        | Family::DGcGeq2
        | Family::OGc
        | Family::OGcGeq2 => Ok(c.spec()),
        _ => Err(Error::Unsupported { op: "pre-Lie insertion", allowed: "GC and dGC families" }),
    }
}

/// `a ∘ b`: substitute `b` into every vertex of `a`, re-attaching the
/// half-edges of that vertex to vertices of `b` in all ways.
///
/// Both inputs may be arbitrary labeled graphs of the family's colors and
/// kinds; terms breaking the family's local rules are dropped.
pub fn pre_lie_insert(c: &ComplexId, a: &LabeledGraph, b: &LabeledGraph) -> Result<Chain> {
    let spec = pre_lie_spec(c)?;
    let deg_b = spec.degree(b)?;
    spec.degree(a)?;
    let b_odd = deg_b.rem_euclid(2) == 1;
    let na = a.num_vertices();
    let nb = b.num_vertices();
    let base = monomial(a);
    let mut sub: Vec<Obj> = Vec::new();
    let offset = na as u16;
    for o in monomial(b) {
        sub.push(match o {
            Obj::V(id, c) => Obj::V(id + offset, c),
            Obj::E(t, h, k) => Obj::E(t + offset, h + offset, k),
        });
    }
    let mut out = Chain::zero(*c);
    for v in 0..na {
        let after = odd_count(&spec, &base[v + 1..]);
        let coef = signed(Q::one(), b_odd && after);
        let hes = half_edges(a, v);
        let h = hes.len();
        let mut assign = alloc::vec![0usize; h];
        loop {
            let mut objs = splice(&base, v, &sub);
            for (j, &x) in assign.iter().enumerate() {
                reattach(&mut objs, na - 1 + nb + b.num_edges(), &[hes[j]], offset + x as u16);
            }
            accept(&spec, &objs, coef, &mut out);
            let mut j = 0;
            while j < h {
                assign[j] += 1;
                if assign[j] < nb {
                    break;
                }
                assign[j] = 0;
                j += 1;
            }
            if j == h {
                break;
            }
        }
    }
    Ok(out)
}

/// `[a, b] = a∘b − (−1)^{|a||b|} b∘a`.
pub fn lie_bracket(c: &ComplexId, a: &LabeledGraph, b: &LabeledGraph) -> Result<Chain> {
    let spec = pre_lie_spec(c)?;
    let (da, db) = (spec.degree(a)?, spec.degree(b)?);
    let mut out = pre_lie_insert(c, a, b)?;
    let ba = pre_lie_insert(c, b, a)?;
    let s = if (da * db).rem_euclid(2) == 1 { Q::one() } else { -Q::one() };
    out.add_chain(&ba, s);
    Ok(out)
}

/// Bilinear extension of [`lie_bracket`] to chains.
pub fn lie_bracket_chains(c: &ComplexId, x: &Chain, y: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(*c);
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_chain(&lie_bracket(c, a, b)?, *ca * *cb);
        }
    }
    Ok(out)
}
