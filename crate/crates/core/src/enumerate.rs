//! Basis enumeration.
//!
//! Generators of loop order `g` are produced in three stages: undirected
//! cores with all valences at least three, skeletons obtained by subdividing
//! core edges with bivalent vertices, and decorations of a skeleton by vertex
//! colors, edge kinds and directions. Every decoration that passes the local
//! and global rules is canonicalized; odd-symmetric graphs drop out.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use hashbrown::{HashMap, HashSet};

use crate::canon::{canonical_key, canonicalize};
use crate::error::{Error, Result};
use crate::family::{ComplexId, ComplexSpec, CountProfile};
use crate::graph::{Edge, EdgeKind, LabeledGraph, Valence, VertexColor};

/// Default cap on the number of decorated candidates examined per basis.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An undirected multigraph without loops, the shape of a generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Skeleton {
    pub vertices: usize,
    /// Sorted pairs `(a, b)` with `a < b`.
    pub edges: Vec<(u8, u8)>,
}

/// Ordered basis of one graded piece.
#[derive(Clone, Debug)]
pub struct Basis {
    pub id: ComplexId,
    pub g: usize,
    pub k: i32,
    pub elems: Vec<LabeledGraph>,
    index: HashMap<LabeledGraph, usize>,
}

impl Basis {
    /// Builds a basis from canonical generators, sorting them by encoding.
    pub fn new(id: ComplexId, g: usize, k: i32, elems: impl IntoIterator<Item = LabeledGraph>) -> Basis {
        let mut keyed: Vec<(String, LabeledGraph)> = elems.into_iter().map(|e| (e.encode(), e)).collect();
        keyed.sort();
        keyed.dedup_by(|a, b| a.0 == b.0);
        let elems: Vec<LabeledGraph> = keyed.into_iter().map(|(_, e)| e).collect();
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Basis { id, g, k, elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, g: &LabeledGraph) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// Limits of one enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Largest vertex count considered.
    pub vmax: usize,
    /// Largest number of decorated candidates examined.
    pub budget: u64,
}

impl EnumOptions {
    pub fn new(vmax: usize) -> EnumOptions {
        EnumOptions { vmax, budget: DEFAULT_BUDGET }
    }
}

/// Default vertex window for loop order `g`.
pub fn default_vmax(g: usize) -> usize {
    if g <= 1 {
        10
    } else {
        3 * g
    }
}

/// Loop counts per vertex and the non-loop edges of an undecorated graph.
pub type Core = (Vec<u32>, Vec<(u8, u8)>);

struct CoreSearch {
    n: usize,
    edges_left: usize,
    max_deg: usize,
    slots: Vec<(usize, usize)>,
    mult: Vec<usize>,
    deg: Vec<usize>,
    /// Index of the last slot touching each vertex.
    last: Vec<usize>,
    seen: HashSet<(Vec<u32>, Vec<Edge>)>,
    out: Vec<Core>,
}

impl CoreSearch {
    fn run(&mut self, s: usize) {
        if s == self.slots.len() {
            if self.edges_left == 0 {
                self.leaf();
            }
            return;
        }
        let (a, b) = self.slots[s];
        let step = if a == b { 2 } else { 1 };
        let mut m = 0;
        loop {
            if m > self.edges_left || self.deg[a] + step * m > self.max_deg || self.deg[b] + step * m > self.max_deg {
                break;
            }
            self.mult[s] = m;
            self.deg[a] += step * m;
            if a != b {
                self.deg[b] += m;
            }
            self.edges_left -= m;
            let ok = (0..self.n).filter(|&v| self.last[v] == s).all(|v| self.deg[v] >= 3);
            if ok && self.deficit(s + 1) <= 2 * self.edges_left {
                self.run(s + 1);
            }
            self.edges_left += m;
            self.deg[a] -= step * m;
            if a != b {
                self.deg[b] -= m;
            }
            m += 1;
        }
        self.mult[s] = 0;
    }

    /// Half-edges still needed by vertices that have open slots.
    fn deficit(&self, next: usize) -> usize {
        (0..self.n).filter(|&v| self.last[v] >= next).map(|v| 3usize.saturating_sub(self.deg[v])).sum()
    }

    fn leaf(&mut self) {
        let mut loops = vec![0u32; self.n];
        let mut edges = Vec::new();
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (s, &(a, b)) in self.slots.iter().enumerate() {
            for _ in 0..self.mult[s] {
                if a == b {
                    loops[a] += 1;
                } else {
                    edges.push(Edge::new(a, b, EdgeKind::Dotted));
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let root = find(&mut parent, 0);
        if (1..self.n).any(|v| find(&mut parent, v) != root) {
            return;
        }
        let key = canonical_key(&loops, &edges);
        if self.seen.insert(key.clone()) {
            let pairs = key.1.iter().map(|e| (e.tail, e.head)).collect();
            self.out.push((key.0, pairs));
        }
    }
}

/// Connected multigraphs with `n` vertices and loop order `g` whose
/// valences lie in `3..=max_deg`. Loops (counted twice) are allowed only when
/// `loops` is set. Returns loop counts per vertex and the non-loop edges.
pub fn cores(n: usize, g: usize, loops: bool, max_deg: usize) -> Vec<Core> {
    if n == 0 || n + g < 1 {
        return Vec::new();
    }
    let e = n + g - 1;
    let mut slots = Vec::new();
    for a in 0..n {
        for b in a..n {
            if a != b || loops {
                slots.push((a, b));
            }
        }
    }
    let mut last = vec![0usize; n];
    for (s, &(a, b)) in slots.iter().enumerate() {
        last[a] = s;
        last[b] = s;
    }
    let mut cs = CoreSearch {
        n,
        edges_left: e,
        max_deg,
        mult: vec![0; slots.len()],
        slots,
        deg: vec![0; n],
        last,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    if cs.slots.is_empty() {
        return Vec::new();
    }
    cs.run(0);
    cs.out.sort();
    cs.out
}

fn compositions(total: usize, parts: usize, mins: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let i = cur.len();
    if i + 1 == parts {
        if total >= mins[i] {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for x in mins[i]..=total {
        cur.push(x);
        compositions(total - x, parts, mins, cur, out);
        cur.pop();
    }
}

/// Undirected skeletons of `spec` with `v` vertices and loop order `g`, up
/// to isomorphism.
pub fn skeletons(spec: &ComplexSpec, g: usize, v: usize) -> Vec<Skeleton> {
    let min = spec.generator_min_valence();
    let max = spec.max_valence.unwrap_or(usize::MAX);
    let mut seen: BTreeSet<(Vec<u32>, Vec<Edge>)> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |n: usize, edges: Vec<Edge>, out: &mut Vec<Skeleton>| {
        let key = canonical_key(&vec![0u32; n], &edges);
        if seen.insert(key.clone()) {
            let mut pairs: Vec<(u8, u8)> = key.1.iter().map(|e| (e.tail.min(e.head), e.tail.max(e.head))).collect();
            pairs.sort();
            out.push(Skeleton { vertices: n, edges: pairs });
        }
    };
    if g == 0 || v == 0 || v > crate::graph::MAX_VERTICES {
        return out;
    }
    if g == 1 {
        if min <= 2 && max >= 2 && v >= 2 {
            let edges = (0..v).map(|i| Edge::new(i, (i + 1) % v, EdgeKind::Dotted)).collect();
            push(v, edges, &mut out);
        }
        return out;
    }
    let bivalent = min <= 2 && max >= 2;
    let vc_max = (2 * g - 2).min(v);
    for vc in 1..=vc_max {
        let b = v - vc;
        if b > 0 && !bivalent {
            continue;
        }
        for (loops, pairs) in cores(vc, g, bivalent, max) {
            // Core edges: loops first, then ordinary edges.
            let mut core_edges: Vec<(usize, usize)> = Vec::new();
            for (x, &l) in loops.iter().enumerate() {
                for _ in 0..l {
                    core_edges.push((x, x));
                }
            }
            core_edges.extend(pairs.iter().map(|&(a, b)| (a as usize, b as usize)));
            let mins: Vec<usize> = core_edges.iter().map(|&(a, b)| usize::from(a == b)).collect();
            let mut dists = Vec::new();
            compositions(b, core_edges.len(), &mins, &mut Vec::new(), &mut dists);
            for dist in dists {
                let mut edges = Vec::new();
                let mut next = vc;
                for (&(a, bb), &k) in core_edges.iter().zip(&dist) {
                    let mut prev = a;
                    for _ in 0..k {
                        edges.push(Edge::new(prev, next, EdgeKind::Dotted));
                        prev = next;
                        next += 1;
                    }
                    edges.push(Edge::new(prev, bb, EdgeKind::Dotted));
                }
                push(v, edges, &mut out);
            }
        }
    }
    out.sort();
    out
}

/// Shared candidate counter of one enumeration.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    fn take(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.limit
    }
}

struct Decorator<'a> {
    spec: &'a ComplexSpec,
    sk: &'a Skeleton,
    budget: &'a Budget,
    colors: Vec<VertexColor>,
    kinds_left: [usize; 5],
    edges: Vec<Edge>,
    prof: Vec<Valence>,
    /// Vertices whose last incident skeleton edge has each index.
    completes: Vec<Vec<usize>>,
    out: &'a mut BTreeSet<LabeledGraph>,
    exhausted: bool,
}

fn bump(p: &mut Valence, kind: EdgeKind, outgoing: bool, delta: i32) {
    let slot = if outgoing { &mut p.outgoing[kind.index()] } else { &mut p.incoming[kind.index()] };
    *slot = (*slot as i32 + delta) as u16;
}

impl Decorator<'_> {
    fn edges_dfs(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        if i == self.sk.edges.len() {
            self.leaf();
            return;
        }
        let (a, b) = self.sk.edges[i];
        for &kind in self.spec.kinds {
            if self.kinds_left[kind.index()] == 0 {
                continue;
            }
            let both = !self.spec.recipe.flippable(kind);
            let dirs: &[(u8, u8)] = if both { &[(a, b), (b, a)] } else { &[(a, b)] };
            for &(t, h) in dirs {
                self.kinds_left[kind.index()] -= 1;
                bump(&mut self.prof[t as usize], kind, true, 1);
                bump(&mut self.prof[h as usize], kind, false, 1);
                let ok = self.completes[i].iter().all(|&v| self.spec.vertex_ok(self.colors[v], &self.prof[v]))
                    && self.white_ok(t as usize, kind);
                if ok {
                    self.edges.push(Edge { tail: t, head: h, kind });
                    self.edges_dfs(i + 1);
                    self.edges.pop();
                }
                bump(&mut self.prof[t as usize], kind, true, -1);
                bump(&mut self.prof[h as usize], kind, false, -1);
                self.kinds_left[kind.index()] += 1;
            }
        }
    }

    fn white_ok(&self, tail: usize, kind: EdgeKind) -> bool {
        !(self.spec.white_sinks && kind == EdgeKind::Solid && self.colors[tail] == VertexColor::White)
    }

    fn leaf(&mut self) {
        if !self.budget.take() {
            self.exhausted = true;
            return;
        }
        let g = LabeledGraph::from_parts(self.colors.clone(), self.edges.clone());
        if !self.spec.is_generator(&g) {
            return;
        }
        let c = canonicalize(&g, &self.spec.recipe);
        if !c.is_zero {
            self.out.insert(c.graph);
        }
    }

    fn colors_dfs(&mut self, v: usize, left: [usize; 2], kinds: &[[usize; 5]]) {
        if self.exhausted {
            return;
        }
        if v == self.sk.vertices {
            for k in kinds {
                self.kinds_left = *k;
                self.edges_dfs(0);
            }
            return;
        }
        for &c in self.spec.colors {
            if left[c.index()] > 0 {
                let mut l = left;
                l[c.index()] -= 1;
                self.colors[v] = c;
                self.colors_dfs(v + 1, l, kinds);
            }
        }
    }
}

/// Adds every generator decorating `sk` with one of `profiles` to `out`.
/// Returns `false` when the budget ran out.
pub fn decorate(
    spec: &ComplexSpec,
    sk: &Skeleton,
    profiles: &[CountProfile],
    budget: &Budget,
    out: &mut BTreeSet<LabeledGraph>,
) -> bool {
    let mut completes = vec![Vec::new(); sk.edges.len()];
    let mut last = vec![usize::MAX; sk.vertices];
    for (i, &(a, b)) in sk.edges.iter().enumerate() {
        last[a as usize] = i;
        last[b as usize] = i;
    }
    for (v, &l) in last.iter().enumerate() {
        if l == usize::MAX {
            return true;
        }
        completes[l].push(v);
    }
    let mut by_colors: Vec<([usize; 2], Vec<[usize; 5]>)> = Vec::new();
    for p in profiles.iter().filter(|p| p.vertices() == sk.vertices && p.edges() == sk.edges.len()) {
        match by_colors.iter_mut().find(|(c, _)| *c == p.colors) {
            Some((_, ks)) => ks.push(p.kinds),
            None => by_colors.push((p.colors, vec![p.kinds])),
        }
    }
    let mut d = Decorator {
        spec,
        sk,
        budget,
        colors: vec![VertexColor::Black; sk.vertices],
        kinds_left: [0; 5],
        edges: Vec::with_capacity(sk.edges.len()),
        prof: vec![Valence::default(); sk.vertices],
        completes,
        out,
        exhausted: false,
    };
    for (colors, kinds) in &by_colors {
        d.colors_dfs(0, *colors, kinds);
    }
    !d.exhausted
}

/// The work list of one graded piece: count profiles and skeletons.
pub fn plan(spec: &ComplexSpec, g: usize, k: i32, vmax: usize) -> (Vec<CountProfile>, Vec<Skeleton>) {
    let profiles = spec.count_vectors(g, k, vmax);
    let mut vs: Vec<usize> = profiles.iter().map(|p| p.vertices()).collect();
    vs.sort_unstable();
    vs.dedup();
    let sks = vs.into_iter().flat_map(|v| skeletons(spec, g, v)).collect();
    (profiles, sks)
}

/// Basis of generators of loop order `g` and degree `k`.
pub fn generate_basis(id: ComplexId, g: usize, k: i32, opts: EnumOptions) -> Result<Basis> {
    let spec = id.spec();
    let (profiles, sks) = plan(&spec, g, k, opts.vmax);
    let budget = Budget::new(opts.budget);
    let mut set = BTreeSet::new();
    for (done, sk) in sks.iter().enumerate() {
        if !decorate(&spec, sk, &profiles, &budget, &mut set) {
            return Err(Error::Budget { budget: opts.budget, done, total: sks.len(), basis: set.len() });
        }
    }
    Ok(Basis::new(id, g, k, set))
}
