//! Labeled directed multigraphs with colored vertices and typed edges.
//!
//! The stored vertex order, edge order and edge directions are the orientation
//! data of a generator. Nothing else is attached to a graph.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::error::{GraphError, ParseError};

/// Largest vertex count a [`LabeledGraph`] may carry.
pub const MAX_VERTICES: usize = 64;

/// Vertex color. Single-color families use only [`VertexColor::Black`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexColor {
    Black,
    White,
}

impl VertexColor {
    pub const ALL: [VertexColor; 2] = [VertexColor::Black, VertexColor::White];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code(self) -> char {
        match self {
            VertexColor::Black => 'b',
            VertexColor::White => 'w',
        }
    }
}

/// Edge type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Solid,
    Dotted,
    SDotted,
    TDotted,
    Wavy,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 5] =
        [EdgeKind::Solid, EdgeKind::Dotted, EdgeKind::SDotted, EdgeKind::TDotted, EdgeKind::Wavy];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Short code used by the text encoding.
    pub fn code(self) -> &'static str {
        match self {
            EdgeKind::Solid => "s",
            EdgeKind::Dotted => "d",
            EdgeKind::SDotted => "sd",
            EdgeKind::TDotted => "td",
            EdgeKind::Wavy => "w",
        }
    }

    pub fn from_code(s: &str) -> Option<EdgeKind> {
        Some(match s {
            "s" => EdgeKind::Solid,
            "d" => EdgeKind::Dotted,
            "sd" => EdgeKind::SDotted,
            "td" => EdgeKind::TDotted,
            "w" => EdgeKind::Wavy,
            _ => return None,
        })
    }
}

/// A directed edge between two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: u8,
    pub head: u8,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn new(tail: usize, head: usize, kind: EdgeKind) -> Edge {
        debug_assert!(tail < MAX_VERTICES && head < MAX_VERTICES);
        Edge { tail: tail as u8, head: head as u8, kind }
    }

    pub fn tail(&self) -> usize {
        self.tail as usize
    }

    pub fn head(&self) -> usize {
        self.head as usize
    }

    pub fn reversed(&self) -> Edge {
        Edge { tail: self.head, head: self.tail, kind: self.kind }
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.tail() == v {
            self.head()
        } else {
            self.tail()
        }
    }
}

/// A graph with ordered vertices and ordered edges.
///
/// The derived ordering compares colors first, then the edge list; canonical
/// forms are the minimal relabelings under this order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledGraph {
    colors: Vec<VertexColor>,
    edges: Vec<Edge>,
}

/// Per-vertex counts of incident edge ends, split by kind and direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Valence {
    pub incoming: [u16; 5],
    pub outgoing: [u16; 5],
}

impl Valence {
    pub fn total(&self) -> usize {
        self.incoming.iter().chain(self.outgoing.iter()).map(|&c| c as usize).sum()
    }

    pub fn solid_in(&self) -> usize {
        self.incoming[EdgeKind::Solid.index()] as usize
    }

    pub fn solid_out(&self) -> usize {
        self.outgoing[EdgeKind::Solid.index()] as usize
    }

    /// Exactly one incoming and one outgoing edge, both solid.
    pub fn is_passing(&self) -> bool {
        self.total() == 2 && self.solid_in() == 1 && self.solid_out() == 1
    }

    /// No outgoing solid edges.
    pub fn is_target(&self) -> bool {
        self.solid_out() == 0
    }

    /// No incoming solid edges.
    pub fn is_source(&self) -> bool {
        self.solid_in() == 0
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        (self.incoming[kind.index()] + self.outgoing[kind.index()]) as usize
    }
}

impl LabeledGraph {
    /// Builds a graph, rejecting tadpoles and out-of-range endpoints.
    pub fn new(colors: Vec<VertexColor>, edges: Vec<Edge>) -> Result<LabeledGraph, GraphError> {
        if colors.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(colors.len()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.tail() >= colors.len() || e.head() >= colors.len() {
                return Err(GraphError::VertexOutOfRange { edge: i, vertices: colors.len() });
            }
            if e.tail == e.head {
                return Err(GraphError::Tadpole { edge: i });
            }
        }
        Ok(LabeledGraph { colors, edges })
    }

    /// Builds a graph whose invariants the caller guarantees.
    pub(crate) fn from_parts(colors: Vec<VertexColor>, edges: Vec<Edge>) -> LabeledGraph {
        debug_assert!(edges.iter().all(|e| e.tail != e.head && e.tail() < colors.len() && e.head() < colors.len()));
        LabeledGraph { colors, edges }
    }

    /// All-black graph with the given edges.
    pub fn black(n: usize, edges: &[(usize, usize, EdgeKind)]) -> Result<LabeledGraph, GraphError> {
        LabeledGraph::new(vec![VertexColor::Black; n], edges.iter().map(|&(t, h, k)| Edge::new(t, h, k)).collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn color(&self, v: usize) -> VertexColor {
        self.colors[v]
    }

    pub fn count_color(&self, c: VertexColor) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    pub fn count_kind(&self, k: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == k).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.colors.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for e in &self.edges {
            let a = find(&mut parent, e.tail());
            let b = find(&mut parent, e.head());
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// First Betti number of a connected graph.
    pub fn loop_number(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.colors.len())
    }

    pub fn valence_profile(&self) -> Vec<Valence> {
        let mut out = vec![Valence::default(); self.colors.len()];
        for e in &self.edges {
            out[e.tail()].outgoing[e.kind.index()] += 1;
            out[e.head()].incoming[e.kind.index()] += 1;
        }
        out
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.colors.len()];
        for e in &self.edges {
            out[e.tail()] += 1;
            out[e.head()] += 1;
        }
        out
    }

    /// True when the solid edges contain a closed directed path.
    pub fn has_solid_cycle(&self) -> bool {
        let n = self.colors.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in self.edges.iter().filter(|e| e.kind == EdgeKind::Solid) {
            indeg[e.head()] += 1;
            out[e.tail()].push(e.head());
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen < n
    }

    /// True when two edges join the same unordered pair of vertices.
    pub fn has_multi_edge(&self) -> bool {
        let mut pairs: Vec<(u8, u8)> = self.edges.iter().map(|e| (e.tail.min(e.head), e.tail.max(e.head))).collect();
        pairs.sort_unstable();
        pairs.windows(2).any(|w| w[0] == w[1])
    }

    /// Text encoding `n=<int>;colors=<b|w>*;edges=<t>-<h>:<kind>,...`.
    pub fn encode(&self) -> String {
        let mut s = String::with_capacity(16 + 8 * self.edges.len());
        let _ = write!(s, "n={};colors=", self.colors.len());
        for c in &self.colors {
            s.push(c.code());
        }
        s.push_str(";edges=");
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}-{}:{}", e.tail, e.head, e.kind.code());
        }
        s
    }

    /// Parses the text encoding produced by [`LabeledGraph::encode`].
    pub fn decode(text: &str) -> Result<LabeledGraph, ParseError> {
        Parser { src: text.as_bytes(), pos: 0 }.graph()
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> ParseError {
        ParseError { offset: self.pos, message: msg }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err("unexpected token"))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let mut v: usize = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| self.err("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(v)
    }

    fn graph(mut self) -> Result<LabeledGraph, ParseError> {
        self.expect("n=")?;
        let n = self.number()?;
        if n > MAX_VERTICES {
            return Err(self.err("too many vertices"));
        }
        self.expect(";colors=")?;
        let mut colors = Vec::with_capacity(n);
        while let Some(&b) = self.src.get(self.pos) {
            match b {
                b'b' => colors.push(VertexColor::Black),
                b'w' => colors.push(VertexColor::White),
                _ => break,
            }
            self.pos += 1;
        }
        if colors.len() != n {
            return Err(self.err("color string length differs from n"));
        }
        self.expect(";edges=")?;
        let mut edges = Vec::new();
        while self.pos < self.src.len() {
            let edge_start = self.pos;
            let t = self.number()?;
            self.expect("-")?;
            let h = self.number()?;
            self.expect(":")?;
            let kstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
                self.pos += 1;
            }
            let code = core::str::from_utf8(&self.src[kstart..self.pos]).unwrap_or("");
            let kind = EdgeKind::from_code(code).ok_or(ParseError { offset: kstart, message: "unknown edge kind" })?;
            if t >= n || h >= n {
                return Err(ParseError { offset: edge_start, message: "vertex index out of range" });
            }
            if t == h {
                return Err(ParseError { offset: edge_start, message: "tadpole" });
            }
            edges.push(Edge::new(t, h, kind));
            if self.pos < self.src.len() {
                self.expect(",")?;
                if self.pos == self.src.len() {
                    return Err(self.err("trailing comma"));
                }
            }
        }
        Ok(LabeledGraph { colors, edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> LabeledGraph {
        let d = EdgeKind::Dotted;
        LabeledGraph::black(4, &[(0, 1, d), (0, 2, d), (0, 3, d), (1, 2, d), (1, 3, d), (2, 3, d)]).unwrap()
    }

    #[test]
    fn loop_numbers() {
        let d = EdgeKind::Dotted;
        let theta = LabeledGraph::black(2, &[(0, 1, d), (0, 1, d), (0, 1, d)]).unwrap();
        assert_eq!(theta.loop_number(), Ok(2));
        assert_eq!(tetra().loop_number(), Ok(3));
        assert_eq!(LabeledGraph::black(1, &[]).unwrap().loop_number(), Ok(0));
        let two = LabeledGraph::black(2, &[]).unwrap();
        assert_eq!(two.loop_number(), Err(GraphError::Disconnected));
    }

    #[test]
    fn valences() {
        let s = EdgeKind::Solid;
        let star = LabeledGraph::black(4, &[(0, 1, s), (0, 2, s), (0, 3, s)]).unwrap();
        let p = star.valence_profile();
        assert_eq!((p[0].solid_out(), p[0].solid_in()), (3, 0));
        assert!(p[0].is_source() && !p[0].is_target());
        let path = LabeledGraph::black(3, &[(0, 1, s), (1, 2, s)]).unwrap();
        assert!(path.valence_profile()[1].is_passing());
        let g = LabeledGraph::new(
            vec![VertexColor::White, VertexColor::Black, VertexColor::Black, VertexColor::Black],
            vec![Edge::new(1, 0, s), Edge::new(2, 0, s), Edge::new(3, 0, s)],
        )
        .unwrap();
        assert!(g.valence_profile()[0].is_target());
    }

    #[test]
    fn encode_round_trip() {
        let t = tetra();
        assert_eq!(LabeledGraph::decode(&t.encode()).unwrap(), t);
        let all = LabeledGraph::new(
            vec![VertexColor::Black, VertexColor::White, VertexColor::Black],
            EdgeKind::ALL.iter().enumerate().map(|(i, &k)| Edge::new(i % 3, (i + 1) % 3, k)).collect(),
        )
        .unwrap();
        let text = all.encode();
        assert_eq!(text, "n=3;colors=bwb;edges=0-1:s,1-2:d,2-0:sd,0-1:td,1-2:w");
        assert_eq!(LabeledGraph::decode(&text).unwrap(), all);
    }

    #[test]
    fn decode_errors() {
        let e = LabeledGraph::decode("n=2;colors=bb;edges=1-1:s").unwrap_err();
        assert_eq!(e.message, "tadpole");
        assert_eq!(e.offset, 20);
        assert!(LabeledGraph::decode("n=2;colors=b;edges=").is_err());
        assert!(LabeledGraph::decode("n=2;colors=bb;edges=0-5:s").is_err());
        assert!(LabeledGraph::decode("n=2;colors=bb;edges=0-1:q").is_err());
        assert!(LabeledGraph::decode("n=2;colors=bb;edges=0-1:s,").is_err());
        assert!(LabeledGraph::decode("n=1;colors=b;edges=").is_ok());
    }

    #[test]
    fn solid_cycles() {
        let s = EdgeKind::Solid;
        let cyc = LabeledGraph::black(3, &[(0, 1, s), (1, 2, s), (2, 0, s)]).unwrap();
        assert!(cyc.has_solid_cycle());
        let acyc = LabeledGraph::black(3, &[(0, 1, s), (1, 2, s), (0, 2, s)]).unwrap();
        assert!(!acyc.has_solid_cycle());
        let dotted = LabeledGraph::black(3, &[(0, 1, s), (1, 2, s), (2, 0, EdgeKind::Dotted)]).unwrap();
        assert!(!dotted.has_solid_cycle());
    }
}
