//! Registry of graph-complex families.
//!
//! Every family is data: which colors and edge kinds it uses, their degrees,
//! the local rules that terms of the differential must obey, the global
//! conditions singling out generators, and how the family sits inside a bigger
//! one (subcomplex, quotient by a span of generators, or quotient by the
//! differential closure of such a span).
//!
//! The integer `d` of a [`ComplexId`] is the subscript of the complex. Vertex
//! degrees are written through `n`, the degree of a black vertex: `n = d`
//! except for the two-color families, indexed by the pair `(d, d+1)`, where
//! `n = d + 1`.

use alloc::vec::Vec;
use core::fmt;

use crate::canon::{FlipRule, OrientationRecipe};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, LabeledGraph, Valence, VertexColor};

/// Family tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Gc,
    GcSimple,
    GcGeq2,
    Gc2Valent,
    GcLeq4,
    DGc,
    DGcGeq2,
    OGc,
    OGcGeq2,
    TGc,
    SGc,
    StGc,
    SoTGc,
    GcWedge,
    GcVee,
    GcWedgeVee,
    GcVeePlusWedge,
    GcStGeq3,
    GcSPlusTGeq3,
    GcTGeq3,
    XSt,
    GcWheeled,
    HatOGc,
    OGc3,
    BarGc2Edge,
    BarTGc,
    BarSGc,
    GcTDotted,
    RdGc4Edge,
    RdGc4EdgeTw,
    GcTDd1,
    GcOrDd1,
    GcTDd1Tilde,
    GcOrDd1Tilde,
}

/// Global condition on a generator, evaluated on its valence profile and shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cond {
    True,
    /// Some vertex without outgoing solid edges.
    HasTarget,
    /// Some vertex without incoming solid edges.
    HasSource,
    HasBivalentTarget,
    HasBivalentSource,
    HasValenceAtLeast(usize),
    HasKind(EdgeKind),
    HasColor(VertexColor),
    NoSolidCycle,
    NoMultiEdge,
    All(&'static [Cond]),
    Any(&'static [Cond]),
    Not(&'static Cond),
}

impl Cond {
    pub fn eval(&self, g: &LabeledGraph, prof: &[Valence]) -> bool {
        match *self {
            Cond::True => true,
            Cond::HasTarget => prof.iter().any(|p| p.is_target()),
            Cond::HasSource => prof.iter().any(|p| p.is_source()),
            Cond::HasBivalentTarget => prof.iter().any(|p| p.total() == 2 && p.is_target()),
            Cond::HasBivalentSource => prof.iter().any(|p| p.total() == 2 && p.is_source()),
            Cond::HasValenceAtLeast(k) => prof.iter().any(|p| p.total() >= k),
            Cond::HasKind(k) => g.edges().iter().any(|e| e.kind == k),
            Cond::HasColor(c) => g.colors().contains(&c),
            Cond::NoSolidCycle => !g.has_solid_cycle(),
            Cond::NoMultiEdge => !g.has_multi_edge(),
            Cond::All(cs) => cs.iter().all(|c| c.eval(g, prof)),
            Cond::Any(cs) => cs.iter().any(|c| c.eval(g, prof)),
            Cond::Not(c) => !c.eval(g, prof),
        }
    }
}

/// How the edge-retyping part of the differential acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Retype {
    None,
    /// solid ⇝ dotted.
    SolidToDotted,
    /// solid ⇝ t-dotted − s-dotted, s-dotted ⇝ wavy, t-dotted ⇝ wavy.
    FourEdge,
}

/// How a family is cut out of a larger complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Spanned by generators; the differential lands in the span.
    Plain,
    /// Quotient by the span of generators satisfying the condition.
    QuotientBySpan(Cond),
    /// Quotient by the differential closure of the span of ambient generators
    /// satisfying the condition.
    QuotientByClosure { ambient: Family, killed: Cond },
}

/// A family together with its subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexId {
    pub family: Family,
    pub d: i32,
}

/// Static description of a complex.
#[derive(Clone, Copy, Debug)]
pub struct ComplexSpec {
    pub id: ComplexId,
    pub colors: &'static [VertexColor],
    pub kinds: &'static [EdgeKind],
    /// Degree of a vertex of each color, indexed by [`VertexColor::index`].
    pub color_degree: [i32; 2],
    /// Degree of an edge of each kind, indexed by [`EdgeKind::index`].
    pub kind_degree: [i32; 5],
    pub recipe: OrientationRecipe,
    pub min_valence: usize,
    pub max_valence: Option<usize>,
    pub passing_allowed: bool,
    /// White vertices may not have outgoing solid edges.
    pub white_sinks: bool,
    /// Conditions every generator satisfies besides the local rules.
    pub cond: Cond,
    pub shape: Shape,
    /// Kind of the edge created by splitting a black vertex.
    pub split_kind: Option<EdgeKind>,
    pub retype: Retype,
    /// The two white-vertex parts of the differential are present.
    pub white_parts: bool,
}

const B: &[VertexColor] = &[VertexColor::Black];
const BW: &[VertexColor] = &[VertexColor::Black, VertexColor::White];
const K_DOT: &[EdgeKind] = &[EdgeKind::Dotted];
const K_SOL: &[EdgeKind] = &[EdgeKind::Solid];
const K_TWO: &[EdgeKind] = &[EdgeKind::Solid, EdgeKind::Dotted];
const K_FOUR: &[EdgeKind] = &[EdgeKind::Solid, EdgeKind::SDotted, EdgeKind::TDotted, EdgeKind::Wavy];

const ST: &[Cond] = &[Cond::HasSource, Cond::HasTarget];
const BIV_ST: &[Cond] = &[Cond::HasBivalentSource, Cond::HasBivalentTarget];
const T_DOT: &[Cond] = &[Cond::HasTarget, Cond::HasKind(EdgeKind::Dotted)];
const TW: &[Cond] = &[Cond::HasKind(EdgeKind::TDotted), Cond::HasKind(EdgeKind::Wavy)];
const T_BLACK: &[Cond] = &[Cond::HasTarget, Cond::HasColor(VertexColor::Black)];
const OR_BLACK: &[Cond] = &[Cond::NoSolidCycle, Cond::HasColor(VertexColor::Black)];

impl Family {
    pub const ALL: [Family; 34] = [
        Family::Gc,
        Family::GcSimple,
        Family::GcGeq2,
        Family::Gc2Valent,
        Family::GcLeq4,
        Family::DGc,
        Family::DGcGeq2,
        Family::OGc,
        Family::OGcGeq2,
        Family::TGc,
        Family::SGc,
        Family::StGc,
        Family::SoTGc,
        Family::GcWedge,
        Family::GcVee,
        Family::GcWedgeVee,
        Family::GcVeePlusWedge,
        Family::GcStGeq3,
        Family::GcSPlusTGeq3,
        Family::GcTGeq3,
        Family::XSt,
        Family::GcWheeled,
        Family::HatOGc,
        Family::OGc3,
        Family::BarGc2Edge,
        Family::BarTGc,
        Family::BarSGc,
        Family::GcTDotted,
        Family::RdGc4Edge,
        Family::RdGc4EdgeTw,
        Family::GcTDd1,
        Family::GcOrDd1,
        Family::GcTDd1Tilde,
        Family::GcOrDd1Tilde,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Gc => "GC",
            Family::GcSimple => "GC_simple",
            Family::GcGeq2 => "GC_geq2",
            Family::Gc2Valent => "GC_2valent",
            Family::GcLeq4 => "GC_leq4",
            Family::DGc => "dGC",
            Family::DGcGeq2 => "dGC_geq2",
            Family::OGc => "OGC",
            Family::OGcGeq2 => "OGC_geq2",
            Family::TGc => "TGC",
            Family::SGc => "SGC",
            Family::StGc => "STGC",
            Family::SoTGc => "SoTGC",
            Family::GcWedge => "GC_wedge",
            Family::GcVee => "GC_vee",
            Family::GcWedgeVee => "GC_wedge_vee",
            Family::GcVeePlusWedge => "GC_vee_plus_wedge",
            Family::GcStGeq3 => "GC_st_geq3",
            Family::GcSPlusTGeq3 => "GC_s_plus_t_geq3",
            Family::GcTGeq3 => "GC_t_geq3",
            Family::XSt => "X_st",
            Family::GcWheeled => "GC_wheeled",
            Family::HatOGc => "hatOGC",
            Family::OGc3 => "oGC3",
            Family::BarGc2Edge => "barGC2edge",
            Family::BarTGc => "barTGC",
            Family::BarSGc => "barSGC",
            Family::GcTDotted => "GC_t_dotted",
            Family::RdGc4Edge => "rdGC4edge",
            Family::RdGc4EdgeTw => "rdGC4edge_tw",
            Family::GcTDd1 => "GCt_dd1",
            Family::GcOrDd1 => "GCor_dd1",
            Family::GcTDd1Tilde => "GCt_dd1_tilde",
            Family::GcOrDd1Tilde => "GCor_dd1_tilde",
        }
    }

    pub fn from_tag(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.tag() == s)
    }

    /// Two-color families are indexed by `(d, d+1)`.
    pub fn is_two_color(self) -> bool {
        matches!(self, Family::GcTDd1 | Family::GcOrDd1 | Family::GcTDd1Tilde | Family::GcOrDd1Tilde)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:d={}", self.family.tag(), self.d)
    }
}

fn sign(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

impl ComplexId {
    pub fn new(family: Family, d: i32) -> Result<ComplexId> {
        if d < 1 {
            return Err(Error::Unsupported { op: "subscript", allowed: "d >= 1" });
        }
        Ok(ComplexId { family, d })
    }

    /// Parses `TAG:d=<int>`.
    pub fn parse(s: &str) -> Option<ComplexId> {
        let (tag, rest) = s.split_once(":d=")?;
        let d: i32 = rest.parse().ok()?;
        ComplexId::new(Family::from_tag(tag)?, d).ok()
    }

    /// Degree of a black vertex.
    pub fn n(&self) -> i32 {
        if self.family.is_two_color() {
            self.d + 1
        } else {
            self.d
        }
    }

    pub fn spec(&self) -> ComplexSpec {
        use Family::*;
        let n = self.n();
        let odd = |x: i32| x.rem_euclid(2) == 1;
        let mut kind_degree = [0i32; 5];
        let mut flips = [FlipRule::Frozen; 5];
        let kinds: &'static [EdgeKind];
        let (colors, color_degree): (&'static [VertexColor], [i32; 2]) =
            if self.family.is_two_color() { (BW, [n, n - 1]) } else { (B, [n, n - 1]) };
        match self.family {
            Gc | GcSimple | GcGeq2 | Gc2Valent | GcLeq4 => {
                kinds = K_DOT;
                kind_degree[EdgeKind::Dotted.index()] = 1 - n;
                flips[EdgeKind::Dotted.index()] = FlipRule::Signed(sign(odd(n)));
            }
            HatOGc | OGc3 | BarGc2Edge | BarTGc | BarSGc | GcTDotted | GcTDd1 | GcOrDd1 | GcTDd1Tilde
            | GcOrDd1Tilde => {
                kinds = K_TWO;
                kind_degree[EdgeKind::Solid.index()] = 1 - n;
                kind_degree[EdgeKind::Dotted.index()] = 2 - n;
                flips[EdgeKind::Dotted.index()] = FlipRule::Signed(sign(odd(n - 1)));
            }
            RdGc4Edge | RdGc4EdgeTw => {
                kinds = K_FOUR;
                kind_degree[EdgeKind::Solid.index()] = 1 - n;
                kind_degree[EdgeKind::SDotted.index()] = 2 - n;
                kind_degree[EdgeKind::TDotted.index()] = 2 - n;
                kind_degree[EdgeKind::Wavy.index()] = 3 - n;
                for k in [EdgeKind::SDotted, EdgeKind::TDotted, EdgeKind::Wavy] {
                    flips[k.index()] = FlipRule::Signed(sign(odd(n - 1)));
                }
            }
            _ => {
                kinds = K_SOL;
                kind_degree[EdgeKind::Solid.index()] = 1 - n;
            }
        }
        let mut odd_kinds = [false; 5];
        for k in kinds {
            odd_kinds[k.index()] = odd(kind_degree[k.index()]);
        }
        let mut odd_colors = [false; 2];
        for c in colors {
            odd_colors[c.index()] = odd(color_degree[c.index()]);
        }
        let recipe = OrientationRecipe { odd_colors, odd_kinds, flips };

        let mut s = ComplexSpec {
            id: *self,
            colors,
            kinds,
            color_degree,
            kind_degree,
            recipe,
            min_valence: 3,
            max_valence: None,
            passing_allowed: true,
            white_sinks: false,
            cond: Cond::True,
            shape: Shape::Plain,
            split_kind: Some(EdgeKind::Solid),
            retype: Retype::None,
            white_parts: false,
        };
        let directed = |s: &mut ComplexSpec, cond: Cond| {
            s.min_valence = 2;
            s.passing_allowed = false;
            s.cond = cond;
        };
        match self.family {
            Gc => s.split_kind = Some(EdgeKind::Dotted),
            GcSimple => {
                s.split_kind = Some(EdgeKind::Dotted);
                s.cond = Cond::NoMultiEdge;
            }
            GcGeq2 => {
                s.split_kind = Some(EdgeKind::Dotted);
                s.min_valence = 2;
            }
            Gc2Valent => {
                s.split_kind = Some(EdgeKind::Dotted);
                s.min_valence = 2;
                s.max_valence = Some(2);
            }
            GcLeq4 => {
                s.split_kind = Some(EdgeKind::Dotted);
                s.max_valence = Some(4);
                s.shape = Shape::QuotientByClosure { ambient: Gc, killed: Cond::HasValenceAtLeast(5) };
            }
            DGc => directed(&mut s, Cond::HasValenceAtLeast(3)),
            DGcGeq2 => directed(&mut s, Cond::True),
            OGc => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::NoSolidCycle])),
            OGcGeq2 => directed(&mut s, Cond::NoSolidCycle),
            TGc => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasTarget])),
            SGc => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasSource])),
            StGc => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasSource, Cond::HasTarget])),
            SoTGc => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::Any(ST)])),
            GcWedge => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasBivalentTarget])),
            GcVee => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasBivalentSource])),
            GcWedgeVee => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::All(BIV_ST)])),
            GcVeePlusWedge => directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::Any(BIV_ST)])),
            GcStGeq3 => s.cond = Cond::All(ST),
            GcSPlusTGeq3 => s.cond = Cond::Any(ST),
            GcTGeq3 => s.cond = Cond::HasTarget,
            XSt => {
                directed(&mut s, Cond::All(&[Cond::HasValenceAtLeast(3), Cond::HasSource, Cond::HasTarget]));
                s.shape = Shape::QuotientBySpan(Cond::All(BIV_ST));
            }
            GcWheeled => {
                directed(&mut s, Cond::HasValenceAtLeast(3));
                s.shape = Shape::QuotientBySpan(Cond::Any(ST));
            }
            HatOGc => {
                s.cond = Cond::NoSolidCycle;
                s.retype = Retype::SolidToDotted;
            }
            OGc3 => {
                s.cond = Cond::NoSolidCycle;
                s.retype = Retype::SolidToDotted;
                s.max_valence = Some(3);
                s.shape = Shape::QuotientByClosure { ambient: HatOGc, killed: Cond::HasValenceAtLeast(4) };
            }
            BarGc2Edge => s.retype = Retype::SolidToDotted,
            BarTGc => {
                s.retype = Retype::SolidToDotted;
                s.cond = Cond::HasTarget;
            }
            BarSGc => {
                s.retype = Retype::SolidToDotted;
                s.cond = Cond::HasSource;
            }
            GcTDotted => {
                s.retype = Retype::SolidToDotted;
                s.cond = Cond::All(T_DOT);
            }
            RdGc4Edge => s.retype = Retype::FourEdge,
            RdGc4EdgeTw => {
                s.retype = Retype::FourEdge;
                s.cond = Cond::Any(TW);
            }
            GcTDd1 | GcOrDd1 | GcTDd1Tilde | GcOrDd1Tilde => {
                s.retype = Retype::SolidToDotted;
                s.white_sinks = true;
                s.white_parts = true;
                s.cond = match self.family {
                    GcTDd1 => Cond::All(T_BLACK),
                    GcOrDd1 => Cond::All(OR_BLACK),
                    GcTDd1Tilde => Cond::HasTarget,
                    _ => Cond::NoSolidCycle,
                };
            }
        }
        s
    }
}

/// Numbers of vertices of each color and edges of each kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountProfile {
    pub colors: [usize; 2],
    pub kinds: [usize; 5],
}

impl CountProfile {
    pub fn vertices(&self) -> usize {
        self.colors.iter().sum()
    }

    pub fn edges(&self) -> usize {
        self.kinds.iter().sum()
    }
}

impl ComplexSpec {
    pub fn tag(&self) -> &'static str {
        self.id.family.tag()
    }

    pub fn allows_bivalent(&self) -> bool {
        self.min_valence <= 2
    }

    /// Smallest valence among generators; wheeled graphs cannot be bivalent.
    pub fn generator_min_valence(&self) -> usize {
        if self.id.family == Family::GcWheeled {
            3
        } else {
            self.min_valence
        }
    }

    /// Affine degree: sum of object degrees minus the black-vertex degree.
    pub fn degree(&self, g: &LabeledGraph) -> Result<i32> {
        let mut deg = -self.id.n();
        for &c in g.colors() {
            if !self.colors.contains(&c) {
                return Err(Error::Foreign { family: self.tag(), what: "this vertex color" });
            }
            deg += self.color_degree[c.index()];
        }
        for e in g.edges() {
            if !self.kinds.contains(&e.kind) {
                return Err(Error::Foreign { family: self.tag(), what: "this edge kind" });
            }
            deg += self.kind_degree[e.kind.index()];
        }
        Ok(deg)
    }

    pub fn profile_degree(&self, p: &CountProfile) -> i32 {
        let mut deg = -self.id.n();
        for c in VertexColor::ALL {
            deg += self.color_degree[c.index()] * p.colors[c.index()] as i32;
        }
        for k in EdgeKind::ALL {
            deg += self.kind_degree[k.index()] * p.kinds[k.index()] as i32;
        }
        deg
    }

    /// Local rules on a single vertex.
    pub fn vertex_ok(&self, color: VertexColor, p: &Valence) -> bool {
        let t = p.total();
        if t < self.min_valence {
            return false;
        }
        if !self.passing_allowed && p.is_passing() {
            return false;
        }
        if self.white_sinks && color == VertexColor::White && p.solid_out() > 0 {
            return false;
        }
        true
    }

    /// Local rules of the ambient complex, used to discard terms.
    pub fn local_ok(&self, g: &LabeledGraph, prof: &[Valence]) -> bool {
        prof.iter().zip(g.colors()).all(|(p, &c)| self.vertex_ok(c, p))
    }

    fn max_ok(&self, prof: &[Valence]) -> bool {
        match self.max_valence {
            Some(m) => prof.iter().all(|p| p.total() <= m),
            None => true,
        }
    }

    /// Membership in the quotient generator set, given that `local_ok` holds.
    pub fn survives(&self, g: &LabeledGraph, prof: &[Valence]) -> bool {
        if !self.max_ok(prof) {
            return false;
        }
        match self.shape {
            Shape::QuotientBySpan(kill) => !kill.eval(g, prof),
            _ => true,
        }
    }

    /// Generator test: connected, colors and kinds allowed, local rules,
    /// global conditions, and not killed by a quotient.
    pub fn is_generator(&self, g: &LabeledGraph) -> bool {
        if !g.is_connected() {
            return false;
        }
        if g.colors().iter().any(|c| !self.colors.contains(c))
            || g.edges().iter().any(|e| !self.kinds.contains(&e.kind))
        {
            return false;
        }
        let prof = g.valence_profile();
        self.local_ok(g, &prof) && self.cond.eval(g, &prof) && self.survives(g, &prof)
    }

    /// Vertex counts compatible with loop order `g`, ignoring the degree.
    pub fn vertex_range(&self, g: usize, vmax: usize) -> core::ops::RangeInclusive<usize> {
        let lo = if g == 1 { 2 } else { 1 };
        let hi = if self.generator_min_valence() >= 3 {
            if g < 2 {
                0
            } else {
                (2 * g - 2).min(vmax)
            }
        } else {
            vmax
        };
        lo..=hi
    }

    /// All count profiles of loop order `g` and degree `k` with at most
    /// `vmax` vertices. The vertex cap only binds for families admitting
    /// bivalent vertices.
    pub fn count_vectors(&self, g: usize, k: i32, vmax: usize) -> Vec<CountProfile> {
        let mut out = Vec::new();
        if g == 0 {
            return out;
        }
        for v in self.vertex_range(g, vmax) {
            let e = v + g - 1;
            let minv = self.generator_min_valence();
            if 2 * e < minv * v {
                continue;
            }
            if let Some(m) = self.max_valence {
                if 2 * e > m * v {
                    continue;
                }
            }
            let mut colors = [0usize; 2];
            self.split_colors(v, e, k, 0, &mut colors, &mut out);
        }
        out.sort();
        out
    }

    fn split_colors(&self, v: usize, e: usize, k: i32, i: usize, colors: &mut [usize; 2], out: &mut Vec<CountProfile>) {
        if i + 1 == self.colors.len() {
            colors[self.colors[i].index()] = v;
            let mut kinds = [0usize; 5];
            self.split_kinds(e, k, 0, colors, &mut kinds, out);
            colors[self.colors[i].index()] = 0;
            return;
        }
        for c in 0..=v {
            colors[self.colors[i].index()] = c;
            self.split_colors(v - c, e, k, i + 1, colors, out);
        }
        colors[self.colors[i].index()] = 0;
    }

    fn split_kinds(
        &self,
        e: usize,
        k: i32,
        i: usize,
        colors: &[usize; 2],
        kinds: &mut [usize; 5],
        out: &mut Vec<CountProfile>,
    ) {
        if i + 1 == self.kinds.len() {
            kinds[self.kinds[i].index()] = e;
            let p = CountProfile { colors: *colors, kinds: *kinds };
            if self.profile_degree(&p) == k && self.profile_feasible(&p) {
                out.push(p);
            }
            kinds[self.kinds[i].index()] = 0;
            return;
        }
        for c in 0..=e {
            kinds[self.kinds[i].index()] = c;
            self.split_kinds(e - c, k, i + 1, colors, kinds, out);
        }
        kinds[self.kinds[i].index()] = 0;
    }

    fn profile_feasible(&self, p: &CountProfile) -> bool {
        let blacks = p.colors[VertexColor::Black.index()];
        if self.white_sinks && blacks == 0 && p.kinds[EdgeKind::Solid.index()] > 0 {
            return false;
        }
        !(matches!(self.id.family, Family::GcTDd1 | Family::GcOrDd1) && blacks == 0)
    }

    /// Degrees reachable at loop order `g` with at most `vmax` vertices; a
    /// superset of the degrees with nonempty bases.
    pub fn degree_range(&self, g: usize, vmax: usize) -> Option<(i32, i32)> {
        let cds: Vec<i32> = self.colors.iter().map(|c| self.color_degree[c.index()]).collect();
        let kds: Vec<i32> = self.kinds.iter().map(|k| self.kind_degree[k.index()]).collect();
        let (cmin, cmax) = (*cds.iter().min()?, *cds.iter().max()?);
        let (kmin, kmax) = (*kds.iter().min()?, *kds.iter().max()?);
        let mut range: Option<(i32, i32)> = None;
        for v in self.vertex_range(g, vmax) {
            let e = (v + g - 1) as i32;
            let v = v as i32;
            let lo = cmin * v + kmin * e - self.id.n();
            let hi = cmax * v + kmax * e - self.id.n();
            range = Some(match range {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
        range
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra(kind: EdgeKind) -> LabeledGraph {
        LabeledGraph::black(4, &[(0, 1, kind), (0, 2, kind), (0, 3, kind), (1, 2, kind), (1, 3, kind), (2, 3, kind)])
            .unwrap()
    }

    #[test]
    fn degrees() {
        let gc2 = ComplexId::new(Family::Gc, 2).unwrap().spec();
        assert_eq!(gc2.degree(&tetra(EdgeKind::Dotted)).unwrap(), 0);
        let geq2 = ComplexId::new(Family::GcGeq2, 2).unwrap().spec();
        for j in 2..8 {
            let edges: Vec<_> = (0..j).map(|i| (i, (i + 1) % j, EdgeKind::Dotted)).collect();
            let g = LabeledGraph::black(j, &edges).unwrap();
            assert_eq!(geq2.degree(&g).unwrap(), j as i32 - 2);
        }
        let o3 = ComplexId::new(Family::OGc3, 3).unwrap().spec();
        let s = EdgeKind::Solid;
        let d = EdgeKind::Dotted;
        let g = LabeledGraph::black(4, &[(0, 1, s), (0, 2, s), (1, 2, s), (0, 3, d), (1, 3, d), (2, 3, d)]).unwrap();
        assert_eq!(o3.degree(&g).unwrap(), 0);
        assert!(gc2.degree(&g).is_err());
    }

    #[test]
    fn generators() {
        let gc2 = ComplexId::new(Family::Gc, 2).unwrap().spec();
        assert!(gc2.is_generator(&tetra(EdgeKind::Dotted)));
        let ogc = ComplexId::new(Family::OGc, 3).unwrap().spec();
        let s = EdgeKind::Solid;
        // A directed 3-cycle with a fourth vertex attached.
        let cyc = LabeledGraph::black(4, &[(0, 1, s), (1, 2, s), (2, 0, s), (3, 0, s), (3, 1, s), (3, 2, s)]).unwrap();
        assert!(!ogc.is_generator(&cyc));
        let wh = ComplexId::new(Family::GcWheeled, 2).unwrap().spec();
        let g = LabeledGraph::black(3, &[(0, 2, s), (2, 0, s), (1, 0, s), (0, 1, s), (2, 1, s)]).unwrap();
        assert!(wh.is_generator(&g));
        assert_eq!(wh.degree(&g).unwrap(), -1);
        assert_eq!(g.loop_number().unwrap(), 3);
    }

    #[test]
    fn count_vectors_examples() {
        let gc2 = ComplexId::new(Family::Gc, 2).unwrap().spec();
        let cv = gc2.count_vectors(3, 0, 100);
        assert_eq!(cv.len(), 1);
        assert_eq!((cv[0].vertices(), cv[0].edges()), (4, 6));
        assert!(gc2.count_vectors(3, 5, 100).is_empty());
        let o3 = ComplexId::new(Family::OGc3, 3).unwrap().spec();
        let cv = o3.count_vectors(3, 0, 100);
        assert_eq!(cv.len(), 1);
        assert_eq!(cv[0].vertices(), 4);
        assert_eq!(cv[0].kinds[EdgeKind::Dotted.index()], 3);
        assert_eq!(cv[0].kinds[EdgeKind::Solid.index()], 3);
    }

    #[test]
    fn tags_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::from_tag(f.tag()), Some(f));
        }
        assert_eq!(ComplexId::parse("oGC3:d=3"), Some(ComplexId { family: Family::OGc3, d: 3 }));
        assert_eq!(ComplexId::parse("GC:d=0"), None);
    }
}
