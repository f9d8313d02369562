//! Matrices of differentials and maps against bases, and cohomology
//! dimensions from their ranks.
//!
//! Closure quotients are handled on representatives: with `T` the surviving
//! generators and `R = π_T δ(K)` the image of the killed ambient generators,
//! `dim H^k = dim(T_k/R_k) − rank D̄_k − rank D̄_{k−1}` where
//! `rank D̄_k = rank[D T_k | R_{k+1}] − rank R_{k+1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::chain::{Chain, Q};
use crate::differential::delta_unchecked;
use crate::enumerate::{generate_basis, Basis, EnumOptions};
use crate::error::{Error, Result};
use crate::family::{ComplexId, ComplexSpec, Shape};
use crate::graph::{LabeledGraph, MAX_VERTICES};
use crate::linalg::{FieldTag, SparseMatrix};
use crate::maps::{apply_map, MapId};

/// Cohomology dimensions of one complex at one loop order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub id: ComplexId,
    pub g: usize,
    pub field: FieldTag,
    /// Degrees with a nonempty basis, among the reported ones.
    pub dims: BTreeMap<i32, usize>,
    /// Degrees whose cohomology is determined inside the vertex window.
    pub reported: Vec<i32>,
    pub basis_sizes: BTreeMap<i32, usize>,
    /// Some degree with a nonempty basis lies outside the vertex window.
    pub truncated: bool,
}

impl CohomologyTable {
    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// `Σ(−1)^k dim H^k = Σ(−1)^k dim C^k`; trivially true when truncated.
    pub fn euler_holds(&self) -> bool {
        let alt = |m: &BTreeMap<i32, usize>| {
            m.iter().map(|(&k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum::<i64>()
        };
        self.truncated || alt(&self.dims) == alt(&self.basis_sizes)
    }

    /// Whether degree `k` lies inside the vertex window.
    pub fn reports(&self, k: i32) -> bool {
        self.reported.contains(&k)
    }

    /// Nonzero dimensions only.
    pub fn nonzero(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
    }
}

/// Whether the vertex window `vmax` contains every count profile of degree `k`.
pub fn degree_complete(spec: &ComplexSpec, g: usize, k: i32, vmax: usize) -> bool {
    spec.count_vectors(g, k, vmax) == spec.count_vectors(g, k, MAX_VERTICES)
}

/// Degrees to enumerate and degrees whose cohomology is fully determined
/// inside the window.
pub fn table_degrees(id: ComplexId, g: usize, vmax: usize) -> (Vec<i32>, Vec<i32>) {
    let spec = id.spec();
    let Some((lo, hi)) = spec.degree_range(g, vmax) else { return (Vec::new(), Vec::new()) };
    let all: Vec<i32> = (lo..=hi).collect();
    let reported =
        all.iter().copied().filter(|&k| (k - 1..=k + 1).all(|j| degree_complete(&spec, g, j, vmax))).collect();
    (all, reported)
}

/// Coordinates of a chain in a basis.
pub fn coordinates(chain: &Chain, basis: &Basis, op: &'static str) -> Result<Vec<(usize, Q)>> {
    let mut out = Vec::with_capacity(chain.len());
    for (g, c) in chain.iter() {
        match basis.index_of(g) {
            Some(i) => out.push((i, *c)),
            None => {
                return Err(Error::Closure { op, family: basis.id.family.tag(), term: g.encode() });
            }
        }
    }
    Ok(out)
}

/// Column of the differential at one generator.
pub fn delta_column(spec: &ComplexSpec, x: &LabeledGraph, tgt: &Basis) -> Result<Vec<(usize, Q)>> {
    let mut c = Chain::zero(spec.id);
    delta_unchecked(spec, x, &mut c);
    coordinates(&c, tgt, "delta")
}

/// Matrix of the differential from degree `src.k` to `tgt.k`.
pub fn delta_matrix(src: &Basis, tgt: &Basis, field: FieldTag) -> Result<SparseMatrix> {
    let spec = src.id.spec();
    let cols = src.elems.iter().map(|x| delta_column(&spec, x, tgt)).collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(tgt.len(), field, &cols))
}

/// Column of a chain map at one generator.
pub fn map_column(m: MapId, src: ComplexId, x: &LabeledGraph, tgt: &Basis) -> Result<Vec<(usize, Q)>> {
    coordinates(&apply_map(m, src, x)?, tgt, m.tag())
}

/// Matrix of a chain map against source and target bases.
pub fn map_matrix(m: MapId, src: &Basis, tgt: &Basis, field: FieldTag) -> Result<SparseMatrix> {
    let cols = src.elems.iter().map(|x| map_column(m, src.id, x, tgt)).collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(tgt.len(), field, &cols))
}

/// Ambient generators of degree `k` killed by a closure quotient.
pub fn killed_generators(id: ComplexId, g: usize, k: i32, opts: EnumOptions) -> Result<Vec<LabeledGraph>> {
    let Shape::QuotientByClosure { ambient, killed } = id.spec().shape else { return Ok(Vec::new()) };
    let amb = ComplexId::new(ambient, id.d)?;
    let b = generate_basis(amb, g, k, opts)?;
    Ok(b.elems
        .into_iter()
        .filter(|x| {
            let prof = x.valence_profile();
            killed.eval(x, &prof)
        })
        .collect())
}

/// Columns `π_T δ κ` for killed ambient generators `κ`, in the coordinates
/// of the quotient basis one degree up.
pub fn closure_columns(id: ComplexId, killed: &[LabeledGraph], tgt: &Basis) -> Result<Vec<Vec<(usize, Q)>>> {
    let spec = id.spec();
    let Shape::QuotientByClosure { ambient, .. } = spec.shape else { return Ok(Vec::new()) };
    let amb = ComplexId::new(ambient, id.d)?.spec();
    killed
        .iter()
        .map(|x| {
            let mut c = Chain::zero(amb.id);
            delta_unchecked(&amb, x, &mut c);
            c.retain(|t| spec.survives(t, &t.valence_profile()));
            coordinates(&c, tgt, "closure")
        })
        .collect()
}

/// Ranks gathered per degree for [`assemble_table`].
#[derive(Clone, Debug, Default)]
pub struct RankData {
    /// `dim T_k`.
    pub sizes: BTreeMap<i32, usize>,
    /// `rank δ_k : T_k → T_{k+1}` (without relations).
    pub delta: BTreeMap<i32, usize>,
    /// `rank R_k` for closure quotients.
    pub relations: BTreeMap<i32, usize>,
    /// `rank [δ_k | R_{k+1}]` for closure quotients.
    pub joint: BTreeMap<i32, usize>,
}

/// Combines ranks into a table over the reported degrees.
pub fn assemble_table(
    id: ComplexId,
    g: usize,
    field: FieldTag,
    all: &[i32],
    reported: &[i32],
    r: &RankData,
) -> CohomologyTable {
    let get = |m: &BTreeMap<i32, usize>, k: i32| m.get(&k).copied().unwrap_or(0);
    let closure = matches!(id.spec().shape, Shape::QuotientByClosure { .. });
    let quot = |k: i32| get(&r.sizes, k) - if closure { get(&r.relations, k) } else { 0 };
    let induced = |k: i32| {
        if closure {
            get(&r.joint, k) - get(&r.relations, k + 1)
        } else {
            get(&r.delta, k)
        }
    };
    let mut dims = BTreeMap::new();
    let mut basis_sizes = BTreeMap::new();
    for &k in reported {
        let size = quot(k);
        if size > 0 {
            dims.insert(k, size - induced(k) - induced(k - 1));
            basis_sizes.insert(k, size);
        }
    }
    let truncated = all.iter().any(|k| !reported.contains(k) && get(&r.sizes, *k) > 0);
    CohomologyTable { id, g, field, dims, reported: reported.to_vec(), basis_sizes, truncated }
}

/// Degrees `k` whose differential `δ_k` is needed: both `k` and `k + 1`
/// complete and one of `k`, `k + 1` reported.
pub fn rank_degrees(id: ComplexId, g: usize, vmax: usize, all: &[i32], reported: &[i32]) -> Vec<i32> {
    let spec = id.spec();
    all.iter()
        .copied()
        .filter(|&k| reported.contains(&k) || reported.contains(&(k + 1)))
        .filter(|&k| degree_complete(&spec, g, k, vmax) && degree_complete(&spec, g, k + 1, vmax))
        .collect()
}

/// Serial cohomology computation; the `graphcx` crate has a parallel and
/// cached equivalent.
pub fn cohomology_dims(id: ComplexId, g: usize, field: FieldTag, opts: EnumOptions) -> Result<CohomologyTable> {
    let (all, reported) = table_degrees(id, g, opts.vmax);
    let needed = rank_degrees(id, g, opts.vmax, &all, &reported);
    let mut bases: BTreeMap<i32, Basis> = BTreeMap::new();
    for &k in &all {
        bases.insert(k, generate_basis(id, g, k, opts)?);
    }
    let empty = |k: i32| Basis::new(id, g, k, Vec::new());
    let closure = matches!(id.spec().shape, Shape::QuotientByClosure { .. });
    let mut r = RankData::default();
    let mut rel: BTreeMap<i32, SparseMatrix> = BTreeMap::new();
    for &k in &all {
        r.sizes.insert(k, bases[&k].len());
    }
    if closure {
        for &k in reported.iter().chain(needed.iter().map(|k| k + 1).collect::<Vec<_>>().iter()) {
            if rel.contains_key(&k) {
                continue;
            }
            let tgt = bases.get(&k).cloned().unwrap_or_else(|| empty(k));
            let killed = killed_generators(id, g, k - 1, opts)?;
            let m = SparseMatrix::from_columns(tgt.len(), field, &closure_columns(id, &killed, &tgt)?);
            r.relations.insert(k, m.rank()?);
            rel.insert(k, m);
        }
    }
    for &k in &needed {
        let src = bases.get(&k).cloned().unwrap_or_else(|| empty(k));
        let up = bases.get(&(k + 1)).cloned().unwrap_or_else(|| empty(k + 1));
        let dm = delta_matrix(&src, &up, field)?;
        r.delta.insert(k, dm.rank()?);
        if closure {
            let joint = match rel.get(&(k + 1)) {
                Some(rm) => dm.hcat(rm),
                None => dm,
            };
            r.joint.insert(k, joint.rank()?);
        }
    }
    Ok(assemble_table(id, g, field, &all, &reported, &r))
}
