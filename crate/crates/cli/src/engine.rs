//! Parallel, memoized and optionally disk-cached computations on top of
//! `graphcx-core`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use graphcx_core::cohomology::{
    assemble_table, closure_columns, delta_column, killed_generators, map_column, rank_degrees, table_degrees, RankData,
};
use graphcx_core::enumerate::default_vmax;
use graphcx_core::family::Shape;
use graphcx_core::linalg::{P1, P2};
use graphcx_core::maps::apply_map_chain;
use graphcx_core::{
    apply_map, delta, delta_chain, generate_basis, Basis, CohomologyTable, ComplexId, EnumOptions, FieldTag, MapId,
    SparseMatrix, Q,
};
use rayon::prelude::*;

use crate::cache::{Cache, CacheKey, Kind};
use crate::formats::{read_basis, read_matrix, table_from_json, table_to_json, write_basis, write_matrix};
use crate::Error;

/// Killed generators per parallel task when building relation matrices.
const CLOSURE_CHUNK: usize = 64;

/// The three fields of the robustness check.
pub const FIELDS: [FieldTag; 3] = [FieldTag::Prime(P1), FieldTag::Prime(P2), FieldTag::Rational];

/// One generator on which a chain-level identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub degree: i32,
    pub index: usize,
    pub graph: String,
}

/// Outcome of a chain-level check over whole bases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

type BasisKey = (ComplexId, usize, i32, usize);

pub struct Engine {
    vmax: Option<usize>,
    budget: u64,
    cache: Option<Cache>,
    bases: Mutex<HashMap<BasisKey, Arc<Basis>>>,
    matrices: Mutex<HashMap<CacheKey, Arc<SparseMatrix>>>,
}

fn is_closure(id: ComplexId) -> bool {
    matches!(id.spec().shape, Shape::QuotientByClosure { .. })
}

impl Engine {
    /// `vmax = None` uses the default window of each loop order.
    pub fn new(vmax: Option<usize>, budget: u64, cache: Option<Cache>) -> Engine {
        Engine { vmax, budget, cache, bases: Mutex::default(), matrices: Mutex::default() }
    }

    /// An engine sharing this one's budget and cache with a fixed window.
    pub fn with_vmax(&self, vmax: usize) -> Engine {
        Engine::new(Some(vmax), self.budget, self.cache.clone())
    }

    pub fn vmax(&self, g: usize) -> usize {
        self.vmax.unwrap_or_else(|| default_vmax(g))
    }

    pub fn options(&self, g: usize) -> EnumOptions {
        EnumOptions { vmax: self.vmax(g), budget: self.budget }
    }

    fn key(&self, kind: Kind, id: ComplexId, g: usize, k: Option<i32>, field: Option<FieldTag>, op: &str) -> CacheKey {
        CacheKey { kind, complex: id, g, degree: k, field, extra: format!("{op}v{}", self.vmax(g)) }
    }

    fn load<T>(
        &self,
        key: &CacheKey,
        parse: impl FnOnce(&str) -> Result<T, crate::formats::FormatError>,
    ) -> Result<Option<T>, Error> {
        let Some(cache) = &self.cache else { return Ok(None) };
        let Some(bytes) = cache.load(key)? else { return Ok(None) };
        let path = cache.path(key);
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::CorruptEntry { path: path.clone(), message: "not UTF-8".into() })?;
        parse(&text).map(Some).map_err(|e| Error::CorruptEntry { path, message: e.to_string() })
    }

    fn save(&self, key: &CacheKey, text: &str) -> Result<(), Error> {
        if let Some(cache) = &self.cache {
            cache.store(key, text.as_bytes())?;
        }
        Ok(())
    }

    pub fn basis(&self, id: ComplexId, g: usize, k: i32) -> Result<Arc<Basis>, Error> {
        let mem = (id, g, k, self.vmax(g));
        if let Some(b) = self.bases.lock().unwrap().get(&mem) {
            return Ok(b.clone());
        }
        let key = self.key(Kind::Basis, id, g, Some(k), None, "");
        let b = match self.load(&key, read_basis)? {
            Some(b) if b.id == id && b.g == g && b.k == k => b,
            _ => {
                let b = generate_basis(id, g, k, self.options(g))?;
                self.save(&key, &write_basis(&b))?;
                b
            }
        };
        let b = Arc::new(b);
        self.bases.lock().unwrap().insert(mem, b.clone());
        Ok(b)
    }

    /// Bases of several degrees, generated in parallel.
    pub fn bases(&self, id: ComplexId, g: usize, degrees: &[i32]) -> Result<BTreeMap<i32, Arc<Basis>>, Error> {
        degrees.par_iter().map(|&k| Ok((k, self.basis(id, g, k)?))).collect()
    }

    fn matrix(
        &self,
        key: CacheKey,
        build: impl FnOnce() -> Result<SparseMatrix, Error>,
    ) -> Result<Arc<SparseMatrix>, Error> {
        if let Some(m) = self.matrices.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = match self.load(&key, read_matrix)? {
            Some(m) => m,
            None => {
                let m = build()?;
                self.save(&key, &write_matrix(&m))?;
                m
            }
        };
        let m = Arc::new(m);
        self.matrices.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// `δ_k` over ℚ in the bases of degrees `k` and `k + 1`.
    pub fn delta_matrix(&self, id: ComplexId, g: usize, k: i32) -> Result<Arc<SparseMatrix>, Error> {
        let key = self.key(Kind::Matrix, id, g, Some(k), Some(FieldTag::Rational), "delta.");
        self.matrix(key, || {
            let (src, tgt) = (self.basis(id, g, k)?, self.basis(id, g, k + 1)?);
            let spec = id.spec();
            let cols: Vec<Vec<(usize, Q)>> =
                src.elems.par_iter().map(|x| delta_column(&spec, x, &tgt)).collect::<Result<_, _>>()?;
            Ok(SparseMatrix::from_columns(tgt.len(), FieldTag::Rational, &cols))
        })
    }

    /// Images `π_T δ(K)` in degree `k` of the killed generators of degree
    /// `k − 1`; empty for complexes that are not closure quotients.
    pub fn relation_matrix(&self, id: ComplexId, g: usize, k: i32) -> Result<Arc<SparseMatrix>, Error> {
        let key = self.key(Kind::Matrix, id, g, Some(k), Some(FieldTag::Rational), "closure.");
        self.matrix(key, || {
            let tgt = self.basis(id, g, k)?;
            if !is_closure(id) {
                return Ok(SparseMatrix::zero(tgt.len(), 0, FieldTag::Rational));
            }
            let killed = killed_generators(id, g, k - 1, self.options(g))?;
            let cols: Vec<Vec<(usize, Q)>> = killed
                .par_chunks(CLOSURE_CHUNK)
                .map(|c| closure_columns(id, c, &tgt))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect();
            Ok(SparseMatrix::from_columns(tgt.len(), FieldTag::Rational, &cols))
        })
    }

    /// `m` in degree `k` over ℚ, from the basis of `src` to that of its
    /// target.
    pub fn map_matrix(&self, m: MapId, src: ComplexId, g: usize, k: i32) -> Result<Arc<SparseMatrix>, Error> {
        let tgt_id = m.target(src)?;
        let key = self.key(Kind::Matrix, src, g, Some(k), Some(FieldTag::Rational), &format!("map-{}.", m.tag()));
        self.matrix(key, || {
            let (a, b) = (self.basis(src, g, k)?, self.basis(tgt_id, g, k)?);
            let cols: Vec<Vec<(usize, Q)>> =
                a.elems.par_iter().map(|x| map_column(m, src, x, &b)).collect::<Result<_, _>>()?;
            Ok(SparseMatrix::from_columns(b.len(), FieldTag::Rational, &cols))
        })
    }

    /// Cohomology dimensions over the reported degrees of the vertex window.
    pub fn cohomology(&self, id: ComplexId, g: usize, field: FieldTag) -> Result<CohomologyTable, Error> {
        let key = self.key(Kind::Table, id, g, None, Some(field), "");
        if let Some(t) = self.load(&key, table_from_json)? {
            if t.id == id && t.g == g && t.field == field {
                return Ok(t);
            }
        }
        let vmax = self.vmax(g);
        let (all, reported) = table_degrees(id, g, vmax);
        let needed = rank_degrees(id, g, vmax, &all, &reported);
        let bases = self.bases(id, g, &all)?;
        let closure = is_closure(id);
        let mut r = RankData { sizes: bases.iter().map(|(&k, b)| (k, b.len())).collect(), ..RankData::default() };
        let rel_degrees: Vec<i32> = if closure {
            let mut v: Vec<i32> = reported.iter().copied().chain(needed.iter().map(|k| k + 1)).collect();
            v.sort_unstable();
            v.dedup();
            v
        } else {
            Vec::new()
        };
        let rel: BTreeMap<i32, (Arc<SparseMatrix>, usize)> = rel_degrees
            .par_iter()
            .map(|&k| {
                let m = self.relation_matrix(id, g, k)?;
                let rank = m.rank_over(field)?;
                Ok((k, (m, rank)))
            })
            .collect::<Result<_, Error>>()?;
        r.relations = rel.iter().map(|(&k, (_, rank))| (k, *rank)).collect();
        let ranks: Vec<(i32, usize, Option<usize>)> = needed
            .par_iter()
            .map(|&k| {
                let dm = self.delta_matrix(id, g, k)?;
                let rank = dm.rank_over(field)?;
                let joint = match (closure, rel.get(&(k + 1))) {
                    (false, _) => None,
                    (true, Some((rm, _))) => Some(dm.hcat(rm).rank_over(field)?),
                    (true, None) => Some(rank),
                };
                Ok((k, rank, joint))
            })
            .collect::<Result<_, Error>>()?;
        for (k, rank, joint) in ranks {
            r.delta.insert(k, rank);
            if let Some(j) = joint {
                r.joint.insert(k, j);
            }
        }
        let t = assemble_table(id, g, field, &all, &reported, &r);
        self.save(&key, &table_to_json(&t))?;
        Ok(t)
    }

    /// The same table over two large primes and over ℚ.
    pub fn cohomology_all_fields(&self, id: ComplexId, g: usize) -> Result<Vec<CohomologyTable>, Error> {
        FIELDS.iter().map(|&f| self.cohomology(id, g, f)).collect()
    }

    fn degrees(&self, id: ComplexId, g: usize) -> Vec<i32> {
        id.spec().degree_range(g, self.vmax(g)).map_or_else(Vec::new, |(lo, hi)| (lo..=hi).collect())
    }

    /// δ² = 0 on every generator in the window, over ℚ.
    pub fn verify_d2(&self, id: ComplexId, g: usize) -> Result<CheckReport, Error> {
        self.check_each(id, g, |x| Ok(delta_chain(&id, &delta(&id, x)?).is_zero()))
    }

    /// δ∘m = m∘δ on every generator of `src` in the window, over ℚ.
    pub fn verify_map(&self, m: MapId, src: ComplexId, g: usize) -> Result<CheckReport, Error> {
        let tgt = m.target(src)?;
        self.check_each(src, g, |x| {
            let lhs = delta_chain(&tgt, &apply_map(m, src, x)?);
            let rhs = apply_map_chain(m, &delta(&src, x)?)?;
            Ok(lhs.difference(&rhs).is_zero())
        })
    }

    fn check_each(
        &self,
        id: ComplexId,
        g: usize,
        ok: impl Fn(&graphcx_core::LabeledGraph) -> Result<bool, graphcx_core::Error> + Sync,
    ) -> Result<CheckReport, Error> {
        let bases = self.bases(id, g, &self.degrees(id, g))?;
        let mut report = CheckReport::default();
        for (&k, b) in &bases {
            let part = b
                .elems
                .par_iter()
                .enumerate()
                .map(|(i, x)| {
                    let failures =
                        if ok(x)? { Vec::new() } else { vec![Failure { degree: k, index: i, graph: x.encode() }] };
                    Ok::<_, graphcx_core::Error>(CheckReport { checked: 1, failures })
                })
                .try_reduce(CheckReport::default, |mut a, b| {
                    a.merge(b);
                    Ok(a)
                })?;
            report.merge(part);
        }
        report.failures.sort_by_key(|f| (f.degree, f.index));
        Ok(report)
    }

    /// Rank of the map induced by `m` from `H^k(src)` to `H^k(target)`.
    ///
    /// With `K = δ_k` on the source and `B` the coboundaries (plus relations)
    /// of the target, the image of the cocycles is `rank[[K, 0], [M, B]] −
    /// rank K`, and the induced rank subtracts `rank B` from that.
    pub fn induced_rank(&self, m: MapId, src: ComplexId, g: usize, k: i32, field: FieldTag) -> Result<usize, Error> {
        if is_closure(src) {
            return Err(
                graphcx_core::Error::Unsupported { op: "induced_rank", allowed: "sources without relations" }.into()
            );
        }
        let tgt = m.target(src)?;
        let ds = self.delta_matrix(src, g, k)?;
        let mm = self.map_matrix(m, src, g, k)?;
        let mut bt = (*self.delta_matrix(tgt, g, k - 1)?).clone();
        if is_closure(tgt) {
            bt = bt.hcat(&*self.relation_matrix(tgt, g, k)?);
        }
        let mut t: Vec<(usize, usize, Q)> = ds.entries().collect();
        t.extend(mm.entries().map(|(r, c, q)| (r + ds.rows(), c, q)));
        t.extend(bt.entries().map(|(r, c, q)| (r + ds.rows(), c + ds.cols(), q)));
        let block = SparseMatrix::from_triplets(ds.rows() + mm.rows(), ds.cols() + bt.cols(), FieldTag::Rational, t);
        Ok(block.rank_over(field)? - ds.rank_over(field)? - bt.rank_over(field)?)
    }
}

/// Degrees reported by both tables where their dimensions differ.
pub fn disagreements(a: &CohomologyTable, b: &CohomologyTable) -> Vec<i32> {
    a.reported.iter().copied().filter(|&k| b.reports(k) && a.dim(k) != b.dim(k)).collect()
}
