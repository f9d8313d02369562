//! Sparse matrices with exact rational entries and their ranks over `ℚ` or a
//! prime field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::Q;
use crate::error::{Error, Result};

/// Default working prime.
pub const P1: u32 = 32003;
/// Second prime of the unlucky-prime check.
pub const P2: u32 = 65521;

/// Matrices with at most this many rows and columns use dense elimination.
pub const DENSE_LIMIT: usize = 500;

/// Field over which a rank is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldTag {
    Rational,
    Prime(u32),
}

impl FieldTag {
    /// Parses `Q` or `Fp:<prime>`; a bare prime is accepted too.
    pub fn parse(s: &str) -> Option<FieldTag> {
        if s == "Q" {
            return Some(FieldTag::Rational);
        }
        let p: u32 = s.strip_prefix("Fp:").unwrap_or(s).parse().ok()?;
        (p >= 2 && is_prime(p)).then_some(FieldTag::Prime(p))
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("Q"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

/// Coordinate matrix; entries are kept exact and reduced only when a rank
/// over a prime field is requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: FieldTag,
    /// `(row, col, value)` sorted by `(col, row)`, values nonzero.
    entries: Vec<(u32, u32, Q)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldTag) -> SparseMatrix {
        SparseMatrix { rows, cols, field, entries: Vec::new() }
    }

    /// Builds a matrix from unsorted triplets, summing duplicates.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_triplets(rows: usize, cols: usize, field: FieldTag, mut t: Vec<(usize, usize, Q)>) -> SparseMatrix {
        t.sort_by_key(|&(r, c, _)| (c, r));
        let mut entries: Vec<(u32, u32, Q)> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            match entries.last_mut() {
                Some(last) if last.0 as usize == r && last.1 as usize == c => last.2 += v,
                _ => entries.push((r as u32, c as u32, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        SparseMatrix { rows, cols, field, entries }
    }

    /// Builds a matrix from per-column `(row, value)` lists.
    pub fn from_columns(rows: usize, field: FieldTag, columns: &[Vec<(usize, Q)>]) -> SparseMatrix {
        let t = columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v))).collect();
        SparseMatrix::from_triplets(rows, columns.len(), field, t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Triplets sorted by `(col, row)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Q)> + '_ {
        self.entries.iter().map(|&(r, c, v)| (r as usize, c as usize, v))
    }

    pub fn with_field(mut self, field: FieldTag) -> SparseMatrix {
        self.field = field;
        self
    }

    /// Columns of `self` followed by those of `other`.
    ///
    /// # Panics
    /// If the row counts differ.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        let mut entries = self.entries.clone();
        let off = self.cols as u32;
        entries.extend(other.entries.iter().map(|&(r, c, v)| (r, c + off, v)));
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, field: self.field, entries }
    }

    /// Exact product `self · other`.
    ///
    /// # Panics
    /// If the inner dimensions differ.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut by_col: Vec<Vec<(u32, Q)>> = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            by_col[c as usize].push((r, v));
        }
        let mut t = Vec::new();
        for &(k, c, v) in &other.entries {
            for &(r, w) in &by_col[k as usize] {
                t.push((r as usize, c as usize, w * v));
            }
        }
        SparseMatrix::from_triplets(self.rows, other.cols, self.field, t)
    }

    /// Rank over the matrix's field.
    pub fn rank(&self) -> Result<usize> {
        self.rank_over(self.field)
    }

    /// Rank over an explicitly given field.
    pub fn rank_over(&self, field: FieldTag) -> Result<usize> {
        if self.entries.is_empty() {
            return Ok(0);
        }
        match field {
            FieldTag::Prime(p) => {
                let t = self.reduced(p)?;
                if self.rows <= DENSE_LIMIT && self.cols <= DENSE_LIMIT {
                    Ok(dense_rank_mod(self.rows, self.cols, &t, p))
                } else {
                    let m = ModP(p);
                    Ok(sparse_rank(self.rows_of(t.into_iter()), &m))
                }
            }
            FieldTag::Rational => {
                let t = self
                    .entries
                    .iter()
                    .map(|&(r, c, v)| (r, c, BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))));
                Ok(sparse_rank(self.rows_of(t), &Rationals))
            }
        }
    }

    fn reduced(&self, p: u32) -> Result<Vec<(u32, u32, u32)>> {
        let mut out = Vec::with_capacity(self.entries.len());
        for &(r, c, v) in &self.entries {
            let x = reduce_mod(&v, p)?;
            if x != 0 {
                out.push((r, c, x));
            }
        }
        Ok(out)
    }

    /// Row lists with columns relabeled so that sparse columns come first.
    fn rows_of<T>(&self, t: impl Iterator<Item = (u32, u32, T)>) -> Vec<Vec<(u32, T)>> {
        let mut count = vec![0u32; self.cols];
        for &(_, c, _) in &self.entries {
            count[c as usize] += 1;
        }
        let mut order: Vec<u32> = (0..self.cols as u32).collect();
        order.sort_by_key(|&c| (count[c as usize], c));
        let mut rank_of = vec![0u32; self.cols];
        for (i, &c) in order.iter().enumerate() {
            rank_of[c as usize] = i as u32;
        }
        let mut rows: Vec<Vec<(u32, T)>> = (0..self.rows).map(|_| Vec::new()).collect();
        for (r, c, v) in t {
            rows[r as usize].push((rank_of[c as usize], v));
        }
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
        }
        rows.retain(|r| !r.is_empty());
        rows
    }
}

/// Reduces an exact rational modulo `p`.
pub fn reduce_mod(v: &Q, p: u32) -> Result<u32> {
    let pi = p as i64;
    let den = v.denom().rem_euclid(pi);
    if den == 0 {
        return Err(Error::Characteristic(p));
    }
    let num = v.numer().rem_euclid(pi) as u64;
    Ok((num * inv_mod(den as u64, p as u64) % p as u64) as u32)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn dense_rank_mod(rows: usize, cols: usize, t: &[(u32, u32, u32)], p: u32) -> usize {
    let p = p as u64;
    let mut a = vec![0u64; rows * cols];
    for &(r, c, v) in t {
        a[r as usize * cols + c as usize] = v as u64;
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else { continue };
        if piv != rank {
            for j in c..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        for r in rank + 1..rows {
            let f = a[r * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let x = a[rank * cols + j];
                if x != 0 {
                    a[r * cols + j] = (a[r * cols + j] + (p - f) * x) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

trait Field {
    type E: Clone;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    /// `x − f·y`.
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Self::E;
    fn neg_mul(&self, f: &Self::E, y: &Self::E) -> Self::E;
}

struct ModP(u32);

impl Field for ModP {
    type E = u32;
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn inv(&self, x: &u32) -> u32 {
        inv_mod(*x as u64, self.0 as u64) as u32
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        (*x as u64 * *y as u64 % self.0 as u64) as u32
    }
    fn sub_mul(&self, x: &u32, f: &u32, y: &u32) -> u32 {
        let p = self.0 as u64;
        ((*x as u64 + p - (*f as u64 * *y as u64 % p)) % p) as u32
    }
    fn neg_mul(&self, f: &u32, y: &u32) -> u32 {
        self.sub_mul(&0, f, y)
    }
}

struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn sub_mul(&self, x: &BigRational, f: &BigRational, y: &BigRational) -> BigRational {
        x - f * y
    }
    fn neg_mul(&self, f: &BigRational, y: &BigRational) -> BigRational {
        -(f * y)
    }
}

/// `row − f·piv` on sorted sparse vectors.
fn axpy<F: Field>(k: &F, row: &[(u32, F::E)], f: &F::E, piv: &[(u32, F::E)]) -> Vec<(u32, F::E)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
        let cj = piv.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, k.neg_mul(f, &piv[j].1)));
            j += 1;
        } else {
            let v = k.sub_mul(&row[i].1, f, &piv[j].1);
            if !k.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-insertion elimination: rows are taken shortest first and reduced
/// against the pivots found so far; a row whose leading column is new
/// becomes a pivot.
fn sparse_rank<F: Field>(mut rows: Vec<Vec<(u32, F::E)>>, k: &F) -> usize {
    rows.sort_by_key(|r| r.len());
    let mut pivots: hashbrown::HashMap<u32, Vec<(u32, F::E)>> = hashbrown::HashMap::new();
    for mut row in rows {
        while let Some((c, a)) = row.first().cloned() {
            match pivots.get(&c) {
                Some(p) => row = axpy(k, &row, &a, p),
                None => {
                    let inv = k.inv(&a);
                    for e in &mut row {
                        e.1 = k.mul(&e.1, &inv);
                    }
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Q {
        Q::from(x)
    }

    #[test]
    fn identity_and_zero() {
        for f in [FieldTag::Rational, FieldTag::Prime(P1)] {
            let id = SparseMatrix::from_triplets(7, 7, f, (0..7).map(|i| (i, i, q(1))).collect());
            assert_eq!(id.rank().unwrap(), 7);
            assert_eq!(SparseMatrix::zero(4, 9, f).rank().unwrap(), 0);
        }
    }

    #[test]
    fn characteristic_is_detected() {
        let m = SparseMatrix::from_triplets(1, 1, FieldTag::Prime(2), vec![(0, 0, Q::new(1, 2))]);
        assert_eq!(m.rank(), Err(Error::Characteristic(2)));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1, 1], [1, -1]] has determinant −2.
        let t = vec![(0, 0, q(1)), (0, 1, q(1)), (1, 0, q(1)), (1, 1, q(-1))];
        let m = SparseMatrix::from_triplets(2, 2, FieldTag::Rational, t);
        assert_eq!(m.rank().unwrap(), 2);
        assert_eq!(m.rank_over(FieldTag::Prime(2)).unwrap(), 1);
    }

    #[test]
    fn duplicates_are_summed() {
        let m = SparseMatrix::from_triplets(2, 2, FieldTag::Rational, vec![(0, 0, q(1)), (0, 0, q(-1)), (1, 1, q(2))]);
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn field_tags_parse() {
        assert_eq!(FieldTag::parse("Q"), Some(FieldTag::Rational));
        assert_eq!(FieldTag::parse("Fp:32003"), Some(FieldTag::Prime(32003)));
        assert_eq!(FieldTag::parse("65521"), Some(FieldTag::Prime(65521)));
        assert_eq!(FieldTag::parse("Fp:32004"), None);
    }
}
