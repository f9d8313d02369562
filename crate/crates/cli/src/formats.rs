//! Text formats for bases, matrices and cohomology tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use graphcx_core::{Basis, CohomologyTable, ComplexId, Family, FieldTag, LabeledGraph, SparseMatrix, Q};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad header: {0}")]
    Header(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("bad table: {0}")]
    Table(String),
}

fn header_fields(line: Option<&str>) -> Result<BTreeMap<&str, &str>, FormatError> {
    let line = line.ok_or_else(|| FormatError::Header("missing".into()))?;
    let body = line.strip_prefix('#').ok_or_else(|| FormatError::Header(line.into()))?;
    body.split(';').map(|kv| kv.split_once('=').ok_or_else(|| FormatError::Header(line.into()))).collect()
}

fn field<'a, T: std::str::FromStr>(h: &BTreeMap<&'a str, &'a str>, name: &str) -> Result<T, FormatError> {
    h.get(name).and_then(|v| v.parse().ok()).ok_or_else(|| FormatError::Header(format!("field {name}")))
}

fn complex(tag: &str, d: i32) -> Result<ComplexId, FormatError> {
    let f = Family::from_tag(tag).ok_or_else(|| FormatError::Header(format!("unknown complex {tag}")))?;
    ComplexId::new(f, d).map_err(|e| FormatError::Header(e.to_string()))
}

/// `#complex=<tag>;d=<d>;g=<g>;deg=<k>;count=<n>` followed by one encoded
/// graph per line.
pub fn write_basis(b: &Basis) -> String {
    let mut s = format!("#complex={};d={};g={};deg={};count={}\n", b.id.family.tag(), b.id.d, b.g, b.k, b.len());
    for x in &b.elems {
        s.push_str(&x.encode());
        s.push('\n');
    }
    s
}

pub fn read_basis(text: &str) -> Result<Basis, FormatError> {
    let mut lines = text.lines();
    let h = header_fields(lines.next())?;
    let id = complex(h.get("complex").copied().unwrap_or(""), field(&h, "d")?)?;
    let (g, k, count): (usize, i32, usize) = (field(&h, "g")?, field(&h, "deg")?, field(&h, "count")?);
    let mut elems = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let x = LabeledGraph::decode(line).map_err(|e| FormatError::Line { line: i + 2, message: e.to_string() })?;
        elems.push(x);
    }
    if elems.len() != count {
        return Err(FormatError::Header(format!("count={count} but {} graphs", elems.len())));
    }
    Ok(Basis::new(id, g, k, elems))
}

fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let (n, d): (i64, i64) = (n.parse().ok()?, d.parse().ok()?);
    (d != 0).then(|| Q::new(n, d))
}

/// `#rows=<r>;cols=<c>;field=<Q|Fp:p>` followed by `row col value` lines in
/// column-major order.
pub fn write_matrix(m: &SparseMatrix) -> String {
    let mut s = format!("#rows={};cols={};field={}\n", m.rows(), m.cols(), m.field());
    let mut t: Vec<(usize, usize, Q)> = m.entries().collect();
    t.sort_by_key(|&(r, c, _)| (c, r));
    for (r, c, q) in t {
        let _ = writeln!(s, "{r} {c} {q}");
    }
    s
}

pub fn read_matrix(text: &str) -> Result<SparseMatrix, FormatError> {
    let mut lines = text.lines();
    let h = header_fields(lines.next())?;
    let (rows, cols): (usize, usize) = (field(&h, "rows")?, field(&h, "cols")?);
    let f = h.get("field").and_then(|s| FieldTag::parse(s)).ok_or_else(|| FormatError::Header("field".into()))?;
    let mut t = Vec::new();
    for (i, line) in lines.enumerate() {
        let bad = |m: &str| FormatError::Line { line: i + 2, message: m.to_string() };
        let mut it = line.split_ascii_whitespace();
        let (Some(r), Some(c), Some(q), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(bad("expected `row col value`"));
        };
        let r: usize = r.parse().map_err(|_| bad("row"))?;
        let c: usize = c.parse().map_err(|_| bad("column"))?;
        let q = parse_q(q).ok_or_else(|| bad("value"))?;
        if r >= rows || c >= cols {
            return Err(bad("index out of range"));
        }
        t.push((r, c, q));
    }
    Ok(SparseMatrix::from_triplets(rows, cols, f, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TableJson {
    complex: String,
    d: i32,
    g: usize,
    field: String,
    dims: BTreeMap<i32, usize>,
    basis_sizes: BTreeMap<i32, usize>,
    #[serde(default)]
    reported: Vec<i32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    truncated: bool,
}

pub fn table_to_json(t: &CohomologyTable) -> String {
    let j = TableJson {
        complex: t.id.family.tag().to_string(),
        d: t.id.d,
        g: t.g,
        field: t.field.to_string(),
        dims: t.dims.clone(),
        basis_sizes: t.basis_sizes.clone(),
        reported: t.reported.clone(),
        truncated: t.truncated,
    };
    serde_json::to_string(&j).expect("table serializes")
}

pub fn table_from_json(s: &str) -> Result<CohomologyTable, FormatError> {
    let j: TableJson = serde_json::from_str(s).map_err(|e| FormatError::Table(e.to_string()))?;
    let field = FieldTag::parse(&j.field).ok_or_else(|| FormatError::Table(format!("field {}", j.field)))?;
    Ok(CohomologyTable {
        id: complex(&j.complex, j.d).map_err(|e| FormatError::Table(e.to_string()))?,
        g: j.g,
        field,
        dims: j.dims,
        reported: j.reported,
        basis_sizes: j.basis_sizes,
        truncated: j.truncated,
    })
}

/// `complex,d,g,field,degree,dim,basis_size`, one row per reported degree
/// with a nonempty basis.
pub fn table_csv(t: &CohomologyTable) -> String {
    let mut s = String::from("complex,d,g,field,degree,dim,basis_size\n");
    for (k, dim) in &t.dims {
        let _ = writeln!(s, "{},{},{},{},{k},{dim},{}", t.id.family.tag(), t.id.d, t.g, t.field, t.basis_sizes[k]);
    }
    s
}

pub fn table_text(t: &CohomologyTable) -> String {
    let mut s = format!("{} d={} g={} over {}", t.id.family.tag(), t.id.d, t.g, t.field);
    if let (Some(lo), Some(hi)) = (t.reported.first(), t.reported.last()) {
        let _ = write!(s, ", degrees {lo}..={hi}");
    }
    if t.truncated {
        s.push_str(" (truncated)");
    }
    s.push('\n');
    let _ = writeln!(s, "{:>6} {:>6} {:>8}", "k", "dim H", "dim C");
    for (k, dim) in &t.dims {
        let _ = writeln!(s, "{k:>6} {dim:>6} {:>8}", t.basis_sizes[k]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_q("-3/4"), Some(Q::new(-3, 4)));
        assert_eq!(parse_q("7"), Some(Q::from(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn bad_matrix_lines_report_their_line() {
        let err = read_matrix("#rows=2;cols=2;field=Q\n0 0 1\n5 0 1\n").unwrap_err();
        assert_eq!(err, FormatError::Line { line: 3, message: "index out of range".into() });
    }
}
