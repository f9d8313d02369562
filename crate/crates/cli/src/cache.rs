//! On-disk memoization of bases, matrices and tables.
//!
//! Every entry is one file `<root>/<kind>/<stem>.dat` whose first line is
//! `graphcx-cache v=<version> len=<bytes> sum=<hex>`, where `sum` is the
//! first 64 bits of the SHA-256 of the payload. Writes go to a temporary file
//! in the same directory and are renamed into place, so concurrent writers of
//! the same key never expose a partial file.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use graphcx_core::{ComplexId, FieldTag};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Environment variable naming the cache root.
pub const CACHE_ENV: &str = "GRAPHCX_CACHE";

/// Stamp written into every entry; entries with another stamp are ignored.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "-1");

const MAGIC: &str = "graphcx-cache";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: checksum mismatch", path.display())]
    Checksum { path: PathBuf },
    #[error("{}: malformed header", path.display())]
    Header { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Basis,
    Matrix,
    Table,
}

impl Kind {
    fn dir(self) -> &'static str {
        match self {
            Kind::Basis => "basis",
            Kind::Matrix => "matrix",
            Kind::Table => "table",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub kind: Kind,
    pub complex: ComplexId,
    pub g: usize,
    pub degree: Option<i32>,
    pub field: Option<FieldTag>,
    /// Remaining parameters, such as the vertex window or an operator name.
    pub extra: String,
}

/// Escapes everything outside `[A-Za-z0-9_-]` as `%XX`, so that `.` is free
/// to separate components.
fn escape(s: &str, out: &mut String) {
    for b in s.bytes() {
        if b.is_ascii_alphanumeric() || b == b'_' || b == b'-' {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
}

impl CacheKey {
    /// File name stem; distinct keys give distinct stems.
    pub fn stem(&self) -> String {
        let parts = [
            self.complex.family.tag().to_string(),
            format!("d{}", self.complex.d),
            format!("g{}", self.g),
            self.degree.map_or_else(|| "k".to_string(), |k| format!("k{k}")),
            self.field.map_or_else(String::new, |f| f.to_string()),
            self.extra.clone(),
        ];
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            escape(p, &mut out);
        }
        out
    }
}

fn checksum(payload: &[u8]) -> String {
    let digest = Sha256::digest(payload);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Cache {
        Cache { root: root.into(), version: CACHE_VERSION.to_string() }
    }

    /// A cache that stamps and accepts `version` instead of the built-in one.
    pub fn with_version(root: impl Into<PathBuf>, version: &str) -> Cache {
        Cache { root: root.into(), version: version.to_string() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.root.join(key.kind.dir()).join(format!("{}.dat", key.stem()))
    }

    pub fn store(&self, key: &CacheKey, payload: &[u8]) -> Result<(), CacheError> {
        let path = self.path(key);
        let dir = path.parent().expect("entry path has a parent");
        let io_err = |p: &Path| {
            let p = p.to_path_buf();
            move |source| CacheError::Io { path: p, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let tmp = dir.join(format!(
            ".{}.{}.{}.tmp",
            key.stem(),
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let header = format!("{MAGIC} v={} len={} sum={}\n", self.version, payload.len(), checksum(payload));
        let write = || -> io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(header.as_bytes())?;
            f.write_all(payload)?;
            f.sync_all()
        };
        if let Err(e) = write() {
            let _ = fs::remove_file(&tmp);
            return Err(CacheError::Io { path: tmp, source: e });
        }
        fs::rename(&tmp, &path).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            CacheError::Io { path: path.clone(), source: e }
        })
    }

    /// The payload stored under `key`; `None` if absent or written by another
    /// version.
    pub fn load(&self, key: &CacheKey) -> Result<Option<Vec<u8>>, CacheError> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CacheError::Io { path, source: e }),
        };
        let Some(nl) = bytes.iter().position(|&b| b == b'\n') else {
            return Err(CacheError::Header { path });
        };
        let header = std::str::from_utf8(&bytes[..nl]).map_err(|_| CacheError::Header { path: path.clone() })?;
        let mut fields = header.split(' ');
        if fields.next() != Some(MAGIC) {
            return Err(CacheError::Header { path });
        }
        let (mut version, mut len, mut sum) = (None, None, None);
        for f in fields {
            match f.split_once('=') {
                Some(("v", v)) => version = Some(v),
                Some(("len", v)) => len = v.parse::<usize>().ok(),
                Some(("sum", v)) => sum = Some(v),
                _ => return Err(CacheError::Header { path }),
            }
        }
        let (Some(version), Some(len), Some(sum)) = (version, len, sum) else {
            return Err(CacheError::Header { path });
        };
        if version != self.version {
            return Ok(None);
        }
        let payload = &bytes[nl + 1..];
        if payload.len() != len || checksum(payload) != sum {
            return Err(CacheError::Checksum { path });
        }
        Ok(Some(payload.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphcx_core::Family;

    fn key(extra: &str) -> CacheKey {
        CacheKey {
            kind: Kind::Basis,
            complex: ComplexId::new(Family::Gc, 2).unwrap(),
            g: 3,
            degree: Some(-1),
            field: Some(FieldTag::Prime(32003)),
            extra: extra.to_string(),
        }
    }

    #[test]
    fn stems_escape_separators() {
        assert_eq!(key("v9").stem(), "GC.d2.g3.k-1.Fp%3A32003.v9");
        assert_ne!(key("a.b").stem(), key("a%2Eb").stem());
    }

    #[test]
    fn round_trip_and_version_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        assert_eq!(c.load(&key("x")).unwrap(), None);
        c.store(&key("x"), b"payload\nwith lines").unwrap();
        assert_eq!(c.load(&key("x")).unwrap().as_deref(), Some(&b"payload\nwith lines"[..]));
        let other = Cache::with_version(dir.path(), "0.0.0-old");
        assert_eq!(other.load(&key("x")).unwrap(), None);
    }

    #[test]
    fn corruption_is_an_error_naming_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        c.store(&key("x"), b"0123456789").unwrap();
        let p = c.path(&key("x"));
        let mut bytes = fs::read(&p).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        fs::write(&p, bytes).unwrap();
        let err = c.load(&key("x")).unwrap_err();
        assert!(matches!(err, CacheError::Checksum { .. }));
        assert!(err.to_string().contains(&key("x").stem()));
    }
}
