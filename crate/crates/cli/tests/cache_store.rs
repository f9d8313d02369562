//! Concurrent writers, transparency of the cache and corruption handling.

use std::sync::Barrier;
use std::thread;

use graphcx::cache::{Cache, CacheKey, Kind};
use graphcx::engine::Engine;
use graphcx::formats::{read_basis, write_basis};
use graphcx::Error;
use graphcx_core::enumerate::DEFAULT_BUDGET;
use graphcx_core::linalg::P1;
use graphcx_core::{ComplexId, Family, FieldTag};

fn key() -> CacheKey {
    CacheKey {
        kind: Kind::Matrix,
        complex: ComplexId::new(Family::DGc, 2).unwrap(),
        g: 3,
        degree: Some(0),
        field: None,
        extra: "stress".into(),
    }
}

#[test]
fn concurrent_stores_of_one_key_never_tear() {
    let dir = tempfile::tempdir().unwrap();
    let writers = 8;
    let barrier = Barrier::new(writers);
    let payloads: Vec<Vec<u8>> = (0..writers).map(|i| vec![b'a' + i as u8; 200_000 + 1000 * i]).collect();
    thread::scope(|s| {
        for p in &payloads {
            let (barrier, dir, payloads) = (&barrier, dir.path(), &payloads);
            s.spawn(move || {
                let cache = Cache::new(dir);
                barrier.wait();
                for _ in 0..10 {
                    cache.store(&key(), p).unwrap();
                    let got = cache.load(&key()).unwrap().unwrap();
                    assert!(payloads.contains(&got));
                }
            });
        }
    });
    let got = Cache::new(dir.path()).load(&key()).unwrap().unwrap();
    assert!(payloads.contains(&got));
    let leftovers: Vec<_> = std::fs::read_dir(dir.path().join("matrix"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn stored_basis_file_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let engine = Engine::new(Some(9), DEFAULT_BUDGET, None);
    let b = engine.basis(ComplexId::new(Family::Gc, 2).unwrap(), 3, -1).unwrap();
    let text = write_basis(&b);
    let k = CacheKey { kind: Kind::Basis, extra: String::new(), ..key() };
    cache.store(&k, text.as_bytes()).unwrap();
    let back = cache.load(&k).unwrap().unwrap();
    assert_eq!(back, text.as_bytes());
    assert_eq!(write_basis(&read_basis(std::str::from_utf8(&back).unwrap()).unwrap()), text);
}

#[test]
fn tables_are_identical_with_and_without_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let field = FieldTag::Prime(P1);
    for (f, d) in [(Family::Gc, 2), (Family::OGc3, 3), (Family::StGc, 3), (Family::GcWheeled, 2)] {
        let c = ComplexId::new(f, d).unwrap();
        let plain = Engine::new(None, DEFAULT_BUDGET, None).cohomology(c, 3, field).unwrap();
        let cold = Engine::new(None, DEFAULT_BUDGET, Some(Cache::new(dir.path()))).cohomology(c, 3, field).unwrap();
        let warm = Engine::new(None, DEFAULT_BUDGET, Some(Cache::new(dir.path()))).cohomology(c, 3, field).unwrap();
        assert_eq!(plain, cold);
        assert_eq!(plain, warm);
    }
    assert!(dir.path().join("table").is_dir());
    assert!(dir.path().join("basis").is_dir());
}

#[test]
fn corrupted_entry_is_reported_not_used() {
    let dir = tempfile::tempdir().unwrap();
    let c = ComplexId::new(Family::Gc, 2).unwrap();
    let engine = Engine::new(Some(9), DEFAULT_BUDGET, Some(Cache::new(dir.path())));
    engine.basis(c, 3, 0).unwrap();
    let entry = std::fs::read_dir(dir.path().join("basis")).unwrap().next().unwrap().unwrap().path();
    let mut bytes = std::fs::read(&entry).unwrap();
    let last = bytes.len() - 2;
    bytes[last] ^= 0x20;
    std::fs::write(&entry, bytes).unwrap();
    let fresh = Engine::new(Some(9), DEFAULT_BUDGET, Some(Cache::new(dir.path())));
    let err = fresh.basis(c, 3, 0).unwrap_err();
    assert!(matches!(err, Error::Cache(_)));
    assert!(err.to_string().contains(&entry.file_name().unwrap().to_string_lossy().to_string()));
    assert_eq!(err.exit_code(), 3);
}
