//! δ∘M = M∘δ on full bases for every map, d ∈ {2, 3}, g ≤ 3.

use graphcx_core::enumerate::{generate_basis, EnumOptions};
use graphcx_core::maps::apply_map_chain;
use graphcx_core::{apply_map, delta, differential::delta_chain, ComplexId, Family, Lambda, MapId};

fn check(m: MapId, f: Family, d: i32, g: usize) -> usize {
    let src = ComplexId::new(f, d).unwrap();
    let tgt = m.target(src).unwrap();
    let spec = src.spec();
    let Some((lo, hi)) = spec.degree_range(g, 6) else { return 0 };
    let mut checked = 0;
    for k in lo..=hi {
        let basis = generate_basis(src, g, k, EnumOptions::new(6)).unwrap();
        for x in &basis.elems {
            let mx = apply_map(m, src, x).unwrap();
            let lhs = delta_chain(&tgt, &mx);
            let rhs = apply_map_chain(m, &delta(&src, x).unwrap()).unwrap();
            assert!(lhs.difference(&rhs).is_zero(), "{m} on {src} fails at {}", x.encode());
            checked += 1;
        }
    }
    checked
}

fn check_all(m: MapId, families: &[Family]) {
    let mut total = 0;
    for &f in families {
        for d in [2, 3] {
            for g in 1..=3 {
                total += check(m, f, d, g);
            }
        }
    }
    assert!(total > 0);
}

#[test]
fn f_commutes_with_delta() {
    check_all(MapId::F, &[Family::Gc]);
}

#[test]
fn mu_commutes_with_delta() {
    check_all(MapId::Mu, &[Family::Gc]);
}

#[test]
fn s_commutes_with_delta() {
    check_all(MapId::S, &[Family::BarGc2Edge, Family::BarTGc, Family::BarSGc]);
}

#[test]
fn j_commutes_with_delta() {
    check_all(MapId::J, &[Family::HatOGc]);
}

#[test]
fn z_commutes_with_delta() {
    check_all(MapId::Z, &[Family::RdGc4Edge]);
}

#[test]
fn iota_commutes_with_delta() {
    check_all(MapId::Iota, &[Family::DGc, Family::TGc, Family::SGc, Family::OGc, Family::StGc, Family::GcWedge]);
}

#[test]
fn f_lambda_commutes_with_delta() {
    check_all(MapId::FLambda(Lambda::T), &[Family::Gc]);
    check_all(MapId::FLambda(Lambda::Or), &[Family::Gc]);
}

#[test]
fn inclusions_and_projections_commute_with_delta() {
    check_all(MapId::Inclusion, &[Family::BarTGc, Family::HatOGc]);
    check_all(MapId::Projection, &[Family::StGc, Family::DGc, Family::Gc]);
}

#[test]
fn iota_is_an_involution() {
    for f in [Family::DGc, Family::OGc] {
        for d in [2, 3] {
            let id = ComplexId::new(f, d).unwrap();
            for g in 1..=3 {
                let Some((lo, hi)) = id.spec().degree_range(g, 6) else { continue };
                for k in lo..=hi {
                    for x in &generate_basis(id, g, k, EnumOptions::new(6)).unwrap().elems {
                        let once = apply_map(MapId::Iota, id, x).unwrap();
                        assert_eq!(once.len(), 1);
                        let twice = apply_map_chain(MapId::Iota, &once).unwrap();
                        assert_eq!(twice.len(), 1);
                        assert_eq!(twice.coefficient(x), 1.into());
                    }
                }
            }
        }
    }
}
