//! δ² = 0 over ℚ on whole bases, plus degree and loop-number bookkeeping of
//! every δ term.

use graphcx_core::{delta, delta_chain, generate_basis, ComplexId, EnumOptions, Family};

fn check(id: ComplexId, g: usize, vmax: usize) -> usize {
    let spec = id.spec();
    let Some((lo, hi)) = spec.degree_range(g, vmax) else { return 0 };
    let mut n = 0;
    for k in lo..=hi {
        let basis = generate_basis(id, g, k, EnumOptions::new(vmax)).unwrap();
        for x in &basis.elems {
            let dx = delta(&id, x).unwrap();
            for (y, _) in dx.iter() {
                assert_eq!(spec.degree(y).unwrap(), k + 1, "{id}: {}", x.encode());
                assert_eq!(y.loop_number().unwrap(), g);
                assert!(spec.is_generator(y));
            }
            let ddx = delta_chain(&id, &dx);
            assert!(ddx.is_zero(), "{id} g={g}: δ² ≠ 0 on {}", x.encode());
            n += 1;
        }
    }
    n
}

fn every_family(g: usize, vmax: usize) {
    let mut total = 0;
    for f in Family::ALL {
        for d in [2, 3] {
            if let Ok(id) = ComplexId::new(f, d) {
                total += check(id, g, vmax);
            }
        }
    }
    assert!(total > 0);
}

#[test]
fn loop_order_one() {
    every_family(1, 8);
}

#[test]
fn loop_order_two() {
    every_family(2, 6);
}

#[test]
fn loop_order_three() {
    every_family(3, 6);
}

#[test]
fn gc_and_dgc_at_loop_order_four() {
    let mut n = 0;
    for d in [2, 3] {
        n += check(ComplexId::new(Family::Gc, d).unwrap(), 4, 6);
        n += check(ComplexId::new(Family::DGc, d).unwrap(), 4, 6);
    }
    // Every g = 4 generator of GC_2 vanishes by symmetry; the rest does not.
    assert!(n > 15_000);
}

#[test]
fn gc_lambda_at_higher_black_degree() {
    for f in [Family::GcTDd1, Family::GcOrDd1, Family::GcTDd1Tilde, Family::GcOrDd1Tilde] {
        check(ComplexId::new(f, 4).unwrap(), 3, 5);
    }
}
