//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use pullin::verification::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let filter: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, _) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let r = run_criterion(id);
        println!(
            "{} criterion {:>2} ({}) [{:.2}s]: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            start.elapsed().as_secs_f64(),
            r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {failed} criterion(s) failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
