//! Prints one PASS/FAIL/SKIP line per acceptance criterion.
//!
//! `ACCEPTANCE_MAX_Q` limits the fields visited; skipped fields are reported,
//! not failed.

use std::process::ExitCode;
use std::time::Instant;

use cubeperm::acceptance::{all_ok, run_all, AcceptanceConfig, Status};

fn main() -> ExitCode {
    let mut cfg = AcceptanceConfig::default();
    if let Some(m) = std::env::var("ACCEPTANCE_MAX_Q").ok().and_then(|v| v.parse().ok()) {
        cfg.max_q = Some(m);
    }
    let start = Instant::now();
    let results = run_all(&cfg);
    for r in &results {
        println!("{r}");
        if let (Status::Fail, Some(why)) = (r.status, r.known_unattainable()) {
            println!("     known failure, not counted: {why}");
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all_ok(&results) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
