//! Acceptance suite: every criterion runs in exact arithmetic and prints one
//! `PASS`/`FAIL` line. The process fails if any criterion fails.
//!
//! Numeric arguments restrict the run to those criteria, e.g.
//! `cargo test --test acceptance -- 4 7`.

use std::process::ExitCode;

use hallpoly::sweep::{run_criterion, CRITERIA};

const SHOWN_FAILURES: usize = 12;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut ids: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    if ids.is_empty() {
        ids = CRITERIA.iter().map(|(i, _)| *i).collect();
    }
    println!("\nrunning {} acceptance criteria", ids.len());
    let mut failed = Vec::new();
    for id in ids {
        match run_criterion(id) {
            Ok(r) => {
                println!("{}", r.line());
                let fails: Vec<_> = r.failures().collect();
                for f in fails.iter().take(SHOWN_FAILURES) {
                    println!("    failed: {} | {} | {}", f.name, f.lhs, f.rhs);
                }
                if fails.len() > SHOWN_FAILURES {
                    println!("    ... and {} more", fails.len() - SHOWN_FAILURES);
                }
                if !r.pass() {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("FAIL criterion {}: {}", id, e);
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("\nacceptance: all criteria pass\n");
        ExitCode::SUCCESS
    } else {
        println!("\nacceptance: failing criteria {:?}\n", failed);
        ExitCode::FAILURE
    }
}
