//! Run some or all acceptance criteria and print one line per criterion.
//!
//! Run with `cargo run --release --example acceptance_sweep -- 1 4 7`.

use hallpoly::sweep::{run_criterion, CRITERIA};

fn main() -> hallpoly::Result<()> {
    let mut ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if ids.is_empty() {
        ids = CRITERIA.iter().map(|(i, _)| *i).collect();
    }
    for id in ids {
        let r = run_criterion(id)?;
        println!("{}", r.line());
        for f in r.failures().take(3) {
            println!("    {} | {} | {}", f.name, f.lhs, f.rhs);
        }
    }
    Ok(())
}
