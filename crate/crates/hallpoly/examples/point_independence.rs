//! Kronecker quiver: the Hall number of a regular module at a point `z`
//! from a preinjective and a preprojective module does not depend on `z`.
//!
//! Run with `cargo run --release --example point_independence`.

use hallpoly::combinat::Partition;
use hallpoly::sweep::tame_bg;

fn main() -> hallpoly::Result<()> {
    for (q, parts, i, p) in [(2, vec![1], 0, 0), (3, vec![2], 0, 1), (5, vec![1, 1], 0, 1)] {
        let r = tame_bg(q, &Partition::new(parts)?, i, p)?;
        let values: Vec<String> = r.values.iter().map(|v| format!("{}:{}", v.point, v.hall)).collect();
        println!("q={q} λ={} I({i}) P({p}): {}  constant: {}", r.lambda, values.join(" "), r.pass());
    }
    Ok(())
}
