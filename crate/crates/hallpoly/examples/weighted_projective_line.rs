//! The grading group, the Euler form and Θ-element expansions on a
//! weighted projective line.
//!
//! Run with `cargo run --release --example weighted_projective_line`.

use hallpoly::wpl::{theta_expand, ThetaMode, WeightData};

fn main() -> hallpoly::Result<()> {
    let w = WeightData::new(vec![2, 2, 2])?;
    println!("{}", serde_json::to_string_pretty(&w.info_json()).unwrap());

    let o = w.zero();
    let c = w.c();
    let x1 = w.x(1)?;
    println!("<O, O(c)> = {}   <O(c), O> = {}", w.euler_line_bundles(&o, &c), w.euler_line_bundles(&c, &o));
    println!("<O, O(x1)> = {}   dim S_c = {}", w.euler_line_bundles(&o, &x1), w.dim_s(&c));

    let k0 = w.class_of_line_bundle(&o);
    let tau = w.tau(&k0, 1);
    println!("rank/degree of O: {}/{}; of tau O: {}/{}", w.rank(&k0), w.degree(&k0), w.rank(&tau), w.degree(&tau));

    let theta = theta_expand(&w, &c, ThetaMode::Generic)?;
    println!("\nΘ_c has {} generic terms:", theta.terms.len());
    for t in &theta.terms {
        println!("  {}  coefficient {}  multiplicity {}", t.label, t.coefficient, t.multiplicity);
    }
    let concrete = theta_expand(&WeightData::trivial(), &WeightData::trivial().c(), ThetaMode::Concrete(3))?;
    if let Some((q, terms)) = concrete.concrete {
        println!("\ntrivial weights over F_{q}: Θ_c has {} terms (q + 1 points)", terms.len());
    }
    Ok(())
}
