//! The generic Hall algebra over `Q(v)`: products, coproducts, the Hopf
//! pairing, and the pairing of a Θ-element against torsion classes.
//!
//! Run with `cargo run --release --example generic_algebra`.

use hallpoly::combinat::{DecompositionSequence, Multisegment, SegreSequence};
use hallpoly::generichall::GenericHall;
use hallpoly::wpl::WeightData;

fn main() -> hallpoly::Result<()> {
    let h = GenericHall::new(WeightData::new(vec![2, 2, 2])?)?;
    let s0 = DecompositionSequence::from_segments(Multisegment::in_tube(1, &[(0, 1)]));
    let s1 = DecompositionSequence::from_segments(Multisegment::in_tube(1, &[(1, 1)]));
    let pt = DecompositionSequence::homogeneous(SegreSequence::from_pairs(&[(&[1], 1)])?);

    let (a, b) = (h.basis(&s0)?, h.basis(&s1)?);
    let ab = h.multiply(&a, &b)?;
    println!("u[S_1,0] u[S_1,1] =\n{}", serde_json::to_string_pretty(&ab.to_json()).unwrap());

    let p = h.basis(&pt)?;
    let square = h.multiply(&p, &p)?;
    println!("u[pt]^2 = {}", serde_json::to_string(&square.to_json()).unwrap());
    let delta = h.comultiply_element(&p)?;
    println!("Δ(u[pt]) = {}", serde_json::to_string(&delta.to_json()).unwrap());

    // Green's property {ab, c} = {a ⊗ b, Δ(c)}
    for g in ab.terms().keys() {
        let c = h.basis(&g.seq)?;
        let lhs = h.pair(&ab, &c)?;
        let rhs = h.pair_tensor(&h.tensor(&a, &b), &h.comultiply_element(&c)?)?;
        println!("{{ab, {}}} = {}  vs  {}", g, lhs, rhs);
    }

    // the closed form carries an extra v^{(α,α)}, visible on exceptional simples
    let w = h.weights().clone();
    for (label, seq, x) in [("pt", &pt, w.c()), ("S_1,0", &s0, w.x(1)?)] {
        let t = h.theta_pairing_values(seq, &x)?;
        println!(
            "{{Θ_{x}, u[{label}]}}: bilinear {}, closed form {}, agree: {}",
            t.bilinear,
            t.closed_form,
            t.agrees()
        );
    }
    Ok(())
}
