//! Finite fields and closed points of the projective line.
//!
//! Run with `cargo run --example finite_fields`.

use hallpoly::exactfield::{closed_points, field_of_order, standard_exceptional, zeta_ordinary};

fn main() -> hallpoly::Result<()> {
    let f = field_of_order(9)?;
    println!("F_9 = F_3[x]/({:?} as coefficients, low degree first)", f.modulus());
    let g = f.gen();
    println!("generator g: g^4 = {:?}, g^8 = {:?}", f.coeffs(f.pow(g, 4)), f.coeffs(f.pow(g, 8)));

    let f4 = field_of_order(4)?;
    let exceptional = standard_exceptional(&f4, 3)?;
    for d in 1..=2 {
        let pts = closed_points(&f4, d, &exceptional)?;
        let names: Vec<String> =
            pts.iter().map(|p| format!("{}{}", p.label.render(&f4), if p.exceptional { "*" } else { "" })).collect();
        println!("degree {d} points over F_4 (* = exceptional): {}", names.join(", "));
    }

    // the number of ordinary points is a polynomial in q
    for d in 1..=3 {
        let z = zeta_ordinary(d, 3);
        println!("ordinary degree-{d} points with 3 exceptional: {z}  (q=4: {})", z.eval_int(4));
    }
    Ok(())
}
