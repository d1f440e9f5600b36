//! Hall numbers of Kronecker representations, Green's formula and the
//! mass formula, all by brute-force enumeration over a small field.
//!
//! Run with `cargo run --release --example quiver_hall_numbers`.

use hallpoly::combinat::Partition;
use hallpoly::exactfield::{make_field, PointLabel};
use hallpoly::quiverrep::{aut_order, ext_dim, hall_number, hom_dim, kronecker, Catalogue, Quiver, QuiverRep};

fn main() -> hallpoly::Result<()> {
    let f = make_field(2, 1)?;
    let k = Quiver::kronecker();
    let s1 = QuiverRep::simple(k.clone(), f.clone(), 0)?;
    let s2 = QuiverRep::simple(k.clone(), f.clone(), 1)?;
    let z = kronecker::regular_module(&f, &PointLabel::affine(&f, f.zero()), &Partition::new(vec![1])?)?;

    println!("dim Hom(S1, S2) = {}, dim Ext(S1, S2) = {}", hom_dim(&s1, &s2)?, ext_dim(&s1, &s2)?);
    println!("|Aut R| = {}", aut_order(&z)?);
    println!("F^R_(S1,S2) = {}", hall_number(&z, &s1, &s2)?.count);
    println!("F^R_(S2,S1) = {}", hall_number(&z, &s2, &s1)?.count);

    let cat = Catalogue::build(k, f.clone(), &[2, 2])?;
    println!("\n{} isoclasses of dimension <= (2,2) over F_2", cat.len());
    for m in cat.mass_checks() {
        println!("  mass formula at {:?}: {} classes, pass = {:?}", m.dims, m.classes, m.pass);
    }

    let p0 = cat.with_dims(&[0, 1])[0];
    let i0 = cat.with_dims(&[1, 0])[0];
    let mut checked = 0;
    for &x in cat.with_dims(&[1, 1]) {
        let r = cat.green(i0, p0, x, cat.with_dims(&[0, 0])[0])?;
        assert!(r.holds);
        checked += 1;
    }
    let r = cat.green(i0, p0, i0, p0)?;
    println!("\nGreen's formula for (S1, S2; S1, S2): {} = {} ({} more quadruples checked)", r.lhs, r.rhs, checked);
    Ok(())
}
