//! Hall polynomials fitted from exact counts: the classical (Jordan) case,
//! nilpotent representations of a cyclic quiver, and automorphism groups.
//!
//! Run with `cargo run --release --example hall_polynomials`.

use hallpoly::combinat::{DecompositionSequence, Multisegment, Partition, SegreSequence};
use hallpoly::cyclichall::{aut_poly_partition, classical_count, classical_hall, cyclic_hall, segre_hall};

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn main() -> hallpoly::Result<()> {
    for (l, m, n) in [(&[1, 1][..], &[1][..], &[1][..]), (&[2, 1], &[1], &[2]), (&[2, 1, 1], &[1, 1], &[2])] {
        let r = classical_hall(&p(l), &p(m), &p(n))?;
        let fresh = classical_count(&p(l), &p(m), &p(n), 11)?;
        println!(
            "g^{:?}_({:?},{:?})(T) = {}   stabilized: {}, value at 11: {} (brute force {})",
            l,
            m,
            n,
            r.poly,
            r.stabilized(),
            r.poly.eval_int(11),
            fresh
        );
    }

    let seg = |top, len| Multisegment::in_tube(1, &[(top, len)]);
    let r = cyclic_hall(2, &Multisegment::in_tube(1, &[(0, 2), (1, 1)]), &seg(0, 2), &seg(1, 1))?;
    println!("\ncyclic quiver with 2 vertices, S_0[2]+S_1 from S_0[2] and S_1: {}", r.poly);

    for lam in [p(&[1]), p(&[1, 1]), p(&[2, 1])] {
        println!("|Aut| for Jordan type {:?}: {}", lam.parts(), aut_poly_partition(&lam)?);
    }

    // a degree-2 point: the polynomial is the degree-1 one evaluated at T^2
    let at = |parts: &[usize], d| DecompositionSequence::homogeneous(SegreSequence::from_pairs(&[(parts, d)]).unwrap());
    let r = segre_hall(&at(&[1, 1], 2), &at(&[1], 2), &at(&[1], 2), &[])?;
    println!("\nsame product at a degree-2 point: {}", r.poly);
    Ok(())
}
