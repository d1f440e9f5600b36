//! Hall polynomials for extensions of a torsion sheaf by a line bundle,
//! computed by the recursion over intermediate line bundles.
//!
//! Run with `cargo run --release --example line_bundle_hall`.

use hallpoly::combinat::{DecompositionSequence, Multisegment, SegreSequence};
use hallpoly::wpl::{hall_poly_into_line_bundle, WeightData};

fn main() -> hallpoly::Result<()> {
    let w = WeightData::new(vec![2, 2, 2])?;
    let point = DecompositionSequence::homogeneous(SegreSequence::from_pairs(&[(&[1], 1)])?);
    let two_points = DecompositionSequence::homogeneous(SegreSequence::from_pairs(&[(&[1], 1), (&[1], 1)])?);
    let simple = DecompositionSequence::from_segments(Multisegment::in_tube(1, &[(1, 1)]));
    for (name, a) in [("S_z", &point), ("S_z + S_z'", &two_points), ("S_{1,1}", &simple)] {
        for u in [w.c(), w.x(1)?, w.multiple_of_c(2)] {
            let phi = hall_poly_into_line_bundle(&w, a, &u)?;
            println!("φ^O({u})_({name}, O) = {phi}");
        }
    }
    Ok(())
}
