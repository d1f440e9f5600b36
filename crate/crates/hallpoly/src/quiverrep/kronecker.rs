//! Kronecker modules: the preprojectives `P(n) = (n, n+1)`, preinjectives
//! `I(n) = (n+1, n)` and regular modules `R_z[l]`, plus the canonical
//! isoclass label of an arbitrary Kronecker representation.
//!
//! Vertex 0 is the source; both arrows `x, y` map `V_0 -> V_1`. The regular
//! module at a finite point `f` has `y = I` and `x` with characteristic
//! polynomial a power of `f`; at infinity the roles of `x` and `y` swap.

use std::collections::BTreeMap;

use super::catalogue::{Indec, IsoLabel};
use super::linalg::{nullspace, smith_invariants, Mat};
use super::{Quiver, QuiverKind, QuiverRep};
use crate::combinat::Partition;
use crate::error::{HallError, Result};
use crate::exactfield::{monic_irreducibles, FqElement, FqField, FqPoly, PointLabel};

fn build(field: &FqField, d0: usize, d1: usize, x: Mat, y: Mat) -> QuiverRep {
    QuiverRep::new(Quiver::kronecker(), field.clone(), vec![d0, d1], vec![x, y]).expect("valid Kronecker data")
}

/// `P(n)`: `x = [I; 0]`, `y = [0; I]`.
pub fn preprojective(field: &FqField, n: usize) -> QuiverRep {
    let mut x = Mat::zeros(n + 1, n);
    let mut y = Mat::zeros(n + 1, n);
    for i in 0..n {
        x.set(i, i, field.one());
        y.set(i + 1, i, field.one());
    }
    build(field, n, n + 1, x, y)
}

/// `I(n)`: `x = [I | 0]`, `y = [0 | I]`.
pub fn preinjective(field: &FqField, n: usize) -> QuiverRep {
    let mut x = Mat::zeros(n, n + 1);
    let mut y = Mat::zeros(n, n + 1);
    for i in 0..n {
        x.set(i, i, field.one());
        y.set(i, i + 1, field.one());
    }
    build(field, n + 1, n, x, y)
}

fn jordan(field: &FqField, a: FqElement, l: usize) -> Mat {
    let mut m = Mat::zeros(l, l);
    for i in 0..l {
        m.set(i, i, a);
        if i + 1 < l {
            m.set(i, i + 1, field.one());
        }
    }
    m
}

/// Companion matrix of a monic polynomial.
pub fn companion(field: &FqField, g: &FqPoly) -> Mat {
    let m = g.degree().expect("nonzero polynomial");
    let mut c = Mat::zeros(m, m);
    for i in 1..m {
        c.set(i, i - 1, field.one());
    }
    for i in 0..m {
        c.set(i, m - 1, field.neg(g.0[i]));
    }
    c
}

/// Indecomposable regular module `R_z[l]`, of dimension `(l d, l d)` for a
/// point of degree `d`.
pub fn regular_indecomposable(field: &FqField, point: &PointLabel, l: usize) -> QuiverRep {
    match point {
        PointLabel::Infinity => build(field, l, l, Mat::identity(field, l), jordan(field, field.zero(), l)),
        PointLabel::Poly(f) if f.degree() == Some(1) => {
            let a = field.neg(f.0[0]);
            build(field, l, l, jordan(field, a, l), Mat::identity(field, l))
        }
        PointLabel::Poly(f) => {
            let n = f.degree().unwrap() * l;
            build(field, n, n, companion(field, &f.pow(field, l as u32)), Mat::identity(field, n))
        }
    }
}

/// `⊕_r R_z[λ_r]`.
pub fn regular_module(field: &FqField, point: &PointLabel, lambda: &Partition) -> Result<QuiverRep> {
    validate_point(field, point)?;
    let parts: Vec<QuiverRep> = lambda
        .parts()
        .iter()
        .map(|&l| regular_indecomposable(field, point, l))
        .collect();
    QuiverRep::direct_sum_all(Quiver::kronecker(), field.clone(), &parts)
}

pub(crate) fn validate_point(field: &FqField, point: &PointLabel) -> Result<()> {
    if let PointLabel::Poly(f) = point {
        let d = f.degree().unwrap_or(0);
        if d == 0 || !monic_irreducibles(field, d).contains(f) {
            return Err(HallError::InvalidPoint(f.render("t")));
        }
    }
    Ok(())
}

/// Indecomposable Kronecker module for a label.
pub fn indecomposable(field: &FqField, t: &Indec) -> Result<QuiverRep> {
    match t {
        Indec::Prep(n) => Ok(preprojective(field, *n)),
        Indec::Prei(n) => Ok(preinjective(field, *n)),
        Indec::Reg { point, len } => {
            validate_point(field, point)?;
            Ok(regular_indecomposable(field, point, *len))
        }
        other => Err(HallError::UnknownLabel(format!("{:?} is not a Kronecker module", other))),
    }
}

/// Dimension of the space of polynomial kernel vectors of degree `<= k` of
/// the pencil `x - t y`.
fn kernel_dim(field: &FqField, x: &Mat, y: &Mat, k: usize) -> usize {
    let (r, c) = (x.rows, x.cols);
    let mut m = Mat::zeros(r * (k + 2), c * (k + 1));
    for i in 0..=k {
        for a in 0..r {
            for b in 0..c {
                // x v_i in block row i, -y v_i in block row i + 1
                m.set(i * r + a, i * c + b, x.get(a, b));
                m.set((i + 1) * r + a, i * c + b, field.neg(y.get(a, b)));
            }
        }
    }
    nullspace(field, &m).len()
}

/// Multiplicities of minimal indices `ε` (blocks shaped like `I(ε)`).
fn minimal_indices(field: &FqField, x: &Mat, y: &Mat) -> BTreeMap<usize, usize> {
    let c = x.cols;
    let n: Vec<i64> = (0..=c).map(|k| kernel_dim(field, x, y, k) as i64).collect();
    let get = |k: i64| if k < 0 { 0 } else { n[k as usize] };
    let mut out = BTreeMap::new();
    for e in 0..=c as i64 {
        let m = get(e) - 2 * get(e - 1) + get(e - 2);
        if m > 0 {
            out.insert(e as usize, m as usize);
        }
    }
    out
}

/// Valuation exponents of a polynomial at each monic irreducible factor.
fn factor(field: &FqField, h: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut rest = h.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 1 {
        if 2 * d > rest.degree().unwrap() {
            // no factor of degree below d, so what remains is irreducible
            out.push((rest.monic(field), 1));
            break;
        }
        for f in monic_irreducibles(field, d).iter() {
            let mut e = 0;
            loop {
                let (qt, r) = rest.divrem(field, f);
                if !r.is_zero() {
                    break;
                }
                rest = qt;
                e += 1;
            }
            if e > 0 {
                out.push((f.clone(), e));
            }
        }
        d += 1;
    }
    out
}

/// Canonical label of a Kronecker representation: preprojective and
/// preinjective multiplicities from the minimal indices of the pencil, and
/// the partition at every point from Smith invariants.
pub fn kronecker_label(rep: &QuiverRep) -> Result<IsoLabel> {
    if rep.quiver().kind() != QuiverKind::Kronecker {
        return Err(HallError::Mismatch);
    }
    let field = rep.field();
    let (x, y) = (&rep.maps()[0], &rep.maps()[1]);
    let mut label: BTreeMap<Indec, usize> = BTreeMap::new();
    for (e, m) in minimal_indices(field, x, y) {
        label.insert(Indec::Prei(e), m);
    }
    for (e, m) in minimal_indices(field, &x.transpose(), &y.transpose()) {
        label.insert(Indec::Prep(e), m);
    }
    let (r, c) = (x.rows, x.cols);
    let finite: Vec<Vec<FqPoly>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let mut p = FqPoly(vec![x.get(i, j), field.neg(y.get(i, j))]);
                    p.trim();
                    p
                })
                .collect()
        })
        .collect();
    for h in smith_invariants(field, &finite) {
        for (f, e) in factor(field, &h) {
            *label
                .entry(Indec::Reg {
                    point: PointLabel::Poly(f),
                    len: e,
                })
                .or_insert(0) += 1;
        }
    }
    let infinite: Vec<Vec<FqPoly>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let mut p = FqPoly(vec![field.neg(y.get(i, j)), x.get(i, j)]);
                    p.trim();
                    p
                })
                .collect()
        })
        .collect();
    for h in smith_invariants(field, &infinite) {
        let v = h.0.iter().take_while(|c| c.0 == 0).count();
        if v > 0 {
            *label
                .entry(Indec::Reg {
                    point: PointLabel::Infinity,
                    len: v,
                })
                .or_insert(0) += 1;
        }
    }
    let label = IsoLabel::new(label);
    if label.dims(rep.quiver()) != rep.dims() {
        return Err(HallError::Disagreement(format!(
            "canonical form {:?} does not account for dimension {:?}",
            label,
            rep.dims()
        )));
    }
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::make_field;
    use crate::quiverrep::end_dim;

    #[test]
    fn spec_shapes() {
        let f = make_field(2, 1).unwrap();
        let r = regular_module(&f, &PointLabel::affine(&f, f.zero()), &Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(r.maps()[0], Mat::from_rows(&[vec![0]]));
        assert_eq!(r.maps()[1], Mat::from_rows(&[vec![1]]));
        let r = regular_module(&f, &PointLabel::Infinity, &Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(r.maps()[0], Mat::from_rows(&[vec![1]]));
        assert_eq!(r.maps()[1], Mat::from_rows(&[vec![0]]));
        let quad = PointLabel::Poly(FqPoly(vec![FqElement(1), FqElement(1), FqElement(1)]));
        let r = regular_module(&f, &quad, &Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(r.dims(), &[2, 2]);
        assert_eq!(end_dim(&r), 2);
        assert_eq!(r.maps()[1], Mat::identity(&f, 2));
        let bad = PointLabel::Poly(FqPoly(vec![FqElement(0), FqElement(0), FqElement(1)]));
        assert!(regular_module(&f, &bad, &Partition::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn labels_round_trip() {
        let f = make_field(3, 1).unwrap();
        let quad = monic_irreducibles(&f, 2)[0].clone();
        let pieces = vec![
            (Indec::Prep(1), 1),
            (Indec::Prei(0), 2),
            (
                Indec::Reg {
                    point: PointLabel::affine(&f, FqElement(2)),
                    len: 2,
                },
                1,
            ),
            (
                Indec::Reg {
                    point: PointLabel::Infinity,
                    len: 1,
                },
                2,
            ),
            (
                Indec::Reg {
                    point: PointLabel::Poly(quad),
                    len: 1,
                },
                1,
            ),
        ];
        let label = IsoLabel::new(pieces.into_iter().collect());
        let rep = label.build(&Quiver::kronecker(), &f).unwrap();
        assert_eq!(kronecker_label(&rep).unwrap(), label);
    }
}
