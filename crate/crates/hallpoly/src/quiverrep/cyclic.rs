//! Nilpotent representations of the cyclic quiver with arrows
//! `j -> j-1 (mod n)`; `n = 1` is the Jordan quiver.
//!
//! The indecomposable `S_j[l]` has basis `b_0, ..., b_{l-1}` with `b_k` at
//! vertex `j - k`, and each arrow sends `b_k` to `b_{k+1}`. Its top is the
//! simple at `j` and its composition factors are `S_j, S_{j-1}, ...`.

use std::collections::BTreeMap;

use super::catalogue::{Indec, IsoLabel};
use super::linalg::Mat;
use super::{Quiver, QuiverKind, QuiverRep};
use crate::combinat::Partition;
use crate::error::{HallError, Result};
use crate::exactfield::FqField;

/// Dimension vector of `S_top[len]` on a cycle of `n` vertices.
pub fn segment_dims(n: usize, top: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for k in 0..len {
        d[(top + n * len - k) % n] += 1;
    }
    d
}

/// The indecomposable nilpotent representation `S_top[len]`.
pub fn segment_module(field: &FqField, n: usize, top: usize, len: usize) -> QuiverRep {
    let quiver = Quiver::cyclic(n);
    let dims = segment_dims(n, top % n, len);
    let vertex = |k: usize| (top % n + n * len - k) % n;
    // position of b_k inside its vertex space
    let pos = |k: usize| (0..k).filter(|&i| vertex(i) == vertex(k)).count();
    let mut maps: Vec<Mat> = (0..n).map(|v| Mat::zeros(dims[(v + n - 1) % n], dims[v])).collect();
    for k in 0..len.saturating_sub(1) {
        let v = vertex(k);
        maps[v].set(pos(k + 1), pos(k), field.one());
    }
    QuiverRep::new(quiver, field.clone(), dims, maps).expect("valid segment data")
}

/// Direct sum of segments `(top, len)`.
pub fn multisegment_module(field: &FqField, n: usize, segments: &[(usize, usize)]) -> QuiverRep {
    let parts: Vec<QuiverRep> = segments
        .iter()
        .map(|&(top, len)| segment_module(field, n, top, len))
        .collect();
    QuiverRep::direct_sum_all(Quiver::cyclic(n), field.clone(), &parts).expect("same quiver")
}

/// Nilpotent Jordan-quiver module of type `λ`.
pub fn jordan_module(field: &FqField, lambda: &Partition) -> QuiverRep {
    let segs: Vec<(usize, usize)> = lambda.parts().iter().map(|&l| (0, l)).collect();
    multisegment_module(field, 1, &segs)
}

fn cycle_len(rep: &QuiverRep) -> Result<usize> {
    match rep.quiver().kind() {
        QuiverKind::Cyclic(n) => Ok(n),
        _ => Err(HallError::Mismatch),
    }
}

/// Rank of the path of length `m` starting at vertex `j`.
pub fn path_rank(rep: &QuiverRep, j: usize, m: usize) -> usize {
    let n = rep.dims().len();
    let f = rep.field();
    let j = j % n;
    let mut acc = Mat::identity(f, rep.dims()[j]);
    let mut v = j;
    for _ in 0..m {
        acc = rep.maps()[v].mul(f, &acc);
        v = (v + n - 1) % n;
        if acc.is_zero() {
            return 0;
        }
    }
    acc.rank(f)
}

pub fn is_nilpotent(rep: &QuiverRep) -> bool {
    let n = rep.dims().len();
    let total = rep.total_dim();
    (0..n).all(|j| path_rank(rep, j, total) == 0)
}

/// Multisegment of a nilpotent representation, read off from path ranks:
/// the number of segments with top `j` and length `l` is
/// `c(j, l-1) - c(j, l)` with `c(j, m) = r(j, m) - r(j+1, m+1)`.
pub fn cyclic_label(rep: &QuiverRep) -> Result<IsoLabel> {
    let n = cycle_len(rep)?;
    if !is_nilpotent(rep) {
        return Err(HallError::Shape("representation is not nilpotent".into()));
    }
    let total = rep.total_dim();
    let r = |j: usize, m: usize| path_rank(rep, j, m) as i64;
    let c = |j: usize, m: usize| r(j, m) - r(j + 1, m + 1);
    let mut label = BTreeMap::new();
    for j in 0..n {
        for l in 1..=total {
            let k = c(j, l - 1) - c(j, l);
            if k > 0 {
                label.insert(Indec::Segment { top: j, len: l }, k as usize);
            }
        }
    }
    Ok(IsoLabel::new(label))
}

/// Jordan type of a nilpotent Jordan-quiver module.
pub fn jordan_type(rep: &QuiverRep) -> Result<Partition> {
    let label = cyclic_label(rep)?;
    let mut parts = Vec::new();
    for (t, m) in label.entries() {
        if let Indec::Segment { len, .. } = t {
            parts.extend(std::iter::repeat_n(*len, *m));
        }
    }
    Ok(Partition::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::make_field;

    #[test]
    fn segments_have_expected_shape() {
        let f = make_field(2, 1).unwrap();
        let s = segment_module(&f, 2, 0, 2);
        assert_eq!(s.dims(), &[1, 1]);
        // arrow out of vertex 0 is nonzero, arrow out of vertex 1 is zero
        assert!(!s.maps()[0].is_zero());
        assert!(s.maps()[1].is_zero());
        assert_eq!(segment_dims(3, 1, 5), vec![2, 2, 1]);
    }

    #[test]
    fn label_round_trip() {
        let f = make_field(3, 1).unwrap();
        let segs = [(0, 2), (1, 3), (1, 1), (2, 4)];
        let rep = multisegment_module(&f, 3, &segs);
        let label = cyclic_label(&rep).unwrap();
        let mut expect = BTreeMap::new();
        for (t, l) in segs {
            *expect.entry(Indec::Segment { top: t, len: l }).or_insert(0) += 1;
        }
        assert_eq!(label, IsoLabel::new(expect));
        let lam = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(jordan_type(&jordan_module(&f, &lam)).unwrap(), lam);
    }
}
