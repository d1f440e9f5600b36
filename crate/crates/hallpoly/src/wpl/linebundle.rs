//! Hall polynomials `φ^{O(u)}_{α,O}` for torsion `α`, by induction on `u`.
//!
//! Several support points: split off the first point `α = α_1 ⊕ α_2` and sum
//! `φ^{O(u-v)}_{α_2(-v),O} φ^{O(v)}_{α_1,O}` over `0 < v < u`. One point with
//! an indecomposable of length at least two: peel the quasi-simple top `S`
//! off `0 -> α' -> α -> S -> 0` and sum `φ^{O(u-v)}_{S(-v),O} φ^{O(v)}_{α',O}`.
//! Quasi-simples: `S_{i,j}` gives 1 exactly at `u = x_i, j = 1`; a
//! homogeneous simple at a point of degree `r` gives 1 exactly at `u = r c`.
//! A decomposable sheaf at one point is never a quotient of a line bundle.
//!
//! Grading shift on labels: `S_{i,j}[l](-v) = S_{i,j-v_i}[l]` with `v_i` the
//! `x_i`-coordinate of `v`; homogeneous labels are shift invariant.

use std::collections::HashMap;
use std::sync::Mutex;

use super::{LElement, WeightData};
use crate::combinat::{DecompositionSequence, Multisegment, NhClass, Partition, Segment, SegreEntry, SegreSequence};
use crate::error::{HallError, Result};
use crate::polyarith::IntPoly;

/// Memoized evaluator for one weight sequence.
pub struct LineBundleHall {
    w: WeightData,
    memo: Mutex<HashMap<(DecompositionSequence, LElement), IntPoly>>,
}

fn indicator(b: bool) -> IntPoly {
    if b {
        IntPoly::one()
    } else {
        IntPoly::zero()
    }
}

impl LineBundleHall {
    pub fn new(w: WeightData) -> Result<Self> {
        w.require_domestic()?;
        Ok(LineBundleHall {
            w,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    fn canonical(&self, a: &DecompositionSequence) -> Result<DecompositionSequence> {
        if !a.is_torsion() {
            return Err(HallError::NonTorsion(a.to_string()));
        }
        for s in a.nh.segments.segments() {
            if s.tube == 0 || s.tube > self.w.t() {
                return Err(HallError::UnknownLabel(format!("{} with t = {}", s, self.w.t())));
            }
        }
        Ok(DecompositionSequence::new(
            NhClass::torsion(a.nh.segments.reduce(self.w.weights())?),
            a.segre.normalize(),
        ))
    }

    /// The part of `α` at each support point, tubes first.
    pub fn support_parts(a: &DecompositionSequence) -> Vec<DecompositionSequence> {
        let mut out: Vec<DecompositionSequence> = a
            .nh
            .segments
            .tubes()
            .into_iter()
            .map(|t| DecompositionSequence::from_segments(a.nh.segments.restrict(t)))
            .collect();
        for e in a.segre.entries() {
            if !e.partition.is_empty() {
                out.push(DecompositionSequence::homogeneous(
                    SegreSequence::new(vec![e.clone()]).expect("single entry"),
                ));
            }
        }
        out
    }

    /// `α(-v)`.
    pub fn shift_down(&self, a: &DecompositionSequence, v: &LElement) -> DecompositionSequence {
        let segs: Vec<Segment> = a
            .nh
            .segments
            .segments()
            .iter()
            .map(|s| {
                let p = self.w.weights()[s.tube - 1];
                let vi = v.parts()[s.tube - 1] % p;
                Segment {
                    top: (s.top + p - vi) % p,
                    ..*s
                }
            })
            .collect();
        DecompositionSequence::new(NhClass::torsion(Multisegment::new(segs)), a.segre.clone())
    }

    /// `φ^{O(u)}_{α,O}(T)`.
    pub fn phi(&self, a: &DecompositionSequence, u: &LElement) -> Result<IntPoly> {
        if !u.is_positive() {
            return Err(HallError::NotPositive(u.to_string()));
        }
        let a = self.canonical(a)?;
        Ok(self.phi_canonical(&a, u))
    }

    /// The two-part sum for an arbitrary support split `α = α_1 ⊕ α_2`.
    pub fn split_sum(&self, a1: &DecompositionSequence, a2: &DecompositionSequence, u: &LElement) -> Result<IntPoly> {
        let a1 = self.canonical(a1)?;
        let a2 = self.canonical(a2)?;
        Ok(self.sum_over_v(&a2, &a1, u))
    }

    /// `Σ_{0<v<u} φ^{O(u-v)}_{top(-v),O} φ^{O(v)}_{sub,O}`.
    fn sum_over_v(&self, top: &DecompositionSequence, sub: &DecompositionSequence, u: &LElement) -> IntPoly {
        let mut acc = IntPoly::zero();
        for v in self.w.strictly_between(u) {
            let right = self.phi_canonical(sub, &v);
            if right.is_zero() {
                continue;
            }
            let left = self.phi_canonical(&self.shift_down(top, &v), &self.w.sub(u, &v));
            acc = &acc + &(&left * &right);
        }
        acc
    }

    fn phi_canonical(&self, a: &DecompositionSequence, u: &LElement) -> IntPoly {
        let key = (a.clone(), u.clone());
        if let Some(p) = self.memo.lock().unwrap().get(&key) {
            return p.clone();
        }
        let out = self.compute(a, u);
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    fn compute(&self, a: &DecompositionSequence, u: &LElement) -> IntPoly {
        let parts = Self::support_parts(a);
        match parts.len() {
            0 => indicator(u.is_zero()),
            1 => self.single_point(a, u),
            _ => {
                let a1 = &parts[0];
                let rest: Vec<DecompositionSequence> = parts[1..].to_vec();
                let a2 = union(&rest);
                self.sum_over_v(&a2, a1, u)
            }
        }
    }

    fn single_point(&self, a: &DecompositionSequence, u: &LElement) -> IntPoly {
        let segs = a.nh.segments.segments();
        if let [s] = segs {
            let p = self.w.weights()[s.tube - 1];
            if s.len == 1 {
                return indicator(s.top % p == 1 % p && *u == self.w.jx(s.tube, 1));
            }
            let top = DecompositionSequence::from_segments(Multisegment::new(vec![Segment { len: 1, ..*s }]));
            let sub = DecompositionSequence::from_segments(Multisegment::new(vec![Segment {
                tube: s.tube,
                top: (s.top + p - 1) % p,
                len: s.len - 1,
            }]));
            return self.sum_over_v(&top, &sub, u);
        }
        if !segs.is_empty() {
            return IntPoly::zero();
        }
        let entry = a
            .segre
            .entries()
            .iter()
            .find(|e| !e.partition.is_empty())
            .expect("one support point");
        let parts = entry.partition.parts();
        if parts.len() > 1 {
            return IntPoly::zero();
        }
        let (n, d) = (parts[0], entry.degree);
        if n == 1 {
            return indicator(*u == self.w.multiple_of_c(d as i64));
        }
        let homog = |k: usize| {
            DecompositionSequence::homogeneous(
                SegreSequence::new(vec![SegreEntry {
                    partition: Partition::from_parts(vec![k]),
                    degree: d,
                }])
                .expect("single entry"),
            )
        };
        self.sum_over_v(&homog(1), &homog(n - 1), u)
    }
}

fn union(parts: &[DecompositionSequence]) -> DecompositionSequence {
    let segs = parts
        .iter()
        .fold(Multisegment::empty(), |acc, p| acc.union(&p.nh.segments));
    let entries: Vec<SegreEntry> = parts.iter().flat_map(|p| p.segre.entries().iter().cloned()).collect();
    DecompositionSequence::new(
        NhClass::torsion(segs),
        SegreSequence::new(entries).expect("valid entries").normalize(),
    )
}

/// One-shot `φ^{O(u)}_{α,O}(T)`.
pub fn hall_poly_into_line_bundle(w: &WeightData, a: &DecompositionSequence, u: &LElement) -> Result<IntPoly> {
    LineBundleHall::new(w.clone())?.phi(a, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_field, monic_irreducibles, FqElement, PointLabel};
    use crate::quiverrep::kronecker::{preprojective, regular_module};
    use crate::quiverrep::{hall_number, QuiverRep};

    fn w(v: &[usize]) -> WeightData {
        WeightData::new(v.to_vec()).unwrap()
    }

    fn seg(tube: usize, top: usize, len: usize) -> DecompositionSequence {
        DecompositionSequence::from_segments(Multisegment::in_tube(tube, &[(top, len)]))
    }

    fn homog(pairs: &[(&[usize], usize)]) -> DecompositionSequence {
        DecompositionSequence::homogeneous(SegreSequence::from_pairs(pairs).unwrap())
    }

    #[test]
    fn base_cases() {
        let b = w(&[2, 2, 2]);
        let one = IntPoly::one();
        assert_eq!(hall_poly_into_line_bundle(&b, &seg(1, 1, 1), &b.x(1).unwrap()).unwrap(), one);
        assert!(hall_poly_into_line_bundle(&b, &seg(1, 1, 1), &b.x(2).unwrap()).unwrap().is_zero());
        assert!(hall_poly_into_line_bundle(&b, &seg(1, 0, 1), &b.x(1).unwrap()).unwrap().is_zero());
        assert_eq!(hall_poly_into_line_bundle(&b, &homog(&[(&[1], 1)]), &b.c()).unwrap(), one);
        assert!(hall_poly_into_line_bundle(&b, &homog(&[(&[1], 2)]), &b.c()).unwrap().is_zero());
        assert_eq!(hall_poly_into_line_bundle(&b, &homog(&[(&[1], 2)]), &b.multiple_of_c(2)).unwrap(), one);
    }

    #[test]
    fn two_points_and_decomposables() {
        let b = w(&[2, 2, 2]);
        let two = homog(&[(&[1], 1), (&[1], 1)]);
        assert_eq!(hall_poly_into_line_bundle(&b, &two, &b.multiple_of_c(2)).unwrap(), IntPoly::one());
        let split = homog(&[(&[1, 1], 1)]);
        for k in 0..4 {
            assert!(hall_poly_into_line_bundle(&b, &split, &b.multiple_of_c(k)).unwrap().is_zero());
        }
        // cokernel of O -> O(c) through x_1^2
        assert_eq!(hall_poly_into_line_bundle(&b, &seg(1, 0, 2), &b.c()).unwrap(), IntPoly::one());
        assert!(hall_poly_into_line_bundle(&b, &seg(1, 1, 2), &b.c()).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let b = w(&[2, 2, 2]);
        assert!(hall_poly_into_line_bundle(&b, &seg(1, 1, 1), &b.multiple_of_c(-1)).is_err());
        assert!(hall_poly_into_line_bundle(&b, &seg(4, 0, 1), &b.c()).is_err());
        assert!(hall_poly_into_line_bundle(&w(&[2, 3, 6]), &seg(1, 0, 1), &b.c()).is_err());
    }

    #[test]
    fn every_split_gives_the_same_sum() {
        let b = w(&[2, 2, 2]);
        let h = LineBundleHall::new(b.clone()).unwrap();
        let mut a = homog(&[(&[1], 1), (&[2], 1)]);
        a.nh = NhClass::torsion(Multisegment::new(vec![
            Segment { tube: 1, top: 1, len: 1 },
            Segment { tube: 2, top: 0, len: 2 },
        ]));
        let parts = LineBundleHall::support_parts(&a);
        assert_eq!(parts.len(), 4);
        let mut us = Vec::new();
        for l in 0..=4 {
            for i in 0..2 {
                for j in 0..2 {
                    us.push(b.element(&[i, j, 0], l).unwrap());
                }
            }
        }
        let mut nonzero = 0;
        for u in &us {
            let whole = h.phi(&a, u).unwrap();
            if !whole.is_zero() {
                nonzero += 1;
            }
            for mask in 1..(1u32 << parts.len()) - 1 {
                let (a1, a2): (Vec<_>, Vec<_>) =
                    parts.iter().enumerate().partition(|(k, _)| mask & (1 << k) != 0);
                let a1 = union(&a1.into_iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
                let a2 = union(&a2.into_iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
                assert_eq!(h.split_sum(&a1, &a2, u).unwrap(), whole, "u = {} mask {}", u, mask);
            }
        }
        assert!(nonzero > 0);
    }

    /// Trivial weights against the Kronecker quiver: `O(n) -> P(n)`,
    /// `S_z[m] -> R_z[m]`.
    #[test]
    fn kronecker_cross_check() {
        let t = WeightData::trivial();
        let cases: Vec<DecompositionSequence> = vec![
            homog(&[(&[1], 1)]),
            homog(&[(&[2], 1)]),
            homog(&[(&[1, 1], 1)]),
            homog(&[(&[1], 1), (&[1], 1)]),
            homog(&[(&[1], 2)]),
        ];
        for q in [2u64, 3] {
            let f = make_field(q, 1).unwrap();
            let quad = monic_irreducibles(&f, 2)[0].clone();
            for a in &cases {
                let mut next = 0u32;
                let mut parts: Vec<QuiverRep> = Vec::new();
                for e in a.segre.entries() {
                    let point = if e.degree == 1 {
                        next += 1;
                        PointLabel::affine(&f, FqElement(next - 1))
                    } else {
                        PointLabel::Poly(quad.clone())
                    };
                    parts.push(regular_module(&f, &point, &e.partition).unwrap());
                }
                let mut m = parts[0].clone();
                for p in &parts[1..] {
                    m = m.direct_sum(p).unwrap();
                }
                for k in 0..=3usize {
                    let z = preprojective(&f, k);
                    let brute = hall_number(&z, &m, &preprojective(&f, 0)).unwrap().count;
                    let poly = hall_poly_into_line_bundle(&t, a, &t.multiple_of_c(k as i64)).unwrap();
                    assert_eq!(poly.eval_int(q as i64), crate::polyarith::rat(brute as i64), "{} u={}c q={}", a, k, q);
                }
            }
        }
    }
}
