//! The Grothendieck group with basis `[O]`, `[O(j x_i)]` (`1 <= j < p_i`),
//! `[O(c)]`, and its Euler form.

use std::fmt;

use serde_json::{json, Value};

use super::{LElement, WeightData};
use crate::combinat::{DecompositionSequence, Segment};
use crate::error::{HallError, Result};
use crate::polyarith::{rat_string, Rational};

/// Integer vector over the line-bundle basis of `K_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K0Class(Vec<i64>);

/// Slope `deg / rk`, infinite on torsion classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => f.write_str(&rat_string(r)),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl K0Class {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> K0Class {
        K0Class(self.0.iter().map(|a| k * a).collect())
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }
}

impl WeightData {
    /// Basis line bundles: `O`, then `O(j x_i)` for each `i` and
    /// `1 <= j < p_i`, then `O(c)`.
    pub fn k0_basis(&self) -> Vec<LElement> {
        let mut out = vec![self.zero()];
        for (i, &p) in self.weights().iter().enumerate() {
            for j in 1..p {
                out.push(self.jx(i + 1, j as i64));
            }
        }
        out.push(self.c());
        out
    }

    pub fn k0_rank(&self) -> usize {
        2 + self.weights().iter().map(|p| p - 1).sum::<usize>()
    }

    pub fn k0_zero(&self) -> K0Class {
        K0Class(vec![0; self.k0_rank()])
    }

    fn basis_index(&self, i: usize, j: usize) -> usize {
        1 + self.weights()[..i - 1].iter().map(|p| p - 1).sum::<usize>() + (j - 1)
    }

    /// `[O(x)] = [O] + Σ_i ([O(l_i x_i)] - [O]) + l ([O(c)] - [O])`, from
    /// the twist sequences whose cokernels depend only on the twisted
    /// coordinate.
    pub fn class_of_line_bundle(&self, x: &LElement) -> K0Class {
        let n = self.k0_rank();
        let mut v = vec![0i64; n];
        v[0] = 1;
        for (i, &li) in x.parts().iter().enumerate() {
            if li != 0 {
                v[self.basis_index(i + 1, li)] += 1;
                v[0] -= 1;
            }
        }
        v[n - 1] += x.l();
        v[0] -= x.l();
        K0Class(v)
    }

    /// `δ = [O(c)] - [O]`, the class of a degree-1 ordinary simple.
    pub fn delta_class(&self) -> K0Class {
        self.class_of_line_bundle(&self.c()).sub(&self.class_of_line_bundle(&self.zero()))
    }

    /// `[S_{i,j}[l]] = [O(j x_i)] - [O((j-l) x_i)]`.
    pub fn class_of_segment(&self, s: &Segment) -> Result<K0Class> {
        if s.tube == 0 || s.tube > self.t() {
            return Err(HallError::UnknownLabel(format!("{} with t = {}", s, self.t())));
        }
        let top = self.jx(s.tube, s.top as i64);
        let bottom = self.jx(s.tube, s.top as i64 - s.len as i64);
        Ok(self.class_of_line_bundle(&top).sub(&self.class_of_line_bundle(&bottom)))
    }

    /// Class of a torsion decomposition sequence; `S_z[m]` with `deg z = d`
    /// contributes `m d δ`.
    pub fn class_of_torsion(&self, a: &DecompositionSequence) -> Result<K0Class> {
        if !a.is_torsion() {
            return Err(HallError::NonTorsion(a.to_string()));
        }
        let mut acc = self.k0_zero();
        for s in a.nh.segments.segments() {
            acc = acc.add(&self.class_of_segment(s)?);
        }
        let hom: i64 = a.segre.entries().iter().map(|e| (e.partition.size() * e.degree) as i64).sum();
        Ok(acc.add(&self.delta_class().scale(hom)))
    }

    fn gram(&self) -> &Vec<Vec<i64>> {
        self.gram.get_or_init(|| {
            let b = self.k0_basis();
            b.iter().map(|x| b.iter().map(|y| self.euler_line_bundles(x, y)).collect()).collect()
        })
    }

    /// `⟨a, b⟩`, bilinear over the line-bundle basis.
    pub fn euler_form(&self, a: &K0Class, b: &K0Class) -> i64 {
        let g = self.gram();
        let mut s = 0;
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                s += x * g[i][j] * y;
            }
        }
        s
    }

    /// `(a, b) = ⟨a, b⟩ + ⟨b, a⟩`.
    pub fn symmetric_form(&self, a: &K0Class, b: &K0Class) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    pub fn rank(&self, a: &K0Class) -> i64 {
        a.0.iter().sum()
    }

    /// Degree, extending `deg O(x) = δ(x)` linearly.
    pub fn degree(&self, a: &K0Class) -> i64 {
        self.k0_basis().iter().zip(&a.0).map(|(x, k)| k * self.delta(x)).sum()
    }

    /// Determinant in `L`, extending `det O(x) = x` linearly.
    pub fn det(&self, a: &K0Class) -> LElement {
        self.k0_basis()
            .iter()
            .zip(&a.0)
            .fold(self.zero(), |acc, (x, &k)| self.add(&acc, &self.scale(x, k)))
    }

    pub fn slope(&self, a: &K0Class) -> Slope {
        let rk = self.rank(a);
        if rk == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(Rational::new(self.degree(a).into(), rk.into()))
        }
    }

    /// Twist every line bundle by `w`; `τ` is the twist by `ω`.
    pub fn shift_class(&self, a: &K0Class, w: &LElement) -> K0Class {
        self.k0_basis()
            .iter()
            .zip(&a.0)
            .fold(self.k0_zero(), |acc, (x, &k)| {
                acc.add(&self.class_of_line_bundle(&self.add(x, w)).scale(k))
            })
    }

    pub fn tau(&self, a: &K0Class, times: i64) -> K0Class {
        self.shift_class(a, &self.scale(&self.omega(), times))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{Multisegment, SegreSequence};

    fn w(v: &[usize]) -> WeightData {
        WeightData::new(v.to_vec()).unwrap()
    }

    #[test]
    fn euler_on_classes_matches_line_bundle_formula() {
        let b = w(&[2, 3]);
        let els: Vec<LElement> = (-2..=2)
            .flat_map(|l| (0..2).flat_map(move |a| (0..3).map(move |c| (a, c, l))))
            .map(|(a, c, l)| b.element(&[a, c], l).unwrap())
            .collect();
        for x in &els {
            for y in &els {
                let lhs = b.euler_form(&b.class_of_line_bundle(x), &b.class_of_line_bundle(y));
                assert_eq!(lhs, b.euler_line_bundles(x, y), "{} {}", x, y);
            }
        }
    }

    #[test]
    fn delta_class_is_isotropic() {
        let b = w(&[2, 2, 2]);
        let d = b.delta_class();
        assert_eq!(b.euler_form(&d, &d), 0);
        let o = b.class_of_line_bundle(&b.zero());
        assert_eq!(b.euler_form(&o, &o), 1);
    }

    #[test]
    fn slopes() {
        let b = w(&[2, 2, 2]);
        assert_eq!(b.slope(&b.class_of_line_bundle(&b.zero())), Slope::Finite(Rational::from_integer(0.into())));
        assert_eq!(b.slope(&b.class_of_line_bundle(&b.c())), Slope::Finite(Rational::from_integer(2.into())));
        let s = DecompositionSequence::from_segments(Multisegment::in_tube(1, &[(0, 1)]));
        assert_eq!(b.slope(&b.class_of_torsion(&s).unwrap()), Slope::Infinite);
    }

    #[test]
    fn torsion_classes() {
        let b = w(&[2, 2, 2]);
        // S_{1,j} is the cokernel of O((j-1)x_1) -> O(j x_1), a quotient of O(j x_1)
        let s11 = b.class_of_segment(&Segment { tube: 1, top: 1, len: 1 }).unwrap();
        let s10 = b.class_of_segment(&Segment { tube: 1, top: 0, len: 1 }).unwrap();
        let o = b.class_of_line_bundle(&b.zero());
        let ox1 = b.class_of_line_bundle(&b.x(1).unwrap());
        assert_eq!(b.euler_form(&o, &s10), 1);
        assert_eq!(b.euler_form(&o, &s11), 0);
        assert_eq!(b.euler_form(&ox1, &s11), 1);
        // exceptional simples of a rank-2 tube
        assert_eq!(b.euler_form(&s10, &s10), 1);
        assert_eq!(b.euler_form(&s10, &s11), -1);
        // a full-length segment has the class of δ
        let full = b.class_of_segment(&Segment { tube: 2, top: 1, len: 2 }).unwrap();
        assert_eq!(full, b.delta_class());
        let hom = DecompositionSequence::homogeneous(SegreSequence::from_pairs(&[(&[2], 1)]).unwrap());
        assert_eq!(b.class_of_torsion(&hom).unwrap(), b.delta_class().scale(2));
        assert_eq!(b.det(&s11), b.x(1).unwrap());
        assert_eq!(b.degree(&b.delta_class()), 2);
    }

    #[test]
    fn tau_moves_tops_down() {
        let b = w(&[2, 3]);
        let s = b.class_of_segment(&Segment { tube: 2, top: 2, len: 1 }).unwrap();
        let t = b.class_of_segment(&Segment { tube: 2, top: 1, len: 1 }).unwrap();
        assert_eq!(b.tau(&s, 1), t);
        assert_eq!(b.tau(&b.delta_class(), 5), b.delta_class());
    }
}
