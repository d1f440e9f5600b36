//! Weighted projective lines: the rank-one group `L(p)`, normal forms, the
//! degree map `δ`, the dualizing element `ω`, graded dimensions of `S`, the
//! Grothendieck group with its Euler form, the elements `Θ_x`, and Hall
//! polynomials for torsion quotients of line bundles.
//!
//! Nothing here materializes a sheaf. Every statement is label or class
//! arithmetic; the quiver side supplies the brute-force cross-checks.

mod k0;
mod linebundle;
mod theta;

pub use k0::{K0Class, Slope};
pub use linebundle::{hall_poly_into_line_bundle, LineBundleHall};
pub use theta::{theta_expand, ConcreteThetaTerm, ThetaExpansion, ThetaMode, ThetaTerm};

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{HallError, Result};

/// Generator of `L(p)`: `x_i` (1-based) or the canonical element `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    C,
}

/// Element `Σ l_i x_i + l c` of `L(p)` in normal form `0 <= l_i < p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LElement {
    parts: Vec<usize>,
    l: i64,
}

impl LElement {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    /// In the positive cone `L_+`.
    pub fn is_positive(&self) -> bool {
        self.l >= 0
    }

    pub fn is_zero(&self) -> bool {
        self.l == 0 && self.parts.iter().all(|&x| x == 0)
    }

    /// Number of `i` with `l_i != 0`.
    pub fn support_count(&self) -> usize {
        self.parts.iter().filter(|&&x| x != 0).count()
    }
}

/// Wire format `l1,...,lt;l` (`;l` when `t = 0`).
impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{};{}", p.join(","), self.l)
    }
}

/// Sign class of `δ(ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightClass {
    Domestic,
    Tubular,
    Wild,
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightClass::Domestic => "domestic",
            WeightClass::Tubular => "tubular",
            WeightClass::Wild => "wild",
        })
    }
}

/// Weight sequence `p = (p_1, ..., p_t)` together with derived data.
#[derive(Clone, Debug)]
pub struct WeightData {
    weights: Vec<usize>,
    p: usize,
    gram: Arc<OnceLock<Vec<Vec<i64>>>>,
}

impl PartialEq for WeightData {
    fn eq(&self, o: &Self) -> bool {
        self.weights == o.weights
    }
}

impl Eq for WeightData {}

impl WeightData {
    pub fn new(weights: Vec<usize>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(HallError::Parse(format!("weight p_{} must be positive", i + 1)));
        }
        let p = weights.iter().fold(1usize, |a, &b| a.lcm(&b));
        Ok(WeightData {
            weights,
            p,
            gram: Arc::new(OnceLock::new()),
        })
    }

    /// `t = 0`: the ordinary projective line.
    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("empty weights are valid")
    }

    /// Parse `"2,2,2"`; the empty string gives trivial weights.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let w = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| HallError::Parse(format!("weight {:?}: {}", x, e))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(w)
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn t(&self) -> usize {
        self.weights.len()
    }

    /// `lcm(p_i)`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Normal form of `Σ a_i x_i + l c` from raw integer coefficients.
    pub fn element(&self, coeffs: &[i64], l: i64) -> Result<LElement> {
        if coeffs.len() != self.t() {
            return Err(HallError::Shape(format!("{} coefficients for {} weights", coeffs.len(), self.t())));
        }
        let mut total = l;
        let parts = coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&a, &p)| {
                let (q, r) = a.div_mod_floor(&(p as i64));
                total += q;
                r as usize
            })
            .collect();
        Ok(LElement { parts, l: total })
    }

    /// Normal form of a formal sum of generators.
    pub fn normal_form(&self, raw: &[(Generator, i64)]) -> Result<LElement> {
        let mut coeffs = vec![0i64; self.t()];
        let mut l = 0;
        for &(g, k) in raw {
            match g {
                Generator::C => l += k,
                Generator::X(i) if (1..=self.t()).contains(&i) => coeffs[i - 1] += k,
                Generator::X(i) => return Err(HallError::UnknownLabel(format!("x_{} with t = {}", i, self.t()))),
            }
        }
        self.element(&coeffs, l)
    }

    pub fn zero(&self) -> LElement {
        LElement {
            parts: vec![0; self.t()],
            l: 0,
        }
    }

    pub fn c(&self) -> LElement {
        self.multiple_of_c(1)
    }

    pub fn multiple_of_c(&self, k: i64) -> LElement {
        LElement {
            parts: vec![0; self.t()],
            l: k,
        }
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Result<LElement> {
        self.normal_form(&[(Generator::X(i), 1)])
    }

    /// `j x_i` in normal form, for any integer `j`.
    pub fn jx(&self, i: usize, j: i64) -> LElement {
        self.normal_form(&[(Generator::X(i), j)]).expect("tube index checked by caller")
    }

    fn raw(&self, x: &LElement) -> Vec<i64> {
        x.parts.iter().map(|&v| v as i64).collect()
    }

    pub fn add(&self, a: &LElement, b: &LElement) -> LElement {
        let c: Vec<i64> = self.raw(a).iter().zip(self.raw(b)).map(|(x, y)| x + y).collect();
        self.element(&c, a.l + b.l).expect("same weights")
    }

    pub fn neg(&self, a: &LElement) -> LElement {
        let c: Vec<i64> = self.raw(a).iter().map(|x| -x).collect();
        self.element(&c, -a.l).expect("same weights")
    }

    pub fn sub(&self, a: &LElement, b: &LElement) -> LElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &LElement, k: i64) -> LElement {
        let c: Vec<i64> = self.raw(a).iter().map(|x| k * x).collect();
        self.element(&c, k * a.l).expect("same weights")
    }

    /// `ω = (t-2) c - Σ x_i`.
    pub fn omega(&self) -> LElement {
        let mut raw: Vec<(Generator, i64)> = (1..=self.t()).map(|i| (Generator::X(i), -1)).collect();
        raw.push((Generator::C, self.t() as i64 - 2));
        self.normal_form(&raw).expect("generators in range")
    }

    /// `δ(x) = Σ l_i p/p_i + l p`.
    pub fn delta(&self, x: &LElement) -> i64 {
        let p = self.p as i64;
        x.parts.iter().zip(&self.weights).map(|(&li, &pi)| li as i64 * (p / pi as i64)).sum::<i64>() + x.l * p
    }

    pub fn delta_omega(&self) -> i64 {
        self.delta(&self.omega())
    }

    pub fn classify(&self) -> WeightClass {
        match self.delta_omega() {
            d if d < 0 => WeightClass::Domestic,
            0 => WeightClass::Tubular,
            _ => WeightClass::Wild,
        }
    }

    /// Sheaf-side operations accept only domestic (including trivial) weights.
    pub fn require_domestic(&self) -> Result<()> {
        match self.classify() {
            WeightClass::Domestic => Ok(()),
            _ => Err(HallError::NonDomestic(self.render_weights())),
        }
    }

    pub fn render_weights(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(|x| x.to_string()).collect();
        format!("({})", w.join(","))
    }

    /// Parse the wire format `l1,...,lt;l`. Coefficients may be arbitrary
    /// integers; the result is normalized.
    pub fn parse_element(&self, s: &str) -> Result<LElement> {
        let bad = || HallError::Parse(format!("L-element {:?}: expected \"l1,...,lt;l\"", s));
        let (parts, l) = match s.split_once(';') {
            Some((a, b)) => (a.trim(), b.trim()),
            None if self.t() == 0 => ("", s.trim()),
            None => return Err(bad()),
        };
        let l: i64 = l.parse().map_err(|_| bad())?;
        let coeffs: Vec<i64> = if parts.is_empty() {
            Vec::new()
        } else {
            parts.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        self.element(&coeffs, l)
    }

    /// Dimension of the homogeneous piece `S_x`, counted by enumerating the
    /// monomials `x_1^{a_1} x_2^{a_2} Π_{i>=3} x_i^{a_i}` (`a_i < p_i` for
    /// `i >= 3`) of degree `x`. Weights are padded with `1` up to `t = 2`.
    pub fn dim_s(&self, x: &LElement) -> u64 {
        let mut w = self.weights.clone();
        let mut target = x.parts.clone();
        while w.len() < 2 {
            w.push(1);
            target.push(0);
        }
        let padded = WeightData::new(w.clone()).expect("positive weights");
        let want = LElement { parts: target, l: x.l };
        let top = x.l.max(0) as usize + 1;
        let mut count = 0u64;
        let mut exps = vec![0i64; w.len()];
        let bounds: Vec<usize> = w.iter().enumerate().map(|(i, &p)| if i < 2 { p * top } else { p }).collect();
        loop {
            if padded.element(&exps, 0).expect("shape") == want {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == exps.len() {
                    let closed = (x.l + 1).max(0) as u64;
                    assert_eq!(count, closed, "monomial count disagrees with max(l+1, 0) at {}", x);
                    return count;
                }
                exps[k] += 1;
                if (exps[k] as usize) < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    /// `⟨O(x), O(y)⟩ = dim S_{y-x} - dim S_{x-y+ω}`.
    pub fn euler_line_bundles(&self, x: &LElement, y: &LElement) -> i64 {
        let hom = self.dim_s(&self.sub(y, x));
        let ext = self.dim_s(&self.add(&self.sub(x, y), &self.omega()));
        hom as i64 - ext as i64
    }

    /// All `v` with `v`, `u - v` in `L_+`, `v != 0`, `v != u`. Since
    /// `u - v` has `l`-coordinate at most `l(u) - l(v)`, the search is bounded
    /// by `0 <= l(v) <= l(u)`.
    pub fn strictly_between(&self, u: &LElement) -> Vec<LElement> {
        let mut out = Vec::new();
        if u.l < 0 {
            return out;
        }
        let mut parts = vec![0usize; self.t()];
        loop {
            for l in 0..=u.l {
                let v = LElement { parts: parts.clone(), l };
                if !v.is_zero() && &v != u && self.sub(u, &v).is_positive() {
                    out.push(v);
                }
            }
            let mut k = 0;
            loop {
                if k == parts.len() {
                    return out;
                }
                parts[k] += 1;
                if parts[k] < self.weights[k] {
                    break;
                }
                parts[k] = 0;
                k += 1;
            }
        }
    }

    pub fn info_json(&self) -> Value {
        json!({
            "weights": self.weights,
            "p": self.p,
            "omega": self.omega().to_string(),
            "delta_omega": self.delta_omega(),
            "class": self.classify(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> WeightData {
        WeightData::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let a = w(&[2, 3]);
        let e = a.normal_form(&[(Generator::X(1), 3)]).unwrap();
        assert_eq!((e.parts(), e.l()), (&[1usize, 0][..], 1));
        let b = w(&[2, 2, 2]);
        let om = b.omega();
        assert_eq!((om.parts(), om.l()), (&[1usize, 1, 1][..], -2));
        assert!(b.normal_form(&[]).unwrap().is_zero());
        assert!(b.normal_form(&[(Generator::X(4), 1)]).is_err());
    }

    #[test]
    fn delta_and_classification() {
        assert_eq!(w(&[2, 2, 2]).delta_omega(), -1);
        assert_eq!(w(&[2, 3, 6]).delta_omega(), 0);
        assert_eq!(w(&[2, 3]).delta_omega(), -5);
        assert_eq!(w(&[2, 3, 6]).classify(), WeightClass::Tubular);
        assert!(w(&[2, 3, 6]).require_domestic().is_err());
        assert_eq!(w(&[2, 3, 7]).classify(), WeightClass::Wild);
        assert_eq!(WeightData::trivial().classify(), WeightClass::Domestic);
        assert_eq!(WeightData::trivial().delta_omega(), -2);
    }

    #[test]
    fn dim_s_examples() {
        let a = w(&[2, 3]);
        assert_eq!(a.dim_s(&a.zero()), 1);
        assert_eq!(a.dim_s(&a.c()), 2);
        assert_eq!(a.dim_s(&a.multiple_of_c(-1)), 0);
        let t = WeightData::trivial();
        assert_eq!(t.dim_s(&t.multiple_of_c(3)), 4);
    }

    #[test]
    fn euler_examples() {
        let b = w(&[2, 2, 2]);
        assert_eq!(b.euler_line_bundles(&b.zero(), &b.zero()), 1);
        assert_eq!(b.euler_line_bundles(&b.zero(), &b.c()), 2);
        assert_eq!(b.euler_line_bundles(&b.c(), &b.zero()), 0);
    }

    #[test]
    fn wire_format_round_trip() {
        let b = w(&[2, 2, 2]);
        let x = b.parse_element("1,0,1;2").unwrap();
        assert_eq!(b.parse_element(&x.to_string()).unwrap(), x);
        assert_eq!(b.parse_element("3,0,0;0").unwrap(), b.parse_element("1,0,0;1").unwrap());
        assert!(b.parse_element("1,0;2").is_err());
        let t = WeightData::trivial();
        assert_eq!(t.parse_element("2").unwrap(), t.multiple_of_c(2));
        assert_eq!(t.parse_element(";2").unwrap(), t.multiple_of_c(2));
    }

    #[test]
    fn between_is_finite_and_exact() {
        let b = w(&[2, 2, 2]);
        let u = b.multiple_of_c(1);
        let vs = b.strictly_between(&u);
        // x_1, x_2, x_3
        assert_eq!(vs.len(), 3);
        let t = WeightData::trivial();
        assert_eq!(t.strictly_between(&t.multiple_of_c(3)).len(), 2);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    const DOMESTIC: [&[usize]; 11] = [
        &[],
        &[3],
        &[2, 5],
        &[2, 2, 2],
        &[2, 2, 3],
        &[2, 2, 4],
        &[2, 2, 5],
        &[2, 2, 6],
        &[2, 3, 3],
        &[2, 3, 4],
        &[2, 3, 5],
    ];

    /// Weights together with raw coordinates `|l_i| < p_i`, `|l| <= 5`.
    fn weighted_points(n: usize) -> impl Strategy<Value = (WeightData, Vec<LElement>)> {
        (0..DOMESTIC.len()).prop_flat_map(move |k| {
            let ws = DOMESTIC[k].to_vec();
            let coord = ws.iter().map(|&p| -(p as i64) + 1..p as i64).collect::<Vec<_>>();
            prop::collection::vec((coord, -5i64..=5), n).prop_map(move |raw| {
                let data = WeightData::new(ws.clone()).unwrap();
                let els = raw
                    .iter()
                    .map(|(cs, l)| {
                        let mut gens: Vec<(Generator, i64)> =
                            cs.iter().enumerate().map(|(i, &a)| (Generator::X(i + 1), a)).collect();
                        gens.push((Generator::C, *l));
                        data.normal_form(&gens).unwrap()
                    })
                    .collect();
                (data, els)
            })
        })
    }

    proptest! {
        #[test]
        fn dim_s_has_closed_form((data, els) in weighted_points(1)) {
            let x = &els[0];
            prop_assert_eq!(data.dim_s(x), (x.l() + 1).max(0) as u64);
        }

        #[test]
        fn euler_form_is_shift_invariant((data, els) in weighted_points(3)) {
            let (x, y, w) = (&els[0], &els[1], &els[2]);
            let shifted = data.euler_line_bundles(&data.add(x, w), &data.add(y, w));
            prop_assert_eq!(shifted, data.euler_line_bundles(x, y));
            let (cx, cy) = (data.class_of_line_bundle(x), data.class_of_line_bundle(y));
            prop_assert_eq!(data.euler_form(&data.shift_class(&cx, w), &data.shift_class(&cy, w)), data.euler_form(&cx, &cy));
        }
    }
}
