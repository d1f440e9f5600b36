//! Expansion of `Θ_x` into torsion classes.
//!
//! A term is a torsion sheaf `⊕_j S_{z_j}[n_j] ⊕ ⊕_i S_{i,0}[m_i p_i + l_i]`
//! over distinct ordinary points `z_j`, with `Σ n_j deg z_j + Σ m_i = l`,
//! and coefficient `v^{l+m} Π_j (1 - v^{-2 deg z_j}) Π_{(m_i,l_i) != 0} (1 - v^{-2})`
//! where `m` counts the `i` with `l_i != 0`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::{LElement, WeightData};
use crate::combinat::{DecompositionSequence, Multisegment, NhClass, Partition, Segment, SegreEntry, SegreSequence};
use crate::error::{HallError, Result};
use crate::exactfield::{closed_points, field_of_order, standard_exceptional, zeta_ordinary};
use crate::polyarith::{rat, IntPoly, LaurentPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaMode {
    /// Terms grouped by point degrees, with point-count multiplicities in `T`.
    Generic,
    /// Actual sheaves over `F_q`.
    Concrete(u64),
}

/// One generic term: a label up to the choice of points, its coefficient,
/// and the number of point choices as a polynomial in `T = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub label: DecompositionSequence,
    pub coefficient: LaurentPoly,
    pub multiplicity: IntPoly,
}

/// One concrete term: ordinary points `(name, degree, n)` plus the generic
/// label it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteThetaTerm {
    pub points: Vec<(String, usize, usize)>,
    pub label: DecompositionSequence,
    pub coefficient: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaExpansion {
    pub x: LElement,
    pub terms: Vec<ThetaTerm>,
    pub concrete: Option<(u64, Vec<ConcreteThetaTerm>)>,
}

impl ThetaExpansion {
    /// Generic multiplicities evaluated at `T = q`.
    pub fn specialize(&self, q: u64) -> BTreeMap<DecompositionSequence, Rational> {
        self.terms
            .iter()
            .map(|t| (t.label.clone(), t.multiplicity.eval_int(q as i64)))
            .filter(|(_, c)| *c != rat(0))
            .collect()
    }

    /// Concrete terms counted per generic label.
    pub fn concrete_counts(&self) -> Option<BTreeMap<DecompositionSequence, Rational>> {
        let (_, terms) = self.concrete.as_ref()?;
        let mut out: BTreeMap<DecompositionSequence, Rational> = BTreeMap::new();
        for t in terms {
            *out.entry(t.label.clone()).or_insert_with(|| rat(0)) += rat(1);
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "x": self.x.to_string(),
            "terms": self.terms.iter().map(|t| json!({
                "label": t.label.to_string(),
                "coefficient": t.coefficient.to_string(),
                "multiplicity": t.multiplicity.to_string(),
            })).collect::<Vec<_>>(),
        });
        if let Some((q, terms)) = &self.concrete {
            v["q"] = json!(q);
            v["concrete"] = terms
                .iter()
                .map(|t| {
                    json!({
                        "points": t.points.iter().map(|(p, d, n)| json!({"point": p, "degree": d, "length": n})).collect::<Vec<_>>(),
                        "label": t.label.to_string(),
                        "coefficient": t.coefficient.to_string(),
                    })
                })
                .collect();
            v["count"] = json!(terms.len());
        }
        v
    }
}

/// Multisets of `(degree, length)` pairs with `Σ degree * length = k`, each
/// listed in nondecreasing order.
fn ordinary_shapes(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: usize, min: (usize, usize), cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for d in min.0..=rest {
            let n0 = if d == min.0 { min.1 } else { 1 };
            for n in n0..=rest / d {
                cur.push((d, n));
                rec(rest - d * n, (d, n), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, (1, 1), &mut Vec::new(), &mut out);
    out
}

/// Compositions of `k` into `t` nonnegative parts.
fn compositions(k: usize, t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, t - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn one_minus_v_pow(e: i64) -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::v_pow(-e)
}

fn falling(p: &IntPoly, k: usize) -> IntPoly {
    (0..k).fold(IntPoly::one(), |acc, i| &acc * &(p - &IntPoly::constant(rat(i as i64))))
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

struct Shape {
    ordinary: Vec<(usize, usize)>,
    label: DecompositionSequence,
    coefficient: LaurentPoly,
}

fn shapes(w: &WeightData, x: &LElement) -> Result<Vec<Shape>> {
    let l = x.l() as usize;
    let m = x.support_count() as i64;
    let mut out = Vec::new();
    for k in 0..=l {
        for ms in compositions(l - k, w.t()) {
            let segs: Vec<Segment> = ms
                .iter()
                .enumerate()
                .map(|(i, &mi)| Segment {
                    tube: i + 1,
                    top: 0,
                    len: mi * w.weights()[i] + x.parts()[i],
                })
                .collect();
            let exc_factor = ms
                .iter()
                .zip(x.parts())
                .filter(|(&mi, &li)| (mi, li) != (0, 0))
                .fold(LaurentPoly::one(), |acc, _| &acc * &one_minus_v_pow(2));
            for ord in ordinary_shapes(k) {
                let coefficient = ord.iter().fold(&LaurentPoly::v_pow(l as i64 + m) * &exc_factor, |acc, &(d, _)| {
                    &acc * &one_minus_v_pow(2 * d as i64)
                });
                let entries = ord
                    .iter()
                    .map(|&(d, n)| SegreEntry {
                        partition: Partition::from_parts(vec![n]),
                        degree: d,
                    })
                    .collect();
                let label = DecompositionSequence::new(
                    NhClass::torsion(Multisegment::new(segs.clone())),
                    SegreSequence::new(entries)?.normalize(),
                );
                out.push(Shape {
                    ordinary: ord,
                    label,
                    coefficient,
                });
            }
        }
    }
    Ok(out)
}

/// `Θ_x` for `x ∈ L_+`.
pub fn theta_expand(w: &WeightData, x: &LElement, mode: ThetaMode) -> Result<ThetaExpansion> {
    w.require_domestic()?;
    if !x.is_positive() {
        return Err(HallError::NotPositive(x.to_string()));
    }
    let shapes = shapes(w, x)?;
    let terms = shapes
        .iter()
        .map(|s| {
            let mut per_degree: BTreeMap<usize, usize> = BTreeMap::new();
            let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &(d, n) in &s.ordinary {
                *per_degree.entry(d).or_insert(0) += 1;
                *per_pair.entry((d, n)).or_insert(0) += 1;
            }
            let mut mult = IntPoly::one();
            for (&d, &k) in &per_degree {
                mult = &mult * &falling(&zeta_ordinary(d, w.t()), k);
            }
            let sym: i64 = per_pair.values().map(|&c| factorial(c)).product();
            ThetaTerm {
                label: s.label.clone(),
                coefficient: s.coefficient.clone(),
                multiplicity: mult.scale(&Rational::new(1.into(), sym.into())),
            }
        })
        .collect();
    let concrete = match mode {
        ThetaMode::Generic => None,
        ThetaMode::Concrete(q) => Some((q, concrete_terms(w, x, q, &shapes)?)),
    };
    Ok(ThetaExpansion {
        x: x.clone(),
        terms,
        concrete,
    })
}

fn concrete_terms(w: &WeightData, x: &LElement, q: u64, shapes: &[Shape]) -> Result<Vec<ConcreteThetaTerm>> {
    let field = field_of_order(q)?;
    let exc = standard_exceptional(&field, w.t())?;
    let mut points: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for d in 1..=x.l().max(0) as usize {
        let pts = closed_points(&field, d, &exc)?
            .into_iter()
            .filter(|p| !p.exceptional)
            .map(|p| p.label.render(&field))
            .collect();
        points.insert(d, pts);
    }
    let mut out = Vec::new();
    for s in shapes {
        let mut seen: BTreeSet<Vec<(usize, usize, usize)>> = BTreeSet::new();
        let mut cur: Vec<(usize, usize, usize)> = Vec::new();
        assign(&s.ordinary, &points, &mut cur, &mut seen);
        for choice in seen {
            out.push(ConcreteThetaTerm {
                points: choice.iter().map(|&(d, idx, n)| (points[&d][idx].clone(), d, n)).collect(),
                label: s.label.clone(),
                coefficient: s.coefficient.clone(),
            });
        }
    }
    Ok(out)
}

/// Injective assignments of points to the `(degree, length)` slots, recorded
/// as sorted `(degree, point index, length)` lists so that permutations of
/// equal slots collapse.
fn assign(
    slots: &[(usize, usize)],
    points: &BTreeMap<usize, Vec<String>>,
    cur: &mut Vec<(usize, usize, usize)>,
    seen: &mut BTreeSet<Vec<(usize, usize, usize)>>,
) {
    let Some((&(d, n), rest)) = slots.split_first() else {
        let mut c = cur.clone();
        c.sort();
        seen.insert(c);
        return;
    };
    for idx in 0..points[&d].len() {
        if cur.iter().any(|&(dd, ii, _)| dd == d && ii == idx) {
            continue;
        }
        cur.push((d, idx, n));
        assign(rest, points, cur, seen);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> WeightData {
        WeightData::new(v.to_vec()).unwrap()
    }

    fn v_one_minus() -> LaurentPoly {
        LaurentPoly::from_pairs(&[(1, 1), (-1, -1)])
    }

    #[test]
    fn trivial_weights_x_c_over_f2() {
        let t = WeightData::trivial();
        let e = theta_expand(&t, &t.c(), ThetaMode::Concrete(2)).unwrap();
        let (_, terms) = e.concrete.as_ref().unwrap();
        assert_eq!(terms.len(), 3);
        assert!(terms.iter().all(|x| x.coefficient == v_one_minus()));
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].multiplicity, IntPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn weights_222_x_c_generic() {
        let b = w(&[2, 2, 2]);
        let e = theta_expand(&b, &b.c(), ThetaMode::Generic).unwrap();
        assert_eq!(e.terms.len(), 4);
        for t in &e.terms {
            assert_eq!(t.coefficient, v_one_minus());
            if t.label.segre.is_empty() {
                assert_eq!(t.multiplicity, IntPoly::one());
                let s = t.label.nh.segments.segments();
                assert_eq!((s.len(), s[0].top, s[0].len), (1, 0, 2));
            } else {
                assert_eq!(t.multiplicity, IntPoly::from_ints(&[-2, 1]));
            }
        }
    }

    #[test]
    fn theta_x1_is_a_single_simple() {
        let b = w(&[2, 2, 2]);
        let e = theta_expand(&b, &b.x(1).unwrap(), ThetaMode::Generic).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].coefficient, v_one_minus());
        assert_eq!(e.terms[0].label, DecompositionSequence::from_segments(Multisegment::in_tube(1, &[(0, 1)])));
    }

    #[test]
    fn generic_specializes_to_concrete() {
        for weights in [vec![], vec![2, 2, 2], vec![2, 3]] {
            let b = w(&weights);
            for q in [2u64, 3] {
                if weights.len() > q as usize + 1 {
                    continue;
                }
                for l in 0..=2 {
                    let mut xs = vec![b.multiple_of_c(l)];
                    if b.t() > 0 {
                        xs.push(b.add(&b.multiple_of_c(l), &b.jx(1, 1)));
                    }
                    for x in xs {
                        let e = theta_expand(&b, &x, ThetaMode::Concrete(q)).unwrap();
                        assert_eq!(Some(e.specialize(q)), e.concrete_counts(), "{:?} {} q={}", weights, x, q);
                    }
                }
            }
        }
    }

    #[test]
    fn non_positive_rejected() {
        let b = w(&[2, 2, 2]);
        assert!(theta_expand(&b, &b.multiple_of_c(-1), ThetaMode::Generic).is_err());
        assert!(theta_expand(&w(&[2, 3, 6]), &WeightData::trivial().zero(), ThetaMode::Generic).is_err());
    }

    #[test]
    fn shapes_are_complete() {
        assert_eq!(ordinary_shapes(2), vec![vec![(1, 1), (1, 1)], vec![(1, 2)], vec![(2, 1)]]);
        assert_eq!(compositions(2, 2).len(), 3);
    }
}
