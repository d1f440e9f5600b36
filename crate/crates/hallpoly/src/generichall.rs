//! The generic Hall algebra on the torsion sector.
//!
//! Basis elements are `u_α K_a` with `α` a torsion decomposition sequence
//! and `a ∈ K_0`. Segre sequences are positional: the `k`-th entry of
//! degree `d` lives at the `k`-th chosen point of degree `d`, and only
//! trailing empty entries are dropped. Products use
//! `u_α u_β = v^{⟨α,β⟩} Σ_γ φ^γ_{α,β}(v^2) u_γ` and
//! `K_a u_β = v^{(a,β)} u_β K_a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinat::{DecompositionSequence, Multisegment, NhClass, Partition, Segment, SegreEntry, SegreSequence};
use crate::cyclichall::{aut_poly_multisegment, aut_poly_partition, multisegments_with_dims, segre_candidates, segre_hall};
use crate::error::{HallError, Result};
use crate::polyarith::{substitute_t_v2, IntPoly, LaurentPoly, RatFunc};
use crate::quiverrep::cyclic::segment_dims;
use crate::wpl::{theta_expand, K0Class, LElement, ThetaMode, WeightData};

/// Basis label `u_α K_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub seq: DecompositionSequence,
    pub k: K0Class,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{}]", self.seq)?;
        if !self.k.is_zero() {
            write!(f, " K{:?}", self.k.coords())?;
        }
        Ok(())
    }
}

/// Finite linear combination of basis elements with coefficients in `Q(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GenericElement {
    terms: BTreeMap<Basis, RatFunc>,
}

impl GenericElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Basis, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Basis, c: RatFunc) {
        let e = self.terms.entry(b.clone()).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, o: &GenericElement) -> GenericElement {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        self.terms
            .iter()
            .map(|(b, c)| json!({"basis_label": b.to_string(), "coefficient": c.to_string()}))
            .collect()
    }
}

/// Element of the tensor square.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GenericTensor {
    terms: BTreeMap<(Basis, Basis), RatFunc>,
}

impl GenericTensor {
    pub fn terms(&self) -> &BTreeMap<(Basis, Basis), RatFunc> {
        &self.terms
    }

    fn add_term(&mut self, b: (Basis, Basis), c: RatFunc) {
        let e = self.terms.entry(b.clone()).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn to_json(&self) -> Value {
        self.terms
            .iter()
            .map(|((l, r), c)| {
                json!({"left": l.to_string(), "right": r.to_string(), "coefficient": c.to_string()})
            })
            .collect()
    }
}

type Structure = Vec<(DecompositionSequence, LaurentPoly)>;

/// Structure constants and automorphism polynomials for one weight sequence,
/// memoized.
pub struct GenericHall {
    w: WeightData,
    products: Mutex<HashMap<(DecompositionSequence, DecompositionSequence), Structure>>,
}

/// Both sides of the `Θ_x` pairing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPairing {
    pub bilinear: RatFunc,
    pub closed_form: RatFunc,
}

impl ThetaPairing {
    pub fn agrees(&self) -> bool {
        self.bilinear == self.closed_form
    }
}

impl GenericHall {
    pub fn new(w: WeightData) -> Result<Self> {
        w.require_domestic()?;
        Ok(GenericHall {
            w,
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    /// Reduce segment tops, drop trailing empty Segre entries; reject
    /// non-torsion input and segments outside a non-homogeneous tube.
    pub fn canonical(&self, a: &DecompositionSequence) -> Result<DecompositionSequence> {
        if !a.is_torsion() {
            return Err(HallError::NonTorsion(a.to_string()));
        }
        for s in a.nh.segments.segments() {
            match self.w.weights().get(s.tube.wrapping_sub(1)) {
                Some(&p) if p >= 2 => {}
                _ => return Err(HallError::UnknownLabel(format!("segment {} with weights {}", s, self.w.render_weights()))),
            }
        }
        Ok(DecompositionSequence::new(
            NhClass::torsion(a.nh.segments.reduce(self.w.weights())?),
            a.segre.trim(),
        ))
    }

    pub fn basis(&self, a: &DecompositionSequence) -> Result<GenericElement> {
        let mut e = GenericElement::zero();
        e.add_term(
            Basis {
                seq: self.canonical(a)?,
                k: self.w.k0_zero(),
            },
            RatFunc::one(),
        );
        Ok(e)
    }

    pub fn one(&self) -> GenericElement {
        self.basis(&DecompositionSequence::empty()).expect("empty sequence is torsion")
    }

    pub fn with_k(&self, a: &DecompositionSequence, k: &K0Class) -> Result<GenericElement> {
        let mut e = GenericElement::zero();
        e.add_term(
            Basis {
                seq: self.canonical(a)?,
                k: k.clone(),
            },
            RatFunc::one(),
        );
        Ok(e)
    }

    pub fn class(&self, a: &DecompositionSequence) -> Result<K0Class> {
        self.w.class_of_torsion(a)
    }

    pub fn euler(&self, a: &DecompositionSequence, b: &DecompositionSequence) -> Result<i64> {
        Ok(self.w.euler_form(&self.class(a)?, &self.class(b)?))
    }

    /// `a_α(T)`: product over tubes and points.
    pub fn aut_poly(&self, a: &DecompositionSequence) -> Result<IntPoly> {
        let a = self.canonical(a)?;
        let mut out = IntPoly::one();
        for t in a.nh.segments.tubes() {
            out = &out * &aut_poly_multisegment(self.w.weights()[t - 1], &a.nh.segments.restrict(t))?;
        }
        for e in a.segre.entries() {
            if !e.partition.is_empty() {
                out = &out * &aut_poly_partition(&e.partition)?.compose_power(e.degree);
            }
        }
        Ok(out)
    }

    fn aut_v(&self, a: &DecompositionSequence) -> Result<LaurentPoly> {
        Ok(substitute_t_v2(&self.aut_poly(a)?))
    }

    /// `u_α u_β` as `(γ, v^{⟨α,β⟩} φ^γ_{α,β}(v^2))` pairs.
    pub fn structure(&self, a: &DecompositionSequence, b: &DecompositionSequence) -> Result<Structure> {
        let a = self.canonical(a)?;
        let b = self.canonical(b)?;
        let key = (a.clone(), b.clone());
        if let Some(s) = self.products.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let shift = LaurentPoly::v_pow(self.euler(&a, &b)?);
        let cands = segre_candidates(&a, &b, self.w.weights())?;
        let found: Vec<Result<Option<(DecompositionSequence, LaurentPoly)>>> = cands
            .par_iter()
            .map(|g| {
                let phi = segre_hall(g, &a, &b, self.w.weights())?;
                if phi.poly.is_zero() {
                    return Ok(None);
                }
                if !phi.stabilized() {
                    return Err(HallError::Unstable(format!("φ^{}_{{{},{}}}", g, a, b)));
                }
                Ok(Some((self.canonical(g)?, &shift * &substitute_t_v2(&phi.poly))))
            })
            .collect();
        let mut out: BTreeMap<DecompositionSequence, LaurentPoly> = BTreeMap::new();
        for f in found {
            if let Some((g, c)) = f? {
                let e = out.entry(g).or_insert_with(LaurentPoly::zero);
                *e = &*e + &c;
            }
        }
        let out: Structure = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.products.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn multiply(&self, x: &GenericElement, y: &GenericElement) -> Result<GenericElement> {
        let mut out = GenericElement::zero();
        for (bx, cx) in &x.terms {
            for (by, cy) in &y.terms {
                let pass = self.w.symmetric_form(&bx.k, &self.class(&by.seq)?);
                let coeff = &(cx * cy) * &RatFunc::from_laurent(LaurentPoly::v_pow(pass));
                let k = bx.k.add(&by.k);
                for (g, c) in self.structure(&bx.seq, &by.seq)? {
                    out.add_term(Basis { seq: g, k: k.clone() }, &coeff * &RatFunc::from_laurent(c));
                }
            }
        }
        Ok(out)
    }

    /// Pairs `(α, β)` of sequences on the support of `γ` whose dimension data
    /// add up to that of `γ`.
    fn splits(&self, g: &DecompositionSequence) -> Vec<(DecompositionSequence, DecompositionSequence)> {
        let mut acc: Vec<(Vec<Segment>, Vec<SegreEntry>, Vec<Segment>, Vec<SegreEntry>)> =
            vec![(Vec::new(), Vec::new(), Vec::new(), Vec::new())];
        for t in g.nh.segments.tubes() {
            let p = self.w.weights()[t - 1];
            let mut total = vec![0usize; p];
            for s in g.nh.segments.restrict(t).segments() {
                for (x, y) in total.iter_mut().zip(segment_dims(p, s.top, s.len)) {
                    *x += y;
                }
            }
            let mut options = Vec::new();
            for d1 in sub_vectors(&total) {
                let d2: Vec<usize> = total.iter().zip(&d1).map(|(a, b)| a - b).collect();
                for m1 in multisegments_with_dims(p, &d1) {
                    for m2 in multisegments_with_dims(p, &d2) {
                        let lift = |m: &[(usize, usize)]| -> Vec<Segment> {
                            m.iter().map(|&(top, len)| Segment { tube: t, top, len }).collect()
                        };
                        options.push((lift(&m1), lift(&m2)));
                    }
                }
            }
            acc = acc
                .into_iter()
                .flat_map(|(s1, e1, s2, e2)| {
                    options.iter().map(move |(o1, o2)| {
                        let mut a = s1.clone();
                        a.extend(o1.iter().copied());
                        let mut b = s2.clone();
                        b.extend(o2.iter().copied());
                        (a, e1.clone(), b, e2.clone())
                    })
                })
                .collect();
        }
        for e in g.segre.entries() {
            let n = e.partition.size();
            let mut options = Vec::new();
            for k in 0..=n {
                for l1 in Partition::all(k) {
                    for l2 in Partition::all(n - k) {
                        options.push((l1.clone(), l2));
                    }
                }
            }
            let d = e.degree;
            acc = acc
                .into_iter()
                .flat_map(|(s1, e1, s2, e2)| {
                    options.iter().map(move |(l1, l2)| {
                        let mut a = e1.clone();
                        a.push(SegreEntry { partition: l1.clone(), degree: d });
                        let mut b = e2.clone();
                        b.push(SegreEntry { partition: l2.clone(), degree: d });
                        (s1.clone(), a, s2.clone(), b)
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|(s1, e1, s2, e2)| {
                let mk = |s: Vec<Segment>, e: Vec<SegreEntry>| {
                    DecompositionSequence::new(
                        NhClass::torsion(Multisegment::new(s)),
                        SegreSequence::new(e).expect("valid entries").trim(),
                    )
                };
                (mk(s1, e1), mk(s2, e2))
            })
            .collect()
    }

    /// `Δ(u_γ K_a) = Σ v^{⟨α,β⟩} φ^γ_{α,β} (a_α a_β / a_γ) u_α K_{β+a} ⊗ u_β K_a`.
    pub fn comultiply(&self, g: &DecompositionSequence, k: &K0Class) -> Result<GenericTensor> {
        let g = self.canonical(g)?;
        let ag = self.aut_v(&g)?;
        let mut out = GenericTensor::default();
        let splits = self.splits(&g);
        let found: Vec<Result<Option<((Basis, Basis), RatFunc)>>> = splits
            .par_iter()
            .map(|(a, b)| {
                let phi = segre_hall(&g, a, b, self.w.weights())?;
                if phi.poly.is_zero() {
                    return Ok(None);
                }
                if !phi.stabilized() {
                    return Err(HallError::Unstable(format!("φ^{}_{{{},{}}}", g, a, b)));
                }
                let num = &(&LaurentPoly::v_pow(self.euler(a, b)?) * &substitute_t_v2(&phi.poly))
                    * &(&self.aut_v(a)? * &self.aut_v(b)?);
                let left = Basis {
                    seq: a.clone(),
                    k: self.class(b)?.add(k),
                };
                let right = Basis {
                    seq: b.clone(),
                    k: k.clone(),
                };
                Ok(Some(((left, right), RatFunc::new(num, ag.clone()))))
            })
            .collect();
        for f in found {
            if let Some((b, c)) = f? {
                out.add_term(b, c);
            }
        }
        Ok(out)
    }

    /// `{u_α K_a, u_β K_b} = v^{(a,b)} δ_{α,β} / a_α`.
    pub fn pair_basis(&self, x: &Basis, y: &Basis) -> Result<RatFunc> {
        if x.seq != y.seq {
            return Ok(RatFunc::zero());
        }
        let v = LaurentPoly::v_pow(self.w.symmetric_form(&x.k, &y.k));
        Ok(RatFunc::new(v, self.aut_v(&x.seq)?))
    }

    pub fn pair(&self, x: &GenericElement, y: &GenericElement) -> Result<RatFunc> {
        let mut acc = RatFunc::zero();
        for (bx, cx) in &x.terms {
            for (by, cy) in &y.terms {
                let p = self.pair_basis(bx, by)?;
                if !p.is_zero() {
                    acc = &acc + &(&(cx * cy) * &p);
                }
            }
        }
        Ok(acc)
    }

    pub fn pair_tensor(&self, x: &GenericTensor, y: &GenericTensor) -> Result<RatFunc> {
        let mut acc = RatFunc::zero();
        for ((x1, x2), cx) in &x.terms {
            for ((y1, y2), cy) in &y.terms {
                let p1 = self.pair_basis(x1, y1)?;
                if p1.is_zero() {
                    continue;
                }
                let p2 = self.pair_basis(x2, y2)?;
                acc = &acc + &(&(cx * cy) * &(&p1 * &p2));
            }
        }
        Ok(acc)
    }

    pub fn tensor(&self, x: &GenericElement, y: &GenericElement) -> GenericTensor {
        let mut out = GenericTensor::default();
        for (bx, cx) in &x.terms {
            for (by, cy) in &y.terms {
                out.add_term((bx.clone(), by.clone()), cx * cy);
            }
        }
        out
    }

    pub fn comultiply_element(&self, x: &GenericElement) -> Result<GenericTensor> {
        let mut out = GenericTensor::default();
        for (b, c) in &x.terms {
            for (pair, d) in self.comultiply(&b.seq, &b.k)?.terms {
                out.add_term(pair, c * &d);
            }
        }
        Ok(out)
    }

    /// `{u_α, Θ_x}` computed from the expansion of `Θ_x` and from the closed
    /// form `v^{(α,α)+l+m} / a_α Π (1 - v^{-2 d_s}) Π (1 - v^{-2})`.
    pub fn theta_pairing_values(&self, a: &DecompositionSequence, x: &LElement) -> Result<ThetaPairing> {
        let a = self.canonical(a)?;
        let theta = theta_expand(&self.w, x, ThetaMode::Generic)?;
        let target = a.normalize();
        let own = Basis {
            seq: a.clone(),
            k: self.w.k0_zero(),
        };
        let mut bilinear = RatFunc::zero();
        for t in &theta.terms {
            // exactly one member of the family sits at the points of u_α
            if t.label == target {
                bilinear = &bilinear + &(&RatFunc::from_laurent(t.coefficient.clone()) * &self.pair_basis(&own, &own)?);
            }
        }
        let closed_form = if self.occurs_in_theta(&a, x)? {
            let cls = self.class(&a)?;
            let aa = self.w.symmetric_form(&cls, &cls);
            let mut num = LaurentPoly::v_pow(aa + x.l() + x.support_count() as i64);
            for e in a.segre.entries() {
                if !e.partition.is_empty() {
                    num = &num * &(&LaurentPoly::one() - &LaurentPoly::v_pow(-2 * e.degree as i64));
                }
            }
            for _ in a.nh.segments.segments() {
                num = &num * &(&LaurentPoly::one() - &LaurentPoly::v_pow(-2));
            }
            RatFunc::new(num, self.aut_v(&a)?)
        } else {
            RatFunc::zero()
        };
        Ok(ThetaPairing { bilinear, closed_form })
    }

    /// `[S(α)]` has the shape of a `Θ_x` term: `det α = x`, one row per
    /// point, and at most one segment per tube, with top `0`.
    fn occurs_in_theta(&self, a: &DecompositionSequence, x: &LElement) -> Result<bool> {
        let rows_ok = a.segre.entries().iter().all(|e| e.partition.len() <= 1);
        let segs = a.nh.segments.segments();
        let tubes_ok = segs.iter().all(|s| s.top == 0) && a.nh.segments.tubes().len() == segs.len();
        Ok(rows_ok && tubes_ok && self.w.det(&self.class(a)?) == *x)
    }

    /// The check with disagreement as a hard error.
    pub fn theta_pairing_check(&self, a: &DecompositionSequence, x: &LElement) -> Result<ThetaPairing> {
        let r = self.theta_pairing_values(a, x)?;
        if !r.agrees() {
            return Err(HallError::Disagreement(format!(
                "{{u_α, Θ_x}} for α = {}, x = {}: expansion gives {}, closed form gives {}",
                a, x, r.bilinear, r.closed_form
            )));
        }
        Ok(r)
    }

    /// All canonical torsion sequences of total degree `n` supported on the
    /// non-homogeneous tubes and on the given homogeneous slots (degrees,
    /// positional).
    pub fn torsion_classes(&self, n: usize, slots: &[usize]) -> Vec<DecompositionSequence> {
        let mut tube_opts: Vec<Vec<(usize, Vec<Segment>)>> = Vec::new();
        for (i, &p) in self.w.weights().iter().enumerate() {
            if p < 2 {
                continue;
            }
            let mut opts = Vec::new();
            for total in 0..=n {
                for d in vectors_with_sum(p, total) {
                    for m in multisegments_with_dims(p, &d) {
                        opts.push((total, m.into_iter().map(|(top, len)| Segment { tube: i + 1, top, len }).collect()));
                    }
                }
            }
            tube_opts.push(opts);
        }
        let mut acc: Vec<(usize, Vec<Segment>, Vec<SegreEntry>)> = vec![(0, Vec::new(), Vec::new())];
        for opts in tube_opts {
            acc = acc
                .into_iter()
                .flat_map(|(used, s, e)| {
                    opts.iter().filter(move |(k, _)| used + k <= n).map(move |(k, o)| {
                        let mut s2 = s.clone();
                        s2.extend(o.iter().copied());
                        (used + k, s2, e.clone())
                    })
                })
                .collect();
        }
        for &d in slots {
            acc = acc
                .into_iter()
                .flat_map(|(used, s, e)| {
                    let room = (n - used) / d;
                    (0..=room).flat_map(move |k| {
                        let s = s.clone();
                        let e = e.clone();
                        Partition::all(k).into_iter().map(move |lam| {
                            let mut e2 = e.clone();
                            e2.push(SegreEntry { partition: lam, degree: d });
                            (used + k * d, s.clone(), e2)
                        })
                    })
                })
                .collect();
        }
        let mut out: Vec<DecompositionSequence> = acc
            .into_iter()
            .filter(|(used, _, _)| *used == n)
            .map(|(_, s, e)| {
                DecompositionSequence::new(
                    NhClass::torsion(Multisegment::new(s)),
                    SegreSequence::new(e).expect("valid entries").trim(),
                )
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn sub_vectors(v: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in v {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=x).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn vectors_with_sum(len: usize, total: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in vectors_with_sum(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> WeightData {
        WeightData::new(v.to_vec()).unwrap()
    }

    fn homog(pairs: &[(&[usize], usize)]) -> DecompositionSequence {
        DecompositionSequence::homogeneous(SegreSequence::from_pairs(pairs).unwrap())
    }

    fn seg(tube: usize, parts: &[(usize, usize)]) -> DecompositionSequence {
        DecompositionSequence::from_segments(Multisegment::in_tube(tube, parts))
    }

    fn lp(pairs: &[(i64, i64)]) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::from_pairs(pairs))
    }

    #[test]
    fn identity_and_square_of_a_point() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let a = h.basis(&homog(&[(&[1], 1)])).unwrap();
        assert_eq!(h.multiply(&a, &h.one()).unwrap(), a);
        assert_eq!(h.multiply(&h.one(), &a).unwrap(), a);
        let sq = h.multiply(&a, &a).unwrap();
        let mut expect = h.basis(&homog(&[(&[2], 1)])).unwrap();
        expect = expect.add(&{
            let mut e = GenericElement::zero();
            e.add_term(
                Basis {
                    seq: homog(&[(&[1, 1], 1)]),
                    k: h.weights().k0_zero(),
                },
                lp(&[(2, 1), (0, 1)]),
            );
            e
        });
        assert_eq!(sq, expect);
    }

    #[test]
    fn exceptional_simples_multiply() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let a = seg(1, &[(0, 1)]);
        let b = seg(1, &[(1, 1)]);
        let e = h.euler(&a, &b).unwrap();
        let prod = h.multiply(&h.basis(&a).unwrap(), &h.basis(&b).unwrap()).unwrap();
        let labels: Vec<String> = prod.terms().keys().map(|k| k.seq.to_string()).collect();
        assert_eq!(prod.terms().len(), 2, "{:?}", labels);
        for (bas, c) in prod.terms() {
            assert_eq!(*c, RatFunc::from_laurent(LaurentPoly::v_pow(e)));
            assert!(bas.seq == seg(1, &[(0, 2)]) || bas.seq == seg(1, &[(0, 1), (1, 1)]));
        }
    }

    #[test]
    fn comultiplication_examples() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let z = h.weights().k0_zero();
        let d1 = h.comultiply(&homog(&[(&[1], 1)]), &z).unwrap();
        assert_eq!(d1.terms().len(), 2);
        assert!(d1.terms().values().all(|c| *c == RatFunc::one()));
        let d2 = h.comultiply(&homog(&[(&[2], 1)]), &z).unwrap();
        let mid = d2
            .terms()
            .iter()
            .find(|((l, r), _)| l.seq == homog(&[(&[1], 1)]) && r.seq == homog(&[(&[1], 1)]))
            .unwrap()
            .1;
        // (v^2 - 1) / v^2
        assert_eq!(*mid, lp(&[(0, 1), (-2, -1)]));
        let d0 = h.comultiply(&DecompositionSequence::empty(), &z).unwrap();
        assert_eq!(d0.terms().len(), 1);
    }

    #[test]
    fn pairing_examples() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let a = h.basis(&homog(&[(&[1], 1)])).unwrap();
        let p = h.pair(&a, &a).unwrap();
        assert_eq!(p, RatFunc::new(LaurentPoly::one(), LaurentPoly::from_pairs(&[(2, 1), (0, -1)])));
        let b = h.basis(&homog(&[(&[2], 1)])).unwrap();
        assert!(h.pair(&a, &b).unwrap().is_zero());
        let dk = h.weights().delta_class();
        let ak = h.with_k(&homog(&[(&[1], 1)]), &dk).unwrap();
        assert_eq!(h.pair(&ak, &ak).unwrap(), p);
    }

    #[test]
    fn hopf_pairing_small() {
        let h = GenericHall::new(w(&[2, 2])).unwrap();
        let classes = [seg(1, &[(0, 1)]), seg(1, &[(1, 1)]), homog(&[(&[1], 1)])];
        for a in &classes {
            for b in &classes {
                let ab = h.multiply(&h.basis(a).unwrap(), &h.basis(b).unwrap()).unwrap();
                for g in ab.terms().keys() {
                    let c = h.basis(&g.seq).unwrap();
                    let lhs = h.pair(&ab, &c).unwrap();
                    let t = h.tensor(&h.basis(a).unwrap(), &h.basis(b).unwrap());
                    let rhs = h.pair_tensor(&t, &h.comultiply_element(&c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{} {} {}", a, b, g.seq);
                }
            }
        }
    }

    #[test]
    fn theta_pairing_homogeneous_agrees() {
        let t = GenericHall::new(WeightData::trivial()).unwrap();
        let c = t.weights().c();
        let r = t.theta_pairing_check(&homog(&[(&[1], 1)]), &c).unwrap();
        assert!(!r.bilinear.is_zero());
        let r2 = t.theta_pairing_check(&homog(&[(&[1, 1], 1)]), &t.weights().multiple_of_c(2)).unwrap();
        assert!(r2.bilinear.is_zero() && r2.closed_form.is_zero());
        let r3 = t.theta_pairing_check(&homog(&[(&[1], 1)]), &t.weights().multiple_of_c(2)).unwrap();
        assert!(r3.bilinear.is_zero());
    }

    #[test]
    fn theta_pairing_closed_form_carries_an_extra_power() {
        // (α, α) = 2 for an exceptional simple of a rank-2 tube
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let x1 = h.weights().x(1).unwrap();
        let r = h.theta_pairing_values(&seg(1, &[(0, 1)]), &x1).unwrap();
        assert!(!r.agrees());
        assert_eq!(r.closed_form, &r.bilinear * &RatFunc::from_laurent(LaurentPoly::v_pow(2)));
        assert!(h.theta_pairing_check(&seg(1, &[(0, 1)]), &x1).is_err());
    }

    #[test]
    fn non_torsion_rejected() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        let mut a = DecompositionSequence::empty();
        a.nh.quiver.push(crate::combinat::QuiverSummand::Prep(0));
        assert!(matches!(h.basis(&a), Err(HallError::NonTorsion(_))));
    }

    #[test]
    fn torsion_class_counts() {
        let h = GenericHall::new(w(&[2, 2, 2])).unwrap();
        // six exceptional simples plus one simple per homogeneous slot
        assert_eq!(h.torsion_classes(1, &[1, 1]).len(), 8);
    }
}

#[cfg(test)]
mod laws {
    use super::*;
    use crate::cyclichall::{classical_count, cyclic_count};
    use crate::polyarith::rat;

    fn tube_one(m: &[(usize, usize)]) -> DecompositionSequence {
        DecompositionSequence::from_segments(Multisegment::in_tube(1, m))
    }

    fn pairs(g: &DecompositionSequence) -> Vec<(usize, usize)> {
        g.nh.segments.restrict(1).segments().iter().map(|s| (s.top, s.len)).collect()
    }

    /// `φ(T)` from a structure constant `v^{⟨α,β⟩} φ(v^2)`.
    fn untwist(h: &GenericHall, a: &DecompositionSequence, b: &DecompositionSequence, c: &LaurentPoly) -> IntPoly {
        c.shift(-h.euler(a, b).unwrap()).to_t_poly().expect("even powers only")
    }

    #[test]
    fn structure_constants_specialize_to_hall_numbers_in_a_tube() {
        let h = GenericHall::new(WeightData::new(vec![2, 2, 2]).unwrap()).unwrap();
        let mut classes = Vec::new();
        for d0 in 0..=3usize {
            for d1 in 0..=3 - d0 {
                classes.extend(multisegments_with_dims(2, &[d0, d1]));
            }
        }
        for a in &classes {
            for b in &classes {
                let (sa, sb) = (tube_one(a), tube_one(b));
                let dims: Vec<usize> = [a, b]
                    .iter()
                    .flat_map(|m| m.iter().map(|s| s.1))
                    .collect();
                if dims.iter().sum::<usize>() > 3 || a.is_empty() || b.is_empty() {
                    continue;
                }
                let found: BTreeMap<Vec<(usize, usize)>, IntPoly> = h
                    .structure(&sa, &sb)
                    .unwrap()
                    .iter()
                    .map(|(g, c)| (pairs(g), untwist(&h, &sa, &sb, c)))
                    .collect();
                let mut total = vec![0usize; 2];
                for m in [a, b] {
                    for &(top, len) in m.iter() {
                        for (x, y) in total.iter_mut().zip(segment_dims(2, top, len)) {
                            *x += y;
                        }
                    }
                }
                for g in multisegments_with_dims(2, &total) {
                    for q in [2u64, 3, 5] {
                        let brute = cyclic_count(2, &g, a, b, q).unwrap();
                        let poly = found.get(&g).map(|p| p.eval_int(q as i64)).unwrap_or_else(|| rat(0));
                        assert_eq!(poly, rat(brute as i64), "{:?} * {:?} -> {:?} at q={q}", a, b, g);
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constants_specialize_to_hall_numbers_at_a_point() {
        let h = GenericHall::new(WeightData::trivial()).unwrap();
        let at = |p: &Partition| {
            DecompositionSequence::homogeneous(SegreSequence::new(vec![SegreEntry { partition: p.clone(), degree: 1 }]).unwrap())
        };
        for n in 2..=3 {
            for k in 1..n {
                for mu in Partition::all(k) {
                    for nu in Partition::all(n - k) {
                        let s = h.structure(&at(&mu), &at(&nu)).unwrap();
                        for lambda in Partition::all(n) {
                            let c = s.iter().find(|(g, _)| *g == h.canonical(&at(&lambda)).unwrap());
                            let poly = c.map(|(_, c)| untwist(&h, &at(&mu), &at(&nu), c)).unwrap_or_else(IntPoly::zero);
                            for q in [2u64, 3, 5] {
                                let brute = classical_count(&lambda, &mu, &nu, q).unwrap();
                                assert_eq!(poly.eval_int(q as i64), rat(brute as i64), "{:?} {:?} {:?} q={q}", lambda, mu, nu);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        let h = GenericHall::new(WeightData::new(vec![2, 2, 2]).unwrap()).unwrap();
        for n in 1..=3 {
            let classes = h.torsion_classes(n, &[1, 1]);
            for a in &classes {
                for b in &classes {
                    let p = h.pair(&h.basis(a).unwrap(), &h.basis(b).unwrap()).unwrap();
                    if a == b {
                        let expect = RatFunc::new(LaurentPoly::one(), h.aut_v(a).unwrap());
                        assert_eq!(p, expect, "{}", a);
                        assert!(!p.is_zero());
                    } else {
                        assert!(p.is_zero(), "{} {}", a, b);
                    }
                }
            }
        }
    }
}
