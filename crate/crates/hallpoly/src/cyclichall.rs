//! Hall polynomials for nilpotent representations of cyclic quivers, the
//! Jordan-quiver (classical) case, automorphism polynomials, and the product
//! formula for torsion decomposition sequences.
//!
//! Every polynomial here is computed the same way: exact brute-force counts
//! over a schedule of prime fields, then interpolation with held-out
//! verification (see [`crate::polyarith::interpolate`]).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinat::{common_type, n_stat, DecompositionSequence, Multisegment, Partition, Segment};
use crate::error::{HallError, Result};
use crate::exactfield::make_field;
use crate::polyarith::{interpolate, rat, IntPoly, InterpolationReport, Rational};
use crate::quiverrep::cyclic::{cyclic_label, jordan_module, jordan_type, multisegment_module, segment_dims};
use crate::quiverrep::{aut_from_label_big, end_dim, quotient_rep, sub_rep, tally_subreps, Indec, IsoLabel, Quiver};

/// Sample fields, in order. The first six suffice for low degrees; later
/// primes are used only when the degree requires more points.
pub const SAMPLE_PRIMES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// A polynomial together with the interpolation evidence behind it. A
/// product of several interpolated factors carries one report per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallPolynomial {
    pub poly: IntPoly,
    pub reports: Vec<InterpolationReport>,
}

impl HallPolynomial {
    pub fn zero() -> Self {
        HallPolynomial {
            poly: IntPoly::zero(),
            reports: Vec::new(),
        }
    }

    pub fn one() -> Self {
        HallPolynomial {
            poly: IntPoly::one(),
            reports: Vec::new(),
        }
    }

    pub fn stabilized(&self) -> bool {
        self.reports.iter().all(|r| r.stabilized)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "polynomial": self.poly.to_string(),
            "stabilized": self.stabilized(),
        });
        match self.reports.as_slice() {
            [r] => {
                let j = r.to_json();
                v["samples"] = j["samples"].clone();
                v["held_out"] = j["held_out"].clone();
                v["deviations"] = j["deviations"].clone();
            }
            rs => {
                v["samples"] = json!([]);
                v["held_out"] = json!([]);
                v["factors"] = rs.iter().map(|r| r.to_json()).collect();
            }
        }
        v
    }

    fn times(mut self, other: HallPolynomial) -> HallPolynomial {
        self.poly = &self.poly * &other.poly;
        self.reports.extend(other.reports);
        self
    }
}

/// Sample `count(q)` over [`SAMPLE_PRIMES`] until the fit stabilizes or
/// `max_degree + 4` samples have been taken. `count` may return `None` to
/// skip a field that cannot host the configuration.
pub fn interpolate_counts<F>(hint: Option<usize>, max_degree: usize, count: F) -> Result<InterpolationReport>
where
    F: Fn(u64) -> Result<Option<Rational>> + Sync,
{
    let max_samples = max_degree.max(hint.unwrap_or(0)) + 4;
    let mut need = hint.map_or(4, |h| h + 4).min(max_samples);
    let mut samples: Vec<(i64, Rational)> = Vec::new();
    let mut next = 0;
    loop {
        while samples.len() < need {
            if next >= SAMPLE_PRIMES.len() {
                return match samples.len() {
                    0 | 1 => Err(HallError::TooFewSamples { needed: need, got: samples.len() }),
                    _ => interpolate(&samples, hint),
                };
            }
            let take = (need - samples.len()).min(SAMPLE_PRIMES.len() - next);
            let batch: Vec<u64> = SAMPLE_PRIMES[next..next + take].to_vec();
            next += take;
            let values: Vec<Result<Option<Rational>>> = batch.par_iter().map(|&q| count(q)).collect();
            for (q, v) in batch.into_iter().zip(values) {
                if let Some(v) = v? {
                    samples.push((q as i64, v));
                }
            }
        }
        let report = interpolate(&samples, hint)?;
        if report.stabilized || samples.len() >= max_samples {
            return Ok(report);
        }
        need += 1;
    }
}

type Tally = Arc<HashMap<(IsoLabel, IsoLabel), u64>>;

fn tally_cache() -> &'static Mutex<HashMap<(usize, Vec<(usize, usize)>, u64, Vec<usize>), Tally>> {
    static C: OnceLock<Mutex<HashMap<(usize, Vec<(usize, usize)>, u64, Vec<usize>), Tally>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(quotient label, sub label) -> count` over subrepresentations of
/// dimension `e` of the nilpotent module with the given segments.
fn cyclic_tally(n: usize, segments: &[(usize, usize)], q: u64, e: &[usize]) -> Result<Tally> {
    let mut segs = segments.to_vec();
    segs.sort();
    let key = (n, segs.clone(), q, e.to_vec());
    if let Some(t) = tally_cache().lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let field = make_field(q, 1)?;
    let z = multisegment_module(&field, n, &segs);
    let tally = tally_subreps(&z, Some(e), |u| {
        let quo = cyclic_label(&quotient_rep(&z, u)).ok()?;
        let sub = cyclic_label(&sub_rep(&z, u)).ok()?;
        Some((quo, sub))
    });
    let t = Arc::new(tally);
    tally_cache().lock().unwrap().insert(key, t.clone());
    Ok(t)
}

fn segment_label(segments: &[(usize, usize)]) -> IsoLabel {
    let mut m = BTreeMap::new();
    for &(top, len) in segments {
        *m.entry(Indec::Segment { top, len }).or_insert(0) += 1;
    }
    IsoLabel::new(m)
}

fn dims_of(n: usize, segments: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(top, len) in segments {
        for (a, b) in d.iter_mut().zip(segment_dims(n, top, len)) {
            *a += b;
        }
    }
    d
}

fn grassmann_bound(d: &[usize], e: &[usize]) -> usize {
    d.iter().zip(e).map(|(a, b)| b * (a - b)).sum()
}

/// Brute-force `F^γ_{α,β}` over `F_q` for segments `(top, len)` on the
/// cycle of length `n`.
pub fn cyclic_count(n: usize, gamma: &[(usize, usize)], alpha: &[(usize, usize)], beta: &[(usize, usize)], q: u64) -> Result<u64> {
    let (dg, da, db) = (dims_of(n, gamma), dims_of(n, alpha), dims_of(n, beta));
    if dg.iter().zip(da.iter().zip(&db)).any(|(g, (a, b))| *g != a + b) {
        return Ok(0);
    }
    let t = cyclic_tally(n, gamma, q, &db)?;
    Ok(t.get(&(segment_label(alpha), segment_label(beta))).copied().unwrap_or(0))
}

fn reduce(n: usize, m: &Multisegment) -> Vec<(usize, usize)> {
    m.segments().iter().map(|s| (s.top % n, s.len)).collect()
}

/// `φ^γ_{α,β}(T)` for nilpotent representations of the cyclic quiver with
/// `n` vertices (tube indices of the segments are ignored).
pub fn cyclic_hall(n: usize, gamma: &Multisegment, alpha: &Multisegment, beta: &Multisegment) -> Result<HallPolynomial> {
    if n == 0 {
        return Err(HallError::Dimension("cycle length must be positive".into()));
    }
    let (g, a, b) = (reduce(n, gamma), reduce(n, alpha), reduce(n, beta));
    let (dg, da, db) = (dims_of(n, &g), dims_of(n, &a), dims_of(n, &b));
    if dg.iter().zip(da.iter().zip(&db)).any(|(x, (y, z))| *x != y + z) {
        return Ok(HallPolynomial::zero());
    }
    let bound = grassmann_bound(&dg, &db);
    let report = interpolate_counts(None, bound, |q| Ok(Some(rat(cyclic_count(n, &g, &a, &b, q)? as i64))))?;
    Ok(HallPolynomial {
        poly: report.poly.clone(),
        reports: vec![report],
    })
}

/// Brute-force classical Hall number: subgroups of type `ν` with quotient
/// of type `μ` in the `F_q[t]`-module of type `λ`.
pub fn classical_count(lambda: &Partition, mu: &Partition, nu: &Partition, q: u64) -> Result<u64> {
    if lambda.size() != mu.size() + nu.size() {
        return Ok(0);
    }
    let seg = |p: &Partition| -> Vec<(usize, usize)> { p.parts().iter().map(|&l| (0, l)).collect() };
    cyclic_count(1, &seg(lambda), &seg(mu), &seg(nu), q)
}

/// Classical Hall polynomial `g^λ_{μν}(T)` (quotient type `μ`, sub type `ν`).
pub fn classical_hall(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<HallPolynomial> {
    if lambda.size() != mu.size() + nu.size() {
        return Ok(HallPolynomial::zero());
    }
    let diff = n_stat(lambda) as i64 - n_stat(mu) as i64 - n_stat(nu) as i64;
    let hint = (diff >= 0).then_some(diff as usize);
    let bound = nu.size() * mu.size();
    let report = interpolate_counts(hint, bound, |q| Ok(Some(rat(classical_count(lambda, mu, nu, q)? as i64))))?;
    Ok(HallPolynomial {
        poly: report.poly.clone(),
        reports: vec![report],
    })
}

fn aut_cache() -> &'static Mutex<HashMap<(usize, IsoLabel), IntPoly>> {
    static C: OnceLock<Mutex<HashMap<(usize, IsoLabel), IntPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `a_α(T)` for a nilpotent module on the cycle of length `n`, given by its
/// label: `dim End` is computed once, `|Aut|` sampled at `dim End + 4`
/// primes, and the interpolant must stabilize and be monic.
pub fn aut_poly_label(n: usize, label: &IsoLabel) -> Result<IntPoly> {
    let key = (n, label.clone());
    if let Some(p) = aut_cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let field = make_field(2, 1)?;
    let rep = label.build(&Quiver::cyclic(n), &field)?;
    let dim_end = end_dim(&rep);
    let report = interpolate_counts(Some(dim_end), dim_end, |q| {
        let a: BigInt = aut_from_label_big(label, q, dim_end);
        Ok(Some(Rational::from_integer(a)))
    })?;
    if !report.stabilized || !report.integral {
        return Err(HallError::Unstable(format!("automorphism polynomial of {}", label.render(&field))));
    }
    if !report.poly.is_monic() || report.poly.degree() != Some(dim_end) {
        return Err(HallError::NonMonic(report.poly.to_string()));
    }
    aut_cache().lock().unwrap().insert(key, report.poly.clone());
    Ok(report.poly)
}

/// `a_λ(T)`: automorphisms of the module of type `λ` over `F_q[t]`.
pub fn aut_poly_partition(lambda: &Partition) -> Result<IntPoly> {
    let segs: Vec<(usize, usize)> = lambda.parts().iter().map(|&l| (0, l)).collect();
    aut_poly_label(1, &segment_label(&segs))
}

/// `a_α(T)` for a multisegment in a tube of rank `n`.
pub fn aut_poly_multisegment(n: usize, m: &Multisegment) -> Result<IntPoly> {
    aut_poly_label(n, &segment_label(&reduce(n, m)))
}

fn check_torsion(a: &DecompositionSequence) -> Result<()> {
    if !a.is_torsion() {
        return Err(HallError::NonTorsion(a.to_string()));
    }
    Ok(())
}

fn check_tubes(a: &DecompositionSequence, weights: &[usize]) -> Result<()> {
    for s in a.nh.segments.segments() {
        match weights.get(s.tube.wrapping_sub(1)) {
            Some(&p) if p >= 2 => {}
            _ => return Err(HallError::UnknownLabel(format!("segment {} has no non-homogeneous tube", s))),
        }
    }
    Ok(())
}

/// `φ^γ_{α,β}(T) = φ_nh(T) Π_i g^{ν(i)}_{λ(i),μ(i)}(T^{d_i})` for torsion
/// decomposition sequences, aligned positionally by [`common_type`].
pub fn segre_hall(
    gamma: &DecompositionSequence,
    alpha: &DecompositionSequence,
    beta: &DecompositionSequence,
    weights: &[usize],
) -> Result<HallPolynomial> {
    for s in [gamma, alpha, beta] {
        check_torsion(s)?;
        check_tubes(s, weights)?;
    }
    if gamma.total_degree() != alpha.total_degree() + beta.total_degree() {
        return Ok(HallPolynomial::zero());
    }
    let (_, padded) = common_type(&[gamma.clone(), alpha.clone(), beta.clone()]);
    let (g, a, b) = (&padded[0], &padded[1], &padded[2]);
    let mut result = HallPolynomial::one();
    for (i, &p) in weights.iter().enumerate() {
        let tube = i + 1;
        let (gt, at, bt) = (
            g.nh.segments.restrict(tube),
            a.nh.segments.restrict(tube),
            b.nh.segments.restrict(tube),
        );
        if gt.is_empty() && at.is_empty() && bt.is_empty() {
            continue;
        }
        let factor = cyclic_hall(p, &gt, &at, &bt)?;
        if factor.poly.is_zero() {
            return Ok(HallPolynomial::zero());
        }
        result = result.times(factor);
    }
    for ((eg, ea), eb) in g.segre.entries().iter().zip(a.segre.entries()).zip(b.segre.entries()) {
        if eg.partition.is_empty() && ea.partition.is_empty() && eb.partition.is_empty() {
            continue;
        }
        let mut factor = classical_hall(&eg.partition, &ea.partition, &eb.partition)?;
        if factor.poly.is_zero() {
            return Ok(HallPolynomial::zero());
        }
        factor.poly = factor.poly.compose_power(eg.degree);
        result = result.times(factor);
    }
    Ok(result)
}

/// All multisegments on the cycle of length `n` with dimension vector `d`.
pub fn multisegments_with_dims(n: usize, d: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let total: usize = d.iter().sum();
    let mut segs = Vec::new();
    for top in 0..n {
        for len in 1..=total {
            let sd = segment_dims(n, top, len);
            if sd.iter().zip(d).all(|(a, b)| a <= b) {
                segs.push(((top, len), sd));
            }
        }
    }
    let mut out = Vec::new();
    fn rec(
        segs: &[((usize, usize), Vec<usize>)],
        i: usize,
        rest: Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if i == segs.len() {
            return;
        }
        rec(segs, i + 1, rest.clone(), cur, out);
        let (s, sd) = &segs[i];
        let mut r = rest;
        let mut pushed = 0;
        while sd.iter().zip(&r).all(|(a, b)| a <= b) {
            for (x, y) in r.iter_mut().zip(sd) {
                *x -= y;
            }
            cur.push(*s);
            pushed += 1;
            rec(segs, i + 1, r.clone(), cur, out);
        }
        cur.truncate(cur.len() - pushed);
    }
    rec(&segs, 0, d.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Candidate middle terms `γ` for a product of torsion classes `α, β`
/// (positionally aligned): per tube every multisegment of the right
/// dimension vector, per point every partition of the right size. Finite
/// by construction.
pub fn segre_candidates(
    alpha: &DecompositionSequence,
    beta: &DecompositionSequence,
    weights: &[usize],
) -> Result<Vec<DecompositionSequence>> {
    check_torsion(alpha)?;
    check_torsion(beta)?;
    let (_, padded) = common_type(&[alpha.clone(), beta.clone()]);
    let (a, b) = (&padded[0], &padded[1]);
    let mut tube_choices: Vec<Vec<Vec<Segment>>> = Vec::new();
    for (i, &p) in weights.iter().enumerate() {
        let tube = i + 1;
        let mut d = dims_of(p, &reduce(p, &a.nh.segments.restrict(tube)));
        for (x, y) in d.iter_mut().zip(dims_of(p, &reduce(p, &b.nh.segments.restrict(tube)))) {
            *x += y;
        }
        let opts = multisegments_with_dims(p, &d)
            .into_iter()
            .map(|segs| segs.into_iter().map(|(top, len)| Segment { tube, top, len }).collect())
            .collect();
        tube_choices.push(opts);
    }
    let point_choices: Vec<(usize, Vec<Partition>)> = a
        .segre
        .entries()
        .iter()
        .zip(b.segre.entries())
        .map(|(x, y)| (x.degree, Partition::all(x.partition.size() + y.partition.size())))
        .collect();
    let mut out = vec![(Vec::<Segment>::new(), Vec::<crate::combinat::SegreEntry>::new())];
    for opts in tube_choices {
        out = out
            .into_iter()
            .flat_map(|(segs, ent)| {
                opts.iter().map(move |o| {
                    let mut s = segs.clone();
                    s.extend(o.iter().copied());
                    (s, ent.clone())
                })
            })
            .collect();
    }
    for (deg, parts) in point_choices {
        out = out
            .into_iter()
            .flat_map(|(segs, ent)| {
                parts.iter().map(move |p| {
                    let mut e = ent.clone();
                    e.push(crate::combinat::SegreEntry {
                        partition: p.clone(),
                        degree: deg,
                    });
                    (segs.clone(), e)
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|(segs, ent)| {
            Ok(DecompositionSequence::new(
                crate::combinat::NhClass::torsion(Multisegment::new(segs)),
                crate::combinat::SegreSequence::new(ent)?,
            ))
        })
        .collect()
}

/// Jordan type of the classical module, re-exported for callers that
/// realize partitions directly.
pub fn jordan_realization(lambda: &Partition, q: u64) -> Result<crate::quiverrep::QuiverRep> {
    let field = make_field(q, 1)?;
    let m = jordan_module(&field, lambda);
    debug_assert_eq!(jordan_type(&m).ok().as_ref(), Some(lambda));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::SegreSequence;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classical_examples() {
        let r = classical_hall(&p(&[1, 1]), &p(&[1]), &p(&[1])).unwrap();
        assert_eq!(r.poly.to_string(), "T + 1");
        assert!(r.stabilized());
        assert_eq!(classical_hall(&p(&[2]), &p(&[1]), &p(&[1])).unwrap().poly, IntPoly::one());
        // both orders give T: cyclic subgroups of order p^2, and order-p
        // subgroups with cyclic quotient, in Z/p^2 + Z/p
        assert_eq!(classical_hall(&p(&[2, 1]), &p(&[1]), &p(&[2])).unwrap().poly.to_string(), "T");
        assert_eq!(classical_hall(&p(&[2, 1]), &p(&[2]), &p(&[1])).unwrap().poly.to_string(), "T");
        assert!(classical_hall(&p(&[2]), &p(&[1]), &p(&[2])).unwrap().poly.is_zero());
    }

    #[test]
    fn cyclic_examples() {
        let seg = |top, len| Multisegment::in_tube(1, &[(top, len)]);
        let one = cyclic_hall(2, &seg(0, 2), &seg(0, 1), &seg(1, 1)).unwrap();
        assert_eq!(one.poly, IntPoly::one());
        let zero = cyclic_hall(2, &seg(0, 2), &seg(1, 1), &seg(0, 1)).unwrap();
        assert!(zero.poly.is_zero());
        let jordan = cyclic_hall(1, &Multisegment::in_tube(1, &[(0, 1), (0, 1)]), &seg(0, 1), &seg(0, 1)).unwrap();
        assert_eq!(jordan.poly.to_string(), "T + 1");
    }

    #[test]
    fn automorphism_polynomials() {
        assert_eq!(aut_poly_partition(&p(&[1])).unwrap().to_string(), "T - 1");
        assert_eq!(aut_poly_partition(&p(&[2])).unwrap().to_string(), "T^2 - T");
        let gl2 = &IntPoly::from_ints(&[-1, 0, 1]) * &IntPoly::from_ints(&[0, -1, 1]);
        assert_eq!(aut_poly_partition(&p(&[1, 1])).unwrap(), gl2);
    }

    #[test]
    fn segre_examples() {
        let hom = |v: &[(&[usize], usize)]| DecompositionSequence::homogeneous(SegreSequence::from_pairs(v).unwrap());
        let r = segre_hall(&hom(&[(&[1, 1], 1)]), &hom(&[(&[1], 1)]), &hom(&[(&[1], 1)]), &[]).unwrap();
        assert_eq!(r.poly.to_string(), "T + 1");
        let r2 = segre_hall(&hom(&[(&[1, 1], 2)]), &hom(&[(&[1], 2)]), &hom(&[(&[1], 2)]), &[]).unwrap();
        assert_eq!(r2.poly.to_string(), "T^2 + 1");
        let bad = segre_hall(&hom(&[(&[2, 1], 1)]), &hom(&[(&[1], 1)]), &hom(&[(&[1], 1)]), &[]).unwrap();
        assert!(bad.poly.is_zero());
    }

    #[test]
    fn multisegment_enumeration() {
        // nilpotent classes of dimension (1,1) on a 2-cycle: S0+S1, S0[2], S1[2]
        assert_eq!(multisegments_with_dims(2, &[1, 1]).len(), 3);
        assert_eq!(multisegments_with_dims(1, &[3]).len(), 3);
    }
}

#[cfg(test)]
mod laws {
    use super::*;

    #[test]
    fn automorphism_polynomials_are_monic_of_degree_dim_end() {
        for n in 1..=4 {
            for lambda in Partition::all(n) {
                let a = aut_poly_partition(&lambda).unwrap();
                let dim_end: usize = lambda.conjugate().parts().iter().map(|c| c * c).sum();
                assert!(a.is_monic(), "{:?}", lambda);
                assert_eq!(a.degree(), Some(dim_end), "{:?}", lambda);
            }
        }
    }

    #[test]
    fn classical_polynomials_predict_fresh_primes() {
        for n in 1..=3 {
            for lambda in Partition::all(n) {
                for k in 0..=n {
                    for mu in Partition::all(k) {
                        for nu in Partition::all(n - k) {
                            let r = classical_hall(&lambda, &mu, &nu).unwrap();
                            assert!(r.stabilized());
                            for q in [11u64, 13] {
                                let c = classical_count(&lambda, &mu, &nu, q).unwrap();
                                assert_eq!(r.poly.eval_int(q as i64), rat(c as i64));
                            }
                        }
                    }
                }
            }
        }
    }
}
