//! Isoclass catalogues for quivers with a known classification (Kronecker,
//! nilpotent cyclic, type A), certified complete by the mass formula
//! `Σ_[E] |GL_d| / a_E = #{representations of dimension d}`, together with
//! cached Hall tables and the sums built on them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::cyclic::{cyclic_label, segment_dims, segment_module};
use super::kronecker::{indecomposable as kronecker_indecomposable, kronecker_label};
use super::linalg::Mat;
use super::{end_dim, extension_count, hom_dim, q_pow, quotient_rep, sub_rep, tally_subreps, Quiver, QuiverKind, QuiverRep};
use crate::error::{HallError, Result};
use crate::exactfield::{closed_points, FqElement, FqField, PointLabel};

/// Indecomposable representation label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indec {
    /// Kronecker preprojective `P(n)`, dimension `(n, n+1)`.
    Prep(usize),
    /// Kronecker preinjective `I(n)`, dimension `(n+1, n)`.
    Prei(usize),
    /// Kronecker regular `R_z[len]`.
    Reg { point: PointLabel, len: usize },
    /// Cyclic-quiver segment `S_top[len]`.
    Segment { top: usize, len: usize },
    /// Type A interval module supported on vertices `lo..=hi`.
    Interval { lo: usize, hi: usize },
}

impl Indec {
    pub fn dims(&self, quiver: &Quiver) -> Vec<usize> {
        match self {
            Indec::Prep(n) => vec![*n, n + 1],
            Indec::Prei(n) => vec![n + 1, *n],
            Indec::Reg { point, len } => vec![point.degree() * len; 2],
            Indec::Segment { top, len } => segment_dims(quiver.vertices(), *top, *len),
            Indec::Interval { lo, hi } => (0..quiver.vertices()).map(|v| usize::from(v >= *lo && v <= *hi)).collect(),
        }
    }

    /// Degree over `F_q` of the residue field `End / rad End`.
    pub fn residue_degree(&self) -> usize {
        match self {
            Indec::Reg { point, .. } => point.degree(),
            _ => 1,
        }
    }

    pub fn build(&self, quiver: &Arc<Quiver>, field: &FqField) -> Result<QuiverRep> {
        match (quiver.kind(), self) {
            (QuiverKind::Kronecker, _) => kronecker_indecomposable(field, self),
            (QuiverKind::Cyclic(n), Indec::Segment { top, len }) if *top < n => Ok(segment_module(field, n, *top, *len)),
            (_, Indec::Interval { lo, hi }) if lo <= hi && *hi < quiver.vertices() => {
                let dims = self.dims(quiver);
                let maps = quiver
                    .arrows()
                    .iter()
                    .map(|&(s, t)| {
                        if dims[s] == 1 && dims[t] == 1 {
                            Mat::from_rows(&[vec![1]])
                        } else {
                            Mat::zeros(dims[t], dims[s])
                        }
                    })
                    .collect();
                QuiverRep::new(quiver.clone(), field.clone(), dims, maps)
            }
            _ => Err(HallError::UnknownLabel(format!("{:?} on this quiver", self))),
        }
    }

    pub fn render(&self, field: &FqField) -> String {
        match self {
            Indec::Prep(n) => format!("P({})", n),
            Indec::Prei(n) => format!("I({})", n),
            Indec::Reg { point, len } => format!("R_{}[{}]", point.render(field), len),
            Indec::Segment { top, len } => format!("S_{}[{}]", top, len),
            Indec::Interval { lo, hi } => format!("M[{},{}]", lo + 1, hi + 1),
        }
    }
}

/// Isoclass label: multiplicity of each indecomposable summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IsoLabel(BTreeMap<Indec, usize>);

impl IsoLabel {
    pub fn new(mut m: BTreeMap<Indec, usize>) -> Self {
        m.retain(|_, v| *v > 0);
        IsoLabel(m)
    }

    pub fn entries(&self) -> &BTreeMap<Indec, usize> {
        &self.0
    }

    pub fn dims(&self, quiver: &Quiver) -> Vec<usize> {
        let mut d = vec![0; quiver.vertices()];
        for (t, m) in &self.0 {
            for (a, b) in d.iter_mut().zip(t.dims(quiver)) {
                *a += m * b;
            }
        }
        d
    }

    pub fn build(&self, quiver: &Arc<Quiver>, field: &FqField) -> Result<QuiverRep> {
        let mut parts = Vec::new();
        for (t, m) in &self.0 {
            let r = t.build(quiver, field)?;
            parts.extend(std::iter::repeat_n(r, *m));
        }
        QuiverRep::direct_sum_all(quiver.clone(), field.clone(), &parts)
    }

    pub fn render(&self, field: &FqField) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(t, m)| if *m == 1 { t.render(field) } else { format!("{}^{}", t.render(field), m) })
            .collect();
        parts.join(" + ")
    }
}

/// Canonical label when the quiver has a rank-based classification.
pub fn iso_label(rep: &QuiverRep) -> Result<Option<IsoLabel>> {
    match rep.quiver().kind() {
        QuiverKind::Kronecker => kronecker_label(rep).map(Some),
        QuiverKind::Cyclic(_) => cyclic_label(rep).map(Some),
        _ => Ok(None),
    }
}

/// `|GL_m(F_Q)|`.
pub fn gl_order(m: usize, big_q: u128) -> u128 {
    let qm = big_q.pow(m as u32);
    (0..m).map(|i| qm - big_q.pow(i as u32)).product()
}

/// `|Aut X| = q^{dim End - Σ d m^2} Π |GL_m(F_{q^d})|` for
/// `X = ⊕ T^m` with `End T / rad = F_{q^d}`.
pub fn aut_from_label(label: &IsoLabel, q: u32, dim_end: usize) -> u128 {
    let q = q as u128;
    let semisimple: usize = label.0.iter().map(|(t, m)| t.residue_degree() * m * m).sum();
    let mut a = q.pow((dim_end - semisimple) as u32);
    for (t, m) in &label.0 {
        a *= gl_order(*m, q.pow(t.residue_degree() as u32));
    }
    a
}

/// [`aut_from_label`] in arbitrary precision, for any field size.
pub fn aut_from_label_big(label: &IsoLabel, q: u64, dim_end: usize) -> BigInt {
    let q = BigInt::from(q);
    let semisimple: usize = label.0.iter().map(|(t, m)| t.residue_degree() * m * m).sum();
    let mut a = num_traits::pow(q.clone(), dim_end - semisimple);
    for (t, m) in &label.0 {
        let big_q = num_traits::pow(q.clone(), t.residue_degree());
        let qm = num_traits::pow(big_q.clone(), *m);
        for i in 0..*m {
            a *= &qm - num_traits::pow(big_q.clone(), i);
        }
    }
    a
}

/// One catalogue isoclass.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub label: IsoLabel,
    pub rep: QuiverRep,
    pub dims: Vec<usize>,
    pub dim_end: usize,
    pub aut: u128,
}

/// Mass-formula certificate for one dimension vector.
#[derive(Clone, Debug, Serialize)]
pub struct MassCheck {
    pub dims: Vec<usize>,
    pub classes: usize,
    pub lhs: String,
    pub rhs: Option<String>,
    pub pass: Option<bool>,
}

/// Both sides of Green's formula for one quadruple.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

type HallTable = HashMap<(usize, usize), u64>;

pub struct Catalogue {
    quiver: Arc<Quiver>,
    field: FqField,
    dmax: Vec<usize>,
    indecs: Vec<Indec>,
    entries: Vec<CatalogueEntry>,
    by_label: HashMap<IsoLabel, usize>,
    by_dims: BTreeMap<Vec<usize>, Vec<usize>>,
    signatures: HashMap<(Vec<usize>, Vec<usize>), usize>,
    mass: Vec<MassCheck>,
    hall: Vec<OnceLock<std::result::Result<HallTable, HallError>>>,
}

/// Largest brute-force enumeration used to count nilpotent representations.
const NILPOTENT_COUNT_CAP: u128 = 1 << 20;

impl Catalogue {
    /// Every isoclass of dimension `<= dmax`, certified by the mass formula.
    pub fn build(quiver: Arc<Quiver>, field: FqField, dmax: &[usize]) -> Result<Catalogue> {
        if dmax.len() != quiver.vertices() {
            return Err(HallError::Dimension("dimension bound does not fit the quiver".into()));
        }
        let indecs = indecomposables(&quiver, &field, dmax)?;
        let mut labels = Vec::new();
        enumerate_multisets(&quiver, &indecs, 0, dmax.to_vec(), &mut BTreeMap::new(), &mut labels);
        let mut entries = Vec::new();
        for label in labels {
            let rep = label.build(&quiver, &field)?;
            let dim_end = end_dim(&rep);
            let aut = aut_from_label(&label, field.q(), dim_end);
            entries.push(CatalogueEntry {
                dims: rep.dims().to_vec(),
                label,
                rep,
                dim_end,
                aut,
            });
        }
        entries.sort_by(|a, b| a.dims.cmp(&b.dims).then_with(|| a.label.cmp(&b.label)));
        let mut by_label = HashMap::new();
        let mut by_dims: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_label.insert(e.label.clone(), i);
            by_dims.entry(e.dims.clone()).or_default().push(i);
        }
        let mut cat = Catalogue {
            hall: (0..entries.len()).map(|_| OnceLock::new()).collect(),
            quiver,
            field,
            dmax: dmax.to_vec(),
            indecs,
            entries,
            by_label,
            by_dims,
            signatures: HashMap::new(),
            mass: Vec::new(),
        };
        if cat.quiver.kind() == QuiverKind::TypeA {
            cat.build_signatures()?;
        }
        cat.certify()?;
        Ok(cat)
    }

    fn build_signatures(&mut self) -> Result<()> {
        let tests: Vec<QuiverRep> = self
            .indecs
            .iter()
            .map(|t| t.build(&self.quiver, &self.field))
            .collect::<Result<_>>()?;
        for (i, e) in self.entries.iter().enumerate() {
            let sig = signature(&tests, &e.rep)?;
            if self.signatures.insert((e.dims.clone(), sig), i).is_some() {
                return Err(HallError::CatalogueIncomplete(
                    "Hom signatures do not separate the isoclasses".into(),
                ));
            }
        }
        Ok(())
    }

    fn certify(&mut self) -> Result<()> {
        let q = self.field.q() as u128;
        let mut checks = Vec::new();
        for d in box_vectors(&self.dmax) {
            let ids = self.by_dims.get(&d).cloned().unwrap_or_default();
            let gl: u128 = d.iter().map(|&x| gl_order(x, q)).product();
            let lhs: BigRational = ids
                .iter()
                .map(|&i| BigRational::new(BigInt::from(gl), BigInt::from(self.entries[i].aut)))
                .sum();
            let rhs = self.representation_count(&d);
            let pass = rhs.as_ref().map(|r| *r == lhs);
            if pass == Some(false) {
                return Err(HallError::CatalogueIncomplete(format!(
                    "mass formula fails at {:?}: {} != {}",
                    d,
                    lhs,
                    rhs.unwrap()
                )));
            }
            checks.push(MassCheck {
                dims: d,
                classes: ids.len(),
                lhs: lhs.to_string(),
                rhs: rhs.map(|r| r.to_string()),
                pass,
            });
        }
        self.mass = checks;
        Ok(())
    }

    /// Number of representations (nilpotent ones for cyclic quivers) of
    /// dimension `d`, when known.
    fn representation_count(&self, d: &[usize]) -> Option<BigRational> {
        let q = self.field.q();
        let entries: usize = self.quiver.arrows().iter().map(|&(s, t)| d[s] * d[t]).sum();
        match self.quiver.kind() {
            QuiverKind::Cyclic(1) => Some(q_pow(q, (d[0] * d[0] - d[0]) as i64)),
            QuiverKind::Cyclic(_) => {
                let size = (q as u128).checked_pow(entries as u32)?;
                (size <= NILPOTENT_COUNT_CAP)
                    .then(|| BigRational::from_integer(BigInt::from(count_nilpotent(&self.field, d))))
            }
            _ => Some(q_pow(q, entries as i64)),
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn dmax(&self) -> &[usize] {
        &self.dmax
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogueEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &CatalogueEntry {
        &self.entries[i]
    }

    pub fn mass_checks(&self) -> &[MassCheck] {
        &self.mass
    }

    pub fn indecomposables(&self) -> &[Indec] {
        &self.indecs
    }

    /// Catalogue indices of the classes of dimension `d`.
    pub fn with_dims(&self, d: &[usize]) -> &[usize] {
        self.by_dims.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn index_of_label(&self, label: &IsoLabel) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Catalogue index of the isoclass of `rep`.
    pub fn classify(&self, rep: &QuiverRep) -> Result<usize> {
        if *rep.quiver() != self.quiver || rep.field() != &self.field {
            return Err(HallError::Mismatch);
        }
        match iso_label(rep)? {
            Some(label) => self
                .index_of_label(&label)
                .ok_or_else(|| HallError::UnknownLabel(format!("{} lies outside the catalogue", label.render(&self.field)))),
            None => {
                let tests: Vec<QuiverRep> = self
                    .indecs
                    .iter()
                    .map(|t| t.build(&self.quiver, &self.field))
                    .collect::<Result<_>>()?;
                let sig = signature(&tests, rep)?;
                self.signatures
                    .get(&(rep.dims().to_vec(), sig))
                    .copied()
                    .ok_or_else(|| HallError::UnknownLabel("representation outside the catalogue".into()))
            }
        }
    }

    /// `(quotient class, sub class) -> count` over all subrepresentations of
    /// entry `z`.
    pub fn hall_table(&self, z: usize) -> Result<&HallTable> {
        let cell = self.hall[z].get_or_init(|| {
            let rep = &self.entries[z].rep;
            let tally = tally_subreps(rep, None, |u| {
                let sub = self.classify(&sub_rep(rep, u)).ok()?;
                let quo = self.classify(&quotient_rep(rep, u)).ok()?;
                Some(Some((quo, sub)))
            });
            let mut table = HashMap::new();
            let mut total = 0u64;
            for (k, v) in tally {
                total += v;
                if let Some(k) = k {
                    table.insert(k, v);
                }
            }
            // every subrepresentation must classify
            let mut all = 0u64;
            super::for_each_subrep(rep, None, &mut |_| all += 1);
            if all != total || table.values().sum::<u64>() != total {
                return Err(HallError::CatalogueIncomplete(format!(
                    "some subquotients of {} could not be classified",
                    self.entries[z].label.render(&self.field)
                )));
            }
            Ok(table)
        });
        cell.as_ref().map_err(|e| e.clone())
    }

    /// `F^Z_{X,Y}` by catalogue index.
    pub fn hall(&self, z: usize, x: usize, y: usize) -> Result<u64> {
        Ok(self.hall_table(z)?.get(&(x, y)).copied().unwrap_or(0))
    }

    fn euler(&self, a: usize, b: usize) -> i64 {
        self.quiver.euler(&self.entries[a].dims, &self.entries[b].dims)
    }

    fn aut_rat(&self, i: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.entries[i].aut))
    }

    /// Both sides of Green's formula for catalogue indices `(M, N, X, Y)`.
    pub fn green(&self, m: usize, n: usize, x: usize, y: usize) -> Result<GreenReport> {
        let q = self.field.q();
        let target: Vec<usize> = self.entries[m].dims.iter().zip(&self.entries[n].dims).map(|(a, b)| a + b).collect();
        if target.iter().zip(&self.dmax).any(|(a, b)| a > b) {
            return Err(HallError::CatalogueUnavailable(format!(
                "dimension {:?} exceeds the catalogue bound {:?}",
                target, self.dmax
            )));
        }
        let mut lhs = BigRational::zero();
        for &e in self.with_dims(&target) {
            let a = self.hall(e, m, n)?;
            let b = self.hall(e, x, y)?;
            if a != 0 && b != 0 {
                lhs += BigRational::new(BigInt::from(a * b), BigInt::from(self.entries[e].aut));
            }
        }
        let mut rhs = BigRational::zero();
        let tm = self.hall_table(m)?;
        let tn = self.hall_table(n)?;
        let tx = self.hall_table(x)?;
        let ty = self.hall_table(y)?;
        for (&(a, b), &fm) in tm {
            for (&(c, d), &fn_) in tn {
                let Some(&fx) = tx.get(&(a, c)) else { continue };
                let Some(&fy) = ty.get(&(b, d)) else { continue };
                let count = BigInt::from(fm) * BigInt::from(fn_) * BigInt::from(fx) * BigInt::from(fy);
                let auts = self.aut_rat(a) * self.aut_rat(b) * self.aut_rat(c) * self.aut_rat(d);
                rhs += q_pow(q, -self.euler(a, d)) * BigRational::from_integer(count) * auts;
            }
        }
        rhs /= self.aut_rat(m) * self.aut_rat(n) * self.aut_rat(x) * self.aut_rat(y);
        Ok(GreenReport {
            holds: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// Extension counts `|Ext^1(X,Y)_Z|` for every `Z` of dimension
    /// `dim X + dim Y`, and the expected total `q^{dim Ext^1(X,Y)}`.
    pub fn extension_classes(&self, x: usize, y: usize) -> Result<(Vec<(usize, u128)>, u128)> {
        let (ex, ey) = (&self.entries[x], &self.entries[y]);
        let target: Vec<usize> = ex.dims.iter().zip(&ey.dims).map(|(a, b)| a + b).collect();
        if target.iter().zip(&self.dmax).any(|(a, b)| a > b) {
            return Err(HallError::CatalogueUnavailable(format!("dimension {:?} exceeds the bound", target)));
        }
        let q = self.field.q() as u128;
        let h = hom_dim(&ex.rep, &ey.rep)?;
        let hom = q.pow(h as u32);
        let mut out = Vec::new();
        for &z in self.with_dims(&target) {
            let f = self.hall(z, x, y)?;
            let e = extension_count(f, hom, ex.aut, ey.aut, self.entries[z].aut)?;
            if e > 0 {
                out.push((z, e));
            }
        }
        let ext = h as i64 - self.euler(x, y);
        Ok((out, q.pow(ext as u32)))
    }

    /// JSON listing of the catalogue.
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.field.q(),
            "dmax": self.dmax,
            "classes": self.entries.iter().map(|e| json!({
                "label": e.label.render(&self.field),
                "dims": e.dims,
                "aut": e.aut.to_string(),
                "dim_end": e.dim_end,
            })).collect::<Vec<_>>(),
            "mass": self.mass,
        })
    }
}

fn signature(tests: &[QuiverRep], rep: &QuiverRep) -> Result<Vec<usize>> {
    tests.iter().map(|t| hom_dim(t, rep)).collect()
}

/// All dimension vectors `0 <= d <= dmax`.
pub fn box_vectors(dmax: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &m in dmax {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn fits(d: &[usize], budget: &[usize]) -> bool {
    d.iter().zip(budget).all(|(a, b)| a <= b)
}

fn indecomposables(quiver: &Arc<Quiver>, field: &FqField, dmax: &[usize]) -> Result<Vec<Indec>> {
    let mut out = Vec::new();
    match quiver.kind() {
        QuiverKind::Kronecker => {
            for n in 0..=dmax[0].max(dmax[1]) {
                for t in [Indec::Prep(n), Indec::Prei(n)] {
                    if fits(&t.dims(quiver), dmax) {
                        out.push(t);
                    }
                }
            }
            let r = dmax[0].min(dmax[1]);
            for d in 1..=r {
                for p in closed_points(field, d, &[])? {
                    for len in 1..=r / d {
                        out.push(Indec::Reg {
                            point: p.label.clone(),
                            len,
                        });
                    }
                }
            }
        }
        QuiverKind::Cyclic(n) => {
            let total: usize = dmax.iter().sum();
            for top in 0..n {
                for len in 1..=total {
                    let t = Indec::Segment { top, len };
                    if fits(&t.dims(quiver), dmax) {
                        out.push(t);
                    }
                }
            }
        }
        QuiverKind::TypeA => {
            for lo in 0..quiver.vertices() {
                for hi in lo..quiver.vertices() {
                    let t = Indec::Interval { lo, hi };
                    if fits(&t.dims(quiver), dmax) {
                        out.push(t);
                    }
                }
            }
        }
        QuiverKind::General => {
            return Err(HallError::CatalogueUnavailable(
                "only Kronecker, cyclic and type A quivers are catalogue-backed".into(),
            ))
        }
    }
    Ok(out)
}

fn enumerate_multisets(
    quiver: &Quiver,
    indecs: &[Indec],
    i: usize,
    budget: Vec<usize>,
    cur: &mut BTreeMap<Indec, usize>,
    out: &mut Vec<IsoLabel>,
) {
    if i == indecs.len() {
        out.push(IsoLabel::new(cur.clone()));
        return;
    }
    let d = indecs[i].dims(quiver);
    let mut b = budget;
    let mut m = 0;
    loop {
        if m > 0 {
            cur.insert(indecs[i].clone(), m);
        }
        enumerate_multisets(quiver, indecs, i + 1, b.clone(), cur, out);
        if !fits(&d, &b) {
            break;
        }
        for (x, y) in b.iter_mut().zip(&d) {
            *x -= y;
        }
        m += 1;
    }
    cur.remove(&indecs[i]);
}

/// Brute-force count of nilpotent representations of the cyclic quiver.
fn count_nilpotent(field: &FqField, d: &[usize]) -> u128 {
    let n = d.len();
    let shapes: Vec<(usize, usize)> = (0..n).map(|v| (d[(v + n - 1) % n], d[v])).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let q = field.q();
    let mut coeffs = vec![0u32; total];
    let mut count = 0u128;
    loop {
        let mut maps = Vec::with_capacity(n);
        let mut k = 0;
        for &(r, c) in &shapes {
            let mut m = Mat::zeros(r, c);
            for x in m.data.iter_mut() {
                *x = FqElement(coeffs[k]);
                k += 1;
            }
            maps.push(m);
        }
        // cycle map at vertex 0: A_1 A_2 ... A_{n-1} A_0 applied in path order
        let mut cyc = Mat::identity(field, d[0]);
        let mut v = 0;
        for _ in 0..n {
            cyc = maps[v].mul(field, &cyc);
            v = (v + n - 1) % n;
        }
        if cyc.pow(field, d[0]).is_zero() {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == total {
                return count;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Green's formula for four representations, over the catalogue of the
/// dimension box they span.
pub fn green_verify(m: &QuiverRep, n: &QuiverRep, x: &QuiverRep, y: &QuiverRep) -> Result<GreenReport> {
    let dims: Vec<usize> = m
        .dims()
        .iter()
        .zip(n.dims())
        .zip(x.dims().iter().zip(y.dims()))
        .map(|((a, b), (c, d))| (a + b).max(c + d))
        .collect();
    let cat = Catalogue::build(m.quiver().clone(), m.field().clone(), &dims)?;
    cat.green(cat.classify(m)?, cat.classify(n)?, cat.classify(x)?, cat.classify(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::make_field;
    use crate::quiverrep::aut_count;

    #[test]
    fn kronecker_catalogue_small() {
        let f = make_field(2, 1).unwrap();
        let cat = Catalogue::build(Quiver::kronecker(), f.clone(), &[1, 1]).unwrap();
        assert_eq!(cat.with_dims(&[1, 1]).len(), 4);
        assert_eq!(cat.with_dims(&[1, 0]).len(), 1);
        for e in cat.entries() {
            assert_eq!(e.aut, aut_count(&e.rep, 1 << 20).unwrap(), "{}", e.label.render(&f));
        }
        let big = Catalogue::build(Quiver::kronecker(), f, &[2, 2]).unwrap();
        let m = big.mass_checks().iter().find(|m| m.dims == vec![2, 2]).unwrap();
        assert_eq!(m.rhs.as_deref(), Some("256"));
        assert_eq!(m.pass, Some(true));
    }

    #[test]
    fn cyclic_and_type_a_catalogues_certify() {
        let f = make_field(2, 1).unwrap();
        let c = Catalogue::build(Quiver::cyclic(2), f.clone(), &[2, 2]).unwrap();
        assert!(c.mass_checks().iter().all(|m| m.pass == Some(true)));
        let j = Catalogue::build(Quiver::cyclic(1), f.clone(), &[3]).unwrap();
        assert_eq!(j.with_dims(&[3]).len(), 3);
        let a = Catalogue::build(Quiver::new(3, vec![(0, 1), (2, 1)]).map(Arc::new).unwrap(), f, &[1, 2, 1]).unwrap();
        assert!(a.mass_checks().iter().all(|m| m.pass == Some(true)));
    }

    #[test]
    fn green_small_cases() {
        let f = make_field(2, 1).unwrap();
        let cat = Catalogue::build(Quiver::kronecker(), f, &[1, 1]).unwrap();
        let s1 = cat.with_dims(&[1, 0])[0];
        let s2 = cat.with_dims(&[0, 1])[0];
        let zero = cat.with_dims(&[0, 0])[0];
        let r = cat.green(s1, s2, s1, s2).unwrap();
        assert!(r.holds);
        let g = cat.green(s1, zero, s1, zero).unwrap();
        assert_eq!(g.lhs, BigRational::new(1.into(), 1.into()));
        assert!(g.holds);
        let (ext, total) = cat.extension_classes(s1, s2).unwrap();
        assert_eq!(total, 4);
        assert_eq!(ext.iter().map(|e| e.1).sum::<u128>(), 4);
    }
}

#[cfg(test)]
mod laws {
    use super::*;
    use crate::exactfield::make_field;
    use crate::quiverrep::{ext_dim, for_each_subrep};

    fn kronecker_22() -> Catalogue {
        Catalogue::build(Quiver::kronecker(), make_field(2, 1).unwrap(), &[2, 2]).unwrap()
    }

    fn sum(a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    #[test]
    fn hall_numbers_account_for_every_subrep() {
        let cat = kronecker_22();
        for z in 0..cat.len() {
            let mut all = 0u64;
            for_each_subrep(&cat.entry(z).rep, None, &mut |_| all += 1);
            assert_eq!(cat.hall_table(z).unwrap().values().sum::<u64>(), all);
        }
    }

    #[test]
    fn hall_numbers_are_associative() {
        let cat = kronecker_22();
        let n = cat.len();
        let dims = |i: usize| cat.entry(i).dims.clone();
        for a in 0..n {
            for b in 0..n {
                let ab = sum(&dims(a), &dims(b));
                for c in 0..n {
                    let abc = sum(&ab, &dims(c));
                    if abc.iter().zip(cat.dmax()).any(|(x, m)| x > m) {
                        continue;
                    }
                    let bc = sum(&dims(b), &dims(c));
                    for &s in cat.with_dims(&abc) {
                        let left: u64 =
                            cat.with_dims(&ab).iter().map(|&x| cat.hall(x, a, b).unwrap() * cat.hall(s, x, c).unwrap()).sum();
                        let right: u64 =
                            cat.with_dims(&bc).iter().map(|&x| cat.hall(s, a, x).unwrap() * cat.hall(x, b, c).unwrap()).sum();
                        assert_eq!(left, right, "A={a} B={b} C={c} S={s}");
                    }
                }
            }
        }
    }

    /// Green's formula within nilpotent representations of cyclic quivers.
    #[test]
    fn green_formula_on_cyclic_quivers() {
        let f = make_field(2, 1).unwrap();
        for (quiver, dmax) in [(Quiver::cyclic(2), vec![2, 2]), (Quiver::cyclic(1), vec![3])] {
            let cat = Catalogue::build(quiver, f.clone(), &dmax).unwrap();
            let n = cat.len();
            let mut checked = 0;
            for m in 0..n {
                for nn in 0..n {
                    let d = sum(&cat.entry(m).dims, &cat.entry(nn).dims);
                    if d.iter().zip(cat.dmax()).any(|(a, b)| a > b) {
                        continue;
                    }
                    for x in 0..n {
                        for y in 0..n {
                            if sum(&cat.entry(x).dims, &cat.entry(y).dims) != d {
                                continue;
                            }
                            let r = cat.green(m, nn, x, y).unwrap();
                            assert!(r.holds, "M={m} N={nn} X={x} Y={y}: {} vs {}", r.lhs, r.rhs);
                            checked += 1;
                        }
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn extension_classes_fill_ext_space() {
        let cat = kronecker_22();
        let q = cat.field().q() as u128;
        for x in 0..cat.len() {
            for y in 0..cat.len() {
                let d = sum(&cat.entry(x).dims, &cat.entry(y).dims);
                if d.iter().zip(cat.dmax()).any(|(a, m)| a > m) {
                    continue;
                }
                let (classes, total) = cat.extension_classes(x, y).unwrap();
                let e = ext_dim(&cat.entry(x).rep, &cat.entry(y).rep).unwrap();
                assert_eq!(total, q.pow(e as u32));
                assert_eq!(classes.iter().map(|c| c.1).sum::<u128>(), total);
            }
        }
    }
}
