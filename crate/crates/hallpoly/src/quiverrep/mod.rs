//! Representations of finite quivers over `F_q`: Hom spaces, automorphism
//! groups, subrepresentation enumeration and Hall numbers.
//!
//! Convention: `F^Z_{X,Y}` counts subrepresentations `U ⊆ Z` with `U ≅ Y`
//! and `Z/U ≅ X`. Every identity checked in this crate, Green's formula in
//! particular, is stated in this orientation.

pub mod catalogue;
pub mod cyclic;
pub mod kronecker;
pub mod linalg;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{HallError, Result};
use crate::exactfield::{FqElement, FqField};
pub use catalogue::{aut_from_label, aut_from_label_big, iso_label, Catalogue, CatalogueEntry, GreenReport, Indec, IsoLabel};
pub use linalg::{Mat, Subspace};

/// Default bound on the size of any enumerated Hom space.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Shape class of a quiver, deciding which classification data applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuiverKind {
    /// Two vertices, two arrows from vertex 0 to vertex 1.
    Kronecker,
    /// `n` vertices, arrow `j -> j-1 (mod n)` from every vertex; nilpotent
    /// representations only. `n = 1` is the Jordan quiver.
    Cyclic(usize),
    /// Underlying graph a path `0 - 1 - ... - (n-1)`, any orientation.
    TypeA,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    kind: QuiverKind,
}

#[derive(Serialize, Deserialize)]
struct QuiverWire {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverWire {
            vertices: self.vertices,
            arrows: self.arrows.iter().map(|&(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QuiverWire::deserialize(d)?;
        Quiver::new(w.vertices, w.arrows.into_iter().map(|[a, b]| (a, b)).collect()).map_err(serde::de::Error::custom)
    }
}

impl Quiver {
    /// Quiver from an arrow list; the kind is detected from the shape.
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if arrows.iter().any(|&(s, t)| s >= vertices || t >= vertices) {
            return Err(HallError::Shape("arrow endpoint out of range".into()));
        }
        let kind = detect_kind(vertices, &arrows);
        Ok(Quiver { vertices, arrows, kind })
    }

    pub fn kronecker() -> Arc<Quiver> {
        Arc::new(Quiver::new(2, vec![(0, 1), (0, 1)]).unwrap())
    }

    /// Cyclic quiver with arrows `j -> j-1 (mod n)`.
    pub fn cyclic(n: usize) -> Arc<Quiver> {
        assert!(n >= 1);
        Arc::new(Quiver::new(n, (0..n).map(|j| (j, (j + n - 1) % n)).collect()).unwrap())
    }

    /// Linearly oriented `A_n`: arrows `i -> i+1`.
    pub fn linear_a(n: usize) -> Arc<Quiver> {
        Arc::new(Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap())
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == self.vertices
    }

    /// Matrix `E` with `<d, e> = d^T E e`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let mut e = vec![vec![0i64; self.vertices]; self.vertices];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            e[s][t] -= 1;
        }
        e
    }

    /// `<d, e> = Σ d_i e_i - Σ_{a: i -> j} d_i e_j`.
    pub fn euler(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
        let arr: i64 = self.arrows.iter().map(|&(s, t)| (d[s] * e[t]) as i64).sum();
        diag - arr
    }

    pub fn symmetric_euler(&self, d: &[usize], e: &[usize]) -> i64 {
        self.euler(d, e) + self.euler(e, d)
    }
}

fn detect_kind(n: usize, arrows: &[(usize, usize)]) -> QuiverKind {
    if n == 2 && arrows == [(0, 1), (0, 1)] {
        return QuiverKind::Kronecker;
    }
    if n >= 1 && arrows.len() == n && (0..n).all(|j| arrows[j] == (j, (j + n - 1) % n)) {
        return QuiverKind::Cyclic(n);
    }
    if arrows.len() + 1 == n {
        let mut edges: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
        edges.sort();
        if edges.iter().enumerate().all(|(i, &e)| e == (i, i + 1)) {
            return QuiverKind::TypeA;
        }
    }
    QuiverKind::General
}

/// Representation: one matrix per arrow, of shape `dim target x dim source`.
#[derive(Clone, Debug)]
pub struct QuiverRep {
    quiver: Arc<Quiver>,
    field: FqField,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl PartialEq for QuiverRep {
    fn eq(&self, o: &Self) -> bool {
        *self.quiver == *o.quiver && self.field == o.field && self.dims == o.dims && self.maps == o.maps
    }
}

impl Eq for QuiverRep {}

impl QuiverRep {
    pub fn new(quiver: Arc<Quiver>, field: FqField, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != quiver.vertices || maps.len() != quiver.arrows.len() {
            return Err(HallError::Shape("dimension vector or map count does not fit the quiver".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(&quiver.arrows) {
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(HallError::Shape(format!(
                    "arrow {}->{} needs a {}x{} matrix, got {}x{}",
                    s, t, dims[t], dims[s], m.rows, m.cols
                )));
            }
            if m.data.iter().any(|x| x.0 >= field.q()) {
                return Err(HallError::Shape("matrix entry outside the field".into()));
            }
        }
        Ok(QuiverRep {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: FqField) -> Self {
        let dims = vec![0; quiver.vertices];
        let maps = quiver.arrows.iter().map(|_| Mat::zeros(0, 0)).collect();
        QuiverRep {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// Simple representation at vertex `v` (0-based); on a quiver with a loop
    /// at `v` the loop acts by zero.
    pub fn simple(quiver: Arc<Quiver>, field: FqField, v: usize) -> Result<Self> {
        if v >= quiver.vertices {
            return Err(HallError::UnknownLabel(format!("vertex {}", v)));
        }
        let mut dims = vec![0; quiver.vertices];
        dims[v] = 1;
        let maps = quiver.arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        QuiverRep::new(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, o: &QuiverRep) -> Result<QuiverRep> {
        same_context(self, o)?;
        let dims = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&o.maps).map(|(a, b)| Mat::block_diag(&[a, b])).collect();
        QuiverRep::new(self.quiver.clone(), self.field.clone(), dims, maps)
    }

    pub fn direct_sum_all(quiver: Arc<Quiver>, field: FqField, parts: &[QuiverRep]) -> Result<QuiverRep> {
        parts
            .iter()
            .try_fold(QuiverRep::zero(quiver, field), |acc, p| acc.direct_sum(p))
    }

    /// JSON with matrices of field-element strings.
    pub fn to_json(&self) -> Value {
        json!({
            "quiver": self.quiver.as_ref(),
            "q": self.field.q(),
            "dims": self.dims,
            "maps": self.maps.iter().map(|m| {
                m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, field: &FqField) -> Result<QuiverRep> {
        let quiver: Quiver =
            serde_json::from_value(v["quiver"].clone()).map_err(|e| HallError::Parse(e.to_string()))?;
        let dims: Vec<usize> =
            serde_json::from_value(v["dims"].clone()).map_err(|e| HallError::Parse(e.to_string()))?;
        let raw: Vec<Vec<Vec<String>>> =
            serde_json::from_value(v["maps"].clone()).map_err(|e| HallError::Parse(e.to_string()))?;
        let mut maps = Vec::new();
        for (m, &(s, t)) in raw.iter().zip(quiver.arrows()) {
            let rows: Vec<Vec<u32>> = m
                .iter()
                .map(|r| r.iter().map(|x| x.parse::<u32>().map_err(|e| HallError::Parse(e.to_string()))).collect())
                .collect::<Result<_>>()?;
            let mut mat = Mat::from_rows(&rows);
            if rows.is_empty() {
                mat = Mat::zeros(dims[t], dims[s]);
            }
            maps.push(mat);
        }
        QuiverRep::new(Arc::new(quiver), field.clone(), dims, maps)
    }
}

fn same_context(a: &QuiverRep, b: &QuiverRep) -> Result<()> {
    if *a.quiver != *b.quiver || a.field != b.field {
        return Err(HallError::Mismatch);
    }
    Ok(())
}

/// Basis of `Hom(X, Y)`, each element a tuple of vertex matrices
/// `f_v: X_v -> Y_v` (shape `dim Y_v x dim X_v`).
pub fn hom_space(x: &QuiverRep, y: &QuiverRep) -> Result<Vec<Vec<Mat>>> {
    same_context(x, y)?;
    let f = &x.field;
    let n = x.quiver.vertices;
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut eqs: Vec<Vec<FqElement>> = Vec::new();
    for (a, &(s, t)) in x.quiver.arrows.iter().enumerate() {
        let (xa, ya) = (&x.maps[a], &y.maps[a]);
        // (f_t X_a - Y_a f_s)[i][j] = 0
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![FqElement(0); unknowns];
                for k in 0..x.dims[t] {
                    let c = xa.get(k, j);
                    let idx = offset[t] + i * x.dims[t] + k;
                    row[idx] = f.add(row[idx], c);
                }
                for k in 0..y.dims[s] {
                    let c = ya.get(i, k);
                    let idx = offset[s] + k * x.dims[s] + j;
                    row[idx] = f.sub(row[idx], c);
                }
                eqs.push(row);
            }
        }
    }
    let sys = Mat::from_vectors(unknowns, &eqs);
    let basis = linalg::nullspace(f, &sys);
    Ok(basis
        .into_iter()
        .map(|vec| {
            (0..n)
                .map(|v| {
                    let mut m = Mat::zeros(y.dims[v], x.dims[v]);
                    m.data.copy_from_slice(&vec[offset[v]..offset[v + 1]]);
                    m
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    Ok(hom_space(x, y)?.len())
}

pub fn end_dim(x: &QuiverRep) -> usize {
    hom_dim(x, x).expect("same context")
}

/// `dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y>` (hereditary case).
pub fn ext_dim(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    let h = hom_dim(x, y)? as i64;
    let e = h - x.quiver.euler(&x.dims, &y.dims);
    usize::try_from(e).map_err(|_| HallError::Disagreement(format!("negative Ext dimension {}", e)))
}

fn checked_size(q: u32, dim: usize, cap: u128) -> Result<u128> {
    let size = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(HallError::CapExceeded { size, cap });
    }
    Ok(size)
}

/// Iterate over every element of the span of `basis`.
fn for_each_combination(f: &FqField, basis: &[Vec<Mat>], mut visit: impl FnMut(&[Mat]) -> bool) {
    let q = f.q();
    let mut coeffs = vec![0u32; basis.len()];
    let template: Vec<Mat> = match basis.first() {
        Some(b) => b.iter().map(|m| Mat::zeros(m.rows, m.cols)).collect(),
        None => return,
    };
    loop {
        let mut cur = template.clone();
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (acc, m) in cur.iter_mut().zip(b) {
                *acc = acc.add(f, &m.scale(f, FqElement(*c)));
            }
        }
        if !visit(&cur) {
            return;
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return;
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

/// `|Aut(X)|` by enumerating `End(X)` (at most `cap` elements).
pub fn aut_count(x: &QuiverRep, cap: u128) -> Result<u128> {
    let basis = hom_space(x, x)?;
    checked_size(x.field.q(), basis.len(), cap)?;
    if basis.is_empty() {
        return Ok(1);
    }
    let f = &x.field;
    let mut count = 0u128;
    for_each_combination(f, &basis, |m| {
        if m.iter().all(|a| a.is_invertible(f)) {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// `|Aut(X)|`, from the classification when the quiver has one, otherwise
/// by enumeration with the default cap.
pub fn aut_order(x: &QuiverRep) -> Result<u128> {
    match iso_label(x)? {
        Some(label) => Ok(catalogue::aut_from_label(&label, x.field.q(), end_dim(x))),
        None => aut_count(x, DEFAULT_CAP),
    }
}

/// Search `Hom(X, Y)` for an element invertible at every vertex. When the
/// search space exceeds `cap`, fall back to the canonical isoclass label if
/// the quiver has one.
pub fn is_isomorphic(x: &QuiverRep, y: &QuiverRep, cap: u128) -> Result<bool> {
    same_context(x, y)?;
    if x.dims != y.dims {
        return Ok(false);
    }
    let basis = hom_space(x, y)?;
    let (ex, ey) = (end_dim(x), end_dim(y));
    if ex != ey || basis.len() != ex || hom_dim(y, x)? != ex {
        return Ok(false);
    }
    if basis.is_empty() {
        return Ok(x.is_zero());
    }
    match checked_size(x.field.q(), basis.len(), cap) {
        Ok(_) => {
            let f = &x.field;
            let mut found = false;
            for_each_combination(f, &basis, |m| {
                found = m.iter().all(|a| a.is_invertible(f));
                !found
            });
            Ok(found)
        }
        Err(e) => match (iso_label(x)?, iso_label(y)?) {
            (Some(a), Some(b)) => Ok(a == b),
            _ => Err(e),
        },
    }
}

/// Subrepresentation: one RREF subspace per vertex.
pub type SubSpaces = Vec<Subspace>;

/// Sub-representation on the chosen subspaces, in their RREF bases.
pub fn sub_rep(z: &QuiverRep, u: &[Subspace]) -> QuiverRep {
    let f = &z.field;
    let dims: Vec<usize> = u.iter().map(|s| s.dim()).collect();
    let maps = z
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for i in 0..dims[s] {
                let img = z.maps[a].apply(f, u[s].basis.row(i));
                for (r, c) in u[t].coords(&img).into_iter().enumerate() {
                    m.set(r, i, c);
                }
            }
            m
        })
        .collect();
    QuiverRep::new(z.quiver.clone(), f.clone(), dims, maps).expect("shapes are consistent")
}

/// Quotient `Z/U` on the complement coordinates (non-pivot columns).
pub fn quotient_rep(z: &QuiverRep, u: &[Subspace]) -> QuiverRep {
    let f = &z.field;
    let comps: Vec<Vec<usize>> = u.iter().map(|s| s.complement()).collect();
    let dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let maps = z
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for (i, &c) in comps[s].iter().enumerate() {
                let mut img: Vec<FqElement> = (0..z.dims[t]).map(|r| z.maps[a].get(r, c)).collect();
                u[t].reduce(f, &mut img);
                for (r, &ct) in comps[t].iter().enumerate() {
                    m.set(r, i, img[ct]);
                }
            }
            m
        })
        .collect();
    QuiverRep::new(z.quiver.clone(), f.clone(), dims, maps).expect("shapes are consistent")
}

fn extend_subrep(
    z: &QuiverRep,
    dims: Option<&[usize]>,
    partial: &mut Vec<Subspace>,
    visit: &mut dyn FnMut(&[Subspace]),
) {
    let v = partial.len();
    if v == z.quiver.vertices {
        visit(partial);
        return;
    }
    let f = &z.field;
    // images of already chosen subspaces along arrows into v
    let mut gens = Mat::zeros(0, z.dims[v]);
    for (a, &(s, t)) in z.quiver.arrows.iter().enumerate() {
        if t == v && s < v {
            for i in 0..partial[s].dim() {
                let img = z.maps[a].apply(f, partial[s].basis.row(i));
                gens = gens.vstack(&Mat::from_vectors(z.dims[v], &[img]));
            }
        }
    }
    let w = Subspace::span(f, &gens);
    let range: Vec<usize> = match dims {
        Some(e) => vec![e[v]],
        None => (w.dim()..=z.dims[v]).collect(),
    };
    for k in range {
        linalg::for_each_superspace(f, &w, k, &mut |uv| {
            // arrows from v into vertices already fixed (including loops)
            let ok = z.quiver.arrows.iter().enumerate().all(|(a, &(s, t))| {
                if s != v || t > v {
                    return true;
                }
                let target = if t == v { uv } else { &partial[t] };
                (0..uv.dim()).all(|i| target.contains(f, &z.maps[a].apply(f, uv.basis.row(i))))
            });
            if ok {
                partial.push(uv.clone());
                extend_subrep(z, dims, partial, visit);
                partial.pop();
            }
        });
    }
}

/// Every subrepresentation of `Z` (of dimension vector `e` when given),
/// each exactly once.
pub fn for_each_subrep(z: &QuiverRep, e: Option<&[usize]>, visit: &mut dyn FnMut(&[Subspace])) {
    if let Some(e) = e {
        if e.len() != z.dims.len() || e.iter().zip(&z.dims).any(|(a, b)| a > b) {
            return;
        }
    }
    if z.quiver.vertices == 0 {
        visit(&[]);
        return;
    }
    extend_subrep(z, e, &mut Vec::new(), visit);
}

/// Collect every subrepresentation.
pub fn subrep_enumerate(z: &QuiverRep, e: &[usize]) -> Vec<SubSpaces> {
    let mut out = Vec::new();
    for_each_subrep(z, Some(e), &mut |u| out.push(u.to_vec()));
    out
}

/// Tally `key(U)` over all subrepresentations `U` (of dimension `e` when
/// given), skipping `None`. Work is split across threads by the choice of
/// subspace at vertex 0.
pub fn tally_subreps<K, F>(z: &QuiverRep, e: Option<&[usize]>, key: F) -> HashMap<K, u64>
where
    K: Eq + Hash + Send,
    F: Fn(&[Subspace]) -> Option<K> + Sync,
{
    if z.quiver.vertices == 0 || z.is_zero() {
        let mut m = HashMap::new();
        let u: Vec<Subspace> = z.dims.iter().map(|&d| Subspace::zero(d)).collect();
        if e.is_none_or(|e| e.iter().all(|&x| x == 0)) {
            if let Some(k) = key(&u) {
                m.insert(k, 1);
            }
        }
        return m;
    }
    if let Some(e) = e {
        if e.len() != z.dims.len() || e.iter().zip(&z.dims).any(|(a, b)| a > b) {
            return HashMap::new();
        }
    }
    let f = &z.field;
    let n0 = z.dims[0];
    let ks: Vec<usize> = match e {
        Some(e) => vec![e[0]],
        None => (0..=n0).collect(),
    };
    let mut firsts = Vec::new();
    for k in ks {
        linalg::for_each_subspace(f, n0, k, &mut |s| firsts.push(s.clone()));
    }
    firsts
        .into_par_iter()
        .map(|first| {
            let mut local: HashMap<K, u64> = HashMap::new();
            let loops_ok = z.quiver.arrows.iter().enumerate().all(|(a, &(s, t))| {
                s != 0 || t != 0 || (0..first.dim()).all(|i| first.contains(f, &z.maps[a].apply(f, first.basis.row(i))))
            });
            if loops_ok {
                let mut partial = vec![first];
                extend_subrep(z, e, &mut partial, &mut |u| {
                    if let Some(k) = key(u) {
                        *local.entry(k).or_insert(0) += 1;
                    }
                });
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Result of one Hall-number count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallCount {
    pub count: u64,
    pub q: u32,
    pub dim_z: Vec<usize>,
    pub dim_x: Vec<usize>,
    pub dim_y: Vec<usize>,
}

/// `F^Z_{X,Y}`: subrepresentations isomorphic to `Y` with quotient
/// isomorphic to `X`.
pub fn hall_number(z: &QuiverRep, x: &QuiverRep, y: &QuiverRep) -> Result<HallCount> {
    same_context(z, x)?;
    same_context(z, y)?;
    let mut result = HallCount {
        count: 0,
        q: z.field.q(),
        dim_z: z.dims.clone(),
        dim_x: x.dims.clone(),
        dim_y: y.dims.clone(),
    };
    if z.dims.iter().zip(x.dims.iter().zip(&y.dims)).any(|(a, (b, c))| *a != b + c) {
        return Ok(result);
    }
    let labels = (iso_label(x)?, iso_label(y)?);
    let tally = match labels {
        (Some(lx), Some(ly)) => tally_subreps(z, Some(&y.dims), |u| {
            let sub = iso_label(&sub_rep(z, u)).ok().flatten()?;
            if sub != ly {
                return None;
            }
            let quo = iso_label(&quotient_rep(z, u)).ok().flatten()?;
            (quo == lx).then_some(())
        }),
        _ => {
            let err = std::sync::Mutex::new(None);
            let t = tally_subreps(z, Some(&y.dims), |u| {
                let check = || -> Result<bool> {
                    Ok(is_isomorphic(&sub_rep(z, u), y, DEFAULT_CAP)?
                        && is_isomorphic(&quotient_rep(z, u), x, DEFAULT_CAP)?)
                };
                match check() {
                    Ok(b) => b.then_some(()),
                    Err(e) => {
                        *err.lock().unwrap() = Some(e);
                        None
                    }
                }
            });
            if let Some(e) = err.into_inner().unwrap() {
                return Err(e);
            }
            t
        }
    };
    result.count = tally.get(&()).copied().unwrap_or(0);
    Ok(result)
}

/// `F^Z_{X,Y} |Hom(X,Y)| a_X a_Y / a_Z`, which must be a non-negative
/// integer: the number of extension classes with middle term `Z`.
pub fn riedtmann_peng_check(z: &QuiverRep, x: &QuiverRep, y: &QuiverRep) -> Result<u128> {
    let fcount = hall_number(z, x, y)?.count;
    let q = z.field.q() as u128;
    let hom = q.pow(hom_dim(x, y)? as u32);
    let (az, ax, ay) = (aut_order(z)?, aut_order(x)?, aut_order(y)?);
    extension_count(fcount, hom, ax, ay, az)
}

pub(crate) fn extension_count(f: u64, hom: u128, ax: u128, ay: u128, az: u128) -> Result<u128> {
    let num = BigInt::from(f) * BigInt::from(hom) * BigInt::from(ax) * BigInt::from(ay);
    let r = BigRational::new(num, BigInt::from(az));
    if !r.is_integer() || r < BigRational::zero() {
        return Err(HallError::NonIntegral(format!("extension count {}", r)));
    }
    r.to_integer().to_u128().ok_or_else(|| HallError::NonIntegral("overflow".into()))
}

/// `q^e` as an exact rational for any integer `e`.
pub(crate) fn q_pow(q: u32, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        BigRational::one() / num_traits::pow(base, (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_field, PointLabel};

    fn kron(q: u64) -> (Arc<Quiver>, FqField) {
        (Quiver::kronecker(), make_field(q, 1).unwrap())
    }

    #[test]
    fn hom_between_simples() {
        let (k, f) = kron(2);
        let s1 = QuiverRep::simple(k.clone(), f.clone(), 0).unwrap();
        let s2 = QuiverRep::simple(k.clone(), f.clone(), 1).unwrap();
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&s1, &QuiverRep::zero(k, f)).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s2).unwrap(), 2);
    }

    #[test]
    fn automorphism_counts() {
        let (k, f3) = kron(3);
        let s1 = QuiverRep::simple(k.clone(), f3, 0).unwrap();
        assert_eq!(aut_count(&s1, DEFAULT_CAP).unwrap(), 2);
        let f2 = make_field(2, 1).unwrap();
        let s1 = QuiverRep::simple(k.clone(), f2.clone(), 0).unwrap();
        assert_eq!(aut_count(&s1.direct_sum(&s1).unwrap(), DEFAULT_CAP).unwrap(), 6);
        let r = kronecker::regular_indecomposable(&f2, &PointLabel::affine(&f2, f2.zero()), 1);
        assert_eq!(end_dim(&r), 1);
        assert_eq!(aut_count(&r, DEFAULT_CAP).unwrap(), 1);
    }

    #[test]
    fn isomorphism_tests() {
        let (k, f) = kron(2);
        let r0 = kronecker::regular_indecomposable(&f, &PointLabel::affine(&f, f.zero()), 1);
        let r1 = kronecker::regular_indecomposable(&f, &PointLabel::affine(&f, f.one()), 1);
        assert!(is_isomorphic(&r0, &r0, DEFAULT_CAP).unwrap());
        assert!(!is_isomorphic(&r0, &r1, DEFAULT_CAP).unwrap());
        let s = QuiverRep::simple(k.clone(), f.clone(), 0)
            .unwrap()
            .direct_sum(&QuiverRep::simple(k, f, 1).unwrap())
            .unwrap();
        assert!(!is_isomorphic(&s, &r0, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn subrep_examples() {
        let (_, f) = kron(2);
        let r = kronecker::regular_indecomposable(&f, &PointLabel::affine(&f, f.zero()), 1);
        assert_eq!(subrep_enumerate(&r, &[0, 0]).len(), 1);
        assert_eq!(subrep_enumerate(&r, &[1, 1]).len(), 1);
        assert_eq!(subrep_enumerate(&r, &[0, 1]).len(), 1);
        assert_eq!(subrep_enumerate(&r, &[1, 0]).len(), 0);
    }

    #[test]
    fn hall_numbers_and_extensions() {
        let (k, f) = kron(2);
        let s1 = QuiverRep::simple(k.clone(), f.clone(), 0).unwrap();
        let s2 = QuiverRep::simple(k.clone(), f.clone(), 1).unwrap();
        let zero = QuiverRep::zero(k, f.clone());
        for a in 0..2 {
            let r = kronecker::regular_indecomposable(&f, &PointLabel::affine(&f, FqElement(a)), 1);
            assert_eq!(hall_number(&r, &s1, &s2).unwrap().count, 1);
            assert_eq!(hall_number(&r, &s2, &s1).unwrap().count, 0);
            assert_eq!(hall_number(&r, &r, &zero).unwrap().count, 1);
            assert_eq!(riedtmann_peng_check(&r, &s1, &s2).unwrap(), 1);
        }
        let split = s1.direct_sum(&s2).unwrap();
        assert_eq!(riedtmann_peng_check(&split, &s1, &s2).unwrap(), 1);
    }

    #[test]
    fn general_quiver_uses_hom_search() {
        // D4 with a central sink: not catalogue-backed, still countable
        let q = Arc::new(Quiver::new(4, vec![(1, 0), (2, 0), (3, 0)]).unwrap());
        assert_eq!(q.kind(), QuiverKind::General);
        let f = make_field(2, 1).unwrap();
        let maps = vec![Mat::from_rows(&[vec![1]]), Mat::zeros(1, 0), Mat::zeros(1, 0)];
        let z = QuiverRep::new(q.clone(), f.clone(), vec![1, 1, 0, 0], maps).unwrap();
        let s0 = QuiverRep::simple(q.clone(), f.clone(), 0).unwrap();
        let s1 = QuiverRep::simple(q.clone(), f.clone(), 1).unwrap();
        assert_eq!(hall_number(&z, &s1, &s0).unwrap().count, 1);
        assert_eq!(hall_number(&z, &s0, &s1).unwrap().count, 0);
        assert!(q.is_acyclic());
    }

    #[test]
    fn quiver_kinds() {
        assert_eq!(Quiver::kronecker().kind(), QuiverKind::Kronecker);
        assert_eq!(Quiver::cyclic(3).kind(), QuiverKind::Cyclic(3));
        assert_eq!(Quiver::cyclic(1).kind(), QuiverKind::Cyclic(1));
        assert_eq!(Quiver::linear_a(3).kind(), QuiverKind::TypeA);
        assert!(!Quiver::cyclic(2).is_acyclic());
        let json: Quiver = serde_json::from_str(r#"{"vertices": 2, "arrows": [[0,1],[0,1]]}"#).unwrap();
        assert_eq!(json.kind(), QuiverKind::Kronecker);
    }
}
