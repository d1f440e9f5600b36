//! Small finite fields `F_q`, `q = p^k`, and closed points of the projective
//! line over them.
//!
//! An element is stored as its coefficient vector over `F_p` packed into one
//! integer: coefficient `c_i` of `x^i` contributes `c_i * p^i`. For prime
//! fields the packed value is the residue itself. Arithmetic is polynomial
//! arithmetic modulo the defining polynomial; small fields cache full tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{HallError, Result};
use crate::polyarith::{frac, rat, IntPoly};

/// Default bound on the field size.
pub const DEFAULT_BOUND: u64 = 1 << 16;
const TABLE_LIMIT: u32 = 1024;

/// Element of a finite field, as a packed coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement(pub u32);

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite field with a fixed defining polynomial over `F_p`.
#[derive(Clone)]
pub struct FqField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic defining polynomial over `F_p`, lowest degree first, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Arc<Tables>>,
    inv: Arc<Vec<u32>>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, k={}, modulus={:?})", self.q, self.p, self.k, self.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// If `q` is a prime power `p^k`, return `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

// Polynomials over F_p, lowest degree first, used only to build the field.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * inv_lead as u64 % p as u64) as u32;
        for (j, &mj) in m.iter().enumerate() {
            let t = (c as u64 * mj as u64 % p as u64) as u32;
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most half.
fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut x = idx;
            for c in g.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            g[d] = 1;
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `k` over `F_p`,
/// comparing coefficients from `x^{k-1}` down to the constant term.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for idx in 0..count {
        // idx read in base p, most significant digit = coefficient of x^{k-1}
        let mut f = vec![0u32; k as usize + 1];
        let mut x = idx;
        for c in f.iter_mut().take(k as usize) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        f[k as usize] = 1;
        if fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), FqField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FqField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build `F_{p^k}` with the default size bound.
pub fn make_field(p: u64, k: u32) -> Result<FqField> {
    make_field_bounded(p, k, DEFAULT_BOUND)
}

/// Build `F_q` from its cardinality.
pub fn field_of_order(q: u64) -> Result<FqField> {
    let (p, k) = prime_power(q).ok_or(HallError::NotPrime(q))?;
    make_field(p as u64, k)
}

pub fn make_field_bounded(p: u64, k: u32, bound: u64) -> Result<FqField> {
    if !is_prime(p) {
        return Err(HallError::NotPrime(p));
    }
    if k == 0 {
        return Err(HallError::ZeroDegree);
    }
    let q = p.checked_pow(k).unwrap_or(u64::MAX);
    if q > bound || q > u32::MAX as u64 {
        return Err(HallError::FieldTooLarge { q, bound });
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p as u32, k)) {
        return Ok(f.clone());
    }
    let p = p as u32;
    let modulus = least_irreducible(p, k);
    let mut field = FqField {
        p,
        k,
        q: q as u32,
        modulus,
        tables: None,
        inv: Arc::new(Vec::new()),
    };
    if field.q <= TABLE_LIMIT {
        let n = field.q as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..field.q {
            for b in 0..field.q {
                add[a as usize * n + b as usize] = field.slow_add(a, b);
                mul[a as usize * n + b as usize] = field.slow_mul(a, b);
            }
        }
        field.tables = Some(Arc::new(Tables { add, mul }));
    }
    let mut inv = vec![0u32; field.q as usize];
    for a in 1..field.q {
        if inv[a as usize] != 0 {
            continue;
        }
        let x = field.pow(FqElement(a), field.q as u64 - 2).0;
        inv[a as usize] = x;
        inv[x as usize] = a;
    }
    field.inv = Arc::new(inv);
    field_cache().lock().unwrap().insert((p, k), field.clone());
    Ok(field)
}

impl FqField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement(0)
    }

    pub fn one(&self) -> FqElement {
        FqElement(1)
    }

    /// Generator `x` of the extension (equals 0 for prime fields).
    pub fn gen(&self) -> FqElement {
        if self.k == 1 {
            FqElement(0)
        } else {
            FqElement(self.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q).map(FqElement)
    }

    pub fn element(&self, packed: u32) -> Option<FqElement> {
        (packed < self.q).then_some(FqElement(packed))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: FqElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut x = a.0;
        for _ in 0..self.k {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FqElement {
        let mut x = 0u32;
        for &ci in c.iter().take(self.k as usize).rev() {
            x = x * self.p + ci % self.p;
        }
        FqElement(x)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coeffs(FqElement(a)), self.coeffs(FqElement(b)));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&c).0
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (ca, cb) = (self.coeffs(FqElement(a)), self.coeffs(FqElement(b)));
        let mut prod = vec![0u32; 2 * self.k as usize];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + *x as u64 * *y as u64) % self.p as u64) as u32;
            }
        }
        let r = fp_rem(&prod, &self.modulus, self.p);
        self.from_coeffs(&r).0
    }

    #[inline]
    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            return FqElement(if s >= self.p { s - self.p } else { s });
        }
        match &self.tables {
            Some(t) => FqElement(t.add[a.0 as usize * self.q as usize + b.0 as usize]),
            None => FqElement(self.slow_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElement) -> FqElement {
        if self.k == 1 {
            return FqElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let c: Vec<u32> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    #[inline]
    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.k == 1 {
            return FqElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => FqElement(t.mul[a.0 as usize * self.q as usize + b.0 as usize]),
            None => FqElement(self.slow_mul(a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        if a.0 == 0 {
            None
        } else if self.inv.is_empty() {
            Some(self.pow(a, self.q as u64 - 2))
        } else {
            Some(FqElement(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FqElement, b: FqElement) -> Option<FqElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn frobenius(&self, a: FqElement) -> FqElement {
        self.pow(a, self.p as u64)
    }
}

/// Univariate polynomial over `F_q`, lowest degree first, trailing zeros
/// stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly(pub Vec<FqElement>);

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly(Vec::new())
    }

    pub fn constant(c: FqElement) -> Self {
        let mut p = FqPoly(vec![c]);
        p.trim();
        p
    }

    /// `t - a`.
    pub fn linear(f: &FqField, a: FqElement) -> Self {
        FqPoly(vec![f.neg(a), f.one()])
    }

    pub fn trim(&mut self) {
        while self.0.last() == Some(&FqElement(0)) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> FqElement {
        self.0.last().copied().unwrap_or(FqElement(0))
    }

    pub fn add(&self, f: &FqField, o: &FqPoly) -> FqPoly {
        let n = self.0.len().max(o.0.len());
        let z = FqElement(0);
        let mut r = FqPoly(
            (0..n)
                .map(|i| f.add(*self.0.get(i).unwrap_or(&z), *o.0.get(i).unwrap_or(&z)))
                .collect(),
        );
        r.trim();
        r
    }

    pub fn scale(&self, f: &FqField, c: FqElement) -> FqPoly {
        let mut r = FqPoly(self.0.iter().map(|&a| f.mul(a, c)).collect());
        r.trim();
        r
    }

    pub fn sub(&self, f: &FqField, o: &FqPoly) -> FqPoly {
        self.add(f, &o.scale(f, f.neg(f.one())))
    }

    pub fn mul(&self, f: &FqField, o: &FqPoly) -> FqPoly {
        if self.is_zero() || o.is_zero() {
            return FqPoly::zero();
        }
        let mut r = vec![FqElement(0); self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        let mut r = FqPoly(r);
        r.trim();
        r
    }

    pub fn pow(&self, f: &FqField, e: u32) -> FqPoly {
        let mut r = FqPoly::constant(f.one());
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, f: &FqField, d: &FqPoly) -> (FqPoly, FqPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(d.lead()).unwrap();
        let mut r = self.clone();
        r.trim();
        if r.0.len() <= dd {
            return (FqPoly::zero(), r);
        }
        let mut q = vec![FqElement(0); r.0.len() - dd];
        while r.0.len() > dd {
            let shift = r.0.len() - 1 - dd;
            let c = f.mul(r.lead(), inv_lead);
            for (j, &b) in d.0.iter().enumerate() {
                r.0[shift + j] = f.sub(r.0[shift + j], f.mul(c, b));
            }
            q[shift] = c;
            r.0.pop();
            r.trim();
        }
        let mut q = FqPoly(q);
        q.trim();
        (q, r)
    }

    pub fn monic(&self, f: &FqField) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f, f.inv(self.lead()).unwrap())
    }

    pub fn eval(&self, f: &FqField, x: FqElement) -> FqElement {
        let mut acc = f.zero();
        for &c in self.0.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, e),
            };
            parts.push(match (c.0, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{}*{}", c, mono),
            });
        }
        parts.join("+")
    }
}

fn irreducible_cache() -> &'static Mutex<HashMap<(u32, u32, usize), Arc<Vec<FqPoly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, usize), Arc<Vec<FqPoly>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All monic irreducible polynomials of degree `d` over `F_q`, in increasing
/// packed order of their coefficient vectors (constant term fastest).
pub fn monic_irreducibles(field: &FqField, d: usize) -> Arc<Vec<FqPoly>> {
    let key = (field.p, field.k, d);
    if let Some(v) = irreducible_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let q = field.q as u64;
    let lower: Vec<Arc<Vec<FqPoly>>> = (1..=d / 2).map(|e| monic_irreducibles(field, e)).collect();
    let mut out = Vec::new();
    for idx in 0..q.pow(d as u32) {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut x = idx;
        for _ in 0..d {
            coeffs.push(FqElement((x % q) as u32));
            x /= q;
        }
        coeffs.push(field.one());
        let f = FqPoly(coeffs);
        let reducible = lower
            .iter()
            .flat_map(|v| v.iter())
            .any(|g| f.divrem(field, g).1.is_zero());
        if !reducible {
            out.push(f);
        }
    }
    let out = Arc::new(out);
    irreducible_cache().lock().unwrap().insert(key, out.clone());
    out
}

/// Label of a closed point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    /// The point at infinity, `(1:0)`.
    Infinity,
    /// A finite point, labeled by its monic irreducible polynomial in `t`.
    /// The degree-1 point `(a:1)` has label `t - a`.
    Poly(FqPoly),
}

impl PointLabel {
    pub fn degree(&self) -> usize {
        match self {
            PointLabel::Infinity => 1,
            PointLabel::Poly(f) => f.degree().unwrap_or(0),
        }
    }

    /// Degree-1 finite point `(a:1)`.
    pub fn affine(field: &FqField, a: FqElement) -> Self {
        PointLabel::Poly(FqPoly::linear(field, a))
    }

    /// Homogeneous coordinates `(a:b)` for degree-1 points.
    pub fn coordinates(&self, field: &FqField) -> Option<(FqElement, FqElement)> {
        match self {
            PointLabel::Infinity => Some((field.one(), field.zero())),
            PointLabel::Poly(f) if f.degree() == Some(1) => Some((field.neg(f.0[0]), field.one())),
            _ => None,
        }
    }

    pub fn render(&self, field: &FqField) -> String {
        match self {
            PointLabel::Infinity => "inf".into(),
            PointLabel::Poly(f) if f.degree() == Some(1) => {
                format!("({}:1)", field.neg(f.0[0]))
            }
            PointLabel::Poly(f) => f.render("x"),
        }
    }
}

/// Closed point of `P^1(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPoint {
    pub degree: usize,
    pub label: PointLabel,
    pub exceptional: bool,
}

/// All closed points of degree `d`; the listed degree-1 points are flagged
/// exceptional. Degree-1 points come as `(a:1)` in packed order of `a`, then
/// infinity.
pub fn closed_points(field: &FqField, d: usize, exceptional: &[PointLabel]) -> Result<Vec<ClosedPoint>> {
    for (i, e) in exceptional.iter().enumerate() {
        if e.degree() != 1 {
            return Err(HallError::InvalidPoint(format!("{:?} is not of degree 1", e)));
        }
        if let PointLabel::Poly(f) = e {
            if f.lead() != field.one() || f.0.iter().any(|c| c.0 >= field.q) {
                return Err(HallError::InvalidPoint(format!("{:?}", e)));
            }
        }
        if exceptional[..i].contains(e) {
            return Err(HallError::DuplicateExceptional(e.render(field)));
        }
    }
    if d == 0 {
        return Err(HallError::InvalidPoint("degree 0".into()));
    }
    let mut labels: Vec<PointLabel> = monic_irreducibles(field, d)
        .iter()
        .cloned()
        .map(PointLabel::Poly)
        .collect();
    if d == 1 {
        labels.sort_by_key(|l| match l {
            PointLabel::Poly(f) => field.neg(f.0[0]).0,
            PointLabel::Infinity => u32::MAX,
        });
        labels.push(PointLabel::Infinity);
    }
    Ok(labels
        .into_iter()
        .map(|label| ClosedPoint {
            degree: d,
            exceptional: exceptional.contains(&label),
            label,
        })
        .collect())
}

/// Standard exceptional points `inf, 0, 1, 2, ...` (packed elements), the
/// first `t` of them.
pub fn standard_exceptional(field: &FqField, t: usize) -> Result<Vec<PointLabel>> {
    if t > field.q as usize + 1 {
        return Err(HallError::InvalidPoint(format!(
            "{} exceptional points do not fit on P^1(F_{})",
            t, field.q
        )));
    }
    let mut out = Vec::new();
    if t > 0 {
        out.push(PointLabel::Infinity);
    }
    for a in 0..t.saturating_sub(1) {
        out.push(PointLabel::affine(field, FqElement(a as u32)));
    }
    Ok(out)
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of ordinary closed points of degree `d` as a polynomial in `T = q`,
/// given `t` exceptional points (all of degree 1).
pub fn zeta_ordinary(d: usize, t: usize) -> IntPoly {
    if d == 1 {
        return IntPoly::from_ints(&[1 - t as i64, 1]);
    }
    let mut acc = IntPoly::zero();
    for e in 1..=d {
        if d.is_multiple_of(e) {
            acc = &acc + &IntPoly::monomial(rat(mobius(e as u64)), d / e);
        }
    }
    acc.scale(&frac(1, d as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.gen();
        assert_eq!(f.mul(w, w), f.add(w, f.one()));
    }

    #[test]
    fn f9_units_have_order_dividing_8() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 8), f.one());
        }
        // least irreducible quadratic over F_3 is x^2 + 1
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), HallError::NotPrime(4));
        assert!(matches!(make_field(2, 17), Err(HallError::FieldTooLarge { .. })));
        assert_eq!(make_field(2, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn point_counts_over_small_fields() {
        let f2 = make_field(2, 1).unwrap();
        let pts = closed_points(&f2, 1, &[]).unwrap();
        let names: Vec<String> = pts.iter().map(|p| p.label.render(&f2)).collect();
        assert_eq!(names, vec!["(0:1)", "(1:1)", "inf"]);
        let quad = closed_points(&f2, 2, &[]).unwrap();
        assert_eq!(quad.len(), 1);
        assert_eq!(quad[0].label.render(&f2), "x^2+x+1");
        let f4 = make_field(2, 2).unwrap();
        let exc = standard_exceptional(&f4, 3).unwrap();
        let pts = closed_points(&f4, 1, &exc).unwrap();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts.iter().filter(|p| !p.exceptional).count(), 2);
        let dup = [PointLabel::Infinity, PointLabel::Infinity];
        assert!(matches!(closed_points(&f4, 1, &dup), Err(HallError::DuplicateExceptional(_))));
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_ordinary(1, 0).to_string(), "T + 1");
        assert_eq!(zeta_ordinary(2, 0).to_string(), "1/2*T^2 - 1/2*T");
        assert_eq!(zeta_ordinary(2, 0).eval_int(2), rat(1));
        assert_eq!(zeta_ordinary(1, 3).eval_int(4), rat(2));
    }
}

#[cfg(test)]
mod laws {
    use super::*;

    const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = field_of_order(q).unwrap();
            let els: Vec<FqElement> = f.elements().collect();
            assert_eq!(els.len() as u64, q);
            for &a in &els {
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "q={q}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_counts_ordinary_points() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            for t in [0usize, 3] {
                if t as u64 > q + 1 {
                    continue;
                }
                let exc = standard_exceptional(&f, t).unwrap();
                for d in 1..=3 {
                    let ordinary = closed_points(&f, d, &exc).unwrap().iter().filter(|p| !p.exceptional).count();
                    assert_eq!(zeta_ordinary(d, t).eval_int(q as i64), rat(ordinary as i64), "q={q} t={t} d={d}");
                }
            }
        }
    }

    #[test]
    fn affine_line_point_count() {
        for q in [2u64, 3, 4, 5, 7] {
            let f = field_of_order(q).unwrap();
            let affine = |d: usize| {
                closed_points(&f, d, &[]).unwrap().iter().filter(|p| p.label != PointLabel::Infinity).count() as u64
            };
            for n in 1..=3usize {
                let total: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d as u64 * affine(d)).sum();
                assert_eq!(total, q.pow(n as u32), "q={q} n={n}");
            }
        }
    }
}
