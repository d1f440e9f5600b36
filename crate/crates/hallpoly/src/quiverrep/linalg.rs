//! Dense linear algebra over `F_q`: row reduction, null spaces, subspace
//! enumeration in reduced row echelon form, and Smith invariants of matrices
//! over `F_q[t]`.

use crate::exactfield::{FqElement, FqField, FqPoly};

const ZERO: FqElement = FqElement(0);

/// Row-major dense matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FqElement>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(f: &FqField, n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// From packed integer rows.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, FqElement(x));
            }
        }
        m
    }

    pub fn from_vectors(cols: usize, rows: &[Vec<FqElement>]) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.0).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.0 == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FqField, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.0 == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = f.add(r.data[idx], f.mul(a, o.get(k, j)));
                }
            }
        }
        r
    }

    pub fn apply(&self, f: &FqField, v: &[FqElement]) -> Vec<FqElement> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, f: &FqField, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &FqField, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &FqField, c: FqElement) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Stack rows of `self` above rows of `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self, f: &FqField) -> usize {
        rref(f, self).1.len()
    }

    pub fn pow(&self, f: &FqField, e: usize) -> Mat {
        let mut r = Mat::identity(f, self.rows);
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    /// Evaluate a polynomial at a square matrix.
    pub fn eval_poly(&self, f: &FqField, p: &FqPoly) -> Mat {
        let mut acc = Mat::zeros(self.rows, self.cols);
        for &c in p.0.iter().rev() {
            acc = acc.mul(f, self).add(f, &Mat::identity(f, self.rows).scale(f, c));
        }
        acc
    }

    pub fn is_invertible(&self, f: &FqField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &FqField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, f.one());
        }
        let (r, piv) = rref(f, &aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form with zero rows removed, and the pivot columns.
pub fn rref(f: &FqField, m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| a.get(i, c).0 != 0) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).unwrap();
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor.0 == 0 {
                continue;
            }
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.rows = r;
    a.data.truncate(r * a.cols);
    (a, pivots)
}

/// Basis of the right null space `{v : m v = 0}`.
pub fn nullspace(f: &FqField, m: &Mat) -> Vec<Vec<FqElement>> {
    let (r, piv) = rref(f, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &piv {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![ZERO; m.cols];
        v[free] = f.one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// A subspace of `F_q^n` given by its RREF basis (rows) and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: Mat::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(f: &FqField, n: usize) -> Self {
        Subspace {
            basis: Mat::identity(f, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn span(f: &FqField, m: &Mat) -> Self {
        let (basis, pivots) = rref(f, m);
        Subspace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    /// Reduce `v` modulo the subspace: the result vanishes on pivot columns.
    pub fn reduce(&self, f: &FqField, v: &mut [FqElement]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c.0 == 0 {
                continue;
            }
            for (j, x) in v.iter_mut().enumerate().skip(p) {
                *x = f.sub(*x, f.mul(c, self.basis.get(i, j)));
            }
        }
    }

    pub fn contains(&self, f: &FqField, v: &[FqElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|x| x.0 == 0)
    }

    /// Coordinates of a vector of the subspace in the RREF basis.
    pub fn coords(&self, v: &[FqElement]) -> Vec<FqElement> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Columns outside the pivot set: coordinates on a fixed complement.
    pub fn complement(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Call `visit` on every `k`-dimensional subspace of `F_q^n`, each given in
/// RREF, exactly once.
pub fn for_each_subspace(f: &FqField, n: usize, k: usize, visit: &mut dyn FnMut(&Subspace)) {
    if k > n {
        return;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        enumerate_with_pivots(f, n, &pivots, visit);
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn enumerate_with_pivots(f: &FqField, n: usize, pivots: &[usize], visit: &mut dyn FnMut(&Subspace)) {
    let k = pivots.len();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<(usize, usize)> = (0..k)
        .flat_map(|r| (pivots[r] + 1..n).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
        .collect();
    let mut m = Mat::zeros(k, n);
    for (r, &p) in pivots.iter().enumerate() {
        m.set(r, p, f.one());
    }
    let q = f.q();
    let mut counter = vec![0u32; free.len()];
    loop {
        for (&(r, c), &x) in free.iter().zip(&counter) {
            m.set(r, c, FqElement(x));
        }
        visit(&Subspace {
            basis: m.clone(),
            pivots: pivots.to_vec(),
        });
        let mut i = 0;
        loop {
            if i == counter.len() {
                return;
            }
            counter[i] += 1;
            if counter[i] < q {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

/// Every `k`-dimensional subspace of `F_q^n` containing `w`, exactly once.
pub fn for_each_superspace(f: &FqField, w: &Subspace, k: usize, visit: &mut dyn FnMut(&Subspace)) {
    let n = w.ambient();
    if k < w.dim() || k > n {
        return;
    }
    let comp = w.complement();
    for_each_subspace(f, comp.len(), k - w.dim(), &mut |s| {
        let mut lifted = Mat::zeros(s.dim(), n);
        for i in 0..s.dim() {
            for (j, &c) in comp.iter().enumerate() {
                lifted.set(i, c, s.basis.get(i, j));
            }
        }
        visit(&Subspace::span(f, &w.basis.vstack(&lifted)));
    });
}

/// Nonzero Smith invariant factors (monic, each dividing the next) of a
/// matrix over `F_q[t]`.
pub fn smith_invariants(f: &FqField, m: &[Vec<FqPoly>]) -> Vec<FqPoly> {
    let mut a: Vec<Vec<FqPoly>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // smallest-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return out;
            };
            a.swap(k, bi);
            for row in a.iter_mut() {
                row.swap(k, bj);
            }
            let pivot = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..rows {
                let (qt, r) = a[i][k].divrem(f, &pivot);
                if !qt.is_zero() {
                    for j in k..cols {
                        let t = qt.mul(f, &a[k][j]);
                        a[i][j] = a[i][j].sub(f, &t);
                    }
                }
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                let (qt, r) = a[k][j].divrem(f, &pivot);
                if !qt.is_zero() {
                    for row in a.iter_mut().skip(k) {
                        let t = qt.mul(f, &row[k]);
                        row[j] = row[j].sub(f, &t);
                    }
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a[i][j].divrem(f, &pivot).1.is_zero()));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let t = a[i][j].clone();
                        a[k][j] = a[k][j].add(f, &t);
                    }
                }
                None => {
                    out.push(pivot.monic(f));
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::make_field;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            let q = f.q() as u128;
            for n in 0..=4 {
                for d in 0..=n {
                    let mut c = 0u128;
                    for_each_subspace(&f, n, d, &mut |_| c += 1);
                    assert_eq!(c, gaussian_binomial(n, d, q), "n={} d={} q={}", n, d, q);
                }
            }
        }
    }

    #[test]
    fn superspaces_count() {
        let f = make_field(3, 1).unwrap();
        let w = Subspace::span(&f, &Mat::from_rows(&[vec![1, 2, 0, 1]]));
        let mut c = 0;
        for_each_superspace(&f, &w, 2, &mut |s| {
            assert!(s.contains(&f, w.basis.row(0)));
            c += 1;
        });
        assert_eq!(c as u128, gaussian_binomial(3, 1, 3));
    }

    #[test]
    fn nullspace_and_inverse() {
        let f = make_field(5, 1).unwrap();
        let m = Mat::from_rows(&[vec![1, 2, 3], vec![0, 1, 4]]);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&f, &ns[0]).iter().all(|x| x.0 == 0));
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Mat::identity(&f, 2));
        assert!(Mat::from_rows(&[vec![1, 2], vec![2, 4]]).inverse(&f).is_none());
    }

    #[test]
    fn smith_of_jordan_pencil() {
        let f = make_field(2, 1).unwrap();
        // t*I - J_1(2) has invariant factors 1, (t-1)^2
        let t = FqPoly(vec![FqElement(0), FqElement(1)]);
        let one = FqPoly::constant(f.one());
        let m = vec![
            vec![t.sub(&f, &one), one.clone()],
            vec![FqPoly::zero(), t.sub(&f, &one)],
        ];
        let inv = smith_invariants(&f, &m);
        assert_eq!(inv.len(), 2);
        assert_eq!(inv[0], one);
        assert_eq!(inv[1], t.sub(&f, &one).pow(&f, 2));
    }
}
