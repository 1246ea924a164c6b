//! Dense and sparse exact linear algebra over `Q`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Elementary matrix `E_{ij}` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Q::one();
        m
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |a, i| a + &self[(i, i)])
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let d = &f * &self[(r, j)];
                        self[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Q::zero(); self.cols];
                v[fc] = Q::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(i, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Characteristic polynomial `det(tI - A)`, coefficients from degree 0 upward.
    pub fn charpoly(&self) -> Vec<Q> {
        // Faddeev-LeVerrier
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            coeffs[n - k] = -am.trace() / q(k as i64);
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Rank of a family of dense vectors.
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors).rank()
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, p) = Mat::from_rows(vectors).rref();
    (0..p.len()).map(|i| r.row(i)).collect()
}

/// Intersection of two subspaces given by spanning sets (dimension `n`).
pub fn intersect(a: &[Vec<Q>], b: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let a = span_basis(a);
    let b = span_basis(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x in A ∩ B  <=>  Σ s_i a_i = Σ t_j b_j
    let cols = a.len() + b.len();
    let m = Mat::from_fn(n, cols, |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            -b[j - a.len()][i].clone()
        }
    });
    let ns = m.nullspace();
    let vecs: Vec<Vec<Q>> = ns
        .iter()
        .map(|s| {
            let mut v = vec![Q::zero(); n];
            for (i, ai) in a.iter().enumerate() {
                if s[i].is_zero() {
                    continue;
                }
                for k in 0..n {
                    v[k] += &s[i] * &ai[k];
                }
            }
            v
        })
        .collect();
    span_basis(&vecs)
}

/// Sparse vector keyed by an ordered index.
pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn sparse_axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Incremental echelon basis of sparse vectors; pivots are the largest keys.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut bound: Option<K> = None;
        loop {
            let next = v
                .iter()
                .rev()
                .filter(|(k, _)| bound.as_ref().is_none_or(|b| *k < b))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[&k];
            sparse_axpy(&mut v, &(-c), row);
            bound = Some(k);
        }
        v
    }

    /// Inserts `v`; returns the reduced remainder when it was independent.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<K>> {
        let r = self.reduce(v);
        let (lead, c) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = c.recip();
        let r: SparseVec<K> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(lead, r.clone());
        Some(r)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
        let x = a.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[q(0), q(1)]).is_none());
    }

    #[test]
    fn charpoly_of_companion() {
        // t^2 - 3t + 2
        let a = m(&[&[1, 0], &[0, 2]]);
        assert_eq!(a.charpoly(), vec![q(2), q(-3), q(1)]);
        let n = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(n.charpoly(), vec![q(0), q(0), q(1)]);
    }

    #[test]
    fn echelon_reduces() {
        let mut e: Echelon<u32> = Echelon::new();
        let v1: SparseVec<u32> = [(1, q(1)), (2, q(1))].into_iter().collect();
        let v2: SparseVec<u32> = [(1, q(1)), (2, q(-1))].into_iter().collect();
        let v3: SparseVec<u32> = [(1, qr(1, 2))].into_iter().collect();
        assert!(e.insert(&v1).is_some());
        assert!(e.insert(&v2).is_some());
        assert!(e.insert(&v3).is_none());
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn intersection_dimension() {
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let b = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        assert_eq!(intersect(&a, &b, 3).len(), 1);
    }
}
