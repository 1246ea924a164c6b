//! Root systems of simple Lie algebras in ε-coordinates (Bourbaki numbering).
//!
//! Weights are vectors in the ambient ε-space. The bilinear form is the
//! Euclidean one multiplied by [`RootDatum::form_scale`], chosen so that the
//! highest root has square length 2.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{dot, q, qr, to_i64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Self::A),
            "B" => Some(Self::B),
            "C" => Some(Self::C),
            "D" => Some(Self::D),
            "E" => Some(Self::E),
            "F" => Some(Self::F),
            "G" => Some(Self::G),
            _ => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A weight in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Weight { coords: vec![Q::zero(); dim] }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight { coords: c.iter().map(|&x| q(x)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Weight {
        self.scale(&q(-1))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::rational::fmt_vec(&self.coords))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub type_label: CartanType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Weight>,
    /// Ordered by height, then by simple-root coefficients.
    pub positive_roots: Vec<Weight>,
    /// Coefficients of each positive root on the simple roots.
    pub root_coeffs: Vec<Vec<i64>>,
    /// `a_ij = 2(α_i|α_j)/(α_j|α_j)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    pub form_scale: Q,
}

/// Builds the root datum of the given type and rank.
///
/// ```
/// use nilsheet::rootdata::{build_root_datum, CartanType};
/// let d = build_root_datum(CartanType::D, 5).unwrap();
/// assert_eq!(d.positive_roots.len(), 20);
/// ```
pub fn build_root_datum(t: CartanType, rank: usize) -> Result<RootDatum> {
    use CartanType::*;
    let unsupported = || Error::Unsupported(format!("root system {t}{rank}"));
    let eps = |n: usize, i: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v
    };
    let diff = |n: usize, i: usize, j: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = q(1);
        v[j] = q(-1);
        v
    };
    let (ambient, simple, scale): (usize, Vec<Vec<Q>>, Q) = match t {
        A => {
            if rank < 1 {
                return Err(unsupported());
            }
            let n = rank + 1;
            (n, (0..rank).map(|i| diff(n, i, i + 1)).collect(), q(1))
        }
        B => {
            if rank < 2 {
                return Err(unsupported());
            }
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            s.push(eps(rank, rank - 1));
            (rank, s, q(1))
        }
        C => {
            if rank < 2 {
                return Err(unsupported());
            }
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            s.push(eps(rank, rank - 1).into_iter().map(|x| x * q(2)).collect());
            (rank, s, qr(1, 2))
        }
        D => {
            if rank < 2 {
                return Err(unsupported());
            }
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![Q::zero(); rank];
            last[rank - 2] = q(1);
            last[rank - 1] = q(1);
            s.push(last);
            (rank, s, q(1))
        }
        E => {
            if !(6..=8).contains(&rank) {
                return Err(unsupported());
            }
            let h = qr(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = q(1);
            a2[1] = q(1);
            let mut s = vec![a1, a2];
            for i in 0..6 {
                s.push(diff(8, i + 1, i));
            }
            s.truncate(rank);
            (8, s, q(1))
        }
        F => {
            if rank != 4 {
                return Err(unsupported());
            }
            let h = qr(1, 2);
            (4, vec![diff(4, 1, 2), diff(4, 2, 3), eps(4, 3), vec![h.clone(), -h.clone(), -h.clone(), -h]], q(1))
        }
        G => {
            if rank != 2 {
                return Err(unsupported());
            }
            (3, vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]], qr(1, 3))
        }
    };
    let simple: Vec<Weight> = simple.into_iter().map(Weight::new).collect();
    let form = |a: &Weight, b: &Weight| dot(&a.coords, &b.coords) * &scale;
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let v = q(2) * form(&simple[i], &simple[j]) / form(&simple[j], &simple[j]);
                    to_i64(&v).expect("integral Cartan entry")
                })
                .collect()
        })
        .collect();
    // closure by root strings, height by height
    let mut coeffs: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut c = vec![0; rank];
            c[i] = 1;
            c
        })
        .collect();
    let mut layer = coeffs.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..rank {
                // p: how far beta - k α_i stays a root
                let mut p = 0;
                loop {
                    let mut c = beta.clone();
                    c[i] -= p + 1;
                    if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) && coeffs.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                let qq = p - pairing;
                if qq > 0 {
                    let mut c = beta.clone();
                    c[i] += 1;
                    if !next.contains(&c) && !coeffs.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        coeffs.extend(next.iter().cloned());
        layer = next;
    }
    let positive_roots = coeffs
        .iter()
        .map(|c| {
            let mut w = Weight::zero(ambient);
            for (i, &ci) in c.iter().enumerate() {
                if ci != 0 {
                    w = w.add(&simple[i].scale(&q(ci)));
                }
            }
            w
        })
        .collect();
    Ok(RootDatum {
        type_label: t,
        rank,
        ambient_dim: ambient,
        simple_roots: simple,
        positive_roots,
        root_coeffs: coeffs,
        cartan_matrix: cartan,
        form_scale: scale,
    })
}

impl RootDatum {
    pub fn form(&self, a: &Weight, b: &Weight) -> Q {
        dot(&a.coords, &b.coords) * &self.form_scale
    }

    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Weight) -> Q {
        q(2) * self.form(lambda, alpha) / self.form(alpha, alpha)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.root_coeffs[idx].iter().sum()
    }

    pub fn highest_root(&self) -> Weight {
        self.positive_roots.last().cloned().expect("nonempty root system")
    }

    pub fn rho(&self) -> Weight {
        let mut s = Weight::zero(self.ambient_dim);
        for a in &self.positive_roots {
            s = s.add(a);
        }
        s.scale(&qr(1, 2))
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.positive_roots.iter().position(|a| a == w)
    }

    pub fn simple_coroot_pairings(&self, lambda: &Weight) -> Vec<Q> {
        self.simple_roots.iter().map(|a| self.coroot_pairing(lambda, a)).collect()
    }

    /// Coordinates `(λ|α_i∨)` in the basis of fundamental weights.
    pub fn to_fundamental(&self, lambda: &Weight) -> Vec<Q> {
        self.simple_coroot_pairings(lambda)
    }

    pub fn from_fundamental(&self, c: &[Q]) -> Weight {
        let fw = fundamental_weights(self);
        let mut w = Weight::zero(self.ambient_dim);
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                w = w.add(&fw[i].scale(ci));
            }
        }
        w
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        fundamental_weights(self).swap_remove(i)
    }

    pub fn coxeter_number(&self) -> i64 {
        (2 * self.positive_roots.len() / self.rank) as i64
    }

    /// `1 + (ρ|θ∨)`.
    pub fn dual_coxeter_number(&self) -> i64 {
        let th = self.highest_root();
        to_i64(&(q(1) + self.coroot_pairing(&self.rho(), &th))).expect("integral h∨")
    }

    /// Ratio of squared lengths of long and short roots.
    pub fn lacing_number(&self) -> i64 {
        let lens: Vec<Q> = self.simple_roots.iter().map(|a| self.form(a, a)).collect();
        let max = lens.iter().max().unwrap();
        let min = lens.iter().min().unwrap();
        to_i64(&(max / min)).expect("integral lacing")
    }

    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let a = &self.simple_roots[i];
        lambda.sub(&a.scale(&self.coroot_pairing(lambda, a)))
    }

    /// The unique dominant Weyl conjugate.
    pub fn dominant(&self, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        loop {
            let bad = (0..self.rank).find(|&i| self.coroot_pairing(&w, &self.simple_roots[i]).is_negative());
            match bad {
                Some(i) => w = self.reflect(&w, i),
                None => return w,
            }
        }
    }

    pub fn dimension(&self) -> usize {
        2 * self.positive_roots.len() + self.rank
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Q {
        let rho = self.rho();
        let lr = lambda.add(&rho);
        self.positive_roots
            .iter()
            .fold(Q::one(), |acc, a| acc * self.form(&lr, a) / self.form(&rho, a))
    }
}

/// Solves `(ϖ_i|α_j∨) = δ_ij` inside the span of the simple roots.
pub fn fundamental_weights(d: &RootDatum) -> Vec<Weight> {
    let r = d.rank;
    // ϖ_i = Σ_k c_ik α_k ; (ϖ_i|α_j∨) = Σ_k c_ik a_kj
    let a = Mat::from_fn(r, r, |k, j| q(d.cartan_matrix[k][j]));
    let inv = a.inverse().expect("Cartan matrix invertible");
    (0..r)
        .map(|i| {
            let mut w = Weight::zero(d.ambient_dim);
            for k in 0..r {
                let c = &inv[(i, k)];
                if !c.is_zero() {
                    w = w.add(&d.simple_roots[k].scale(c));
                }
            }
            w
        })
        .collect()
}

/// Whether some Weyl group element maps `lhs` to `rhs`.
pub fn weyl_conjugate(d: &RootDatum, lhs: &Weight, rhs: &Weight) -> bool {
    d.dominant(lhs) == d.dominant(rhs)
}

/// A nonzero `c` with `lambda` Weyl-conjugate to `c·target`.
pub fn cone_membership(d: &RootDatum, lambda: &Weight, target: &Weight) -> Option<Q> {
    if lambda.is_zero() || target.is_zero() {
        return None;
    }
    let dl = d.dominant(lambda);
    for sign in [1i64, -1] {
        let dt = d.dominant(&target.scale(&q(sign)));
        if let Some(c) = proportional(&dl, &dt) {
            if c.is_positive() {
                return Some(c * q(sign));
            }
        }
    }
    None
}

fn proportional(a: &Weight, b: &Weight) -> Option<Q> {
    let mut ratio: Option<Q> = None;
    for (x, y) in a.coords.iter().zip(&b.coords) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let r = x / y;
        match &ratio {
            None => ratio = Some(r),
            Some(r0) if *r0 != r => return None,
            _ => {}
        }
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use CartanType::*;

    fn counts(t: CartanType, r: usize) -> usize {
        build_root_datum(t, r).unwrap().positive_roots.len()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(counts(A, 3), 6);
        assert_eq!(counts(A, 1), 1);
        assert_eq!(counts(B, 3), 9);
        assert_eq!(counts(C, 3), 9);
        assert_eq!(counts(D, 5), 20);
        assert_eq!(counts(E, 6), 36);
        assert_eq!(counts(E, 7), 63);
        assert_eq!(counts(E, 8), 120);
        assert_eq!(counts(F, 4), 24);
        assert_eq!(counts(G, 2), 6);
    }

    #[test]
    fn highest_roots() {
        let a = build_root_datum(A, 3).unwrap();
        assert_eq!(a.highest_root(), Weight::from_ints(&[1, 0, 0, -1]));
        let d = build_root_datum(D, 5).unwrap();
        assert_eq!(d.highest_root(), Weight::from_ints(&[1, 1, 0, 0, 0]));
        for (t, r) in [(A, 4), (B, 3), (C, 3), (D, 4), (E, 6), (E, 8), (F, 4), (G, 2)] {
            let d = build_root_datum(t, r).unwrap();
            let th = d.highest_root();
            assert_eq!(d.form(&th, &th), q(2), "{t}{r}");
        }
    }

    #[test]
    fn coxeter_numbers() {
        let expect = [
            (A, 3, 4, 4),
            (B, 3, 6, 5),
            (C, 3, 6, 4),
            (D, 5, 8, 8),
            (E, 6, 12, 12),
            (E, 7, 18, 18),
            (E, 8, 30, 30),
            (F, 4, 12, 9),
            (G, 2, 6, 4),
        ];
        for (t, r, h, hv) in expect {
            let d = build_root_datum(t, r).unwrap();
            assert_eq!(d.coxeter_number(), h, "{t}{r}");
            assert_eq!(d.dual_coxeter_number(), hv, "{t}{r}");
        }
        assert_eq!(build_root_datum(G, 2).unwrap().lacing_number(), 3);
        assert_eq!(build_root_datum(B, 4).unwrap().lacing_number(), 2);
        assert_eq!(build_root_datum(D, 4).unwrap().lacing_number(), 1);
    }

    #[test]
    fn fundamental_weight_formulas() {
        let a = build_root_datum(A, 3).unwrap();
        let w1 = a.fundamental_weight(0);
        assert_eq!(w1.coords, vec![qr(3, 4), qr(-1, 4), qr(-1, 4), qr(-1, 4)]);
        let d = build_root_datum(D, 5).unwrap();
        assert_eq!(d.fundamental_weight(4).coords, vec![qr(1, 2); 5]);
        for (t, r) in [(A, 5), (D, 6), (E, 7), (F, 4), (G, 2)] {
            let d = build_root_datum(t, r).unwrap();
            let fw = fundamental_weights(&d);
            for i in 0..r {
                for j in 0..r {
                    let p = d.coroot_pairing(&fw[i], &d.simple_roots[j]);
                    assert_eq!(p, if i == j { q(1) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn cartan_matrix_type_d() {
        let d = build_root_datum(D, 4).unwrap();
        assert_eq!(d.cartan_matrix[1], vec![-1, 2, -1, -1]);
        assert_eq!(d.cartan_matrix[2][3], 0);
    }

    #[test]
    fn conjugacy_examples() {
        let a = build_root_datum(A, 3).unwrap();
        let w1 = a.fundamental_weight(0);
        let p = Weight::new(vec![qr(-1, 4), qr(-1, 4), qr(-1, 4), qr(3, 4)]);
        assert!(weyl_conjugate(&a, &w1, &p));
        let d5 = build_root_datum(D, 5).unwrap();
        assert!(weyl_conjugate(&d5, &d5.fundamental_weight(3), &d5.fundamental_weight(4).neg()));
        let d6 = build_root_datum(D, 6).unwrap();
        assert!(!weyl_conjugate(&d6, &d6.fundamental_weight(4), &d6.fundamental_weight(5)));
    }

    #[test]
    fn cone_examples() {
        let a = build_root_datum(A, 3).unwrap();
        let w1 = a.fundamental_weight(0);
        let w2 = a.fundamental_weight(1);
        assert!(cone_membership(&a, &w1.sub(&w2), &w1).is_some());
        assert!(cone_membership(&a, &w2, &w1).is_none());
        assert!(cone_membership(&a, &Weight::zero(4), &w1).is_none());
        let c = cone_membership(&a, &w1.scale(&q(-3)), &w1).unwrap();
        assert_eq!(c, q(-3));
    }

    #[test]
    fn weyl_dimensions() {
        let a = build_root_datum(A, 3).unwrap();
        assert_eq!(a.weyl_dimension(&a.highest_root()), q(15));
        let d = build_root_datum(D, 5).unwrap();
        let two_w1 = d.fundamental_weight(0).scale(&q(2));
        assert_eq!(d.weyl_dimension(&two_w1), q(54));
    }
}
