//! Chevalley bases of 𝔰𝔩_n and 𝔰𝔬_{2r} realized by matrices.
//!
//! Basis order: `e_α` for the positive roots in datum order, then `f_α` in
//! the same order, then `h_1, …, h_rank`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{intersect, Mat};
use crate::orbits::{Partition, VeryEvenLabel};
use crate::rational::{q, qr, to_i64, Q};
use crate::rootdata::{build_root_datum, CartanType, RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    /// 𝔰𝔩_n acting on ℂ^n.
    Sl(usize),
    /// 𝔰𝔬_{2r} preserving the antidiagonal form on ℂ^{2r}.
    SoEven(usize),
}

impl Realization {
    pub fn matrix_size(&self) -> usize {
        match *self {
            Realization::Sl(n) => n,
            Realization::SoEven(r) => 2 * r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    E(usize),
    F(usize),
    H(usize),
}

/// Sparse element of a Lie algebra in its Chevalley basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieElement(pub BTreeMap<usize, Q>);

impl LieElement {
    pub fn zero() -> Self {
        LieElement(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        LieElement([(i, Q::one())].into_iter().collect())
    }

    pub fn from_pairs(p: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut out = LieElement::zero();
        for (i, c) in p {
            out.add_term(i, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, i: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (i, c) in &o.0 {
            out.add_term(*i, c);
        }
        out
    }

    pub fn sub(&self, o: &LieElement) -> LieElement {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[Q]) -> Self {
        LieElement(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
    }
}

#[derive(Clone)]
pub struct LieAlgebra {
    pub datum: RootDatum,
    realization: Realization,
    n_pos: usize,
    dim: usize,
    table: Vec<Vec<Vec<(usize, i64)>>>,
    form: Vec<Vec<(usize, Q)>>,
    mats: Vec<Mat>,
    reader_cols: Vec<usize>,
    reader_inv: Mat,
    dual_coxeter: i64,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({})", self.name())
    }
}

/// 𝔰𝔩_n with `e_{ε_i−ε_j} = E_{ij}`, `f = eᵀ`, `h_i = E_{ii} − E_{i+1,i+1}`.
///
/// ```
/// let g = nilsheet::liealg::build_sl(4).unwrap();
/// assert_eq!(g.dim(), 15);
/// assert_eq!(g.dual_coxeter(), 4);
/// ```
pub fn build_sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::Unsupported(format!("sl_{n}")));
    }
    let datum = build_root_datum(CartanType::A, n - 1)?;
    let mut mats = Vec::new();
    for a in &datum.positive_roots {
        let (i, j) = eps_pair(a);
        mats.push(Mat::unit(n, i, j));
    }
    let es = mats.clone();
    for m in &es {
        mats.push(m.transpose());
    }
    for i in 0..n - 1 {
        mats.push(&Mat::unit(n, i, i) - &Mat::unit(n, i + 1, i + 1));
    }
    Ok(assemble(datum, Realization::Sl(n), mats, q(1)))
}

/// 𝔰𝔬_{2r} as matrices `X` with `XᵀJ + JX = 0`, `J` antidiagonal.
pub fn build_so_even(r: usize) -> Result<LieAlgebra> {
    if r < 3 {
        return Err(Error::Unsupported(format!("so_{}", 2 * r)));
    }
    let datum = build_root_datum(CartanType::D, r)?;
    let n = 2 * r;
    let prime = |i: usize| n - 1 - i;
    let mut mats = Vec::new();
    for a in &datum.positive_roots {
        let nz: Vec<(usize, Q)> =
            a.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        let (i, j) = (nz[0].0, nz[1].0);
        let m = if nz[1].1 == q(-1) {
            &Mat::unit(n, i, j) - &Mat::unit(n, prime(j), prime(i))
        } else {
            &Mat::unit(n, i, prime(j)) - &Mat::unit(n, j, prime(i))
        };
        mats.push(m);
    }
    let es = mats.clone();
    for m in &es {
        mats.push(m.transpose());
    }
    for i in 0..r {
        mats.push(es[i].commutator(&es[i].transpose()));
    }
    Ok(assemble(datum, Realization::SoEven(r), mats, qr(1, 2)))
}

fn eps_pair(a: &Weight) -> (usize, usize) {
    let i = a.coords.iter().position(|c| *c == q(1)).unwrap();
    let j = a.coords.iter().position(|c| *c == q(-1)).unwrap();
    (i, j)
}

fn assemble(datum: RootDatum, realization: Realization, mats: Vec<Mat>, trace_scale: Q) -> LieAlgebra {
    let n_pos = datum.positive_roots.len();
    let dim = mats.len();
    let flat: Vec<Vec<Q>> = mats.iter().map(|m| m.as_slice().to_vec()).collect();
    let (_, pivots) = Mat::from_rows(&flat).rref();
    assert_eq!(pivots.len(), dim, "realization must be linearly independent");
    let sub = Mat::from_fn(dim, dim, |i, j| flat[i][pivots[j]].clone());
    let reader_inv = sub.inverse().expect("pivot block invertible");
    let mut g = LieAlgebra {
        dual_coxeter: datum.dual_coxeter_number(),
        datum,
        realization,
        n_pos,
        dim,
        table: Vec::new(),
        form: Vec::new(),
        mats,
        reader_cols: pivots,
        reader_inv,
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let c = g.mats[i].commutator(&g.mats[j]);
            let x = g.read_matrix(&c).expect("closed under brackets");
            table[i][j] = x.0.iter().map(|(k, v)| (*k, to_i64(v).expect("integral structure constant"))).collect();
        }
    }
    g.table = table;
    let mut form = vec![Vec::new(); dim];
    for i in 0..dim {
        for j in 0..dim {
            let v = (&g.mats[i] * &g.mats[j]).trace() * &trace_scale;
            if !v.is_zero() {
                form[i].push((j, v));
            }
        }
    }
    g.form = form;
    g
}

impl LieAlgebra {
    pub fn name(&self) -> String {
        match self.realization {
            Realization::Sl(n) => format!("sl_{n}"),
            Realization::SoEven(r) => format!("so_{}", 2 * r),
        }
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn cartan_type(&self) -> CartanType {
        self.datum.type_label
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn e_index(&self, root: usize) -> usize {
        root
    }

    pub fn f_index(&self, root: usize) -> usize {
        self.n_pos + root
    }

    pub fn h_index(&self, i: usize) -> usize {
        2 * self.n_pos + i
    }

    pub fn e(&self, root: usize) -> LieElement {
        LieElement::basis(root)
    }

    pub fn f(&self, root: usize) -> LieElement {
        LieElement::basis(self.n_pos + root)
    }

    pub fn h(&self, i: usize) -> LieElement {
        LieElement::basis(2 * self.n_pos + i)
    }

    pub fn kind(&self, i: usize) -> BasisKind {
        if i < self.n_pos {
            BasisKind::E(i)
        } else if i < 2 * self.n_pos {
            BasisKind::F(i - self.n_pos)
        } else {
            BasisKind::H(i - 2 * self.n_pos)
        }
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        i >= 2 * self.n_pos
    }

    pub fn basis_label(&self, i: usize) -> String {
        match self.kind(i) {
            BasisKind::E(a) => format!("e{}", self.root_label(a)),
            BasisKind::F(a) => format!("f{}", self.root_label(a)),
            BasisKind::H(k) => format!("h{}", k + 1),
        }
    }

    fn root_label(&self, a: usize) -> String {
        let w = &self.datum.positive_roots[a];
        match self.realization {
            Realization::Sl(_) => {
                let (i, j) = eps_pair(w);
                format!("[{},{}]", i + 1, j + 1)
            }
            Realization::SoEven(_) => {
                let nz: Vec<usize> = (0..w.coords.len()).filter(|&k| !w.coords[k].is_zero()).collect();
                let sign = if w.coords[nz[1]] == q(1) { '+' } else { '-' };
                format!("[{}{}{}]", nz[0] + 1, sign, nz[1] + 1)
            }
        }
    }

    /// Index of the positive root with the given ε-coordinates.
    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.datum.root_index(w)
    }

    pub fn highest_root_index(&self) -> usize {
        self.n_pos - 1
    }

    /// Weight of a basis vector.
    pub fn basis_weight(&self, i: usize) -> Weight {
        match self.kind(i) {
            BasisKind::E(a) => self.datum.positive_roots[a].clone(),
            BasisKind::F(a) => self.datum.positive_roots[a].neg(),
            BasisKind::H(_) => Weight::zero(self.datum.ambient_dim),
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, a) in &x.0 {
            for (j, b) in &y.0 {
                let ab = a * b;
                for (k, c) in &self.table[*i][*j] {
                    *acc.entry(*k).or_insert_with(Q::zero) += &ab * q(*c);
                }
            }
        }
        LieElement(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn form_basis(&self, i: usize, j: usize) -> Q {
        self.form[i].iter().find(|(k, _)| *k == j).map(|(_, v)| v.clone()).unwrap_or_else(Q::zero)
    }

    pub fn form_row(&self, i: usize) -> &[(usize, Q)] {
        &self.form[i]
    }

    /// The normalized invariant form `(x|y)`.
    pub fn form(&self, x: &LieElement, y: &LieElement) -> Q {
        let mut s = Q::zero();
        for (i, a) in &x.0 {
            for (j, v) in &self.form[*i] {
                if let Some(b) = y.0.get(j) {
                    s += a * b * v;
                }
            }
        }
        s
    }

    pub fn basis_matrix(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn to_matrix(&self, x: &LieElement) -> Mat {
        let n = self.realization.matrix_size();
        let mut m = Mat::zeros(n, n);
        for (i, c) in &x.0 {
            m = &m + &self.mats[*i].scale(c);
        }
        m
    }

    /// Coordinates of a matrix lying in the realization.
    pub fn read_matrix(&self, m: &Mat) -> Option<LieElement> {
        let flat = m.as_slice();
        let xp: Vec<Q> = self.reader_cols.iter().map(|&c| flat[c].clone()).collect();
        let mut coords = vec![Q::zero(); self.dim];
        for (j, coord) in coords.iter_mut().enumerate() {
            let mut s = Q::zero();
            for (i, x) in xp.iter().enumerate() {
                if !x.is_zero() {
                    s += x * &self.reader_inv[(i, j)];
                }
            }
            *coord = s;
        }
        let el = LieElement::from_dense(&coords);
        if &self.to_matrix(&el) == m {
            Some(el)
        } else {
            None
        }
    }

    /// Matrix of `ad x`; column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &LieElement) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, a) in &x.0 {
            for j in 0..self.dim {
                for (k, c) in &self.table[*i][j] {
                    m[(*k, j)] += a * q(*c);
                }
            }
        }
        m
    }

    pub fn centralizer_dim(&self, x: &LieElement) -> usize {
        self.dim - self.ad_matrix(x).rank()
    }

    /// Killing form from the adjoint representation.
    pub fn killing(&self, i: usize, j: usize) -> Q {
        let a = self.ad_matrix(&LieElement::basis(i));
        let b = self.ad_matrix(&LieElement::basis(j));
        (&a * &b).trace()
    }

    /// Element `t_ν ∈ 𝔥` with `(t_ν|h) = ν(h)`.
    pub fn cartan_element(&self, nu: &Weight) -> LieElement {
        let r = self.rank();
        let gram = Mat::from_fn(r, r, |i, j| self.form_basis(self.h_index(i), self.h_index(j)));
        let rhs: Vec<Q> = self.datum.simple_coroot_pairings(nu);
        let c = gram.solve(&rhs).expect("form nondegenerate on 𝔥");
        LieElement::from_pairs(c.into_iter().enumerate().map(|(i, x)| (self.h_index(i), x)))
    }

    /// Inverse of [`Self::cartan_element`].
    pub fn weight_of_cartan(&self, t: &LieElement) -> Weight {
        let r = self.rank();
        let pair: Vec<Q> = (0..r).map(|j| self.form(t, &self.h(j))).collect();
        self.datum.from_fundamental(&pair)
    }

    /// Root evaluation `α(t)` for `t ∈ 𝔥`.
    pub fn eval_root(&self, alpha: &Weight, t: &LieElement) -> Q {
        self.datum.form(alpha, &self.weight_of_cartan(t))
    }

    /// Jordan type of a nilpotent element, with the very-even label for type D.
    ///
    /// ```
    /// let g = nilsheet::liealg::build_sl(4).unwrap();
    /// let th = g.highest_root_index();
    /// let (p, _) = g.jordan_type(&g.e(th)).unwrap();
    /// assert_eq!(p.parts(), &[2, 1, 1]);
    /// ```
    pub fn jordan_type(&self, x: &LieElement) -> Result<(Partition, Option<VeryEvenLabel>)> {
        let m = self.to_matrix(x);
        jordan_type_matrix(&m, self.realization)
    }

    /// Flips the sign of one structure constant pair, for mutation testing only.
    #[doc(hidden)]
    pub fn flip_structure_constant(&mut self, i: usize, j: usize) -> bool {
        if self.table[i][j].is_empty() {
            return false;
        }
        for (_, c) in self.table[i][j].iter_mut() {
            *c = -*c;
        }
        if i != j {
            for (_, c) in self.table[j][i].iter_mut() {
                *c = -*c;
            }
        }
        true
    }
}

pub fn jordan_type_matrix(m: &Mat, realization: Realization) -> Result<(Partition, Option<VeryEvenLabel>)> {
    let n = m.rows;
    let mut ranks = vec![n];
    let mut p = Mat::identity(n);
    for _ in 0..n {
        p = &p * m;
        ranks.push(p.rank());
        if *ranks.last().unwrap() == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent);
    }
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let mut ge: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    ge.push(0);
    let mut parts = Vec::new();
    for k in 1..ge.len() {
        let exactly = ge[k - 1] - ge[k];
        for _ in 0..exactly {
            parts.push(k);
        }
    }
    let part = Partition::new(parts);
    let label = match realization {
        Realization::SoEven(r) if part.is_very_even() => Some(very_even_label(m, r)),
        _ => None,
    };
    Ok((part, label))
}

/// Family of the canonical maximal isotropic subspace `Σ_j im x^j ∩ ker x^j`
/// relative to `span(v_1, …, v_r)`.
fn very_even_label(m: &Mat, r: usize) -> VeryEvenLabel {
    let n = 2 * r;
    let mut l_span: Vec<Vec<Q>> = Vec::new();
    let mut p = Mat::identity(n);
    for _ in 1..=n {
        p = &p * m;
        if p.is_zero() {
            break;
        }
        let im: Vec<Vec<Q>> = (0..n).map(|c| p.col(c)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        let ker = p.nullspace();
        l_span.extend(intersect(&im, &ker, n));
    }
    let l = crate::linalg::span_basis(&l_span);
    debug_assert_eq!(l.len(), r, "canonical subspace is Lagrangian");
    let u: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect();
    let d = intersect(&l, &u, n).len();
    if d % 2 == r % 2 {
        VeryEvenLabel::II
    } else {
        VeryEvenLabel::I
    }
}
