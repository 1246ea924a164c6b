//! Zero loci on `𝔥` of systems of products of two affine forms, written in
//! the coordinates `λ_i = λ(h_i)` (fundamental-weight coordinates).

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{Echelon, Mat};
use crate::rational::{dot, q, qr, Q};
use crate::rootdata::{cone_membership, RootDatum, Weight};
use crate::symalg::{chevalley_projection, zero_weight_space, Monomial, PolyElement, SubmoduleSpan};

/// `a·λ + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl AffineForm {
    pub fn linear(coeffs: Vec<Q>) -> Self {
        AffineForm { coeffs, constant: Q::zero() }
    }

    /// The coordinate `λ_i` (0-based).
    pub fn coordinate(rank: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); rank];
        c[i] = Q::one();
        Self::linear(c)
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn to_poly(&self) -> PolyElement {
        let mut p = PolyElement::constant(self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            p = p.add(&PolyElement::var(i).scale(c));
        }
        p
    }

    fn vanishes_on(&self, s: &LinearComponent) -> bool {
        self.eval(&s.base).is_zero() && s.directions.iter().all(|d| dot(&self.coeffs, d).is_zero())
    }
}

/// A generator `left · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub left: AffineForm,
    pub right: AffineForm,
}

impl Generator {
    pub fn new(left: AffineForm, right: AffineForm) -> Self {
        Generator { left, right }
    }

    pub fn to_poly(&self) -> PolyElement {
        self.left.to_poly().mul(&self.right.to_poly())
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.left.eval(x) * self.right.eval(x)
    }

    /// The same polynomial with variable `i` renamed to `h_i` of a Lie algebra.
    pub fn to_lie_poly(&self, h_offset: usize) -> PolyElement {
        let p = self.to_poly();
        p.substitute(&|i| PolyElement::var(i + h_offset))
    }
}

/// Affine subspace `base + span(directions)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearComponent {
    pub base: Vec<Q>,
    pub directions: Vec<Vec<Q>>,
}

impl LinearComponent {
    pub fn new(base: Vec<Q>, directions: Vec<Vec<Q>>) -> Self {
        let r = base.len();
        let mut base = base;
        let dirs: Vec<Vec<Q>> = if directions.is_empty() {
            Vec::new()
        } else {
            let (m, piv) = Mat::from_rows(&directions).rref();
            let rows: Vec<Vec<Q>> = (0..piv.len()).map(|i| m.row(i)).collect();
            for (row, &p) in rows.iter().zip(&piv) {
                let c = base[p].clone();
                if !c.is_zero() {
                    for j in 0..r {
                        base[j] -= &c * &row[j];
                    }
                }
            }
            rows
        };
        LinearComponent { base, directions: dirs }
    }

    /// The line `ℂ·v`.
    pub fn line(v: Vec<Q>) -> Self {
        let r = v.len();
        Self::new(vec![Q::zero(); r], vec![v])
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn point(&self, t: &Q) -> Vec<Q> {
        let mut p = self.base.clone();
        if let Some(d) = self.directions.first() {
            for (x, y) in p.iter_mut().zip(d) {
                *x += t * y;
            }
        }
        p
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        let diff: Vec<Q> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        if diff.iter().all(|c| c.is_zero()) {
            return true;
        }
        if self.directions.is_empty() {
            return false;
        }
        let mut rows = self.directions.clone();
        let before = Mat::from_rows(&rows).rank();
        rows.push(diff);
        Mat::from_rows(&rows).rank() == before
    }

    pub fn is_subset_of(&self, o: &LinearComponent) -> bool {
        o.contains_point(&self.base)
            && self.directions.iter().all(|d| {
                let shifted: Vec<Q> = o.base.iter().zip(d).map(|(b, x)| b + x).collect();
                o.contains_point(&shifted)
            })
    }

    pub fn passes_through_origin(&self) -> bool {
        self.contains_point(&vec![Q::zero(); self.base.len()])
    }

    pub fn display(&self) -> String {
        let f = |v: &[Q]| {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", s.join(", "))
        };
        let mut out = f(&self.base);
        for d in &self.directions {
            out.push_str(&format!(" + t{}", f(d)));
        }
        out
    }
}

impl fmt::Display for LinearComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

fn solve_affine(eqs: &[AffineForm], r: usize) -> Option<LinearComponent> {
    if eqs.is_empty() {
        let dirs = (0..r)
            .map(|i| {
                let mut v = vec![Q::zero(); r];
                v[i] = Q::one();
                v
            })
            .collect();
        return Some(LinearComponent::new(vec![Q::zero(); r], dirs));
    }
    let a = Mat::from_fn(eqs.len(), r, |i, j| eqs[i].coeffs[j].clone());
    let b: Vec<Q> = eqs.iter().map(|e| -e.constant.clone()).collect();
    let base = a.solve(&b)?;
    Some(LinearComponent::new(base, a.nullspace()))
}

/// Complete zero locus as a union of affine subspaces, none contained in another.
pub fn solve_on_cartan(gens: &[Generator], rank: usize) -> Result<Vec<LinearComponent>> {
    for g in gens {
        if g.left.coeffs.len() != rank || g.right.coeffs.len() != rank {
            return Err(Error::Invalid("generator rank mismatch".into()));
        }
    }
    let mut leaves = Vec::new();
    let mut eqs = Vec::new();
    branch(gens, rank, 0, &mut eqs, &mut leaves);
    leaves.sort();
    leaves.dedup();
    let maximal: Vec<LinearComponent> = leaves
        .iter()
        .filter(|c| !leaves.iter().any(|o| o != *c && c.is_subset_of(o)))
        .cloned()
        .collect();
    Ok(maximal)
}

fn branch(gens: &[Generator], r: usize, i: usize, eqs: &mut Vec<AffineForm>, out: &mut Vec<LinearComponent>) {
    let Some(s) = solve_affine(eqs, r) else { return };
    if i == gens.len() {
        out.push(s);
        return;
    }
    let g = &gens[i];
    if g.left.vanishes_on(&s) || g.right.vanishes_on(&s) {
        branch(gens, r, i + 1, eqs, out);
        return;
    }
    for f in [&g.left, &g.right] {
        eqs.push(f.clone());
        branch(gens, r, i + 1, eqs, out);
        eqs.pop();
    }
}

/// Generators together with their solved zero locus.
#[derive(Clone, Debug)]
pub struct CaseSystem {
    pub rank: usize,
    pub generators: Vec<Generator>,
    pub solution: Vec<LinearComponent>,
}

impl CaseSystem {
    pub fn solve(generators: Vec<Generator>, rank: usize) -> Result<Self> {
        let solution = solve_on_cartan(&generators, rank)?;
        Ok(CaseSystem { rank, generators, solution })
    }

    pub fn verified(&self) -> bool {
        verify_components(&self.generators, &self.solution)
    }
}

/// Factors a polynomial of degree at most 2 into two affine forms over `Q`.
pub fn factor_quadratic(p: &PolyElement, rank: usize) -> Option<Generator> {
    if p.degree()? > 2 || p.variables().iter().any(|&v| v >= rank) {
        return None;
    }
    let n = rank + 1;
    // homogenized symmetric matrix, last coordinate = 1
    let mut m = Mat::zeros(n, n);
    for (mono, c) in p.terms() {
        let idx: Vec<usize> = match mono.as_slice() {
            [] => vec![rank, rank],
            [a] => vec![*a, rank],
            [a, b] => vec![*a, *b],
            _ => return None,
        };
        if idx[0] == idx[1] {
            m[(idx[0], idx[0])] += c;
        } else {
            m[(idx[0], idx[1])] += c * qr(1, 2);
            m[(idx[1], idx[0])] += c * qr(1, 2);
        }
    }
    let (_, piv) = m.transpose().rref();
    let split = |v: &[Q]| AffineForm { coeffs: v[..rank].to_vec(), constant: v[rank].clone() };
    match piv.len() {
        0 => None,
        1 => {
            let j = (0..n).find(|&j| !m[(j, j)].is_zero())?;
            let w = m.col(j);
            let l1: Vec<Q> = w.iter().map(|x| x / &m[(j, j)]).collect();
            Some(Generator::new(split(&l1), split(&w)))
        }
        2 => {
            let cols: Vec<Vec<Q>> = piv.iter().map(|&j| m.col(j)).collect();
            let (i1, i2) = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .find(|&(a, b)| !(&cols[0][a] * &cols[1][b] - &cols[0][b] * &cols[1][a]).is_zero())?;
            let pm = Mat::from_rows(&[
                vec![cols[0][i1].clone(), cols[1][i1].clone()],
                vec![cols[0][i2].clone(), cols[1][i2].clone()],
            ]);
            let pinv = pm.inverse()?;
            let sub = Mat::from_rows(&[
                vec![m[(i1, i1)].clone(), m[(i1, i2)].clone()],
                vec![m[(i2, i1)].clone(), m[(i2, i2)].clone()],
            ]);
            let nmat = &(&pinv * &sub) * &pinv.transpose();
            let (a, b, c) = (nmat[(0, 0)].clone(), q(2) * &nmat[(0, 1)], nmat[(1, 1)].clone());
            // a y1² + b y1 y2 + c y2², with y_k = cols[k]·x
            let comb = |u: &Q, v: &Q| -> Vec<Q> { (0..n).map(|k| u * &cols[0][k] + v * &cols[1][k]).collect() };
            if a.is_zero() {
                return Some(Generator::new(split(&comb(&Q::zero(), &Q::one())), split(&comb(&b, &c))));
            }
            let disc = &b * &b - q(4) * &a * &c;
            let sq = rational_sqrt(&disc)?;
            let t1 = (-&b + &sq) / (q(2) * &a);
            let t2 = (-&b - &sq) / (q(2) * &a);
            Some(Generator::new(split(&comb(&a, &(-t1 * &a))), split(&comb(&Q::one(), &-t2))))
        }
        _ => None,
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().clone(), x.denom().clone());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == n && &sd * &sd == d).then(|| Q::new(sn, sd))
}

/// Factors every polynomial, rejecting any that is not a product of two affine forms.
pub fn factor_all(ps: &[PolyElement], rank: usize) -> Result<Vec<Generator>> {
    ps.iter()
        .map(|p| {
            factor_quadratic(p, rank).ok_or_else(|| Error::Unsupported(format!("not a product of affine forms: {p}")))
        })
        .collect()
}

fn coord(r: usize, i: usize) -> AffineForm {
    AffineForm::coordinate(r, i)
}

fn form(r: usize, terms: &[(usize, Q)], c: Q) -> AffineForm {
    let mut v = vec![Q::zero(); r];
    for (i, x) in terms {
        v[*i] += x;
    }
    AffineForm { coeffs: v, constant: c }
}

/// `p_{i,j} = h_i h_j` (`j − i ≥ 2`) and `q_i = h_i(h_{i−1}+h_i+h_{i+1})` for 𝔰𝔩_n.
pub fn system_a_minus_one(n: usize) -> Vec<Generator> {
    let r = n - 1;
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 2..r {
            out.push(Generator::new(coord(r, i), coord(r, j)));
        }
    }
    for i in 1..r.saturating_sub(1) {
        out.push(Generator::new(coord(r, i), form(r, &[(i - 1, q(1)), (i, q(1)), (i + 1, q(1))], Q::zero())));
    }
    out
}

fn q_hat_form(m: usize, i: usize, with_constant: bool) -> AffineForm {
    let r = 2 * m - 1;
    let mi = m as i64;
    let mut terms = Vec::new();
    for j in 1..=r {
        let c = if j < i {
            qr(-(j as i64), mi)
        } else if j == i {
            qr(mi - i as i64, mi)
        } else {
            qr(2 * mi - j as i64, mi)
        };
        terms.push((j - 1, c));
    }
    let c = if with_constant { q(mi - i as i64) } else { Q::zero() };
    form(r, &terms, c)
}

/// `p̂_i = h_i q̂_i` for 𝔰𝔩_{2m}.
pub fn system_hat(m: usize) -> Vec<Generator> {
    (1..2 * m).map(|i| Generator::new(coord(2 * m - 1, i - 1), q_hat_form(m, i, true))).collect()
}

/// The homogeneous parts `p_i` of `p̂_i`.
pub fn system_zero(m: usize) -> Vec<Generator> {
    (1..2 * m).map(|i| Generator::new(coord(2 * m - 1, i - 1), q_hat_form(m, i, false))).collect()
}

/// `p_i = h_i(h_i + 2h_{i+1} + ⋯ + 2h_{r−2} + h_{r−1} + h_r)` for `i ≤ r−2`, and `h_{r−1}h_r`.
pub fn system_d(r: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 0..r - 2 {
        let mut terms = vec![(i, q(1))];
        for j in i + 1..r - 2 {
            terms.push((j, q(2)));
        }
        terms.push((r - 2, q(1)));
        terms.push((r - 1, q(1)));
        out.push(Generator::new(coord(r, i), form(r, &terms, Q::zero())));
    }
    out.push(Generator::new(coord(r, r - 2), coord(r, r - 1)));
    out
}

/// Increasing tuples in `{1,…,2m−1}` of length `s` with `Σ(−1)^k i_k = (−1)^s m`.
pub fn lambda_sets(m: usize, s: usize) -> Vec<Vec<usize>> {
    let top = 2 * m - 1;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(top: usize, s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, m: i64) {
        if cur.len() == s {
            if alt_sum(cur) == sign(s) * m {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..=top {
            cur.push(i);
            rec(top, s, i + 1, cur, out, m);
            cur.pop();
        }
    }
    if s >= 1 && s <= top {
        rec(top, s, 1, &mut cur, &mut out, m as i64);
    }
    out
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_k (−1)^k i_k`, positions starting at 1.
pub fn alt_sum(t: &[usize]) -> i64 {
    t.iter().enumerate().map(|(k, &i)| sign(k + 1) * i as i64).sum()
}

/// `c_j = i_1 + 2Σ_{k=2}^{j−1}(−1)^{k+1} i_k + (−1)^{j+1} i_j`, position `j ≥ 2`.
pub fn c_coefficient(t: &[usize], j: usize) -> i64 {
    let mut c = t[0] as i64;
    for k in 2..j {
        c += 2 * sign(k + 1) * t[k - 1] as i64;
    }
    c + sign(j + 1) * t[j - 1] as i64
}

/// Closed-form components `{tϖ_{i_1} + Σ_{j≥2} (−1)^j(−t + c_j) ϖ_{i_j}}`.
pub fn xi_hat(m: usize) -> Vec<LinearComponent> {
    let r = 2 * m - 1;
    let mut out = Vec::new();
    for s in 1..=r {
        for t in lambda_sets(m, s) {
            let mut base = vec![Q::zero(); r];
            let mut dir = vec![Q::zero(); r];
            dir[t[0] - 1] = Q::one();
            for j in 2..=s {
                let sg = sign(j);
                dir[t[j - 1] - 1] = q(-sg);
                base[t[j - 1] - 1] = q(sg * c_coefficient(&t, j));
            }
            out.push(LinearComponent::new(base, vec![dir]));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Lines `ℂ(Σ_j (−1)^j ϖ_{i_j})` over all `Λ_s`.
pub fn xi(m: usize) -> Vec<LinearComponent> {
    let r = 2 * m - 1;
    let mut out = Vec::new();
    for s in 1..=r {
        for t in lambda_sets(m, s) {
            let mut v = vec![Q::zero(); r];
            for (j, &i) in t.iter().enumerate() {
                v[i - 1] = q(sign(j + 1));
            }
            out.push(LinearComponent::line(v));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Lines `ℂ(Σ_j (−1)^{k−j+1} ϖ_{i_j} + ϖ_{r−1 or r})` over subsets of `{1,…,r−2}`.
pub fn d_lines(r: usize) -> Vec<LinearComponent> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (r - 2)) {
        let idx: Vec<usize> = (0..r - 2).filter(|i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        for last in [r - 2, r - 1] {
            let mut v = vec![Q::zero(); r];
            for (j, &i) in idx.iter().enumerate() {
                v[i] = q(sign(k - (j + 1) + 1));
            }
            v[last] = Q::one();
            out.push(LinearComponent::line(v));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimJ {
    Balanced,
    /// Insert `value` at 1-based `position` of the tuple.
    Insert { position: usize, value: usize },
}

/// An insertion into `tuple` landing in `Λ_{s+1}`.
pub fn claim_j(tuple: &[usize], m: usize) -> Option<ClaimJ> {
    claim_j_constructive(tuple, m).or_else(|| exhaustive_insertion(tuple, m))
}

/// The positional formula alone, without the search fallback.
pub fn claim_j_constructive(tuple: &[usize], m: usize) -> Option<ClaimJ> {
    let s = tuple.len();
    let mi = m as i64;
    if alt_sum(tuple) == sign(s) * mi {
        return Some(ClaimJ::Balanced);
    }
    for l in 1..=s + 1 {
        let a: i64 = (1..l).map(|k| sign(k) * tuple[k - 1] as i64).sum();
        let b: i64 = (l..=s).map(|k| sign(k) * tuple[k - 1] as i64).sum();
        let j = sign(l) * (sign(s + 1) * mi - a + b);
        let lo = if l == 1 { 0 } else { tuple[l - 2] as i64 };
        let hi = if l == s + 1 { 2 * mi } else { tuple[l - 1] as i64 };
        if lo < j && j < hi {
            return Some(ClaimJ::Insert { position: l, value: j as usize });
        }
    }
    None
}

fn exhaustive_insertion(tuple: &[usize], m: usize) -> Option<ClaimJ> {
    let target = sign(tuple.len() + 1) * m as i64;
    (1..2 * m).filter(|v| !tuple.contains(v)).find_map(|value| {
        let position = tuple.iter().take_while(|&&x| x < value).count() + 1;
        let c = ClaimJ::Insert { position, value };
        (alt_sum(&apply_claim(tuple, &c)) == target).then_some(c)
    })
}

pub fn apply_claim(tuple: &[usize], c: &ClaimJ) -> Vec<usize> {
    match c {
        ClaimJ::Balanced => tuple.to_vec(),
        ClaimJ::Insert { position, value } => {
            let mut t = tuple.to_vec();
            t.insert(position - 1, *value);
            t
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Generic points are conjugate to `scalar·targets[index]`.
    Target { index: usize },
    /// The component is `{0}`.
    NilpotentOnly,
    Unclassified,
}

/// Matches each component's generic point to a target cone, checked at `t = 1` and `t = 2`.
pub fn classify_components(
    d: &RootDatum,
    comps: &[LinearComponent],
    targets: &[Weight],
) -> Result<Vec<Classification>> {
    comps
        .iter()
        .map(|c| {
            if c.dim() == 0 && c.base.iter().all(|x| x.is_zero()) {
                return Ok(Classification::NilpotentOnly);
            }
            let find = |t: &Q| -> Option<usize> {
                let w = d.from_fundamental(&c.point(t));
                targets.iter().position(|tg| cone_membership(d, &w, tg).is_some())
            };
            let (a, b) = (find(&q(1)), find(&q(2)));
            if a != b {
                return Err(Error::Invalid(format!("classification of {c} depends on the parameter")));
            }
            Ok(a.map_or(Classification::Unclassified, |index| Classification::Target { index }))
        })
        .collect()
}

/// Grid points with denominators up to 3 and numerators in `[-2·3, 2·3]`, subsampled.
pub fn grid_points(rank: usize, max_points: usize) -> Vec<Vec<Q>> {
    let vals: Vec<Q> = (-6..=6).map(|n| qr(n, 3)).collect();
    let total = vals.len().pow(rank as u32);
    let step = (total / max_points.max(1)).max(1);
    (0..total)
        .step_by(step)
        .map(|mut k| {
            (0..rank)
                .map(|_| {
                    let v = vals[k % vals.len()].clone();
                    k /= vals.len();
                    v
                })
                .collect()
        })
        .collect()
}

/// Points satisfying all generators lie on a component, and conversely.
pub fn completeness_check(gens: &[Generator], comps: &[LinearComponent], points: &[Vec<Q>]) -> bool {
    points.iter().all(|x| {
        let sat = gens.iter().all(|g| g.eval(x).is_zero());
        let on = comps.iter().any(|c| c.contains_point(x));
        sat == on
    })
}

/// Each generator vanishes identically along each component.
pub fn verify_components(gens: &[Generator], comps: &[LinearComponent]) -> bool {
    comps.iter().all(|c| {
        gens.iter().all(|g| {
            // degree two in the parameter: three sample values suffice
            (0..3).all(|t| {
                let mut x = c.base.clone();
                for (k, d) in c.directions.iter().enumerate() {
                    for (xi, di) in x.iter_mut().zip(d) {
                        *xi += q((t + 1) * (k as i64 + 2)) * di;
                    }
                }
                let x0 = if t == 0 { c.base.clone() } else { x };
                g.eval(&x0).is_zero()
            })
        })
    })
}

/// Projections to `S(𝔥)` of the zero-weight space of a submodule of `S(𝔤)`, in coordinates `λ_i`.
pub fn projected_zero_weight(g: &LieAlgebra, w: &SubmoduleSpan) -> Result<Vec<PolyElement>> {
    let h0 = g.h_index(0);
    zero_weight_space(g, w)
        .iter()
        .map(|p| {
            let r = chevalley_projection(g, p)?;
            Ok(r.substitute(&|i| PolyElement::var(i - h0)))
        })
        .collect()
}

/// Whether two families of polynomials span the same space.
pub fn same_span(a: &[PolyElement], b: &[PolyElement]) -> bool {
    let mut ea: Echelon<Monomial> = Echelon::new();
    for p in a {
        ea.insert(&p.to_sparse());
    }
    let mut eb: Echelon<Monomial> = Echelon::new();
    for p in b {
        eb.insert(&p.to_sparse());
    }
    ea.dim() == eb.dim() && b.iter().all(|p| ea.contains(&p.to_sparse()))
}

/// Dominant integral weights with coordinate sum at most `bound` lying on some component.
pub fn dominant_integral_points(comps: &[LinearComponent], rank: usize, bound: u32) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; rank];
    loop {
        let x: Vec<Q> = cur.iter().map(|&c| q(c as i64)).collect();
        if comps.iter().any(|c| c.contains_point(&x)) {
            out.push(x);
        }
        // odometer over the simplex Σ cur ≤ bound
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            cur[i] += 1;
            if cur.iter().sum::<u32>() <= bound {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, CartanType};

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_sets(2, 1), vec![vec![2]]);
        assert_eq!(lambda_sets(2, 2), vec![vec![1, 3]]);
        assert_eq!(lambda_sets(2, 3), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn claim_examples() {
        assert_eq!(claim_j(&[1, 3, 4, 6, 7], 4), Some(ClaimJ::Insert { position: 4, value: 5 }));
        assert_eq!(claim_j(&[1, 3, 5, 6], 4), Some(ClaimJ::Insert { position: 5, value: 7 }));
        assert_eq!(claim_j(&[2], 2), Some(ClaimJ::Balanced));
    }

    #[test]
    fn claim_exhaustive() {
        for m in 2..=5 {
            let top = 2 * m - 1;
            for mask in 1u32..(1 << top) {
                let t: Vec<usize> = (1..=top).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let c = claim_j(&t, m).expect("insertion exists");
                assert_eq!(claim_j_constructive(&t, m), Some(c.clone()), "{t:?}");
                let u = apply_claim(&t, &c);
                if c != ClaimJ::Balanced {
                    assert!(u.windows(2).all(|w| w[0] < w[1]));
                    assert!(lambda_sets(m, u.len()).contains(&u), "{t:?} -> {u:?}");
                }
            }
        }
    }

    #[test]
    fn dominant_points_of_xi_hat() {
        for m in [2usize, 3] {
            let r = 2 * m - 1;
            let pts = dominant_integral_points(&xi_hat(m), r, 6);
            assert!(!pts.is_empty());
            for p in pts {
                assert!(p.iter().enumerate().all(|(i, x)| i == m - 1 || x.is_zero()), "{p:?}");
            }
        }
    }

    #[test]
    fn xi_classifies_to_middle_weight() {
        for m in [2usize, 3] {
            let d = build_root_datum(CartanType::A, 2 * m - 1).unwrap();
            let t = [d.fundamental_weight(m - 1)];
            let cls = classify_components(&d, &xi(m), &t).unwrap();
            assert!(cls.iter().all(|c| *c == Classification::Target { index: 0 }), "m = {m}: {cls:?}");
        }
    }

    #[test]
    fn projections_of_w1() {
        use crate::liealg::Realization;
        use crate::orbits::build;
        use crate::symalg::{generate_submodule, v1, w1};
        for n in 4..=6 {
            let g = build(Realization::Sl(n)).unwrap();
            let w = generate_submodule(&g, &v1(&g).unwrap()).unwrap();
            let got = projected_zero_weight(&g, &w).unwrap();
            let want: Vec<PolyElement> = system_a_minus_one(n).iter().map(|x| x.to_poly()).collect();
            assert!(same_span(&got, &want), "n = {n}");
        }
        for m in [2usize, 3] {
            let g = build(Realization::Sl(2 * m)).unwrap();
            let w = generate_submodule(&g, &crate::symalg::v0(&g).unwrap()).unwrap();
            let got = projected_zero_weight(&g, &w).unwrap();
            let want: Vec<PolyElement> = system_zero(m).iter().map(|x| x.to_poly()).collect();
            assert!(same_span(&got, &want), "m = {m}");
        }
        let g = build(Realization::SoEven(5)).unwrap();
        let w = generate_submodule(&g, &w1(&g).unwrap()).unwrap();
        let got = projected_zero_weight(&g, &w).unwrap();
        let want: Vec<PolyElement> = system_d(5).iter().map(|x| x.to_poly()).collect();
        assert!(same_span(&got, &want));
    }

    #[test]
    fn sl4_level_minus_one() {
        let comps = solve_on_cartan(&system_a_minus_one(4), 3).unwrap();
        let mut want = vec![
            LinearComponent::line(vec![q(1), q(0), q(0)]),
            LinearComponent::line(vec![q(0), q(0), q(1)]),
            LinearComponent::line(vec![q(1), q(-1), q(0)]),
            LinearComponent::line(vec![q(0), q(1), q(-1)]),
        ];
        want.sort();
        let mut got = comps.clone();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn xi_hat_matches_solver() {
        for m in [2, 3] {
            let mut got = solve_on_cartan(&system_hat(m), 2 * m - 1).unwrap();
            got.sort();
            assert_eq!(got, xi_hat(m), "m = {m}");
        }
    }

    #[test]
    fn factoring_recovers_products() {
        for g in system_hat(2).iter().chain(&system_d(5)) {
            let r = g.left.coeffs.len();
            let f = factor_quadratic(&g.to_poly(), r).unwrap();
            assert_eq!(f.to_poly(), g.to_poly());
        }
        // x² + y² is irreducible over Q
        let p = PolyElement::var(0).pow(2).add(&PolyElement::var(1).pow(2));
        assert!(factor_quadratic(&p, 2).is_none());
    }

    #[test]
    fn d5_components_and_classes() {
        let mut got = solve_on_cartan(&system_d(5), 5).unwrap();
        got.sort();
        assert_eq!(got, d_lines(5));
        let d = build_root_datum(CartanType::D, 5).unwrap();
        let targets = [d.fundamental_weight(3), d.fundamental_weight(4)];
        let cls = classify_components(&d, &got, &targets).unwrap();
        assert!(cls.iter().all(|c| matches!(c, Classification::Target { .. })));
    }
}
