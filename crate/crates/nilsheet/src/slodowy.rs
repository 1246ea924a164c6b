//! 𝔰𝔩₂-triples, good gradings, reduction modulo `J_χ`, and points on the
//! Slodowy slice through a sheet.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::liealg::LieElement;
use crate::linalg::{rank_of, Echelon, Mat};
use crate::orbits::{self, OrbitDatum};
use crate::rational::{q, Q};
use crate::symalg::{Monomial, PolyElement};

#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
    pub orbit: OrbitDatum,
    /// `ad h` eigenvalue of each basis vector.
    pub degrees: Vec<Q>,
}

impl Sl2Triple {
    /// Basis indices spanning `𝔤(h, i)`.
    pub fn grading(&self, i: i64) -> Vec<usize> {
        self.degrees.iter().enumerate().filter(|(_, d)| **d == q(i)).map(|(k, _)| k).collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.iter().map(|d| d.to_integer().try_into().unwrap_or(0i64)).max().unwrap_or(0)
    }

    /// `χ(x) = (f|x)`.
    pub fn chi(&self, g: &LieAlgebra, x: &LieElement) -> Q {
        g.form(&self.f, x)
    }

    pub fn check(&self, g: &LieAlgebra) -> bool {
        g.bracket(&self.h, &self.e) == self.e.scale(&q(2))
            && g.bracket(&self.h, &self.f) == self.f.scale(&q(-2))
            && g.bracket(&self.e, &self.f) == self.h
    }
}

fn rank_into(g: &LieAlgebra, zero: &[usize], e: &LieElement) -> usize {
    let cols: Vec<Vec<Q>> = zero.iter().map(|&b| g.bracket(&LieElement::basis(b), e).to_dense(g.dim())).collect();
    rank_of(&cols)
}

/// Triple with `h` from the weighted Dynkin diagram and `e` a 0/1 combination
/// of root vectors of `𝔤(h,2)` found greedily (generic fallback).
pub fn sl2_from_orbit(g: &LieAlgebra, o: &OrbitDatum) -> Result<Sl2Triple> {
    if o.is_zero() {
        return Err(Error::Invalid("zero orbit has no sl2-triple".into()));
    }
    let h = orbits::dynkin_h(g, o);
    let degrees = orbits::basis_degrees(g, &h);
    let zero = orbits::grading_space(g, &h, 0);
    let two = orbits::grading_space(g, &h, 2);
    let mut e = LieElement::zero();
    let mut rank = 0;
    for &b in &two {
        let cand = e.add(&LieElement::basis(b));
        let r = rank_into(g, &zero, &cand);
        if r > rank {
            e = cand;
            rank = r;
        }
        if rank == two.len() {
            break;
        }
    }
    if rank != two.len() {
        e = orbits::generic_even_representative(g, o)?.0;
    }
    let (p, l) = g.jordan_type(&e)?;
    if p != o.partition || l != o.label {
        return Err(Error::Exhausted(format!("triple search landed outside {o}")));
    }
    let minus = orbits::grading_space(g, &h, -2);
    let cols: Vec<Vec<Q>> =
        minus.iter().map(|&b| g.bracket(&e, &LieElement::basis(b)).to_dense(g.dim())).collect();
    let a = Mat::from_fn(g.dim(), minus.len(), |i, j| cols[j][i].clone());
    let sol = a.solve(&h.to_dense(g.dim())).ok_or_else(|| Error::Invalid("[e, f] = h has no solution".into()))?;
    let f = LieElement::from_pairs(minus.iter().copied().zip(sol));
    let t = Sl2Triple { e, h, f, orbit: o.clone(), degrees };
    if !t.check(g) {
        return Err(Error::Invalid("triple relations fail".into()));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LagrangianChoice {
    Forward,
    Reversed,
}

#[derive(Clone, Debug)]
pub struct ChiReduction {
    pub triple: Sl2Triple,
    pub m_basis: Vec<LieElement>,
    pub chi_values: Vec<Q>,
    pub complement_basis: Vec<LieElement>,
    /// Image of each coordinate `x_b` as a polynomial in complement coordinates.
    substitution: Vec<PolyElement>,
}

fn symplectic(g: &LieAlgebra, t: &Sl2Triple, x: &LieElement, y: &LieElement) -> Q {
    t.chi(g, &g.bracket(x, y))
}

/// Isotropic subspace of `𝔤(h,1)` of half dimension, grown greedily from root
/// vectors and completed inside `𝔏^⊥` when needed.
pub fn lagrangian(g: &LieAlgebra, t: &Sl2Triple, choice: LagrangianChoice) -> Result<Vec<LieElement>> {
    let mut one = t.grading(1);
    if choice == LagrangianChoice::Reversed {
        one.reverse();
    }
    let d = one.len();
    let gram = Mat::from_fn(d, d, |i, j| symplectic(g, t, &LieElement::basis(one[i]), &LieElement::basis(one[j])));
    if gram.rank() != d {
        return Err(Error::Invalid("form on g(h,1) is degenerate".into()));
    }
    let mut lag: Vec<Vec<Q>> = Vec::new();
    let pair = |a: &[Q], b: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[j].is_zero() {
                    s += &a[i] * &gram[(i, j)] * &b[j];
                }
            }
        }
        s
    };
    for i in 0..d {
        let mut v = vec![Q::zero(); d];
        v[i] = Q::one();
        if lag.iter().all(|l| pair(l, &v).is_zero()) {
            lag.push(v);
        }
    }
    while 2 * lag.len() < d {
        let rows: Vec<Vec<Q>> = lag.iter().map(|l| (0..d).map(|j| pair(l, &unit(d, j))).collect()).collect();
        let perp = Mat::from_rows(&rows).nullspace();
        let cand = perp
            .into_iter()
            .find(|v| {
                let mut s = lag.clone();
                s.push(v.clone());
                rank_of(&s) > lag.len()
            })
            .ok_or_else(|| Error::Invalid("cannot extend isotropic subspace".into()))?;
        lag.push(cand);
    }
    Ok(lag.into_iter().map(|v| LieElement::from_pairs(one.iter().copied().zip(v))).collect())
}

fn unit(d: usize, j: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[j] = Q::one();
    v
}

/// Sets up the evaluation `x ↦ χ(x)` on `𝔪 = 𝔏 ⊕ 𝔤(h,≥2)`.
pub fn chi_reduction(g: &LieAlgebra, t: &Sl2Triple, choice: LagrangianChoice) -> Result<ChiReduction> {
    let n = g.dim();
    let lag = lagrangian(g, t, choice)?;
    let mut m_basis = lag.clone();
    for (b, d) in t.degrees.iter().enumerate() {
        if *d >= q(2) {
            m_basis.push(LieElement::basis(b));
        }
    }
    let mut ech = Echelon::new();
    for x in &m_basis {
        ech.insert(&x.0);
    }
    let mut complement_basis = Vec::new();
    for b in 0..n {
        if t.degrees[b] <= q(1) {
            let v = LieElement::basis(b);
            if ech.insert(&v.0).is_some() {
                complement_basis.push(v);
            }
        }
    }
    if m_basis.len() + complement_basis.len() != n {
        return Err(Error::Invalid("m and its complement do not span g".into()));
    }
    let chi_values: Vec<Q> = m_basis.iter().map(|x| t.chi(g, x)).collect();
    // columns: new basis in old coordinates; rows of the inverse give old in new
    let all: Vec<&LieElement> = m_basis.iter().chain(&complement_basis).collect();
    let mat = Mat::from_fn(n, n, |i, j| all[j].coeff(i));
    let inv = mat.inverse().ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
    let nm = m_basis.len();
    let substitution = (0..n)
        .map(|i| {
            let mut p = PolyElement::zero();
            for j in 0..n {
                let c = &inv[(j, i)];
                if c.is_zero() {
                    continue;
                }
                if j < nm {
                    p = p.add(&PolyElement::constant(c * &chi_values[j]));
                } else {
                    p = p.add(&PolyElement::var(j - nm).scale(c));
                }
            }
            p
        })
        .collect();
    Ok(ChiReduction { triple: t.clone(), m_basis, chi_values, complement_basis, substitution })
}

impl ChiReduction {
    /// `χ` vanishes on `𝔤(h,1)` and on `𝔤(h,i)`, `i ≥ 3`.
    pub fn chi_normalized(&self, g: &LieAlgebra) -> bool {
        (0..g.dim()).all(|b| {
            let d = &self.triple.degrees[b];
            (*d == q(2)) || *d <= Q::zero() || self.triple.chi(g, &LieElement::basis(b)).is_zero()
        })
    }
}

/// Image of `p` in `ℂ[𝔤*]/J_χ`, a polynomial in complement coordinates.
pub fn reduce_mod_chi(p: &PolyElement, r: &ChiReduction) -> PolyElement {
    p.substitute(&|i| r.substitution[i].clone())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// An element of the ideal reducing to the given nonzero constant.
    Certificate { element: PolyElement, constant: Q },
    Unknown,
}

impl Verdict {
    pub fn is_certificate(&self) -> bool {
        matches!(self, Verdict::Certificate { .. })
    }
}

/// Searches the ideal generated by `w` for an element `≡ c ≠ 0 (mod J_χ)`.
///
/// Candidates are `Σ aₖ wₖ` with `aₖ` complement-coordinate monomials, total
/// degree at most `degree_bound`.
pub fn orbit_not_in_variety(
    g: &LieAlgebra,
    w: &[PolyElement],
    o: &OrbitDatum,
    degree_bound: usize,
    choice: LagrangianChoice,
) -> Result<Verdict> {
    let t = sl2_from_orbit(g, o)?;
    let red = chi_reduction(g, &t, choice)?;
    for v in w {
        let rv = reduce_mod_chi(v, &red);
        if rv.degree() == Some(0) {
            let constant = rv.coeff(&[]);
            return Ok(Verdict::Certificate { element: v.clone(), constant });
        }
    }
    let ncomp = red.complement_basis.len();
    let mut gens: Vec<(PolyElement, PolyElement, PolyElement)> = Vec::new();
    for v in w {
        let dv = v.degree().unwrap_or(0);
        if dv > degree_bound {
            continue;
        }
        let rv = reduce_mod_chi(v, &red);
        for mono in monomials_upto(ncomp, degree_bound - dv) {
            let mult = PolyElement::monomial(mono.clone(), Q::one());
            let orig = mult.substitute(&|i| PolyElement::from_lie(&red.complement_basis[i]));
            gens.push((orig.mul(v), mult.mul(&rv), mult));
        }
    }
    // echelon form keyed by leading monomial; the constant monomial is the smallest key
    let mut rows: BTreeMap<Monomial, (PolyElement, PolyElement)> = BTreeMap::new();
    for (mut orig, mut reduced, _) in gens {
        while let Some(lead) = reduced.terms().keys().rev().find(|k| rows.contains_key(*k)).cloned() {
            let (po, pr) = &rows[&lead];
            let f = reduced.coeff(&lead) / pr.coeff(&lead);
            reduced = reduced.sub(&pr.scale(&f));
            orig = orig.sub(&po.scale(&f));
        }
        let Some(lead) = reduced.terms().keys().next_back().cloned() else { continue };
        if lead.is_empty() {
            let constant = reduced.coeff(&[]);
            return Ok(Verdict::Certificate { element: orig, constant });
        }
        rows.insert(lead, (orig, reduced));
    }
    Ok(Verdict::Unknown)
}

fn monomials_upto(nvars: usize, deg: usize) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Monomial> = vec![Vec::new()];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for v in start..nvars {
                let mut mm = m.clone();
                mm.push(v);
                next.push(mm);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The unique `η ∈ 𝔤(h,2)` with `[e,x] = [e,[f,η]]`.
pub fn eta_correction(g: &LieAlgebra, x: &LieElement, t: &Sl2Triple) -> Result<LieElement> {
    if x.0.keys().any(|&b| !t.degrees[b].is_zero()) {
        return Err(Error::Invalid("eta needs x in g(h,0)".into()));
    }
    let two = t.grading(2);
    let cols: Vec<Vec<Q>> = two
        .iter()
        .map(|&b| g.bracket(&t.e, &g.bracket(&t.f, &LieElement::basis(b))).to_dense(g.dim()))
        .collect();
    let a = Mat::from_fn(g.dim(), two.len(), |i, j| cols[j][i].clone());
    let rhs = g.bracket(&t.e, x).to_dense(g.dim());
    let sol = a.solve(&rhs).ok_or_else(|| Error::Invalid("eta system is inconsistent".into()))?;
    Ok(LieElement::from_pairs(two.iter().copied().zip(sol)))
}

fn exp_nilpotent(m: &Mat) -> Mat {
    let n = m.rows;
    let mut out = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = (&term * m).scale(&Q::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    out
}

/// `exp(ad η(tλ))(f + tλ)`.
pub fn slice_curve_point(g: &LieAlgebra, t: &Q, lambda: &LieElement, triple: &Sl2Triple) -> Result<LieElement> {
    if triple.max_degree() > 2 {
        return Err(Error::Unsupported("grading has degrees above 2".into()));
    }
    let tl = lambda.scale(t);
    let eta = eta_correction(g, &tl, triple)?;
    let em = g.to_matrix(&eta);
    let x = g.to_matrix(&triple.f.add(&tl));
    let p = &(&exp_nilpotent(&em) * &x) * &exp_nilpotent(&em.scale(&-Q::one()));
    g.read_matrix(&p).ok_or_else(|| Error::Invalid("conjugate left the algebra".into()))
}

/// Membership checks for a curve point: on the slice, in the sheet, and with
/// the characteristic polynomial of `tλ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlicePointCheck {
    pub on_slice: bool,
    pub centralizer_dim: usize,
    pub charpoly_matches: bool,
}

pub fn check_slice_point(
    g: &LieAlgebra,
    point: &LieElement,
    t: &Q,
    lambda: &LieElement,
    triple: &Sl2Triple,
) -> SlicePointCheck {
    let on_slice = g.bracket(&triple.e, &point.sub(&triple.f)).is_zero();
    let centralizer_dim = g.centralizer_dim(point);
    let charpoly_matches = g.to_matrix(point).charpoly() == g.to_matrix(&lambda.scale(t)).charpoly();
    SlicePointCheck { on_slice, centralizer_dim, charpoly_matches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_sl, build_so_even, Realization};
    use crate::orbits::Partition;
    use crate::symalg;

    fn orbit(g: &LieAlgebra, p: &[usize]) -> OrbitDatum {
        OrbitDatum::new(g.realization(), Partition::new(p.to_vec()), None).unwrap()
    }

    #[test]
    fn minimal_triple() {
        let g = build_sl(4).unwrap();
        let t = sl2_from_orbit(&g, &orbit(&g, &[2, 1, 1])).unwrap();
        let th = g.highest_root_index();
        assert_eq!(t.e, g.e(th));
        assert_eq!(t.f, g.f(th));
    }

    #[test]
    fn v1_reduces_to_constant() {
        let g = build_sl(5).unwrap();
        let t = sl2_from_orbit(&g, &orbit(&g, &[2, 2, 1])).unwrap();
        for c in [LagrangianChoice::Forward, LagrangianChoice::Reversed] {
            let r = chi_reduction(&g, &t, c).unwrap();
            assert!(r.chi_normalized(&g));
            let v = reduce_mod_chi(&symalg::v1(&g).unwrap(), &r);
            assert_eq!(v.degree(), Some(0));
        }
    }

    #[test]
    fn eta_kills_centralizer() {
        let g = build_sl(4).unwrap();
        let t = sl2_from_orbit(&g, &orbit(&g, &[2, 2])).unwrap();
        let eta = eta_correction(&g, &t.h, &t).unwrap();
        let rest = t.h.sub(&g.bracket(&t.f, &eta));
        assert!(g.bracket(&t.e, &rest).is_zero());
    }

    #[test]
    fn curve_point_lies_in_the_sheet() {
        let g = build_sl(4).unwrap();
        let t = sl2_from_orbit(&g, &orbit(&g, &[2, 2])).unwrap();
        let lam = g.cartan_element(&g.datum.fundamental_weight(1));
        let p = slice_curve_point(&g, &q(1), &lam, &t).unwrap();
        let c = check_slice_point(&g, &p, &q(1), &lam, &t);
        assert!(c.on_slice && c.charpoly_matches);
        assert_eq!(c.centralizer_dim, 7);
        assert_eq!(slice_curve_point(&g, &q(0), &lam, &t).unwrap(), t.f);
    }

    #[test]
    fn w1_type_d_reduces_to_constant() {
        let g = build_so_even(5).unwrap();
        assert_eq!(g.realization(), Realization::SoEven(5));
        let t = sl2_from_orbit(&g, &orbit(&g, &[3, 2, 2, 1, 1, 1])).unwrap();
        let r = chi_reduction(&g, &t, LagrangianChoice::Forward).unwrap();
        let v = reduce_mod_chi(&symalg::w1(&g).unwrap(), &r);
        assert_eq!(v.degree(), Some(0));
    }
}
