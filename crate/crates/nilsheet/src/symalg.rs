//! The symmetric algebra `S(𝔤) = ℂ[𝔤*]` with its adjoint action.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{BasisKind, LieAlgebra, LieElement, Realization};
use crate::linalg::{Echelon, Mat, SparseVec};
use crate::rational::{q, qr, Q};
use crate::rootdata::Weight;

/// Sorted multiset of basis indices.
pub type Monomial = Vec<usize>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyElement {
    terms: BTreeMap<Monomial, Q>,
}

impl PolyElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms([(Vec::new(), c)])
    }

    pub fn var(i: usize) -> Self {
        Self::from_terms([(vec![i], Q::one())])
    }

    pub fn monomial(mut m: Monomial, c: Q) -> Self {
        m.sort_unstable();
        Self::from_terms([(m, c)])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero();
        for (mut m, c) in it {
            m.sort_unstable();
            p.add_term(m, &c);
        }
        p
    }

    pub fn from_lie(x: &LieElement) -> Self {
        Self::from_terms(x.0.iter().map(|(&i, c)| (vec![i], c.clone())))
    }

    /// Adds `c·m`; `m` must already be sorted.
    pub fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &[usize]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.len());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> PolyElement {
        PolyElement { terms: self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn add(&self, o: &PolyElement) -> PolyElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &PolyElement) -> PolyElement {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> PolyElement {
        if c.is_zero() {
            return Self::zero();
        }
        PolyElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &PolyElement) -> PolyElement {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort_unstable();
                r.add_term(m, &(x * y));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> PolyElement {
        (0..k).fold(Self::constant(Q::one()), |acc, _| acc.mul(self))
    }

    /// Replaces each variable by a polynomial.
    pub fn substitute(&self, f: &dyn Fn(usize) -> PolyElement) -> PolyElement {
        let mut cache: BTreeMap<usize, PolyElement> = BTreeMap::new();
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &i in m {
                let s = cache.entry(i).or_insert_with(|| f(i));
                t = t.mul(s);
                if t.is_zero() {
                    break;
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Evaluation at a point given by the values of the variables.
    pub fn eval(&self, val: &dyn Fn(usize) -> Q) -> Q {
        let mut cache: BTreeMap<usize, Q> = BTreeMap::new();
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &i in m {
                t *= cache.entry(i).or_insert_with(|| val(i)).clone();
            }
            s += t;
        }
        s
    }

    pub fn to_sparse(&self) -> SparseVec<Monomial> {
        self.terms.clone()
    }

    pub fn from_sparse(v: SparseVec<Monomial>) -> Self {
        PolyElement { terms: v.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut grouped: Vec<(usize, usize)> = Vec::new();
            for &i in m {
                match grouped.last_mut() {
                    Some((j, e)) if *j == i => *e += 1,
                    _ => grouped.push((i, 1)),
                }
            }
            let vars: Vec<String> = grouped
                .iter()
                .map(|&(i, e)| if e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
                .collect();
            if m.is_empty() || !a.is_one() {
                out.push_str(&a.to_string());
                if !m.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&vars.join("*"));
        }
        out
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("x{i}")))
    }
}

/// `ad x` extended to `S(𝔤)` as a derivation.
pub fn adjoint_act(g: &LieAlgebra, x: &LieElement, p: &PolyElement) -> PolyElement {
    let mut r = PolyElement::zero();
    for (m, c) in p.terms() {
        for k in 0..m.len() {
            if k > 0 && m[k] == m[k - 1] {
                continue;
            }
            let mult = m.iter().filter(|&&y| y == m[k]).count() as i64;
            for (xi, xc) in &x.0 {
                for &(t, s) in g.bracket_basis(*xi, m[k]) {
                    let mut nm = m.clone();
                    nm[k] = t;
                    nm.sort_unstable();
                    r.add_term(nm, &(c * xc * q(s * mult)));
                }
            }
        }
    }
    r
}

pub fn monomial_weight(g: &LieAlgebra, m: &[usize]) -> Weight {
    m.iter().fold(Weight::zero(g.datum.ambient_dim), |w, &i| w.add(&g.basis_weight(i)))
}

/// The common weight of all monomials, if there is one.
pub fn weight_of(g: &LieAlgebra, p: &PolyElement) -> Option<Weight> {
    let mut it = p.terms().keys().map(|m| monomial_weight(g, m));
    let w = it.next()?;
    it.all(|v| v == w).then_some(w)
}

/// The weight of `p` if it is a weight vector killed by every `ad e_i`.
pub fn is_singular(g: &LieAlgebra, p: &PolyElement) -> Option<Weight> {
    if p.is_zero() {
        return None;
    }
    let w = weight_of(g, p)?;
    (0..g.rank())
        .all(|i| {
            let ei = g.e(g.datum.root_index(&g.datum.simple_roots[i]).unwrap());
            adjoint_act(g, &ei, p).is_zero()
        })
        .then_some(w)
}

pub fn simple_e(g: &LieAlgebra, i: usize) -> LieElement {
    g.e(g.datum.root_index(&g.datum.simple_roots[i]).unwrap())
}

pub fn simple_f(g: &LieAlgebra, i: usize) -> LieElement {
    g.f(g.datum.root_index(&g.datum.simple_roots[i]).unwrap())
}

/// Monomials of `S^d(𝔤)` of a given weight.
pub fn weight_monomials(g: &LieAlgebra, d: usize, w: &Weight) -> Vec<Monomial> {
    let weights: Vec<Weight> = (0..g.dim()).map(|i| g.basis_weight(i)).collect();
    let mut out = Vec::new();
    let zero = Weight::zero(g.datum.ambient_dim);
    fn rec(
        weights: &[Weight],
        d: usize,
        start: usize,
        acc: &Weight,
        target: &Weight,
        cur: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if cur.len() == d {
            if acc == target {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..weights.len() {
            cur.push(i);
            rec(weights, d, i, &acc.add(&weights[i]), target, cur, out);
            cur.pop();
        }
    }
    rec(&weights, d, 0, &zero, w, &mut Vec::new(), &mut out);
    out
}

/// Basis of the singular vectors of weight `w` in `S^d(𝔤)`.
pub fn singular_vectors(g: &LieAlgebra, d: usize, w: &Weight) -> Vec<PolyElement> {
    let monos = weight_monomials(g, d, w);
    if monos.is_empty() {
        return Vec::new();
    }
    let images: Vec<PolyElement> = monos
        .iter()
        .map(|m| {
            let p = PolyElement::monomial(m.clone(), Q::one());
            let mut acc = PolyElement::zero();
            // stack the images under each e_i with disjoint tags
            for i in 0..g.rank() {
                let im = adjoint_act(g, &simple_e(g, i), &p);
                for (mm, c) in im.terms() {
                    let mut tagged = vec![usize::MAX - i];
                    tagged.extend_from_slice(mm);
                    acc.terms.insert(tagged, c.clone());
                }
            }
            acc
        })
        .collect();
    let mut rows: Vec<Monomial> = images.iter().flat_map(|im| im.terms().keys().cloned()).collect();
    rows.sort();
    rows.dedup();
    let mat = Mat::from_fn(rows.len().max(1), monos.len(), |r, c| {
        rows.get(r).map(|k| images[c].coeff(k)).unwrap_or_else(Q::zero)
    });
    mat.nullspace()
        .into_iter()
        .map(|v| PolyElement::from_terms(monos.iter().cloned().zip(v)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SubmoduleSpan {
    pub degree: usize,
    pub highest_weight: Weight,
    spaces: BTreeMap<Weight, Vec<PolyElement>>,
}

impl SubmoduleSpan {
    pub fn dim(&self) -> usize {
        self.spaces.values().map(|v| v.len()).sum()
    }

    pub fn basis(&self) -> Vec<PolyElement> {
        self.spaces.values().flatten().cloned().collect()
    }

    pub fn weight_space(&self, w: &Weight) -> &[PolyElement] {
        self.spaces.get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, usize)> {
        self.spaces.iter().map(|(w, v)| (w, v.len()))
    }

    pub fn contains(&self, g: &LieAlgebra, p: &PolyElement) -> bool {
        if p.is_zero() {
            return true;
        }
        let Some(w) = weight_of(g, p) else { return false };
        let mut e = Echelon::new();
        for b in self.weight_space(&w) {
            e.insert(&b.to_sparse());
        }
        e.contains(&p.to_sparse())
    }
}

/// Closure of `{v}` under all `ad e_i`, `ad f_i`.
pub fn generate_submodule(g: &LieAlgebra, v: &PolyElement) -> Result<SubmoduleSpan> {
    if !v.is_homogeneous() || v.is_zero() {
        return Err(Error::Invalid("generator must be a nonzero homogeneous polynomial".into()));
    }
    let w0 = weight_of(g, v).ok_or(Error::NotWeightVector)?;
    let degree = v.degree().unwrap();
    let ops: Vec<LieElement> = (0..g.rank()).flat_map(|i| [simple_e(g, i), simple_f(g, i)]).collect();
    let mut ech: BTreeMap<Weight, Echelon<Monomial>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    ech.entry(w0.clone()).or_default().insert(&v.to_sparse());
    queue.push_back(v.clone());
    let bound = 1_000_000usize;
    let mut steps = 0;
    while let Some(p) = queue.pop_front() {
        steps += 1;
        if steps > bound {
            return Err(Error::Exhausted("submodule did not stabilize".into()));
        }
        for x in &ops {
            let y = adjoint_act(g, x, &p);
            if y.is_zero() {
                continue;
            }
            let w = weight_of(g, &y).ok_or(Error::NotWeightVector)?;
            if let Some(rem) = ech.entry(w).or_default().insert(&y.to_sparse()) {
                queue.push_back(PolyElement::from_sparse(rem));
            }
        }
    }
    let rho = g.datum.rho();
    let highest = ech.keys().max_by(|a, b| g.datum.form(a, &rho).cmp(&g.datum.form(b, &rho))).unwrap().clone();
    let spaces = ech
        .into_iter()
        .map(|(w, e)| (w, e.basis().map(|b| PolyElement::from_sparse(b.clone())).collect()))
        .collect();
    Ok(SubmoduleSpan { degree, highest_weight: highest, spaces })
}

pub fn zero_weight_space(g: &LieAlgebra, w: &SubmoduleSpan) -> Vec<PolyElement> {
    w.weight_space(&Weight::zero(g.datum.ambient_dim)).to_vec()
}

/// `Σ x_i x^i` over dual bases of the invariant form.
pub fn casimir(g: &LieAlgebra) -> PolyElement {
    let n = g.dim();
    let gram = Mat::from_fn(n, n, |i, j| g.form_basis(i, j));
    let inv = gram.inverse().expect("form is nondegenerate");
    let mut p = PolyElement::zero();
    for i in 0..n {
        for j in 0..n {
            let c = &inv[(i, j)];
            if !c.is_zero() {
                p.add_term(if i <= j { vec![i, j] } else { vec![j, i] }, c);
            }
        }
    }
    p
}

/// Evaluation at `X ∈ 𝔤 ≅ 𝔤*`, with `x_b ↦ (b|X)`.
pub fn evaluate(g: &LieAlgebra, p: &PolyElement, x: &LieElement) -> Q {
    p.eval(&|b| g.form(&LieElement::basis(b), x))
}

/// Component in `S(𝔥)` along `(𝔫₋ + 𝔫₊)S(𝔤)`.
pub fn chevalley_projection(g: &LieAlgebra, p: &PolyElement) -> Result<PolyElement> {
    if !p.is_zero() && weight_of(g, p).is_none_or(|w| !w.is_zero()) {
        return Err(Error::NotWeightVector);
    }
    Ok(PolyElement::from_terms(
        p.terms().iter().filter(|(m, _)| m.iter().all(|&i| g.is_cartan(i))).map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// Projection of the symmetrization along `𝔫₋U(𝔤) + U(𝔤)𝔫₊`, degree at most 2.
pub fn hc_projection_deg2(g: &LieAlgebra, p: &PolyElement) -> Result<PolyElement> {
    if p.degree().unwrap_or(0) > 2 {
        return Err(Error::Unsupported("projection is implemented up to degree 2".into()));
    }
    if !p.is_zero() && weight_of(g, p).is_none_or(|w| !w.is_zero()) {
        return Err(Error::NotWeightVector);
    }
    let mut r = PolyElement::zero();
    for (m, c) in p.terms() {
        match m.as_slice() {
            [a, b] if matches!((g.kind(*a), g.kind(*b)), (BasisKind::E(_), BasisKind::F(_))) => {
                // sym(e f) = f e + ½[e, f]
                let h = g.bracket(&LieElement::basis(*a), &LieElement::basis(*b));
                r = r.add(&PolyElement::from_lie(&h).scale(&(c * qr(1, 2))));
            }
            _ if m.iter().all(|&i| g.is_cartan(i)) => r.add_term(m.clone(), c),
            _ => {}
        }
    }
    Ok(r)
}

/// Symmetric square of two elements as a polynomial.
pub fn product(x: &LieElement, y: &LieElement) -> PolyElement {
    PolyElement::from_lie(x).mul(&PolyElement::from_lie(y))
}

fn sl_n(g: &LieAlgebra) -> Result<usize> {
    match g.realization() {
        Realization::Sl(n) => Ok(n),
        _ => Err(Error::Unsupported("requires sl_n".into())),
    }
}

/// `E_ij` as a Lie element of 𝔰𝔩_n (1-based, `i ≠ j`).
pub fn elementary(g: &LieAlgebra, i: usize, j: usize) -> LieElement {
    let n = g.datum.ambient_dim;
    let mut c = vec![0i64; n];
    c[i - 1] += 1;
    c[j - 1] -= 1;
    let w = Weight::from_ints(&c);
    if i < j {
        g.e(g.root_index(&w).expect("positive root"))
    } else {
        g.f(g.root_index(&w.neg()).expect("positive root"))
    }
}

/// `v₁ = e_θ e_{θ₁} − e_β e_γ` in `S²(𝔰𝔩_n)`, `n ≥ 4`.
pub fn v1(g: &LieAlgebra) -> Result<PolyElement> {
    let n = sl_n(g)?;
    if n < 4 {
        return Err(Error::Invalid("v1 needs n >= 4".into()));
    }
    let e = |i, j| elementary(g, i, j);
    Ok(product(&e(1, n), &e(2, n - 1)).sub(&product(&e(1, n - 1), &e(2, n))))
}

/// `v₀ ∈ S²(𝔰𝔩_{2m})`, the highest weight vector of the copy of the adjoint module.
pub fn v0(g: &LieAlgebra) -> Result<PolyElement> {
    let n = sl_n(g)?;
    if n % 2 != 0 || n < 4 {
        return Err(Error::Invalid("v0 needs sl_{2m}, m >= 2".into()));
    }
    let m = (n / 2) as i64;
    let et = elementary(g, 1, n);
    let mut p = PolyElement::zero();
    for i in 1..n {
        let c = qr(m - i as i64, m);
        p = p.add(&product(&g.h(i - 1), &et).scale(&c));
    }
    for i in 1..=n - 2 {
        p = p.add(&product(&elementary(g, 1, i + 1), &elementary(g, i + 1, n)));
    }
    Ok(p)
}

/// `e_{ε_i ± ε_j}` in 𝔰𝔬_{2r} (1-based, `i < j`).
pub fn so_root_vector(g: &LieAlgebra, i: usize, j: usize, plus: bool) -> LieElement {
    let r = g.datum.ambient_dim;
    let mut c = vec![0i64; r];
    c[i - 1] += 1;
    c[j - 1] += if plus { 1 } else { -1 };
    g.e(g.root_index(&Weight::from_ints(&c)).expect("positive root"))
}

/// `w₁ = Σ_{i≥2} ± e_{ε₁−ε_i} e_{ε₁+ε_i}` in `S²(𝔰𝔬_{2r})`, signs fixed by singularity.
pub fn w1(g: &LieAlgebra) -> Result<PolyElement> {
    let r = match g.realization() {
        Realization::SoEven(r) => r,
        _ => return Err(Error::Unsupported("requires so_2r".into())),
    };
    let mut c = vec![0i64; r];
    c[0] = 2;
    let sv = singular_vectors(g, 2, &Weight::from_ints(&c));
    let [v] = sv.as_slice() else {
        return Err(Error::Invalid("weight 2ϖ₁ singular space is not a line".into()));
    };
    let lead = product(&so_root_vector(g, 1, 2, false), &so_root_vector(g, 1, 2, true));
    let (m, _) = lead.terms().iter().next().unwrap();
    let c0 = v.coeff(m);
    Ok(v.scale(&c0.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_sl, build_so_even};

    #[test]
    fn derivation_on_power() {
        let g = build_sl(3).unwrap();
        let th = g.highest_root_index();
        let sq = PolyElement::var(g.e_index(th)).pow(2);
        let got = adjoint_act(&g, &g.f(th), &sq);
        let h = g.bracket(&g.f(th), &g.e(th));
        let want = product(&g.e(th), &h).scale(&q(2));
        assert_eq!(got, want);
    }

    #[test]
    fn singular_v1_v0() {
        let g = build_sl(5).unwrap();
        let w = is_singular(&g, &v1(&g).unwrap()).unwrap();
        assert_eq!(w, Weight::from_ints(&[1, 1, 0, -1, -1]));
        let g = build_sl(4).unwrap();
        let w = is_singular(&g, &v0(&g).unwrap()).unwrap();
        assert_eq!(w, g.datum.highest_root());
        let th = g.highest_root_index();
        assert!(is_singular(&g, &product(&g.e(th), &g.f(th))).is_none());
    }

    #[test]
    fn w1_has_unit_signs_up_to_realization() {
        let g = build_so_even(5).unwrap();
        let w = w1(&g).unwrap();
        assert_eq!(w.terms().len(), 4);
        assert!(w.terms().values().all(|c| *c == q(1) || *c == q(-1)));
    }

    #[test]
    fn adjoint_submodule_of_degree_one() {
        let g = build_sl(3).unwrap();
        let span = generate_submodule(&g, &PolyElement::var(g.h_index(0))).unwrap();
        assert_eq!(span.dim(), 8);
    }

    #[test]
    fn casimir_invariant_and_nonzero_at_fundamental_weight() {
        let g = build_sl(4).unwrap();
        let om = casimir(&g);
        for b in 0..g.dim() {
            assert!(adjoint_act(&g, &LieElement::basis(b), &om).is_zero());
        }
        let w1 = g.cartan_element(&g.datum.fundamental_weight(0));
        assert!(!evaluate(&g, &om, &w1).is_zero());
        let th = g.highest_root_index();
        assert!(evaluate(&g, &om, &g.e(th)).is_zero());
    }

    #[test]
    fn harish_chandra_degree_two() {
        let g = build_sl(3).unwrap();
        let th = g.highest_root_index();
        let p = product(&g.e(th), &g.f(th));
        let got = hc_projection_deg2(&g, &p).unwrap();
        let h = g.bracket(&g.e(th), &g.f(th));
        assert_eq!(got, PolyElement::from_lie(&h).scale(&qr(1, 2)));
        assert!(chevalley_projection(&g, &p).unwrap().is_zero());
    }
}
