//! The PBW model of the universal affine vertex algebra `V^k(𝔤)` with the
//! level `k` kept as an indeterminate.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieElement, Realization};
use crate::rational::{binomial, factorial, q, Q};
use crate::rootdata::Weight;
use crate::symalg::{self, PolyElement};
use crate::upoly::UPoly;

/// A mode `x_idx(−depth)` with `depth ≥ 1`.
pub type Mode = (u32, usize);

fn key(m: &Mode) -> (Reverse<u32>, usize) {
    (Reverse(m.0), m.1)
}

fn canonical(mono: &mut [Mode]) {
    mono.sort_by_key(key);
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineVector {
    terms: BTreeMap<Vec<Mode>, UPoly>,
}

impl AffineVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Vec::new(), UPoly::constant(Q::one()))
    }

    pub fn monomial(mut m: Vec<Mode>, c: UPoly) -> Self {
        canonical(&mut m);
        let mut v = Self::zero();
        v.add_term(m, &c);
        v
    }

    fn add_term(&mut self, m: Vec<Mode>, c: &UPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Mode>, UPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &AffineVector) -> AffineVector {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &AffineVector) -> AffineVector {
        self.add(&o.scale_q(&-Q::one()))
    }

    pub fn scale(&self, c: &UPoly) -> AffineVector {
        let mut r = Self::zero();
        for (m, v) in &self.terms {
            r.add_term(m.clone(), &(v * c));
        }
        r
    }

    pub fn scale_q(&self, c: &Q) -> AffineVector {
        self.scale(&UPoly::constant(c.clone()))
    }

    /// Conformal degree `Σ nᵢ` of each monomial, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.iter().map(|x| x.0).sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|x| x.0).sum::<u32>()).max().unwrap_or(0)
    }

    /// Specializes the level.
    pub fn at_level(&self, k: &Q) -> AffineVector {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &UPoly::constant(c.eval(k)));
        }
        r
    }

    pub fn display_with(&self, g: &LieAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let modes: Vec<String> = m.iter().map(|&(d, i)| format!("{}(-{d})", g.basis_label(i))).collect();
                let body = if modes.is_empty() { "|0>".to_string() } else { format!("{}|0>", modes.join(" ")) };
                format!("({c}) {body}")
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for AffineVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (d, x) in m {
                write!(f, " x{x}(-{d})")?;
            }
        }
        Ok(())
    }
}

/// `x(n)·v` for a basis element `x`.
pub fn act(g: &LieAlgebra, x: usize, n: i64, v: &AffineVector) -> AffineVector {
    let mut r = AffineVector::zero();
    for (m, c) in v.terms() {
        r = r.add(&act_mono(g, x, n, m).scale(c));
    }
    r
}

/// `x(n)·v` for a Lie element `x`.
pub fn act_elem(g: &LieAlgebra, x: &LieElement, n: i64, v: &AffineVector) -> AffineVector {
    let mut r = AffineVector::zero();
    for (&i, c) in &x.0 {
        r = r.add(&act(g, i, n, v).scale_q(c));
    }
    r
}

fn act_mono(g: &LieAlgebra, x: usize, n: i64, m: &[Mode]) -> AffineVector {
    if n < 0 {
        let me: Mode = ((-n) as u32, x);
        if m.first().is_none_or(|f| key(&me) <= key(f)) {
            let mut nm = Vec::with_capacity(m.len() + 1);
            nm.push(me);
            nm.extend_from_slice(m);
            return AffineVector::monomial(nm, UPoly::constant(Q::one()));
        }
    } else if m.is_empty() {
        return AffineVector::zero();
    }
    // x(n) y(−d) rest = y(−d) x(n) rest + [x,y](n−d) rest + n(x|y)δ_{n,d} k rest
    let (d, y) = m[0];
    let rest = AffineVector::monomial(m[1..].to_vec(), UPoly::constant(Q::one()));
    let mut r = act(g, y, -(d as i64), &act_mono(g, x, n, &m[1..]));
    for &(t, s) in g.bracket_basis(x, y) {
        r = r.add(&act(g, t, n - d as i64, &rest).scale_q(&q(s)));
    }
    if n == d as i64 {
        let f = g.form_basis(x, y);
        if !f.is_zero() {
            r = r.add(&rest.scale(&UPoly::var().scale(&(q(n) * f))));
        }
    }
    r
}

/// The vertex-algebra product `u_{(m)} w`.
pub fn nth_product(g: &LieAlgebra, u: &AffineVector, m: i64, w: &AffineVector) -> AffineVector {
    let mut r = AffineVector::zero();
    for (mono, c) in u.terms() {
        r = r.add(&mono_product(g, mono, m, w).scale(c));
    }
    r
}

fn mono_product(g: &LieAlgebra, u: &[Mode], m: i64, w: &AffineVector) -> AffineVector {
    let Some(&(n, x)) = u.first() else {
        return if m == -1 { w.clone() } else { AffineVector::zero() };
    };
    let rest = &u[1..];
    let n = n as i64;
    let deg_rest: i64 = rest.iter().map(|x| x.0 as i64).sum();
    let deg_w = w.max_degree() as i64;
    let j1 = deg_rest + deg_w - 1 - m;
    let j2 = deg_w;
    let mut r = AffineVector::zero();
    for j in 0..=j1.max(j2).max(0) {
        let c = binomial(n + j - 1, j);
        if j <= j1 {
            let inner = mono_product(g, rest, m + j, w);
            if !inner.is_zero() {
                r = r.add(&act(g, x, -n - j, &inner).scale_q(&c));
            }
        }
        if j <= j2 {
            let xw = act(g, x, j, w);
            if !xw.is_zero() {
                let sign = if n % 2 == 0 { -c.clone() } else { c.clone() };
                r = r.add(&mono_product(g, rest, m - n - j, &xw).scale_q(&sign));
            }
        }
    }
    r
}

/// Normally ordered square `u_{(−1)}u`.
pub fn normal_square(g: &LieAlgebra, u: &AffineVector) -> AffineVector {
    nth_product(g, u, -1, u)
}

/// `σ(p) = (1/d!) Σ x_{σ(1)}(−1)⋯x_{σ(d)}(−1)𝟙` on each monomial.
pub fn sigma(g: &LieAlgebra, p: &PolyElement) -> Result<AffineVector> {
    if !p.is_homogeneous() {
        return Err(Error::Invalid("sigma needs a homogeneous polynomial".into()));
    }
    let mut r = AffineVector::zero();
    for (mono, c) in p.terms() {
        let d = mono.len();
        let mut acc = AffineVector::zero();
        let mut idx: Vec<usize> = (0..d).collect();
        permutations(&mut idx, 0, &mut |perm| {
            let mut v = AffineVector::vacuum();
            for &i in perm.iter().rev() {
                v = act(g, mono[i], -1, &v);
            }
            acc = acc.add(&v);
        });
        r = r.add(&acc.scale_q(&(c / factorial(d as u32))));
    }
    Ok(r)
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// The closed form of `σ(v₀)` for `𝔰𝔩_{2m}`, built term by term.
pub fn sigma_v0(g: &LieAlgebra) -> Result<AffineVector> {
    let n = match g.realization() {
        Realization::Sl(n) if n % 2 == 0 && n >= 4 => n,
        _ => return Err(Error::Invalid("sigma_v0 needs sl_{2m}, m >= 2".into())),
    };
    let m = (n / 2) as i64;
    let el = |i, j| symalg::elementary(g, i, j);
    let et = el(1, n);
    let et_vac = act_elem(g, &et, -1, &AffineVector::vacuum());
    let mut r = AffineVector::zero();
    for i in 1..n {
        let c = Q::new((m - i as i64).into(), m.into());
        r = r.add(&act_elem(g, &g.h(i - 1), -1, &et_vac).scale_q(&c));
    }
    for i in 1..=n - 2 {
        let b = act_elem(g, &el(i + 1, n), -1, &AffineVector::vacuum());
        r = r.add(&act_elem(g, &el(1, i + 1), -1, &b));
    }
    r = r.add(&act_elem(g, &et, -2, &AffineVector::vacuum()).scale_q(&q(-(m - 1))));
    Ok(r)
}

/// Weight of an `𝔥`-weight vector under the zero modes.
pub fn weight_of(g: &LieAlgebra, v: &AffineVector) -> Option<Weight> {
    let mut it = v.terms().keys().map(|m| symalg::monomial_weight(g, &m.iter().map(|x| x.1).collect::<Vec<_>>()));
    let w = it.next()?;
    it.all(|x| x == w).then_some(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSolution {
    /// Rational levels at which every condition vanishes.
    #[serde(serialize_with = "ser_qs")]
    pub values: Vec<Q>,
    /// Every level works.
    pub all: bool,
    /// Part of the common factor without rational roots, if any.
    #[serde(serialize_with = "ser_opt_poly")]
    pub unresolved: Option<UPoly>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_opt_poly<S: serde::Serializer>(v: &Option<UPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl LevelSolution {
    pub fn none() -> Self {
        LevelSolution { values: Vec::new(), all: false, unresolved: None }
    }

    pub fn is_exactly(&self, vals: &[Q]) -> bool {
        !self.all && self.unresolved.is_none() && self.values == vals
    }
}

impl fmt::Display for LevelSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all {
            return write!(f, "all k");
        }
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", v.join(", "))?;
        if let Some(p) = &self.unresolved {
            write!(f, " and roots of {p}")?;
        }
        Ok(())
    }
}

/// Images of `v` under the raising operators `e_i(0)` and `f_θ(1)`.
pub fn raising_images(g: &LieAlgebra, v: &AffineVector) -> Vec<AffineVector> {
    let mut out: Vec<AffineVector> = (0..g.rank()).map(|i| act_elem(g, &symalg::simple_e(g, i), 0, v)).collect();
    out.push(act(g, g.f_index(g.highest_root_index()), 1, v));
    out
}

/// Levels `k` at which `v` is annihilated by all raising operators.
pub fn singular_levels(g: &LieAlgebra, v: &AffineVector) -> Result<LevelSolution> {
    if v.is_zero() || weight_of(g, v).is_none() || v.degree().is_none() {
        return Err(Error::NotWeightVector);
    }
    let mut common = UPoly::zero();
    for im in raising_images(g, v) {
        for c in im.terms().values() {
            common = common.gcd(c);
        }
    }
    if common.is_zero() {
        return Ok(LevelSolution { values: Vec::new(), all: true, unresolved: None });
    }
    let (values, rest) = common.rational_roots();
    let unresolved = (rest.degree().unwrap_or(0) > 0).then_some(rest);
    Ok(LevelSolution { values, all: false, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_sl;

    #[test]
    fn central_term() {
        let g = build_sl(3).unwrap();
        let th = g.highest_root_index();
        let v = act(&g, g.f_index(th), -1, &AffineVector::vacuum());
        let got = act(&g, g.e_index(th), 1, &v);
        assert_eq!(got, AffineVector::vacuum().scale(&UPoly::var()));
        assert!(act(&g, 0, 0, &AffineVector::vacuum()).is_zero());
    }

    #[test]
    fn commutator_relation() {
        let g = build_sl(3).unwrap();
        let v = act(&g, g.f_index(0), -1, &act(&g, g.e_index(1), -2, &AffineVector::vacuum()));
        for (x, y, a, b) in [(0usize, 4usize, 1i64, -1i64), (1, 3, 0, -2), (6, 5, 2, -1)] {
            let lhs = act(&g, x, a, &act(&g, y, b, &v)).sub(&act(&g, y, b, &act(&g, x, a, &v)));
            let br = g.bracket(&LieElement::basis(x), &LieElement::basis(y));
            let mut rhs = act_elem(&g, &br, a + b, &v);
            if a + b == 0 {
                rhs = rhs.add(&v.scale(&UPoly::var().scale(&(q(a) * g.form_basis(x, y)))));
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn v0_closed_form() {
        let g = build_sl(4).unwrap();
        let s = sigma(&g, &symalg::v0(&g).unwrap()).unwrap();
        assert_eq!(s, sigma_v0(&g).unwrap());
    }

    #[test]
    fn levels_for_v1() {
        let g = build_sl(4).unwrap();
        let s = sigma(&g, &symalg::v1(&g).unwrap()).unwrap();
        assert!(singular_levels(&g, &s).unwrap().is_exactly(&[q(-1)]));
    }

    #[test]
    fn levels_for_square_v0_w1() {
        let g = build_sl(4).unwrap();
        let s = sigma(&g, &symalg::v1(&g).unwrap()).unwrap();
        let sq = normal_square(&g, &s);
        assert!(singular_levels(&g, &sq).unwrap().is_exactly(&[q(0)]), "{}", singular_levels(&g, &sq).unwrap());
        let s0 = sigma_v0(&g).unwrap();
        assert!(singular_levels(&g, &s0).unwrap().is_exactly(&[q(-2)]));
        let d = crate::liealg::build_so_even(5).unwrap();
        let w = sigma(&d, &symalg::w1(&d).unwrap()).unwrap();
        assert!(singular_levels(&d, &w).unwrap().is_exactly(&[q(-3)]), "{}", singular_levels(&d, &w).unwrap());
    }

    #[test]
    fn square_of_a_generator() {
        let g = build_sl(2).unwrap();
        let e = act(&g, g.e_index(0), -1, &AffineVector::vacuum());
        let want = act(&g, g.e_index(0), -1, &e);
        assert_eq!(normal_square(&g, &e), want);
    }
}
