//! The realization of `U(sl_n)` by differential operators on `ℂⁿ`,
//! `e_{i,j} ↦ −z_j ∂_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieElement, Realization};
use crate::rational::{binomial, factorial, Q};
use crate::symalg::{generate_submodule, v1, PolyElement};

/// Exponents `(a, b)` of `z^a ∂^b`.
pub type WeylMonomial = (Vec<u32>, Vec<u32>);

/// A differential operator in normal order (all `z` left of all `∂`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<WeylMonomial, Q>,
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        WeylOperator { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], vec![0; n], Q::one())
    }

    pub fn monomial(n: usize, a: Vec<u32>, b: Vec<u32>, c: Q) -> Self {
        let mut w = Self::zero(n);
        w.add_term((a, b), c);
        w
    }

    /// `z_i` (0-based).
    pub fn z(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self::monomial(n, a, vec![0; n], Q::one())
    }

    /// `∂_i` (0-based).
    pub fn d(n: usize, i: usize) -> Self {
        let mut b = vec![0; n];
        b[i] = 1;
        Self::monomial(n, vec![0; n], b, Q::one())
    }

    /// `z_j ∂_i` (0-based).
    pub fn z_d(n: usize, j: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        let mut b = vec![0; n];
        a[j] = 1;
        b[i] = 1;
        Self::monomial(n, a, b, Q::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<WeylMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: WeylMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &WeylOperator) -> WeylOperator {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> WeylOperator {
        let mut r = Self::zero(self.n);
        for (m, x) in &self.terms {
            r.add_term(m.clone(), x * c);
        }
        r
    }

    pub fn sub(&self, o: &WeylOperator) -> WeylOperator {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn commutator(&self, o: &WeylOperator) -> WeylOperator {
        compose(self, o).sub(&compose(o, self))
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, e) in a.iter().enumerate().filter(|(_, e)| **e > 0) {
                write!(f, "·z{}{}", i + 1, if *e > 1 { format!("^{e}") } else { String::new() })?;
            }
            for (i, e) in b.iter().enumerate().filter(|(_, e)| **e > 0) {
                write!(f, "·d{}{}", i + 1, if *e > 1 { format!("^{e}") } else { String::new() })?;
            }
        }
        Ok(())
    }
}

/// Normal-ordered product, using `∂^b z^c = Σ_k C(b,k) c!/(c−k)! z^{c−k} ∂^{b−k}` in each variable.
pub fn compose(x: &WeylOperator, y: &WeylOperator) -> WeylOperator {
    assert_eq!(x.n, y.n, "operators on different spaces");
    let n = x.n;
    let mut out = WeylOperator::zero(n);
    for ((a, b), cx) in &x.terms {
        for ((c, d), cy) in &y.terms {
            // per-variable expansions, then their product
            let mut partial: Vec<(Vec<u32>, Vec<u32>, Q)> = vec![(a.clone(), vec![0; n], cx * cy)];
            for i in 0..n {
                let mut next = Vec::new();
                for (za, db, coef) in &partial {
                    for k in 0..=b[i].min(c[i]) {
                        let w = binomial(b[i] as i64, k as i64) * factorial(c[i]) / factorial(c[i] - k);
                        let mut za = za.clone();
                        let mut db = db.clone();
                        za[i] += c[i] - k;
                        db[i] = b[i] - k + d[i];
                        next.push((za, db, coef * w));
                    }
                }
                partial = next;
            }
            for (za, db, coef) in partial {
                out.add_term((za, db), coef);
            }
        }
    }
    out
}

fn sl_size(g: &LieAlgebra) -> Result<usize> {
    match g.realization() {
        Realization::Sl(n) => Ok(n),
        other => Err(Error::Unsupported(format!("differential operator realization of {other:?}"))),
    }
}

/// `ψ(M) = −Σ M_{ij} z_j ∂_i`.
pub fn psi(g: &LieAlgebra, x: &LieElement) -> Result<WeylOperator> {
    let n = sl_size(g)?;
    let m = g.to_matrix(x);
    let mut out = WeylOperator::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = &m[(i, j)];
            if !c.is_zero() {
                out = out.add(&WeylOperator::z_d(n, j, i).scale(&-c.clone()));
            }
        }
    }
    Ok(out)
}

/// Image of the symmetrization of a polynomial in `S(g)`.
pub fn psi_sym(g: &LieAlgebra, p: &PolyElement) -> Result<WeylOperator> {
    let n = sl_size(g)?;
    let images: Vec<WeylOperator> = (0..g.dim()).map(|i| psi(g, &LieElement::basis(i))).collect::<Result<_>>()?;
    let mut out = WeylOperator::zero(n);
    for (mono, c) in p.terms() {
        let mut sum = WeylOperator::zero(n);
        let mut count = 0u32;
        let mut perm = mono.clone();
        perm.sort();
        loop {
            let mut t = WeylOperator::one(n);
            for &v in &perm {
                t = compose(&t, &images[v]);
            }
            sum = sum.add(&t);
            count += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        // distinct orderings of a multiset average to the full symmetrization
        out = out.add(&sum.scale(&(c / Q::from_integer(count.into()))));
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `ψ([x, y]) = [ψ(x), ψ(y)]` for all basis pairs.
pub fn is_homomorphism(g: &LieAlgebra) -> Result<bool> {
    let images: Vec<WeylOperator> = (0..g.dim()).map(|i| psi(g, &LieElement::basis(i))).collect::<Result<_>>()?;
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let br = g.bracket(&LieElement::basis(i), &LieElement::basis(j));
            if psi(g, &br)? != images[i].commutator(&images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The symmetrization of every basis vector of `W₁` lies in the kernel of `ψ`.
pub fn kernel_check_w1(n: usize) -> Result<bool> {
    if n < 4 {
        return Err(Error::Invalid(format!("n = {n} is below 4")));
    }
    kernel_check_w1_on(&crate::orbits::build(Realization::Sl(n))?)
}

/// [`kernel_check_w1`] on a given copy of `sl_n`.
pub fn kernel_check_w1_on(g: &LieAlgebra) -> Result<bool> {
    let w = generate_submodule(g, &v1(g)?)?;
    for b in w.basis() {
        if !psi_sym(g, &b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ψ(sym(e_θ²))`, which does not vanish.
pub fn control_image(g: &LieAlgebra) -> Result<WeylOperator> {
    let e = g.e_index(g.highest_root_index());
    psi_sym(g, &PolyElement::var(e).pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::build;
    use crate::rational::q;
    use crate::symalg::casimir;

    #[test]
    fn normal_ordering() {
        let n = 2;
        let lhs = compose(&WeylOperator::d(n, 0), &WeylOperator::z(n, 0));
        assert_eq!(lhs, WeylOperator::z_d(n, 0, 0).add(&WeylOperator::one(n)));
        let a = WeylOperator::z_d(n, 0, 1);
        let b = WeylOperator::z_d(n, 1, 0);
        assert_eq!(a.commutator(&b), WeylOperator::z_d(n, 0, 0).sub(&WeylOperator::z_d(n, 1, 1)));
    }

    #[test]
    fn associativity() {
        let n = 2;
        let x = WeylOperator::d(n, 0).add(&WeylOperator::z(n, 1));
        let y = compose(&WeylOperator::d(n, 0), &WeylOperator::d(n, 1));
        let z = compose(&WeylOperator::z(n, 0), &WeylOperator::z(n, 0)).add(&WeylOperator::z(n, 1));
        assert_eq!(compose(&compose(&x, &y), &z), compose(&x, &compose(&y, &z)));
    }

    #[test]
    fn generator_images() {
        let g = build(Realization::Sl(4)).unwrap();
        let r = g.datum.root_index(&g.datum.simple_roots[0]).unwrap();
        assert_eq!(psi(&g, &LieElement::basis(g.e_index(r))).unwrap(), WeylOperator::z_d(4, 1, 0).scale(&q(-1)));
        let h1 = psi(&g, &LieElement::basis(g.h_index(0))).unwrap();
        assert_eq!(h1, WeylOperator::z_d(4, 1, 1).sub(&WeylOperator::z_d(4, 0, 0)));
    }

    #[test]
    fn homomorphism_sl4() {
        let g = build(Realization::Sl(4)).unwrap();
        assert!(is_homomorphism(&g).unwrap());
    }

    #[test]
    fn kernel_and_control() {
        assert!(kernel_check_w1(4).unwrap());
        let g = build(Realization::Sl(4)).unwrap();
        let c = control_image(&g).unwrap();
        let zd = WeylOperator::z_d(4, 3, 0);
        assert_eq!(c, compose(&zd, &zd));
    }

    #[test]
    fn casimir_is_central() {
        let g = build(Realization::Sl(4)).unwrap();
        let c = psi_sym(&g, &casimir(&g)).unwrap();
        for i in 0..g.dim() {
            let x = psi(&g, &LieElement::basis(i)).unwrap();
            assert!(c.commutator(&x).is_zero());
        }
    }

    #[test]
    fn other_types_rejected() {
        let g = build(Realization::SoEven(4)).unwrap();
        assert!(psi(&g, &LieElement::basis(0)).is_err());
    }
}
