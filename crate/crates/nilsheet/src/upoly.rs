//! Univariate polynomials over `Q`, used for coefficients in the level `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        UPoly(vec![c]).trimmed()
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        UPoly(vec![Q::zero(), Q::one()])
    }

    pub fn from_coeffs(c: Vec<Q>) -> Self {
        UPoly(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            quo[i] = c;
        }
        (UPoly(quo).trimmed(), UPoly(r).trimmed())
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots (without multiplicity) and the cofactor with no rational roots.
    pub fn rational_roots(&self) -> (Vec<Q>, UPoly) {
        let mut p = self.monic();
        let mut roots = Vec::new();
        if p.is_zero() {
            return (roots, p);
        }
        while p.0.first().is_some_and(|c| c.is_zero()) {
            p = UPoly(p.0[1..].to_vec());
            if !roots.contains(&Q::zero()) {
                roots.push(Q::zero());
            }
        }
        loop {
            let Some(r) = p.find_rational_root() else { break };
            let lin = UPoly(vec![-r.clone(), Q::one()]);
            while p.eval(&r).is_zero() {
                p = p.div_rem(&lin).0;
            }
            roots.push(r);
        }
        roots.sort();
        (roots, p)
    }

    fn find_rational_root(&self) -> Option<Q> {
        if self.degree()? == 0 {
            return None;
        }
        // integer coefficients
        let lcm = self.0.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints.first()?.abs();
        let an = ints.last()?.abs();
        if a0.is_zero() {
            return Some(Q::zero());
        }
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&an)?;
        for p in &num_divs {
            for d in &den_divs {
                for s in [1i32, -1] {
                    let cand = Q::new(p.clone() * BigInt::from(s), d.clone());
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    // coefficients met in practice are small; refuse huge trial divisions
    let limit = BigInt::from(1_000_000_000_000i64);
    if n > &limit {
        return None;
    }
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &(&i * &i) <= n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    Some(out)
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
                let b = o.0.get(i).cloned().unwrap_or_else(Q::zero);
                a + b
            })
            .collect();
        UPoly(c).trimmed()
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly(c).trimmed()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            match (show_coeff, i) {
                (true, 0) => write!(f, "{a}")?,
                (true, 1) => write!(f, "{a}k")?,
                (true, _) => write!(f, "{a}k^{i}")?,
                (false, 1) => write!(f, "k")?,
                (false, _) => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}
