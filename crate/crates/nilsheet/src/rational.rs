//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Integer value if `x` is integral and fits in an `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 || (n >= 0 && k > n) {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * q(n - i) / q(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |a, i| a * q(i))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "7/2", "-5/3"] {
            let x = parse_q(s).unwrap();
            assert_eq!(parse_q(&x.to_string()).unwrap(), x);
        }
        assert!(parse_q("1/0").is_none());
        assert_eq!(parse_q("4/6").unwrap(), qr(2, 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(-1, 2), q(1));
    }
}
