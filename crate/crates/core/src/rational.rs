//! Exact rational helpers shared by every module: parsing, canonical
//! formatting and the integer number theory used by Hermite reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` (surrounding whitespace ignored).
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// Canonical `num/den` form; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^e` as an exact rational (negative exponents allowed).
pub fn q_pow(p: u64, e: i64) -> Q {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

/// Serde adapter: a rational as a `"num/den"` string.
pub mod q_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub mod q_string_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("5/6").unwrap(), q(5, 6));
        assert_eq!(parse_q(" -2/4 ").unwrap(), q(-1, 2));
        assert_eq!(parse_q("7").unwrap(), qi(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&q(-3, 9)), "-1/3");
        assert_eq!(fmt_q(&qi(4)), "4");
    }

    #[test]
    fn ext_gcd_is_normalized() {
        let (g, s, t) = ext_gcd(&BigInt::from(-4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(s * BigInt::from(-4) + t * BigInt::from(6), g);
    }

    #[test]
    fn powers() {
        assert_eq!(q_pow(2, -3), q(1, 8));
        assert_eq!(q_pow(3, 2), qi(9));
        assert!(is_prime(2) && is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
