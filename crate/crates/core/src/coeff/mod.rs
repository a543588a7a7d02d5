//! Coefficient and residue fields: ℚ and finite fields F_{p^n} = F_p[u]/(m(u)).
//!
//! A [`FieldDescriptor`] carries the arithmetic; [`FieldElement`]s are plain
//! values and are only meaningful together with their descriptor.

mod poly;

pub use poly::Poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{fmt_q, is_prime, parse_q, Q};

/// Upper bound on field sizes that may be enumerated by brute force.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    DescriptorMismatch,
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree at least 2")]
    BadModulus,
    #[error("polynomial is reducible over the base field")]
    Reducible,
    #[error("field of size {0} is too large to enumerate")]
    TooLarge(u64),
    #[error("no {e}-th root of the given element exists in the field")]
    NoRoot { e: u64 },
    #[error("operation not supported for {0}")]
    Unsupported(&'static str),
    #[error("missing operand for {0}")]
    MissingOperand(&'static str),
    #[error("invalid field element literal: {0}")]
    BadLiteral(String),
}

/// ℚ (characteristic 0) or F_p[u]/(modulus).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    characteristic: u64,
    modulus: Arc<[u64]>,
}

/// Exact rational, or coefficient vector (length = degree) over F_p.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(Q),
    Finite(Vec<u64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { characteristic: 0, modulus: Arc::from(Vec::new()) }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor { characteristic: p, modulus: Arc::from(Vec::new()) })
    }

    /// F_p[u]/(modulus); the modulus is reduced mod p and must be monic and
    /// irreducible (checked by exhaustive factor search).
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self, FieldError> {
        let base = Self::prime(p)?;
        let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if m.len() < 3 || *m.last().unwrap() != 1 {
            return Err(FieldError::BadModulus);
        }
        let poly = Poly::new(&base, m.iter().map(|&c| base.from_u64(c)).collect());
        if !poly.is_irreducible(&base)? {
            return Err(FieldError::Reducible);
        }
        Ok(FieldDescriptor { characteristic: p, modulus: Arc::from(m) })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Monic modulus coefficients, constant term first; empty for ℚ and F_p.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// Degree over the prime field (1 for ℚ and F_p).
    pub fn degree(&self) -> u32 {
        if self.modulus.is_empty() {
            1
        } else {
            (self.modulus.len() - 1) as u32
        }
    }

    /// Number of elements, `None` for ℚ or when it overflows.
    pub fn order(&self) -> Option<u64> {
        if self.is_rational() {
            return None;
        }
        self.characteristic.checked_pow(self.degree())
    }

    pub fn prime_subfield(&self) -> FieldDescriptor {
        FieldDescriptor { characteristic: self.characteristic, modulus: Arc::from(Vec::new()) }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        if self.is_rational() {
            return FieldElement::Rational(Q::from_integer(BigInt::from(n)));
        }
        let p = self.characteristic as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        if self.is_rational() {
            return FieldElement::Rational(Q::from_integer(BigInt::from(n)));
        }
        let mut v = vec![0; self.degree() as usize];
        v[0] = n % self.characteristic;
        FieldElement::Finite(v)
    }

    pub fn from_q(&self, x: Q) -> Result<FieldElement, FieldError> {
        if self.is_rational() {
            return Ok(FieldElement::Rational(x));
        }
        let p = BigInt::from(self.characteristic);
        let n = self.from_bigint(x.numer(), &p);
        let d = self.from_bigint(x.denom(), &p);
        self.div(&n, &d)
    }

    fn from_bigint(&self, n: &BigInt, p: &BigInt) -> FieldElement {
        let r = ((n % p) + p) % p;
        self.from_u64(r.to_string().parse().expect("residue below p"))
    }

    /// Element from its coefficient vector (padded / reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if self.is_rational() {
            return Err(FieldError::DescriptorMismatch);
        }
        let n = self.degree() as usize;
        if coeffs.len() > n {
            return Err(FieldError::DescriptorMismatch);
        }
        let mut v = vec![0; n];
        for (x, c) in v.iter_mut().zip(coeffs) {
            *x = c % self.characteristic;
        }
        Ok(FieldElement::Finite(v))
    }

    /// The class of `u`; `None` for prime fields and ℚ.
    pub fn generator(&self) -> Option<FieldElement> {
        if self.degree() < 2 {
            return None;
        }
        let mut v = vec![0; self.degree() as usize];
        v[1] = 1;
        Some(FieldElement::Finite(v))
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(_) => self.is_rational(),
            FieldElement::Finite(v) => {
                !self.is_rational()
                    && v.len() == self.degree() as usize
                    && v.iter().all(|&c| c < self.characteristic)
            }
        }
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch)
        }
    }

    /// Applies `op` to `a` (and `b` for binary operations), checking operands.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement, FieldError> {
        match op {
            ArithOp::Add => self.try_add(a, b.ok_or(FieldError::MissingOperand("add"))?),
            ArithOp::Mul => self.try_mul(a, b.ok_or(FieldError::MissingOperand("mul"))?),
            ArithOp::Neg => {
                self.check(a)?;
                Ok(self.neg(a))
            }
            ArithOp::Inv => {
                self.check(a)?;
                self.inv(a)
            }
        }
    }

    pub fn try_add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(x) => x.is_zero(),
            FieldElement::Finite(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            (FieldElement::Finite(x), FieldElement::Finite(y)) => {
                let p = self.characteristic;
                FieldElement::Finite(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Finite(x) => {
                let p = self.characteristic;
                FieldElement::Finite(x.iter().map(|&c| (p - c) % p).collect())
            }
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
            (FieldElement::Finite(x), FieldElement::Finite(y)) => FieldElement::Finite(self.mul_mod(x, y)),
            _ => panic!("mixed field elements"),
        }
    }

    fn mul_mod(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.characteristic as u128;
        let n = x.len();
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u128 * b as u128) % p;
            }
        }
        if n > 1 {
            let m = &self.modulus;
            for k in (n..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                // u^k = u^{k-n} * u^n, u^n = -(m_0 + ... + m_{n-1} u^{n-1})
                for (i, &mi) in m[..n].iter().enumerate() {
                    let t = c * mi as u128 % p;
                    prod[k - n + i] = (prod[k - n + i] + p - t) % p;
                }
                prod[k] = 0;
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, a: &FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        match a {
            FieldElement::Rational(x) => Ok(FieldElement::Rational(x.recip())),
            FieldElement::Finite(_) => {
                let q = self.order().ok_or(FieldError::TooLarge(u64::MAX))?;
                Ok(self.pow(a, q - 2))
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_rational() {
            return Err(FieldError::CharacteristicZero);
        }
        Ok(self.pow(a, self.characteristic))
    }

    /// The unique `b` with `b^p = a` (F_{p^n} is perfect: `b = a^{p^{n-1}}`).
    pub fn frobenius_inverse(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_rational() {
            return Err(FieldError::CharacteristicZero);
        }
        let mut b = a.clone();
        for _ in 1..self.degree() {
            b = self.pow(&b, self.characteristic);
        }
        Ok(b)
    }

    /// All elements, in a fixed order (lexicographic in the coefficient vector).
    pub fn elements(&self) -> Result<Vec<FieldElement>, FieldError> {
        let q = match self.order() {
            None if self.is_rational() => return Err(FieldError::Unsupported("enumeration of Q")),
            None => return Err(FieldError::TooLarge(u64::MAX)),
            Some(q) if q > ENUMERATION_LIMIT => return Err(FieldError::TooLarge(q)),
            Some(q) => q,
        };
        let p = self.characteristic;
        let n = self.degree() as usize;
        Ok((0..q)
            .map(|mut k| {
                let mut v = vec![0; n];
                for c in v.iter_mut() {
                    *c = k % p;
                    k /= p;
                }
                FieldElement::Finite(v)
            })
            .collect())
    }

    /// An `e`-th root of `a` in the field, if one exists. For ℚ this is the
    /// positive real root of a rational e-th power; for finite fields the
    /// first root in enumeration order.
    pub fn nth_root(&self, a: &FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        if e == 0 {
            return Err(FieldError::NoRoot { e });
        }
        match a {
            FieldElement::Rational(x) => {
                let root = |n: &BigInt| -> Option<BigInt> {
                    let r = n.abs().nth_root(e as u32);
                    (r.pow(e as u32) == n.abs()).then_some(r)
                };
                let (n, d) = (root(x.numer()), root(x.denom()));
                match (n, d) {
                    (Some(n), Some(d)) => {
                        let neg = x.is_negative();
                        if neg && e % 2 == 0 {
                            return Err(FieldError::NoRoot { e });
                        }
                        let r = Q::new(if neg { -n } else { n }, d);
                        Ok(FieldElement::Rational(r))
                    }
                    _ => Err(FieldError::NoRoot { e }),
                }
            }
            FieldElement::Finite(_) => {
                self.check(a)?;
                self.elements()?
                    .into_iter()
                    .find(|b| self.pow(b, e) == *a)
                    .ok_or(FieldError::NoRoot { e })
            }
        }
    }

    /// Whether `a` lies in the subfield F_{p^m} (m must divide the degree).
    pub fn in_subfield(&self, a: &FieldElement, m: u32) -> bool {
        if self.is_rational() {
            return true;
        }
        let q_m = self.characteristic.pow(m);
        self.pow(a, q_m) == *a
    }

    /// Degree of `a` over the subfield F_{p^m}: size of its Frobenius orbit.
    pub fn degree_over(&self, a: &FieldElement, m: u32) -> u32 {
        if self.is_rational() {
            return 1;
        }
        let q_m = self.characteristic.pow(m);
        let mut b = self.pow(a, q_m);
        let mut d = 1;
        while b != *a {
            b = self.pow(&b, q_m);
            d += 1;
        }
        d
    }

    /// Minimal polynomial of `a` over the subfield F_{p^m}: the product of
    /// `X - σ(a)` over the orbit of `σ: x ↦ x^{p^m}`. Coefficients are
    /// returned as elements of `self` lying in the subfield.
    pub fn min_poly_over(&self, a: &FieldElement, m: u32) -> Result<Poly, FieldError> {
        self.check(a)?;
        if self.is_rational() {
            return Ok(Poly::new(self, vec![self.neg(a), self.one()]));
        }
        if self.degree() % m != 0 {
            return Err(FieldError::Unsupported("subfield degree not dividing the field degree"));
        }
        let q_m = self.characteristic.pow(m);
        let mut poly = Poly::new(self, vec![self.one()]);
        let mut b = a.clone();
        loop {
            poly = poly.mul(self, &Poly::new(self, vec![self.neg(&b), self.one()]));
            b = self.pow(&b, q_m);
            if b == *a {
                break;
            }
        }
        Ok(poly)
    }

    /// Minimal polynomial over the prime field, as integers mod p.
    pub fn min_poly(&self, a: &FieldElement) -> Result<Vec<u64>, FieldError> {
        if self.is_rational() {
            return Err(FieldError::Unsupported("integer coefficients over Q"));
        }
        let poly = self.min_poly_over(a, 1)?;
        Ok(poly
            .coeffs()
            .iter()
            .map(|c| match c {
                FieldElement::Finite(v) => {
                    debug_assert!(v[1..].iter().all(|&x| x == 0));
                    v[0]
                }
                FieldElement::Rational(_) => unreachable!(),
            })
            .collect())
    }

    pub fn render(&self, a: &FieldElement) -> String {
        format!("{a:?}")
    }

    /// Parses a JSON literal: `"a/b"` for ℚ, an integer or coefficient array
    /// for finite fields.
    pub fn parse_element(&self, v: &serde_json::Value) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::BadLiteral(v.to_string());
        if self.is_rational() {
            return match v {
                serde_json::Value::String(s) => {
                    parse_q(s).map(FieldElement::Rational).map_err(|_| bad())
                }
                serde_json::Value::Number(n) => {
                    n.as_i64().map(|n| self.from_i64(n)).ok_or_else(bad)
                }
                _ => Err(bad()),
            };
        }
        match v {
            serde_json::Value::Number(n) => n.as_i64().map(|n| self.from_i64(n)).ok_or_else(bad),
            serde_json::Value::Array(items) => {
                let cs: Vec<u64> = items
                    .iter()
                    .map(|x| x.as_i64().map(|n| n.rem_euclid(self.characteristic as i64) as u64))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                self.from_coeffs(&cs)
            }
            serde_json::Value::String(s) => {
                let x = parse_q(s).map_err(|_| bad())?;
                self.from_q(x)
            }
            _ => Err(bad()),
        }
    }

    pub fn element_json(&self, a: &FieldElement) -> serde_json::Value {
        match a {
            FieldElement::Rational(x) => serde_json::Value::String(fmt_q(x)),
            FieldElement::Finite(v) if v.len() == 1 => serde_json::Value::from(v[0]),
            FieldElement::Finite(v) => serde_json::Value::from(v.clone()),
        }
    }

    pub fn descriptor_json(&self) -> FieldJson {
        FieldJson { characteristic: self.characteristic, modulus: self.modulus.to_vec() }
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.degree()) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "F_{p}"),
            (p, n) => write!(f, "F_{p}^{n}[{:?}]", self.modulus),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(x) => write!(f, "{}", fmt_q(x)),
            FieldElement::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            FieldElement::Finite(v) => {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "u".to_string(),
                        (1, c) => format!("{c}u"),
                        (i, 1) => format!("u^{i}"),
                        (i, c) => format!("{c}u^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

/// JSON form `{"char": p, "modulus": [c0, ..., cn]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "char")]
    pub characteristic: u64,
    #[serde(default)]
    pub modulus: Vec<u64>,
}

impl FieldJson {
    pub fn build(&self) -> Result<FieldDescriptor, FieldError> {
        match (self.characteristic, self.modulus.len()) {
            (0, 0) => Ok(FieldDescriptor::rationals()),
            (0, _) => Err(FieldError::Unsupported("number fields beyond Q")),
            (p, 0) => FieldDescriptor::prime(p),
            (p, _) => FieldDescriptor::extension(p, &self.modulus),
        }
    }
}

/// Embedding of `source` into an extension `target = source[X]/(f)`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: FieldDescriptor,
    pub target: FieldDescriptor,
    /// Image of the source generator `u` (or 1 when the source is prime).
    pub generator_image: FieldElement,
    /// The adjoined root of `f` in the target.
    pub adjoined_root: FieldElement,
}

impl Embedding {
    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if !self.source.contains(a) {
            return Err(FieldError::DescriptorMismatch);
        }
        let FieldElement::Finite(cs) = a else {
            return Err(FieldError::Unsupported("embedding of Q"));
        };
        let t = &self.target;
        let mut acc = t.zero();
        let mut pw = t.one();
        for &c in cs {
            acc = t.add(&acc, &t.mul(&t.from_u64(c), &pw));
            pw = t.mul(&pw, &self.generator_image);
        }
        Ok(acc)
    }

    pub fn compose(&self, next: &Embedding) -> Result<Embedding, FieldError> {
        Ok(Embedding {
            source: self.source.clone(),
            target: next.target.clone(),
            generator_image: next.apply(&self.generator_image)?,
            adjoined_root: next.apply(&self.adjoined_root)?,
        })
    }
}

/// `base[X]/(f)` for monic irreducible `f` over `base`, as an absolute field
/// F_p[u]/(m) together with the embedding of `base`.
pub fn build_extension(base: &FieldDescriptor, f: &Poly) -> Result<(FieldDescriptor, Embedding), FieldError> {
    if base.is_rational() {
        return Err(FieldError::Unsupported("extensions of Q"));
    }
    let d = f.degree().ok_or(FieldError::BadModulus)?;
    if d == 0 || !base.is_one(f.leading()) {
        return Err(FieldError::BadModulus);
    }
    if !f.is_irreducible(base)? {
        return Err(FieldError::Reducible);
    }
    let p = base.characteristic();
    if base.degree() == 1 {
        let m: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| match c {
                FieldElement::Finite(v) => v[0],
                FieldElement::Rational(_) => unreachable!(),
            })
            .collect();
        let target = if d == 1 { base.clone() } else { FieldDescriptor::extension(p, &m)? };
        let root = if d == 1 { base.neg(&f.coeffs()[0]) } else { target.generator().expect("degree >= 2") };
        let emb = Embedding { source: base.clone(), target: target.clone(), generator_image: target.one(), adjoined_root: root };
        return Ok((target, emb));
    }
    let total = base.degree() * d as u32;
    let size = p.checked_pow(total).filter(|&q| q <= ENUMERATION_LIMIT).ok_or(FieldError::TooLarge(u64::MAX))?;
    let target = smallest_irreducible(p, total)?;
    let elems = target.elements()?;
    let base_mod = Poly::new(&target, base.modulus().iter().map(|&c| target.from_u64(c)).collect());
    let generator_image = elems
        .iter()
        .find(|x| target.is_zero(&base_mod.eval(&target, x)))
        .cloned()
        .ok_or(FieldError::Reducible)?;
    let partial = Embedding {
        source: base.clone(),
        target: target.clone(),
        generator_image,
        adjoined_root: target.zero(),
    };
    let f_img = Poly::new(&target, f.coeffs().iter().map(|c| partial.apply(c)).collect::<Result<_, _>>()?);
    let root = elems
        .iter()
        .find(|x| target.is_zero(&f_img.eval(&target, x)))
        .cloned()
        .ok_or(FieldError::Reducible)?;
    debug_assert_eq!(size, target.order().unwrap());
    Ok((target.clone(), Embedding { adjoined_root: root, ..partial }))
}

/// Lexicographically smallest monic irreducible of degree `n` over F_p.
pub fn smallest_irreducible(p: u64, n: u32) -> Result<FieldDescriptor, FieldError> {
    let count = p.checked_pow(n).filter(|&c| c <= ENUMERATION_LIMIT).ok_or(FieldError::TooLarge(u64::MAX))?;
    for k in 0..count {
        let mut m = Vec::with_capacity(n as usize + 1);
        let mut r = k;
        for _ in 0..n {
            m.push(r % p);
            r /= p;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if let Ok(f) = FieldDescriptor::extension(p, &m) {
            return Ok(f);
        }
    }
    Err(FieldError::Reducible)
}

impl FieldElement {
    pub fn is_rational_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(x) if x.is_zero())
    }
}

/// Convenience for tests and builders.
pub fn rational(x: Q) -> FieldElement {
    FieldElement::Rational(x)
}

pub fn one_q() -> Q {
    Q::one()
}
