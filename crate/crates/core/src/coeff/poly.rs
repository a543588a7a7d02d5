//! Dense univariate polynomials over a [`FieldDescriptor`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FieldDescriptor, FieldElement, FieldError, ENUMERATION_LIMIT};
use crate::rational::Q;

/// Coefficients constant term first; never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(k: &FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u64s(k: &FieldDescriptor, cs: &[u64]) -> Self {
        Self::new(k, cs.iter().map(|&c| k.from_u64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// `X`.
    pub fn x(k: &FieldDescriptor) -> Self {
        Poly { coeffs: vec![k.zero(), k.one()] }
    }

    pub fn constant(k: &FieldDescriptor, c: FieldElement) -> Self {
        Self::new(k, vec![c])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> &FieldElement {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, k: &FieldDescriptor, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let cs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                k.add(a, b)
            })
            .collect();
        Poly::new(k, cs)
    }

    pub fn neg(&self, k: &FieldDescriptor) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub(&self, k: &FieldDescriptor, other: &Poly) -> Poly {
        self.add(k, &other.neg(k))
    }

    pub fn scale(&self, k: &FieldDescriptor, c: &FieldElement) -> Poly {
        Poly::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, k: &FieldDescriptor, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut cs = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                cs[i + j] = k.add(&cs[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, cs)
    }

    pub fn eval(&self, k: &FieldDescriptor, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Euclidean division: `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, k: &FieldDescriptor, d: &Poly) -> Result<(Poly, Poly), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = k.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(k, q), Poly::new(k, r)))
    }

    pub fn monic(&self, k: &FieldDescriptor) -> Result<Poly, FieldError> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        Ok(self.scale(k, &k.inv(self.leading())?))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, k: &FieldDescriptor, other: &Poly) -> Result<Poly, FieldError> {
        if k.is_rational() {
            return Ok(gcd_rational(k, self, other));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(k, &b)?;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Irreducibility by exhaustive search for monic factors of degree at
    /// most half the degree. Only finite fields are supported beyond degree 1.
    pub fn is_irreducible(&self, k: &FieldDescriptor) -> Result<bool, FieldError> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        if k.is_rational() {
            return Err(FieldError::Unsupported("irreducibility over Q"));
        }
        let q = k.order().ok_or(FieldError::TooLarge(u64::MAX))?;
        let elems = k.elements()?;
        for d in 1..=n / 2 {
            let count = q.checked_pow(d as u32).filter(|&c| c <= ENUMERATION_LIMIT).ok_or(FieldError::TooLarge(u64::MAX))?;
            for idx in 0..count {
                let mut cs = Vec::with_capacity(d + 1);
                let mut r = idx;
                for _ in 0..d {
                    cs.push(elems[(r % q) as usize].clone());
                    r /= q;
                }
                cs.push(k.one());
                let factor = Poly { coeffs: cs };
                if self.divrem(k, &factor)?.1.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}


/// Integer primitive part of a rational polynomial, constant term first.
fn primitive_int(p: &Poly) -> Vec<BigInt> {
    let qs: Vec<Q> = p.coeffs.iter().map(|c| match c {
        FieldElement::Rational(x) => x.clone(),
        FieldElement::Finite(_) => unreachable!("rational field"),
    }).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// Primitive pseudo-remainder sequence over ℤ; the plain Euclidean
/// algorithm over ℚ swells coefficients badly.
fn gcd_rational(k: &FieldDescriptor, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (primitive_int(a), primitive_int(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // lc(b)^(deg a − deg b + 1)·a = q·b + r
        let lb = b.last().unwrap().clone();
        let mut r = a;
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &lr * bj;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        a = b;
        b = primitive(r);
    }
    let coeffs = a.into_iter().map(|c| FieldElement::Rational(Q::from_integer(c))).collect();
    Poly::new(k, coeffs).monic(k).expect("nonzero leading coefficient")
}
