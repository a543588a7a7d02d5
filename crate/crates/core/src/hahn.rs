//! Truncated generalized power series `Σ c_γ t^γ + O(t^T)` with exponents in
//! a lex-ordered ℚⁿ and coefficients in a [`FieldDescriptor`].
//!
//! Every series carries the bound `T` up to which it is known exactly.
//! Arithmetic propagates the tightest bound that is sound for the inputs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::coeff::{Embedding, FieldDescriptor, FieldElement, FieldError, FieldJson};
use crate::ordgroup::{GroupElement, GroupError};
use crate::rational::{fmt_q, parse_q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HahnError {
    #[error("series are over different coefficient fields")]
    FieldMismatch,
    #[error("exponent rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("the series is zero up to its truncation")]
    ZeroSeries,
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("Artin-Schreier root needs a series of negative value; got value {0}")]
    NonNegativeValue(String),
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("invalid series literal: {0}")]
    Literal(String),
}

/// Truncation bound: a group element or "exact" (`Infinite`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bound {
    Finite(GroupElement),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Bound::Finite(g) => Some(g),
            Bound::Infinite => None,
        }
    }

    pub fn shift(&self, g: &GroupElement) -> Bound {
        match self {
            Bound::Finite(b) => Bound::Finite(b + g),
            Bound::Infinite => Bound::Infinite,
        }
    }

    pub fn scale(&self, k: &Q) -> Bound {
        match self {
            Bound::Finite(b) => Bound::Finite(b.scale(k)),
            Bound::Infinite => Bound::Infinite,
        }
    }

    /// Whether `g` is strictly below the bound.
    pub fn exceeds(&self, g: &GroupElement) -> bool {
        match self {
            Bound::Finite(b) => g < b,
            Bound::Infinite => true,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Bound::Finite(g) => group_json(g),
            Bound::Infinite => serde_json::Value::String("inf".into()),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Bound, HahnError> {
        if v.as_str() == Some("inf") {
            return Ok(Bound::Infinite);
        }
        parse_group(v).map(Bound::Finite)
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(g) => write!(f, "{g}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// Value of a series: its least exponent, or "above the truncation".
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    At(GroupElement),
    Above(Bound),
}

impl Value {
    pub fn exact(&self) -> Option<&GroupElement> {
        match self {
            Value::At(g) => Some(g),
            Value::Above(_) => None,
        }
    }

    /// A lower bound usable in truncation arithmetic.
    pub fn lower(&self) -> Bound {
        match self {
            Value::At(g) => Bound::Finite(g.clone()),
            Value::Above(b) => b.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::At(g) => write!(f, "{g}"),
            Value::Above(b) => write!(f, "above {b}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HahnSeries {
    field: FieldDescriptor,
    rank: usize,
    terms: Vec<(GroupElement, FieldElement)>,
    trunc: Bound,
}

impl HahnSeries {
    /// Normalizes: sorts, merges equal exponents, drops zero coefficients and
    /// terms at or above the truncation.
    pub fn new(
        field: &FieldDescriptor,
        rank: usize,
        terms: impl IntoIterator<Item = (GroupElement, FieldElement)>,
        trunc: Bound,
    ) -> Result<Self, HahnError> {
        if let Bound::Finite(b) = &trunc {
            check_rank(rank, b.rank())?;
        }
        let mut map: BTreeMap<GroupElement, FieldElement> = BTreeMap::new();
        for (g, c) in terms {
            check_rank(rank, g.rank())?;
            if !field.contains(&c) {
                return Err(HahnError::Field(FieldError::DescriptorMismatch));
            }
            if !trunc.exceeds(&g) {
                continue;
            }
            match map.get_mut(&g) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(g, c);
                }
            }
        }
        let terms = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        Ok(HahnSeries { field: field.clone(), rank, terms, trunc })
    }

    fn from_map(field: &FieldDescriptor, rank: usize, map: BTreeMap<GroupElement, FieldElement>, trunc: Bound) -> Self {
        let terms = map
            .into_iter()
            .filter(|(g, c)| !field.is_zero(c) && trunc.exceeds(g))
            .collect();
        HahnSeries { field: field.clone(), rank, terms, trunc }
    }

    pub fn zero(field: &FieldDescriptor, rank: usize, trunc: Bound) -> Self {
        HahnSeries { field: field.clone(), rank, terms: Vec::new(), trunc }
    }

    /// Exact monomial `c·t^γ`.
    pub fn monomial(field: &FieldDescriptor, gamma: GroupElement, c: FieldElement) -> Result<Self, HahnError> {
        let rank = gamma.rank();
        Self::new(field, rank, [(gamma, c)], Bound::Infinite)
    }

    pub fn constant(field: &FieldDescriptor, rank: usize, c: FieldElement) -> Result<Self, HahnError> {
        Self::monomial(field, GroupElement::zero(rank), c)
    }

    pub fn one(field: &FieldDescriptor, rank: usize) -> Self {
        Self::constant(field, rank, field.one()).expect("one is a field element")
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(GroupElement, FieldElement)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Bound {
        &self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == Bound::Infinite
    }

    pub fn value(&self) -> Value {
        match self.terms.first() {
            Some((g, _)) => Value::At(g.clone()),
            None => Value::Above(self.trunc.clone()),
        }
    }

    pub fn leading(&self) -> Option<&(GroupElement, FieldElement)> {
        self.terms.first()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&FieldElement> {
        self.terms.iter().find(|(e, _)| e == g).map(|(_, c)| c)
    }

    /// Same terms, truncation lowered to `min(trunc, bound)`.
    pub fn truncate(&self, bound: &Bound) -> Self {
        let trunc = bound.clone().min(self.trunc.clone());
        HahnSeries {
            field: self.field.clone(),
            rank: self.rank,
            terms: self.terms.iter().filter(|(g, _)| trunc.exceeds(g)).cloned().collect(),
            trunc,
        }
    }

    /// The first `k` terms as an exact series.
    pub fn partial_sum(&self, k: usize) -> Self {
        HahnSeries {
            field: self.field.clone(),
            rank: self.rank,
            terms: self.terms.iter().take(k).cloned().collect(),
            trunc: Bound::Infinite,
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), HahnError> {
        if self.field != other.field {
            return Err(HahnError::FieldMismatch);
        }
        check_rank(self.rank, other.rank)
    }

    pub fn add(&self, other: &Self) -> Result<Self, HahnError> {
        self.compatible(other)?;
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut map: BTreeMap<GroupElement, FieldElement> = self.terms.iter().cloned().collect();
        for (g, c) in &other.terms {
            match map.get_mut(g) {
                Some(acc) => *acc = self.field.add(acc, c),
                None => {
                    map.insert(g.clone(), c.clone());
                }
            }
        }
        Ok(Self::from_map(&self.field, self.rank, map, trunc))
    }

    pub fn neg(&self) -> Self {
        HahnSeries {
            field: self.field.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), self.field.neg(c))).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HahnError> {
        self.add(&other.neg())
    }

    /// Product truncated at `min(v(s) + T_r, v(r) + T_s)`, where the value of
    /// a series with no known terms is replaced by its truncation.
    pub fn mul(&self, other: &Self) -> Result<Self, HahnError> {
        self.compatible(other)?;
        let a = match self.value().lower() {
            Bound::Finite(l) => other.trunc.shift(&l),
            Bound::Infinite => Bound::Infinite,
        };
        let b = match other.value().lower() {
            Bound::Finite(l) => self.trunc.shift(&l),
            Bound::Infinite => Bound::Infinite,
        };
        let trunc = a.min(b);
        let k = &self.field;
        let mut map: BTreeMap<GroupElement, FieldElement> = BTreeMap::new();
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                let e = g + h;
                if !trunc.exceeds(&e) {
                    continue;
                }
                let prod = k.mul(c, d);
                match map.get_mut(&e) {
                    Some(acc) => *acc = k.add(acc, &prod),
                    None => {
                        map.insert(e, prod);
                    }
                }
            }
        }
        Ok(Self::from_map(k, self.rank, map, trunc))
    }

    pub fn pow(&self, n: u64) -> Result<Self, HahnError> {
        let mut acc = Self::one(&self.field, self.rank);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self, HahnError> {
        let m = Self::constant(&self.field, self.rank, c.clone())?;
        m.mul(self)
    }

    /// Multiplies by `t^γ`.
    pub fn shift(&self, gamma: &GroupElement) -> Result<Self, HahnError> {
        check_rank(self.rank, gamma.rank())?;
        Ok(HahnSeries {
            field: self.field.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(g, c)| (g + gamma, c.clone())).collect(),
            trunc: self.trunc.shift(gamma),
        })
    }

    /// Multiplicative inverse: `s = c t^γ (1 + w)` and
    /// `s⁻¹ = c⁻¹ t^{-γ} Σ_{k<depth} (-w)^k`, truncated where the omitted tail
    /// `(-w)^depth` or the uncertainty of `s` begins.
    pub fn invert(&self, depth: usize) -> Result<Self, HahnError> {
        if depth == 0 {
            return Err(HahnError::BadDepth);
        }
        let (gamma, c) = self.leading().ok_or(HahnError::ZeroSeries)?.clone();
        let k = &self.field;
        let c_inv = k.inv(&c)?;
        let lead_inv = Self::monomial(k, -&gamma, c_inv)?;
        let w = lead_inv.mul(self)?.sub(&Self::one(k, self.rank))?;
        let minus_w = w.neg();
        let mut sum = Self::one(k, self.rank);
        let mut power = Self::one(k, self.rank);
        for _ in 1..depth {
            power = power.mul(&minus_w)?;
            sum = sum.add(&power)?;
        }
        let tail = match w.value().lower() {
            Bound::Finite(l) => Bound::Finite(l.mul_int(depth as i64)),
            Bound::Infinite => Bound::Infinite,
        };
        Ok(lead_inv.mul(&sum.truncate(&tail))?)
    }

    /// `s^{p^e}` in characteristic p: exponents and truncation scale by
    /// `p^e`, coefficients are raised to the `p^e`-th power.
    pub fn frobenius_pow(&self, e: u32) -> Result<Self, HahnError> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(HahnError::CharacteristicZero);
        }
        let q = BigInt::from(p).pow(e);
        let factor = Q::from_integer(q.clone());
        let k = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| {
                let mut d = c.clone();
                for _ in 0..e {
                    d = k.pow(&d, p);
                }
                (g.scale(&factor), d)
            })
            .collect();
        Ok(HahnSeries { field: k.clone(), rank: self.rank, terms, trunc: self.trunc.scale(&factor) })
    }

    /// Termwise inverse Frobenius: `(γ, c) ↦ (γ/p, c^{1/p})`.
    pub fn frobenius_inverse(&self) -> Result<Self, HahnError> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(HahnError::CharacteristicZero);
        }
        let factor = Q::new(BigInt::one(), BigInt::from(p));
        let k = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| Ok((g.scale(&factor), k.frobenius_inverse(c)?)))
            .collect::<Result<_, HahnError>>()?;
        Ok(HahnSeries { field: k.clone(), rank: self.rank, terms, trunc: self.trunc.scale(&factor) })
    }

    /// Root of `X^p − X − u` for `v(u) < 0`.
    ///
    /// Only the part `u₋` of negative exponents contributes below value 0:
    /// the root is `Σ_{i≥1} φ^{-i}(u₋)` plus a part of value ≥ 0. The result
    /// keeps exactly the terms below `v(u)/p^{depth+1}`, so the residual
    /// `a^p − a − u` vanishes up to `v(u)/p^depth`.
    pub fn artin_schreier_root(&self, depth: usize) -> Result<Self, HahnError> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(HahnError::CharacteristicZero);
        }
        if depth == 0 {
            return Err(HahnError::BadDepth);
        }
        let v = match self.value() {
            Value::At(g) if g.is_negative() => g,
            other => return Err(HahnError::NonNegativeValue(other.to_string())),
        };
        let p_q = Q::from_integer(BigInt::from(p));
        let mut trunc = Bound::Finite(v.scale(&(Q::one() / pow_q(&p_q, depth + 1))));
        if let Bound::Finite(t) = &self.trunc {
            if t.is_negative() || t.is_zero() {
                trunc = trunc.min(Bound::Finite(t.scale(&(Q::one() / &p_q))));
            }
        }
        let zero = GroupElement::zero(self.rank);
        let negative = HahnSeries {
            field: self.field.clone(),
            rank: self.rank,
            terms: self.terms.iter().filter(|(g, _)| *g < zero).cloned().collect(),
            trunc: Bound::Infinite,
        };
        let mut acc = Self::zero(&self.field, self.rank, Bound::Infinite);
        let mut step = negative;
        for _ in 0..depth {
            step = step.frobenius_inverse()?;
            acc = acc.add(&step)?;
        }
        Ok(acc.truncate(&trunc))
    }

    /// Replaces each coefficient by its image under `emb`.
    pub fn embed(&self, emb: &Embedding) -> Result<Self, HahnError> {
        if emb.source != self.field {
            return Err(HahnError::FieldMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| Ok((g.clone(), emb.apply(c)?)))
            .collect::<Result<Vec<_>, HahnError>>()?;
        Self::new(&emb.target, self.rank, terms, self.trunc.clone())
    }

    /// Embeds exponents into a larger rank (see [`GroupElement::pad`]).
    pub fn pad(&self, rank: usize, leading: bool) -> Self {
        HahnSeries {
            field: self.field.clone(),
            rank: rank.max(self.rank),
            terms: self.terms.iter().map(|(g, c)| (g.pad(rank, leading), c.clone())).collect(),
            trunc: match &self.trunc {
                Bound::Finite(b) => Bound::Finite(b.pad(rank, leading)),
                Bound::Infinite => Bound::Infinite,
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(g, c)| serde_json::Value::Array(vec![group_json(g), self.field.element_json(c)]))
            .collect();
        serde_json::json!({
            "field": self.field.descriptor_json(),
            "trunc": self.trunc.to_json(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, HahnError> {
        let lit = |m: &str| HahnError::Literal(m.to_string());
        let field: FieldJson = serde_json::from_value(v.get("field").cloned().ok_or_else(|| lit("missing field"))?)
            .map_err(|e| lit(&e.to_string()))?;
        let field = field.build()?;
        let trunc = match v.get("trunc") {
            Some(t) => Bound::from_json(t)?,
            None => Bound::Infinite,
        };
        let raw = v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| lit("missing terms"))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| lit("term must be [exponent, coefficient]"))?;
            terms.push((parse_group(&pair[0])?, field.parse_element(&pair[1])?));
        }
        let rank = match (&trunc, terms.first()) {
            (_, Some((g, _))) => g.rank(),
            (Bound::Finite(b), None) => b.rank(),
            (Bound::Infinite, None) => 1,
        };
        Self::new(&field, rank, terms, trunc)
    }
}

fn pow_q(x: &Q, n: usize) -> Q {
    (0..n).fold(Q::one(), |acc, _| acc * x)
}

fn check_rank(left: usize, right: usize) -> Result<(), HahnError> {
    if left != right {
        return Err(HahnError::RankMismatch { left, right });
    }
    Ok(())
}

/// Rank-one elements as a bare `"a/b"` string, others as arrays.
pub fn group_json(g: &GroupElement) -> serde_json::Value {
    match g.as_rat() {
        Some(x) => serde_json::Value::String(fmt_q(x)),
        None => serde_json::to_value(g).expect("group elements serialize"),
    }
}

pub fn parse_group(v: &serde_json::Value) -> Result<GroupElement, HahnError> {
    match v {
        serde_json::Value::String(s) => parse_q(s).map(GroupElement::rat).map_err(|e| HahnError::Literal(e.to_string())),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(GroupElement::int)
            .ok_or_else(|| HahnError::Literal(n.to_string())),
        _ => serde_json::from_value(v.clone()).map_err(|e| HahnError::Literal(e.to_string())),
    }
}

/// `Σ t^{e}` over exponents, coefficient one, exact.
pub fn sum_of_monomials(field: &FieldDescriptor, exponents: impl IntoIterator<Item = GroupElement>, rank: usize) -> Result<HahnSeries, HahnError> {
    let one = field.one();
    HahnSeries::new(field, rank, exponents.into_iter().map(|g| (g, one.clone())), Bound::Infinite)
}

/// Monomial `c^{1/e} t^{γ/e}`: an e-th root of `c t^γ`.
pub fn kummer_root(field: &FieldDescriptor, gamma: &GroupElement, c: &FieldElement, e: u64) -> Result<HahnSeries, HahnError> {
    if e == 0 {
        return Err(HahnError::BadDepth);
    }
    let root = field.nth_root(c, e)?;
    HahnSeries::monomial(field, gamma.div_int(e as i64), root)
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let c = format!("{c:?}");
                let c = if c.contains('+') { format!("({c})") } else { c };
                if g.is_zero() {
                    c
                } else {
                    format!("{c}·t^{g}")
                }
            })
            .collect();
        if let Bound::Finite(b) = &self.trunc {
            parts.push(format!("O(t^{b})"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
