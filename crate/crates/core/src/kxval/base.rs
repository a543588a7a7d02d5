//! Base valued fields (K, v): the p-adic rationals, k(t) with the t-adic
//! valuation, a trivially valued field k, and truncated series fields k((G)).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::coeff::{FieldDescriptor, FieldElement, FieldJson, Poly};
use crate::hahn::{group_json, parse_group, Bound, HahnSeries, Value};
use crate::ordgroup::{GroupElement, SubgroupDescriptor};
use crate::rational::{fmt_q, parse_q, Q};

use super::KxError;

/// Value of a base element as far as it is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueBound {
    Exact(GroupElement),
    /// Zero up to a truncation: the value is at least this.
    AtLeast(GroupElement),
    /// The exact zero element.
    Infinite,
}

/// Element of k(t) as a reduced quotient with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(k: &FieldDescriptor, num: Poly, den: Poly) -> Result<Self, KxError> {
        if den.is_zero() {
            return Err(KxError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly::constant(k, k.one()) });
        }
        let g = num.gcd(k, &den)?;
        let (num, _) = num.divrem(k, &g)?;
        let (den, _) = den.divrem(k, &g)?;
        let lead = k.inv(den.leading())?;
        Ok(RatFn { num: num.scale(k, &lead), den: den.scale(k, &lead) })
    }

    pub fn poly(k: &FieldDescriptor, num: Poly) -> Self {
        RatFn { num, den: Poly::constant(k, k.one()) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num.coeffs(), self.den.coeffs())
    }
}

/// An element of a base field; the variant always matches the field kind.
#[derive(Clone, PartialEq, Eq)]
pub enum KElem {
    Rat(Q),
    Fun(RatFn),
    Const(FieldElement),
    Ser(HahnSeries),
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KElem::Rat(x) => write!(f, "{}", fmt_q(x)),
            KElem::Fun(r) => write!(f, "{r:?}"),
            KElem::Const(c) => write!(f, "{c:?}"),
            KElem::Ser(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    /// ℚ with the p-adic valuation.
    PAdic { p: u64 },
    /// k(t) with the t-adic valuation.
    TAdic { k: FieldDescriptor },
    /// k with the trivial valuation.
    Trivial { k: FieldDescriptor },
    /// k((G)) truncated; `group` is the value group, inverses are computed
    /// to `inv_depth` geometric terms.
    Series { k: FieldDescriptor, group: SubgroupDescriptor, inv_depth: usize },
}

impl BaseField {
    pub fn p_adic(p: u64) -> Result<Self, KxError> {
        FieldDescriptor::prime(p)?;
        Ok(BaseField::PAdic { p })
    }

    pub fn series(k: FieldDescriptor, group: SubgroupDescriptor) -> Self {
        BaseField::Series { k, group, inv_depth: 8 }
    }

    /// Rank of the value group's ambient ℚⁿ.
    pub fn rank(&self) -> usize {
        match self {
            BaseField::Series { group, .. } => group.ambient_rank,
            _ => 1,
        }
    }

    pub fn value_group(&self) -> SubgroupDescriptor {
        match self {
            BaseField::PAdic { .. } | BaseField::TAdic { .. } => SubgroupDescriptor::integers(),
            BaseField::Trivial { .. } => SubgroupDescriptor::trivial(1),
            BaseField::Series { group, .. } => group.clone(),
        }
    }

    pub fn residue_field(&self) -> FieldDescriptor {
        match self {
            BaseField::PAdic { p } => FieldDescriptor::prime(*p).expect("validated prime"),
            BaseField::TAdic { k } | BaseField::Trivial { k } | BaseField::Series { k, .. } => k.clone(),
        }
    }

    pub fn residue_characteristic(&self) -> u64 {
        self.residue_field().characteristic()
    }

    /// Characteristic of K itself.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::PAdic { .. } => 0,
            _ => self.residue_field().characteristic(),
        }
    }

    pub fn zero(&self) -> KElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> KElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> KElem {
        match self {
            BaseField::PAdic { .. } => KElem::Rat(Q::from_integer(BigInt::from(n))),
            BaseField::TAdic { k } => KElem::Fun(RatFn::poly(k, Poly::constant(k, k.from_i64(n)))),
            BaseField::Trivial { k } => KElem::Const(k.from_i64(n)),
            BaseField::Series { k, group, .. } => {
                KElem::Ser(HahnSeries::constant(k, group.ambient_rank, k.from_i64(n)).expect("constant"))
            }
        }
    }

    /// Whether `a` is an element of this field.
    pub fn contains(&self, a: &KElem) -> bool {
        match (self, a) {
            (BaseField::PAdic { .. }, KElem::Rat(_)) => true,
            (BaseField::TAdic { k }, KElem::Fun(r)) => {
                r.num.coeffs().iter().chain(r.den.coeffs()).all(|c| k.contains(c))
            }
            (BaseField::Trivial { k }, KElem::Const(c)) => k.contains(c),
            (BaseField::Series { k, group, .. }, KElem::Ser(s)) => s.field() == k && s.rank() == group.ambient_rank,
            _ => false,
        }
    }

    pub fn check(&self, a: &KElem) -> Result<(), KxError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(KxError::NotInBase(format!("{a:?}")))
        }
    }

    pub fn is_zero(&self, a: &KElem) -> bool {
        match a {
            KElem::Rat(x) => x.is_zero(),
            KElem::Fun(r) => r.num.is_zero(),
            KElem::Const(c) => self.residue_field().is_zero(c),
            KElem::Ser(s) => s.is_zero(),
        }
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> Result<KElem, KxError> {
        Ok(match (self, a, b) {
            (BaseField::PAdic { .. }, KElem::Rat(x), KElem::Rat(y)) => KElem::Rat(x + y),
            (BaseField::TAdic { k }, KElem::Fun(x), KElem::Fun(y)) => {
                let num = x.num.mul(k, &y.den).add(k, &y.num.mul(k, &x.den));
                KElem::Fun(RatFn::new(k, num, x.den.mul(k, &y.den))?)
            }
            (BaseField::Trivial { k }, KElem::Const(x), KElem::Const(y)) => KElem::Const(k.add(x, y)),
            (BaseField::Series { .. }, KElem::Ser(x), KElem::Ser(y)) => KElem::Ser(x.add(y)?),
            _ => return Err(KxError::NotInBase(format!("{a:?} + {b:?}"))),
        })
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        match (self, a) {
            (_, KElem::Rat(x)) => KElem::Rat(-x),
            (BaseField::TAdic { k }, KElem::Fun(x)) => KElem::Fun(RatFn { num: x.num.neg(k), den: x.den.clone() }),
            (_, KElem::Const(c)) => KElem::Const(self.residue_field().neg(c)),
            (_, KElem::Ser(s)) => KElem::Ser(s.neg()),
            (_, KElem::Fun(_)) => unreachable!("rational functions only live in k(t)"),
        }
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> Result<KElem, KxError> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> Result<KElem, KxError> {
        Ok(match (self, a, b) {
            (BaseField::PAdic { .. }, KElem::Rat(x), KElem::Rat(y)) => KElem::Rat(x * y),
            (BaseField::TAdic { k }, KElem::Fun(x), KElem::Fun(y)) => {
                KElem::Fun(RatFn::new(k, x.num.mul(k, &y.num), x.den.mul(k, &y.den))?)
            }
            (BaseField::Trivial { k }, KElem::Const(x), KElem::Const(y)) => KElem::Const(k.mul(x, y)),
            (BaseField::Series { .. }, KElem::Ser(x), KElem::Ser(y)) => KElem::Ser(x.mul(y)?),
            _ => return Err(KxError::NotInBase(format!("{a:?} * {b:?}"))),
        })
    }

    pub fn inv(&self, a: &KElem) -> Result<KElem, KxError> {
        if self.is_zero(a) {
            return Err(KxError::ZeroDenominator);
        }
        Ok(match (self, a) {
            (_, KElem::Rat(x)) => KElem::Rat(x.recip()),
            (BaseField::TAdic { k }, KElem::Fun(x)) => KElem::Fun(RatFn::new(k, x.den.clone(), x.num.clone())?),
            (_, KElem::Const(c)) => KElem::Const(self.residue_field().inv(c)?),
            (BaseField::Series { inv_depth, .. }, KElem::Ser(s)) => KElem::Ser(s.invert(*inv_depth)?),
            _ => return Err(KxError::NotInBase(format!("{a:?}"))),
        })
    }

    pub fn value(&self, a: &KElem) -> ValueBound {
        match (self, a) {
            (BaseField::PAdic { p }, KElem::Rat(x)) => {
                if x.is_zero() {
                    return ValueBound::Infinite;
                }
                let p = BigInt::from(*p);
                ValueBound::Exact(GroupElement::int(ord(x.numer(), &p) - ord(x.denom(), &p)))
            }
            (_, KElem::Fun(r)) => {
                if r.num.is_zero() {
                    return ValueBound::Infinite;
                }
                ValueBound::Exact(GroupElement::int(low_degree(&r.num) as i64 - low_degree(&r.den) as i64))
            }
            (_, KElem::Const(c)) => {
                if self.residue_field().is_zero(c) {
                    ValueBound::Infinite
                } else {
                    ValueBound::Exact(GroupElement::int(0))
                }
            }
            (_, KElem::Ser(s)) => match s.value() {
                Value::At(g) => ValueBound::Exact(g),
                Value::Above(Bound::Finite(b)) => ValueBound::AtLeast(b),
                Value::Above(Bound::Infinite) => ValueBound::Infinite,
            },
            _ => unreachable!("element kind checked by caller"),
        }
    }

    /// Angular component: the residue of `a / π(v a)` where `π` is the
    /// multiplicative section `p^n`, `t^n`, `t^γ`. Multiplicative, and equal
    /// to the residue on units.
    pub fn angular(&self, a: &KElem) -> Result<FieldElement, KxError> {
        let k = self.residue_field();
        match (self, a) {
            (BaseField::PAdic { p }, KElem::Rat(x)) => {
                if x.is_zero() {
                    return Err(KxError::ZeroElement);
                }
                let pb = BigInt::from(*p);
                let strip = |n: &BigInt| {
                    let mut n = n.clone();
                    while n.is_multiple_of(&pb) {
                        n /= &pb;
                    }
                    n
                };
                Ok(k.from_q(Q::new(strip(x.numer()), strip(x.denom())))?)
            }
            (_, KElem::Fun(r)) => {
                if r.num.is_zero() {
                    return Err(KxError::ZeroElement);
                }
                let n = &r.num.coeffs()[low_degree(&r.num)];
                let d = &r.den.coeffs()[low_degree(&r.den)];
                Ok(k.div(n, d)?)
            }
            (_, KElem::Const(c)) => {
                if k.is_zero(c) {
                    return Err(KxError::ZeroElement);
                }
                Ok(c.clone())
            }
            (_, KElem::Ser(s)) => s.leading().map(|(_, c)| c.clone()).ok_or(KxError::ZeroElement),
            _ => unreachable!("element kind checked by caller"),
        }
    }

    /// Residue of an element of value ≥ 0 (zero when the value is positive).
    pub fn residue(&self, a: &KElem) -> Result<FieldElement, KxError> {
        let k = self.residue_field();
        match self.value(a) {
            ValueBound::Infinite => Ok(k.zero()),
            ValueBound::Exact(g) if g.is_zero() => self.angular(a),
            ValueBound::Exact(g) if g.is_positive() => Ok(k.zero()),
            ValueBound::AtLeast(g) if g.is_positive() => Ok(k.zero()),
            ValueBound::AtLeast(g) => Err(KxError::Undecided(format!("residue of an element known only above {g}"))),
            ValueBound::Exact(g) => Err(KxError::NegativeValue(g.to_string())),
        }
    }

    /// The section element `π(g)` of value `g ∈ vK`, with angular component 1.
    pub fn element_of_value(&self, g: &GroupElement) -> Result<KElem, KxError> {
        if !self.value_group().contains(g)? {
            return Err(KxError::NotInValueGroup(g.to_string()));
        }
        match self {
            BaseField::PAdic { p } => {
                let n = g.as_rat().and_then(|x| x.to_integer().to_i64()).ok_or(KxError::NotInValueGroup(g.to_string()))?;
                Ok(KElem::Rat(crate::rational::q_pow(*p, n)))
            }
            BaseField::TAdic { k } => {
                let n = g.as_rat().and_then(|x| x.to_integer().to_i64()).ok_or(KxError::NotInValueGroup(g.to_string()))?;
                let mono = |d: usize| {
                    let mut cs = vec![k.zero(); d + 1];
                    cs[d] = k.one();
                    Poly::new(k, cs)
                };
                let (num, den) = if n >= 0 { (mono(n as usize), mono(0)) } else { (mono(0), mono(n.unsigned_abs() as usize)) };
                Ok(KElem::Fun(RatFn::new(k, num, den)?))
            }
            BaseField::Trivial { .. } => Ok(self.one()),
            BaseField::Series { k, .. } => Ok(KElem::Ser(HahnSeries::monomial(k, g.clone(), k.one())?)),
        }
    }

    /// Image of `c` in the series model over the residue field, known to
    /// `depth` terms past its value. For ℚ this is the p-adic digit
    /// expansion; for k(t) the Laurent expansion.
    pub fn series_image(&self, c: &KElem, depth: usize) -> Result<HahnSeries, KxError> {
        let k = self.residue_field();
        match (self, c) {
            (BaseField::PAdic { p }, KElem::Rat(x)) => {
                if x.is_zero() {
                    return Ok(HahnSeries::zero(&k, 1, Bound::Infinite));
                }
                let pq = Q::from_integer(BigInt::from(*p));
                let mut u = x.clone();
                let mut n = 0i64;
                while u.numer().is_multiple_of(&BigInt::from(*p)) {
                    u /= &pq;
                    n += 1;
                }
                while u.denom().is_multiple_of(&BigInt::from(*p)) {
                    u *= &pq;
                    n -= 1;
                }
                let mut terms = Vec::new();
                for i in 0..depth {
                    if u.is_zero() {
                        return Ok(HahnSeries::new(&k, 1, terms, Bound::Infinite)?);
                    }
                    let digit = k.from_q(u.clone())?;
                    let d_int = match &digit {
                        FieldElement::Finite(v) => v[0] as i64,
                        FieldElement::Rational(_) => unreachable!(),
                    };
                    terms.push((GroupElement::int(n + i as i64), digit));
                    u = (u - Q::from_integer(BigInt::from(d_int))) / &pq;
                }
                Ok(HahnSeries::new(&k, 1, terms, Bound::Finite(GroupElement::int(n + depth as i64)))?)
            }
            (BaseField::TAdic { k }, KElem::Fun(r)) => {
                let to_series = |p: &Poly| {
                    HahnSeries::new(
                        k,
                        1,
                        p.coeffs().iter().enumerate().map(|(i, c)| (GroupElement::int(i as i64), c.clone())),
                        Bound::Infinite,
                    )
                };
                let num = to_series(&r.num)?;
                let den = to_series(&r.den)?;
                Ok(num.mul(&den.invert(depth.max(1))?)?)
            }
            (BaseField::Trivial { k }, KElem::Const(c)) => Ok(HahnSeries::constant(k, 1, c.clone())?),
            (BaseField::Series { .. }, KElem::Ser(s)) => Ok(s.clone()),
            _ => Err(KxError::NotInBase(format!("{c:?}"))),
        }
    }

    pub fn random_elem<R: Rng>(&self, rng: &mut R) -> KElem {
        match self {
            BaseField::PAdic { p } => {
                let n: i64 = rng.gen_range(-20..=20);
                let d: i64 = rng.gen_range(1..=12);
                let e: i64 = rng.gen_range(-2..=2);
                KElem::Rat(Q::new(BigInt::from(n), BigInt::from(d)) * crate::rational::q_pow(*p, e))
            }
            BaseField::TAdic { k } => {
                let rand_poly = |rng: &mut R, max_deg: usize| {
                    let deg = rng.gen_range(0..=max_deg);
                    Poly::new(k, (0..=deg).map(|_| random_field_elem(k, rng)).collect())
                };
                let num = rand_poly(rng, 3);
                let mut den = rand_poly(rng, 2);
                while den.is_zero() {
                    den = rand_poly(rng, 2);
                }
                KElem::Fun(RatFn::new(k, num, den).expect("nonzero denominator"))
            }
            BaseField::Trivial { k } => KElem::Const(random_field_elem(k, rng)),
            BaseField::Series { k, group, .. } => {
                let gens = group.reduced_basis();
                let count = rng.gen_range(0..=3);
                let terms: Vec<_> = (0..count)
                    .map(|_| {
                        let mut g = GroupElement::zero(group.ambient_rank);
                        for h in &gens {
                            g = &g + &h.mul_int(rng.gen_range(-2..=3));
                        }
                        (g, random_field_elem(k, rng))
                    })
                    .collect();
                KElem::Ser(HahnSeries::new(k, group.ambient_rank, terms, Bound::Infinite).expect("valid terms"))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BaseField::PAdic { p } => serde_json::json!({"kind": "p-adic", "p": p}),
            BaseField::TAdic { k } => serde_json::json!({"kind": "t-adic", "field": k.descriptor_json()}),
            BaseField::Trivial { k } => serde_json::json!({"kind": "trivial", "field": k.descriptor_json()}),
            BaseField::Series { k, group, inv_depth } => serde_json::json!({
                "kind": "series",
                "field": k.descriptor_json(),
                "rank": group.ambient_rank,
                "value_group": group.generators.iter().map(group_json).collect::<Vec<_>>(),
                "inv_depth": inv_depth,
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, KxError> {
        let lit = |m: &str| KxError::Literal(m.to_string());
        let kind = v.get("kind").and_then(|k| k.as_str()).ok_or_else(|| lit("base needs a \"kind\""))?;
        let field = || -> Result<FieldDescriptor, KxError> {
            let f: FieldJson = serde_json::from_value(v.get("field").cloned().ok_or_else(|| lit("missing \"field\""))?)
                .map_err(|e| lit(&e.to_string()))?;
            Ok(f.build()?)
        };
        match kind {
            "p-adic" => {
                let p = v.get("p").and_then(|p| p.as_u64()).ok_or_else(|| lit("p-adic base needs \"p\""))?;
                Self::p_adic(p)
            }
            "t-adic" => Ok(BaseField::TAdic { k: field()? }),
            "trivial" => Ok(BaseField::Trivial { k: field()? }),
            "series" => {
                let k = field()?;
                let gens = match v.get("value_group") {
                    Some(serde_json::Value::Array(a)) => a.iter().map(parse_group).collect::<Result<Vec<_>, _>>()?,
                    None => vec![GroupElement::int(1)],
                    Some(_) => return Err(lit("\"value_group\" must be an array")),
                };
                let rank = v
                    .get("rank")
                    .and_then(|r| r.as_u64())
                    .map(|r| r as usize)
                    .or_else(|| gens.first().map(GroupElement::rank))
                    .unwrap_or(1);
                let group = SubgroupDescriptor::new(rank, gens)?;
                let inv_depth = v.get("inv_depth").and_then(|d| d.as_u64()).unwrap_or(8) as usize;
                Ok(BaseField::Series { k, group, inv_depth })
            }
            other => Err(lit(&format!("unknown base kind {other:?}"))),
        }
    }

    pub fn elem_to_json(&self, a: &KElem) -> serde_json::Value {
        match a {
            KElem::Rat(x) => serde_json::Value::String(fmt_q(x)),
            KElem::Fun(r) => {
                let k = self.residue_field();
                let cs = |p: &Poly| p.coeffs().iter().map(|c| k.element_json(c)).collect::<Vec<_>>();
                serde_json::json!({"num": cs(&r.num), "den": cs(&r.den)})
            }
            KElem::Const(c) => self.residue_field().element_json(c),
            KElem::Ser(s) => s.to_json(),
        }
    }

    /// Parses an element literal: `"a/b"` (p-adic), `{"num","den"}` or a
    /// coefficient array in t (t-adic), a field literal (trivial), a series
    /// object (series). Integers are accepted everywhere.
    pub fn parse_elem(&self, v: &serde_json::Value) -> Result<KElem, KxError> {
        let lit = || KxError::Literal(v.to_string());
        if let Some(n) = v.as_i64() {
            return Ok(self.from_i64(n));
        }
        match self {
            BaseField::PAdic { .. } => {
                let s = v.as_str().ok_or_else(lit)?;
                Ok(KElem::Rat(parse_q(s).map_err(|_| lit())?))
            }
            BaseField::TAdic { k } => {
                let poly = |x: &serde_json::Value| -> Result<Poly, KxError> {
                    let arr = x.as_array().ok_or_else(lit)?;
                    Ok(Poly::new(k, arr.iter().map(|c| k.parse_element(c)).collect::<Result<_, _>>()?))
                };
                match v {
                    serde_json::Value::Array(_) => Ok(KElem::Fun(RatFn::poly(k, poly(v)?))),
                    serde_json::Value::Object(o) => {
                        let num = poly(o.get("num").ok_or_else(lit)?)?;
                        let den = match o.get("den") {
                            Some(d) => poly(d)?,
                            None => Poly::constant(k, k.one()),
                        };
                        Ok(KElem::Fun(RatFn::new(k, num, den)?))
                    }
                    _ => Err(lit()),
                }
            }
            BaseField::Trivial { k } => Ok(KElem::Const(k.parse_element(v)?)),
            BaseField::Series { k, group, .. } => {
                if v.is_object() {
                    let s = HahnSeries::from_json(v)?;
                    if s.field() != k {
                        return Err(lit());
                    }
                    // Literals may omit the rank; pad small ones on the right.
                    Ok(KElem::Ser(if s.rank() < group.ambient_rank { s.pad(group.ambient_rank, true) } else { s }))
                } else {
                    Ok(KElem::Ser(HahnSeries::constant(k, group.ambient_rank, k.parse_element(v)?)?))
                }
            }
        }
    }
}

pub fn random_field_elem<R: Rng>(k: &FieldDescriptor, rng: &mut R) -> FieldElement {
    if k.is_rational() {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=5);
        return FieldElement::Rational(Q::new(BigInt::from(n), BigInt::from(d)));
    }
    let p = k.characteristic();
    let cs: Vec<u64> = (0..k.degree()).map(|_| rng.gen_range(0..p)).collect();
    k.from_coeffs(&cs).expect("coefficients reduced mod p")
}

fn ord(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn low_degree(p: &Poly) -> usize {
    p.coeffs()
        .iter()
        .position(|c| match c {
            FieldElement::Rational(x) => !x.is_zero(),
            FieldElement::Finite(v) => v.iter().any(|&x| x != 0),
        })
        .unwrap_or(0)
}
