//! The valuations `v_{a,γ}` on a rational function field K(x):
//!
//! `v_{a,γ}(Σ cᵢ (x−a)^i) = min vcᵢ + iγ`, extended to quotients.
//!
//! Also: residues in the torsion case (as rational functions of the
//! transcendental residue ȳ = (d(x−a)^e)v), an independent substitution
//! oracle in a series model, and the basic classification of extensions
//! of v from K to K(x).

mod base;

pub use base::{random_field_elem, BaseField, KElem, RatFn, ValueBound};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{FieldDescriptor, FieldElement, FieldError, Poly};
use crate::hahn::{group_json, parse_group, Bound, HahnError, HahnSeries, Value};
use crate::ordgroup::{GroupElement, GroupError, RankProof, SubgroupDescriptor, Torsion};

/// Default search bound for torsion orders.
pub const TORSION_BOUND: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KxError {
    #[error("the zero polynomial has no value")]
    ZeroPolynomial,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("zero element has no angular component")]
    ZeroElement,
    #[error("element {0} is not in the base field")]
    NotInBase(String),
    #[error("{0} is not in the value group of the base field")]
    NotInValueGroup(String),
    #[error("value is negative ({0}); residue undefined")]
    NegativeValue(String),
    #[error("residue requires value 0, got {0}")]
    ValueNotZero(String),
    #[error("undecided at the available precision: {0}")]
    Undecided(String),
    #[error("gamma has rank {gamma} below the base value group rank {base}")]
    GammaRank { gamma: usize, base: usize },
    #[error("torsion order of gamma over vK exceeds {0}")]
    TorsionUndecided(u64),
    #[error("non-torsion value with transcendental residue extension is impossible for K(x)|K")]
    ImpossibleClassification,
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Hahn(#[from] HahnError),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("invalid literal: {0}")]
    Literal(String),
}

/// Where the value group of K sits inside the ambient ℚⁿ of γ when γ has
/// larger rank: base coordinates first (new coordinates infinitely small)
/// or last (new coordinates infinitely large).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    #[default]
    Small,
    Large,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VagDescriptor {
    pub base: BaseField,
    pub center: KElem,
    pub gamma: GroupElement,
    pub placement: Placement,
}

/// A quotient of polynomials in x over K (coefficients constant term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Vec<KElem>,
    pub den: Vec<KElem>,
}

impl RationalFunction {
    pub fn poly(num: Vec<KElem>, base: &BaseField) -> Self {
        RationalFunction { num, den: vec![base.one()] }
    }
}

/// The residue of an element of value 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residue {
    /// An element of Kv.
    Constant(FieldElement),
    /// `num(ȳ)/den(ȳ)` over Kv, where ȳ is the residue of `d(x−a)^e` and
    /// `d` is the section element of value `d_value = −eγ`.
    Rational { order: u64, d_value: GroupElement, num: Poly, den: Poly },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ValuationAlgebraic,
    ValueTranscendental,
    ResidueTranscendental,
}

/// Evidence returned with a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassWitness {
    /// γ ∉ ℚ·vK, with the functional that proves it.
    NonTorsion(RankProof),
    /// eγ ∈ vK for the least such e.
    Torsion(u64),
    /// All difference values of the sequence are torsion over vK (orders
    /// listed) and all residues lie in the finite residue field.
    PseudoCauchy { orders: Vec<u64> },
}

/// Value-group datum for [`classify_summary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupInfo {
    Torsion,
    NonTorsion,
}

/// Residue-field datum for [`classify_summary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueInfo {
    Algebraic,
    Transcendental,
}

/// A valuation on K(x) given either as `v_{a,γ}` or through a pseudo
/// Cauchy sequence in the series model whose limit is x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValDescriptor {
    Vag(VagDescriptor),
    PseudoCauchy { base: BaseField, elems: Vec<HahnSeries> },
}

impl VagDescriptor {
    pub fn new(base: BaseField, center: KElem, gamma: GroupElement, placement: Placement) -> Result<Self, KxError> {
        base.check(&center)?;
        if gamma.rank() < base.rank() {
            return Err(KxError::GammaRank { gamma: gamma.rank(), base: base.rank() });
        }
        Ok(VagDescriptor { base, center, gamma, placement })
    }

    pub fn rank(&self) -> usize {
        self.gamma.rank()
    }

    /// Embeds a value of K into the ambient group of γ.
    pub fn embed(&self, g: &GroupElement) -> GroupElement {
        g.pad(self.rank(), self.placement == Placement::Small)
    }

    /// vK inside the ambient group.
    pub fn base_group(&self) -> SubgroupDescriptor {
        self.base.value_group().pad(self.rank(), self.placement == Placement::Small)
    }

    pub fn torsion(&self, bound: u64) -> Result<Torsion, KxError> {
        match self.base_group().torsion_order(&self.gamma, bound) {
            Err(GroupError::BoundExhausted { bound }) => Err(KxError::TorsionUndecided(bound)),
            other => Ok(other?),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "vag",
            "base": self.base.to_json(),
            "center": self.base.elem_to_json(&self.center),
            "gamma": group_json(&self.gamma),
            "placement": self.placement,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, KxError> {
        let lit = |m: &str| KxError::Literal(m.to_string());
        let base = BaseField::from_json(v.get("base").ok_or_else(|| lit("valuation needs \"base\""))?)?;
        let center = match v.get("center") {
            Some(c) => base.parse_elem(c)?,
            None => base.zero(),
        };
        let gamma = parse_group(v.get("gamma").ok_or_else(|| lit("valuation needs \"gamma\""))?)?;
        let placement = match v.get("placement") {
            Some(p) => serde_json::from_value(p.clone()).map_err(|e| lit(&e.to_string()))?,
            None => Placement::Small,
        };
        Self::new(base, center, gamma, placement)
    }
}

fn trim(base: &BaseField, mut g: Vec<KElem>) -> Vec<KElem> {
    while g.last().is_some_and(|c| base.is_zero(c)) {
        g.pop();
    }
    g
}

/// Taylor shift over k(t) with one common denominator: with `a = N/D` and
/// `g = Σ G_j x^j / L`, Horner on `H_j = H_{j+1}(Dy + N) + G_j D^{n−j}` gives
/// `H_0 = L D^n g(y + a)` in k[t][y]. Reducing once per coefficient at the
/// end avoids the coefficient swell of reducing at every step.
fn taylor_shift_kt(k: &FieldDescriptor, g: &[KElem], a: &RatFn) -> Result<Vec<KElem>, KxError> {
    let mut fs = Vec::with_capacity(g.len());
    for c in g {
        match c {
            KElem::Fun(f) => fs.push(f),
            other => return Err(KxError::NotInBase(format!("{other:?}"))),
        }
    }
    while fs.last().is_some_and(|f| f.num().is_zero()) {
        fs.pop();
    }
    if fs.is_empty() {
        return Ok(Vec::new());
    }
    let mut l = Poly::constant(k, k.one());
    for f in &fs {
        let gcd = l.gcd(k, f.den())?;
        l = l.mul(k, &f.den().divrem(k, &gcd)?.0);
    }
    let big: Vec<Poly> = fs.iter().map(|f| Ok(f.num().mul(k, &l.divrem(k, f.den())?.0))).collect::<Result<_, FieldError>>()?;
    let n = big.len() - 1;
    let (num_a, den_a) = (a.num(), a.den());
    let mut d_pow = vec![Poly::constant(k, k.one())];
    for _ in 0..n {
        let next = d_pow.last().unwrap().mul(k, den_a);
        d_pow.push(next);
    }
    let mut h: Vec<Poly> = vec![big[n].clone()];
    for j in (0..n).rev() {
        // h·(D y + N) + G_j D^{n−j}
        let mut next = vec![Poly::zero(); h.len() + 1];
        for (i, c) in h.iter().enumerate() {
            next[i + 1] = next[i + 1].add(k, &c.mul(k, den_a));
            next[i] = next[i].add(k, &c.mul(k, num_a));
        }
        next[0] = next[0].add(k, &big[j].mul(k, &d_pow[n - j]));
        h = next;
    }
    let den = l.mul(k, &d_pow[n]);
    h.into_iter().map(|c| Ok(KElem::Fun(RatFn::new(k, c, den.clone())?))).collect()
}

/// Coefficients `c_i` with `g(x) = Σ c_i (x−a)^i`, by repeated synthetic
/// division by `x − a`.
pub fn taylor_shift(base: &BaseField, g: &[KElem], a: &KElem) -> Result<Vec<KElem>, KxError> {
    base.check(a)?;
    for c in g {
        base.check(c)?;
    }
    if let (BaseField::TAdic { k }, KElem::Fun(a)) = (base, a) {
        return taylor_shift_kt(k, g, a);
    }
    let mut rest = trim(base, g.to_vec());
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // rest = q·(x − a) + r
        let n = rest.len();
        let mut q = vec![base.zero(); n - 1];
        let mut carry = base.zero();
        for i in (0..n).rev() {
            let cur = base.add(&rest[i], &base.mul(&carry, a)?)?;
            if i == 0 {
                out.push(cur);
            } else {
                q[i - 1] = cur.clone();
                carry = cur;
            }
        }
        rest = q;
    }
    Ok(out)
}

/// Minimum of `vals` where some entries are only lower bounds. Undecided
/// when a lower bound falls strictly below the least exact value.
fn decided_min(vals: Vec<(ValueBound, GroupElement)>) -> Result<GroupElement, KxError> {
    let mut exact: Option<GroupElement> = None;
    let mut lower: Option<GroupElement> = None;
    for (vb, shift) in vals {
        match vb {
            ValueBound::Infinite => {}
            ValueBound::Exact(g) => {
                let g = &g + &shift;
                if exact.as_ref().is_none_or(|e| &g < e) {
                    exact = Some(g);
                }
            }
            ValueBound::AtLeast(g) => {
                let g = &g + &shift;
                if lower.as_ref().is_none_or(|e| &g < e) {
                    lower = Some(g);
                }
            }
        }
    }
    match (exact, lower) {
        (None, None) => Err(KxError::ZeroPolynomial),
        (None, Some(l)) => Err(KxError::Undecided(format!("all coefficients vanish up to value {l}"))),
        (Some(e), Some(l)) if l < e => Err(KxError::Undecided(format!("minimum {e} undercut by precision bound {l}"))),
        (Some(e), _) => Ok(e),
    }
}

impl VagDescriptor {
    fn term_values(&self, c: &[KElem]) -> Vec<(ValueBound, GroupElement)> {
        c.iter()
            .enumerate()
            .map(|(i, ci)| {
                let vb = match self.base.value(ci) {
                    ValueBound::Exact(g) => ValueBound::Exact(self.embed(&g)),
                    ValueBound::AtLeast(g) => ValueBound::AtLeast(self.embed(&g)),
                    ValueBound::Infinite => ValueBound::Infinite,
                };
                (vb, self.gamma.mul_int(i as i64))
            })
            .collect()
    }

    /// `min_i v(c_i) + iγ` over the Taylor coefficients at the center.
    pub fn eval(&self, g: &[KElem]) -> Result<GroupElement, KxError> {
        let c = taylor_shift(&self.base, g, &self.center)?;
        if c.is_empty() {
            return Err(KxError::ZeroPolynomial);
        }
        decided_min(self.term_values(&c))
    }

    /// `min_i v(c_i) + iγ` for a polynomial already expanded at the center.
    pub fn eval_taylor(&self, c: &[KElem]) -> Result<GroupElement, KxError> {
        for ci in c {
            self.base.check(ci)?;
        }
        decided_min(self.term_values(c))
    }

    pub fn eval_ratfunc(&self, f: &RationalFunction) -> Result<GroupElement, KxError> {
        if trim(&self.base, f.den.clone()).is_empty() {
            return Err(KxError::ZeroDenominator);
        }
        let n = self.eval(&f.num)?;
        let d = self.eval(&f.den)?;
        Ok(&n - &d)
    }

    /// Independent evaluation: compose `g(a + S)` by Horner's rule in K[S],
    /// map each coefficient into the series model over Kv (p-adic digits,
    /// Laurent expansion, or the series itself), substitute
    /// `S = t^{γ+ε}` with ε a fresh infinitesimal coordinate, and read off
    /// the least exponent of the resulting series.
    pub fn substitution_oracle(&self, f: &RationalFunction, depth: usize) -> Result<GroupElement, KxError> {
        if trim(&self.base, f.den.clone()).is_empty() {
            return Err(KxError::ZeroDenominator);
        }
        let n = self.oracle_poly(&f.num, depth)?;
        let d = self.oracle_poly(&f.den, depth)?;
        Ok(&n - &d)
    }

    fn oracle_poly(&self, g: &[KElem], depth: usize) -> Result<GroupElement, KxError> {
        let base = &self.base;
        // Horner: acc ← acc·(a + S) + c, with acc a polynomial in S.
        let mut acc: Vec<KElem> = Vec::new();
        for c in trim(base, g.to_vec()).iter().rev() {
            let mut next = vec![base.zero(); acc.len() + 1];
            for (i, b) in acc.iter().enumerate() {
                next[i] = base.add(&next[i], &base.mul(b, &self.center)?)?;
                next[i + 1] = base.add(&next[i + 1], b)?;
            }
            next[0] = base.add(&next[0], c)?;
            acc = next;
        }
        let acc = trim(base, acc);
        if acc.is_empty() {
            return Err(KxError::ZeroPolynomial);
        }
        let k = base.residue_field();
        let r = self.rank();
        let small = self.placement == Placement::Small;
        let lift = |g: &GroupElement| {
            let mut cs = g.pad(r, small).coords().to_vec();
            cs.push(num_traits::Zero::zero());
            GroupElement::new(cs)
        };
        let mut total = HahnSeries::zero(&k, r + 1, Bound::Infinite);
        for (i, b) in acc.iter().enumerate() {
            if base.is_zero(b) {
                continue;
            }
            let img = base.series_image(b, depth)?;
            let mut shift = self.gamma.mul_int(i as i64).coords().to_vec();
            shift.push(crate::rational::qi(i as i64));
            let shift = GroupElement::new(shift);
            let terms = img.terms().iter().map(|(e, c)| (&lift(e) + &shift, c.clone()));
            let trunc = match img.trunc() {
                Bound::Finite(t) => Bound::Finite(&lift(t) + &shift),
                Bound::Infinite => Bound::Infinite,
            };
            total = total.add(&HahnSeries::new(&k, r + 1, terms, trunc)?)?;
        }
        match total.value() {
            Value::At(g) => Ok(GroupElement::new(g.coords()[..r].to_vec())),
            Value::Above(b) => Err(KxError::Undecided(format!("series model vanishes up to {b}; increase depth"))),
        }
    }

    /// Residue of `f` with `v(f) = 0`.
    pub fn residue_of(&self, f: &RationalFunction) -> Result<Residue, KxError> {
        let value = self.eval_ratfunc(f)?;
        if !value.is_zero() {
            return Err(KxError::ValueNotZero(value.to_string()));
        }
        let k = self.base.residue_field();
        let order = match self.torsion(TORSION_BOUND)? {
            Torsion::Order(e) => Some(e),
            Torsion::NonTorsion(_) => None,
        };
        let (i0, ac_g, pg) = self.leading_form(&f.num, order)?;
        let (j0, ac_h, ph) = self.leading_form(&f.den, order)?;
        let factor = k.div(&ac_g, &ac_h)?;
        let Some(e) = order else {
            debug_assert_eq!(i0, j0);
            return Ok(Residue::Constant(factor));
        };
        let shift = (i0 as i64 - j0 as i64) / e as i64;
        let y_pow = |n: usize| {
            let mut cs = vec![k.zero(); n + 1];
            cs[n] = k.one();
            Poly::new(&k, cs)
        };
        let mut num = pg.scale(&k, &factor);
        let mut den = ph;
        if shift > 0 {
            num = num.mul(&k, &y_pow(shift as usize));
        } else if shift < 0 {
            den = den.mul(&k, &y_pow(shift.unsigned_abs() as usize));
        }
        let g = num.gcd(&k, &den)?;
        let (num, _) = num.divrem(&k, &g)?;
        let (den, _) = den.divrem(&k, &g)?;
        let lead = k.inv(den.leading())?;
        let (num, den) = (num.scale(&k, &lead), den.scale(&k, &lead));
        if num.degree().unwrap_or(0) == 0 && den.degree() == Some(0) {
            return Ok(Residue::Constant(num.coeffs().first().cloned().unwrap_or_else(|| k.zero())));
        }
        Ok(Residue::Rational { order: e, d_value: -&self.gamma.mul_int(e as i64), num, den })
    }

    /// For a polynomial g with Taylor coefficients c_i and minimal value m:
    /// the least index i0 attaining m, the angular component of c_{i0}, and
    /// `P(ȳ) = Σ_k ac(c_{i0+ke})/ac(c_{i0}) ȳ^k` over the minimal terms.
    fn leading_form(&self, g: &[KElem], order: Option<u64>) -> Result<(usize, FieldElement, Poly), KxError> {
        let c = taylor_shift(&self.base, g, &self.center)?;
        let vals = self.term_values(&c);
        let m = decided_min(vals.clone())?;
        let k = self.base.residue_field();
        let minimal: Vec<usize> = vals
            .iter()
            .enumerate()
            .filter(|(_, (vb, s))| matches!(vb, ValueBound::Exact(g) if &(g + s) == &m))
            .map(|(i, _)| i)
            .collect();
        let i0 = minimal[0];
        let ac0 = self.base.angular(&c[i0])?;
        let Some(e) = order else {
            return Ok((i0, ac0, Poly::constant(&k, k.one())));
        };
        let mut coeffs = vec![k.zero(); 1];
        for &i in &minimal {
            let kk = (i - i0) / e as usize;
            debug_assert_eq!((i - i0) % e as usize, 0);
            if coeffs.len() <= kk {
                coeffs.resize(kk + 1, k.zero());
            }
            coeffs[kk] = k.div(&self.base.angular(&c[i])?, &ac0)?;
        }
        Ok((i0, ac0, Poly::new(&k, coeffs)))
    }
}

impl ValDescriptor {
    pub fn classify(&self) -> Result<(Classification, ClassWitness), KxError> {
        match self {
            ValDescriptor::Vag(d) => match d.torsion(TORSION_BOUND)? {
                Torsion::Order(e) => Ok((Classification::ResidueTranscendental, ClassWitness::Torsion(e))),
                Torsion::NonTorsion(proof) => Ok((Classification::ValueTranscendental, ClassWitness::NonTorsion(proof))),
            },
            ValDescriptor::PseudoCauchy { base, elems } => {
                let group = base.value_group();
                let mut orders = Vec::new();
                for w in elems.windows(2) {
                    let diff = w[1].sub(&w[0])?;
                    let v = diff.value().exact().cloned().ok_or_else(|| KxError::Undecided("zero difference in sequence".into()))?;
                    match group.torsion_order(&v, TORSION_BOUND) {
                        Ok(Torsion::Order(e)) => orders.push(e),
                        Ok(Torsion::NonTorsion(_)) => {
                            return Err(KxError::Undecided(format!("difference value {v} is non-torsion over vK")))
                        }
                        Err(GroupError::BoundExhausted { bound }) => return Err(KxError::TorsionUndecided(bound)),
                        Err(e) => return Err(e.into()),
                    }
                    for (_, c) in diff.terms() {
                        if !base.residue_field().contains(c) {
                            return Err(KxError::NotInBase(format!("{c:?}")));
                        }
                    }
                }
                // Every coefficient lies in Kv itself, so the residue field
                // does not grow along the sequence.
                let summary = classify_summary(GroupInfo::Torsion, ResidueInfo::Algebraic)?;
                Ok((summary, ClassWitness::PseudoCauchy { orders }))
            }
        }
    }
}

/// Values `v f(a_ν)` along a pseudo Cauchy sequence, stamped with the
/// precision used for the coefficients of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcsEvaluation {
    /// One entry per sequence element; `None` where cancellation reached
    /// the truncation and the value is not determined.
    pub values: Vec<Option<GroupElement>>,
    /// Least ν (one based) from which the value is determined and constant
    /// through the last element, provided at least two elements agree.
    pub stable_from: Option<usize>,
    pub depth: usize,
}

impl PcsEvaluation {
    pub fn stable_value(&self) -> Option<&GroupElement> {
        self.stable_from.and_then(|_| self.values.last()?.as_ref())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "values": self.values.iter().map(|v| v.as_ref().map_or(serde_json::Value::Null, group_json)).collect::<Vec<_>>(),
            "stable_from": self.stable_from,
            "stable_value": self.stable_value().map(group_json),
            "depth": self.depth,
        })
    }
}

fn series_poly_value(base: &BaseField, g: &[KElem], a: &HahnSeries, depth: usize) -> Result<Value, KxError> {
    let mut acc = HahnSeries::zero(a.field(), a.rank(), Bound::Infinite);
    for c in g.iter().rev() {
        let img = base.series_image(c, depth)?;
        let img = if img.rank() < a.rank() { img.pad(a.rank(), true) } else { img };
        acc = acc.mul(a)?.add(&img)?;
    }
    Ok(acc.value())
}

/// Evaluates `f(a_ν)` in the series model for every element of the
/// sequence. The coefficients of f enter through
/// [`BaseField::series_image`] at the given depth. Since the limit value
/// `v f(x)` is reached only eventually and no bound for that point is
/// known, the result reports where the values became constant, if they did
/// within the sequence.
pub fn eval_along_pcs(base: &BaseField, elems: &[HahnSeries], f: &RationalFunction, depth: usize) -> Result<PcsEvaluation, KxError> {
    if elems.is_empty() {
        return Err(KxError::Undecided("empty sequence".into()));
    }
    if trim(base, f.den.clone()).is_empty() {
        return Err(KxError::ZeroDenominator);
    }
    if trim(base, f.num.clone()).is_empty() {
        return Err(KxError::ZeroPolynomial);
    }
    let k = base.residue_field();
    let mut values = Vec::with_capacity(elems.len());
    for a in elems {
        if a.field() != &k {
            return Err(KxError::Hahn(HahnError::FieldMismatch));
        }
        let n = series_poly_value(base, &f.num, a, depth)?;
        let d = series_poly_value(base, &f.den, a, depth)?;
        values.push(match (n, d) {
            (Value::At(n), Value::At(d)) => Some(&n - &d),
            _ => None,
        });
    }
    let mut stable_from = None;
    if let Some(Some(last)) = values.last() {
        let start = values.iter().rposition(|v| v.as_ref() != Some(last)).map_or(0, |i| i + 1);
        if start + 1 < values.len() {
            stable_from = Some(start + 1);
        }
    }
    Ok(PcsEvaluation { values, stable_from, depth })
}

/// The trichotomy from value-group and residue-field data of v on K(x).
pub fn classify_summary(group: GroupInfo, residue: ResidueInfo) -> Result<Classification, KxError> {
    match (group, residue) {
        (GroupInfo::Torsion, ResidueInfo::Algebraic) => Ok(Classification::ValuationAlgebraic),
        (GroupInfo::NonTorsion, ResidueInfo::Algebraic) => Ok(Classification::ValueTranscendental),
        (GroupInfo::Torsion, ResidueInfo::Transcendental) => Ok(Classification::ResidueTranscendental),
        (GroupInfo::NonTorsion, ResidueInfo::Transcendental) => Err(KxError::ImpossibleClassification),
    }
}

/// Random polynomial of degree ≤ `max_deg` over the base (possibly zero).
pub fn random_poly<R: Rng>(base: &BaseField, max_deg: usize, rng: &mut R) -> Vec<KElem> {
    let deg = rng.gen_range(0..=max_deg);
    (0..=deg).map(|_| base.random_elem(rng)).collect()
}

/// Polynomial product over the base.
pub fn poly_mul(base: &BaseField, f: &[KElem], g: &[KElem]) -> Result<Vec<KElem>, KxError> {
    if f.is_empty() || g.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![base.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(a, b)?)?;
        }
    }
    Ok(trim(base, out))
}

pub fn poly_add(base: &BaseField, f: &[KElem], g: &[KElem]) -> Result<Vec<KElem>, KxError> {
    let n = f.len().max(g.len());
    let zero = base.zero();
    let out = (0..n)
        .map(|i| base.add(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(trim(base, out))
}

pub fn is_zero_poly(base: &BaseField, f: &[KElem]) -> bool {
    f.iter().all(|c| base.is_zero(c))
}

pub fn parse_poly(base: &BaseField, v: &serde_json::Value) -> Result<Vec<KElem>, KxError> {
    v.as_array()
        .ok_or_else(|| KxError::Literal(format!("polynomial must be a coefficient array: {v}")))?
        .iter()
        .map(|c| base.parse_elem(c))
        .collect()
}

pub fn parse_ratfunc(base: &BaseField, v: &serde_json::Value) -> Result<RationalFunction, KxError> {
    let num = parse_poly(base, v.get("num").ok_or_else(|| KxError::Literal("rational function needs \"num\"".into()))?)?;
    let den = match v.get("den") {
        Some(d) => parse_poly(base, d)?,
        None => vec![base.one()],
    };
    Ok(RationalFunction { num, den })
}

impl Residue {
    pub fn to_json(&self, k: &FieldDescriptor) -> serde_json::Value {
        let cs = |p: &Poly| p.coeffs().iter().map(|c| k.element_json(c)).collect::<Vec<_>>();
        match self {
            Residue::Constant(c) => serde_json::json!({"constant": k.element_json(c)}),
            Residue::Rational { order, d_value, num, den } => serde_json::json!({
                "generator": {"order": order, "d_value": group_json(d_value)},
                "num": cs(num),
                "den": cs(den),
            }),
        }
    }
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::ValuationAlgebraic => "valuation-algebraic",
            Classification::ValueTranscendental => "value-transcendental",
            Classification::ResidueTranscendental => "residue-transcendental",
        }
    }
}
