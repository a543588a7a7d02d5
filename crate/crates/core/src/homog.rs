//! Krasner constants for Artin–Schreier and Kummer families, strong
//! homogeneity of monomials, homogeneous approximations and homogeneous
//! sequences extracted from power series, and pseudo Cauchy checks.
//!
//! Work happens in k((G)) over a base K with value group vK ⊆ G and residue
//! field F_{p^m} ⊆ k (or ℚ). A [`Tower`] records the monomials adjoined so
//! far; its value group is vK + Σℤγᵢ and its residue field is the subfield
//! generated by the residues forced by those monomials.

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::{FieldDescriptor, FieldElement, FieldError};
use crate::hahn::{group_json, HahnError, HahnSeries, Value};
use crate::kxval::{BaseField, KElem, KxError, ValueBound, TORSION_BOUND};
use crate::ordgroup::{GroupElement, GroupError, Index, SubgroupDescriptor, Torsion};
use crate::rational::gcd_u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomogError {
    #[error("term {index}: ramification {e} is divisible by the residue characteristic {p}; outside the tame scope")]
    OutsideTameScope { index: usize, e: u64, p: u64 },
    #[error("term {index}: exponent {gamma} is not torsion over the base value group")]
    NonTorsionExponent { index: usize, gamma: String },
    #[error("Artin-Schreier family needs v(c) < 0 in residue characteristic p > 0: {0}")]
    ArtinSchreierPrecondition(String),
    #[error("Kummer family needs e prime to the residue characteristic: {0}")]
    KummerPrecondition(String),
    #[error("coefficient field of the series differs from the tower's")]
    FieldMismatch,
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Hahn(#[from] HahnError),
    #[error("{0}")]
    Kx(#[from] KxError),
}

/// Polynomial families whose conjugates are known in closed form.
#[derive(Clone, Debug)]
pub enum Family {
    /// Roots of `X^p − X − c`: conjugates `a + i`, `i ∈ F_p`.
    ArtinSchreier { c: KElem },
    /// Roots of `X^e − c`: conjugates `ζ^i a`.
    Kummer { c: KElem, e: u64 },
}

/// Krasner constant `max v(σa − τa)` over distinct conjugates.
pub fn kras_family(family: &Family, base: &BaseField) -> Result<GroupElement, HomogError> {
    let p = base.residue_characteristic();
    match family {
        Family::ArtinSchreier { c } => {
            base.check(c)?;
            match base.value(c) {
                ValueBound::Exact(v) if v.is_negative() && p > 0 && base.characteristic() == p => {
                    Ok(GroupElement::zero(base.rank()))
                }
                other => Err(HomogError::ArtinSchreierPrecondition(format!("value {other:?}, residue characteristic {p}"))),
            }
        }
        Family::Kummer { c, e } => {
            base.check(c)?;
            if *e == 0 || (p > 0 && e % p == 0) {
                return Err(HomogError::KummerPrecondition(format!("e = {e}, p = {p}")));
            }
            match base.value(c) {
                ValueBound::Exact(v) => Ok(v.div_int(*e as i64)),
                other => Err(HomogError::KummerPrecondition(format!("value of c is {other:?}"))),
            }
        }
    }
}

/// Base data plus adjoined monomials `cᵢ t^{γᵢ}`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub field: FieldDescriptor,
    pub vk: SubgroupDescriptor,
    /// Degree over F_p of the residue field of K (1 for ℚ).
    pub base_residue_degree: u32,
    /// Degree over F_p of the current residue field.
    pub residue_degree: u32,
    pub monomials: Vec<(GroupElement, FieldElement)>,
}

/// Outcome of the strong-homogeneity test for `c t^γ` over a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongHomog {
    pub strongly_homogeneous: bool,
    /// Least e with eγ in the tower's value group.
    pub e: u64,
    /// Degree of the residue of `d·a^e` over the tower's residue field.
    pub f: u32,
    #[serde(skip)]
    pub residue: FieldElement,
    pub reason: Option<String>,
}

impl Tower {
    pub fn new(field: &FieldDescriptor, vk: SubgroupDescriptor, base_residue_degree: u32) -> Result<Self, HomogError> {
        if field.degree() % base_residue_degree != 0 {
            return Err(HomogError::Field(FieldError::Unsupported("residue subfield degree not dividing the field degree")));
        }
        Ok(Tower {
            field: field.clone(),
            vk,
            base_residue_degree,
            residue_degree: base_residue_degree,
            monomials: Vec::new(),
        })
    }

    pub fn value_group(&self) -> SubgroupDescriptor {
        let gs: Vec<GroupElement> = self.monomials.iter().map(|(g, _)| g.clone()).collect();
        self.vk.with(&gs).expect("tower exponents share the ambient rank")
    }

    fn in_residue_field(&self, c: &FieldElement) -> bool {
        self.field.is_rational() || self.field.in_subfield(c, self.residue_degree)
    }

    fn degree_over_residue(&self, c: &FieldElement) -> u32 {
        if self.field.is_rational() {
            1
        } else {
            self.field.degree_over(c, self.residue_degree)
        }
    }

    /// Coefficient of the tower monomial with value `g`, if `g` lies in the
    /// value group: `Π cᵢ^{nᵢ}` for a membership witness `n`.
    fn monomial_coefficient(&self, g: &GroupElement) -> Result<Option<FieldElement>, HomogError> {
        let group = self.value_group();
        let m = group.member(g)?;
        let Some(w) = m.witness else {
            return Ok(None);
        };
        let k = &self.field;
        let mut c = k.one();
        for (wi, (_, ci)) in w[self.vk.generators.len()..].iter().zip(&self.monomials) {
            let n = wi.to_i64().ok_or(GroupError::Overflow("membership witness"))?;
            c = k.mul(&c, &k.pow_i64(ci, n)?);
        }
        Ok(Some(c))
    }

    /// Whether `c t^γ` already lies in the tower (by its monomial data).
    pub fn captures(&self, gamma: &GroupElement, c: &FieldElement) -> Result<bool, HomogError> {
        match self.monomial_coefficient(gamma)? {
            Some(cm) => Ok(self.in_residue_field(&self.field.div(c, &cm)?)),
            None => Ok(false),
        }
    }

    /// Strong homogeneity of `c t^γ`: e is the order of γ modulo the value
    /// group; `d·(c t^γ)^e` has residue `c^e / c_d` for the tower monomial
    /// of value `eγ`; f is that residue's degree. Requires p ∤ e and
    /// `ef > 1` (the monomial is new).
    pub fn strongly_homogeneous_test(&self, gamma: &GroupElement, c: &FieldElement) -> Result<StrongHomog, HomogError> {
        let k = &self.field;
        if !k.contains(c) || k.is_zero(c) {
            return Err(HomogError::FieldMismatch);
        }
        let group = self.value_group();
        let e = match group.torsion_order(gamma, TORSION_BOUND)? {
            Torsion::Order(e) => e,
            Torsion::NonTorsion(_) => {
                return Err(HomogError::NonTorsionExponent { index: 0, gamma: gamma.to_string() });
            }
        };
        let cm = self
            .monomial_coefficient(&gamma.mul_int(e as i64))?
            .expect("e·γ lies in the value group by the torsion computation");
        let residue = k.div(&k.pow(c, e), &cm)?;
        let f = self.degree_over_residue(&residue);
        let p = k.characteristic();
        let reason = if p > 0 && e % p == 0 {
            Some(format!("ramification e = {e} is divisible by the residue characteristic {p}"))
        } else if e as u128 * f as u128 == 1 {
            Some("the monomial already lies in the tower (e = f = 1)".to_string())
        } else {
            None
        };
        Ok(StrongHomog { strongly_homogeneous: reason.is_none(), e, f, residue, reason })
    }

    /// Adjoins `c t^γ` after a successful test.
    pub fn adjoin(&mut self, gamma: &GroupElement, c: &FieldElement, test: &StrongHomog) {
        self.residue_degree *= test.f;
        self.monomials.push((gamma.clone(), c.clone()));
    }

    /// `(vK + Σℤγᵢ : vK)`.
    pub fn ramification_index(&self) -> Result<u64, HomogError> {
        match self.value_group().index(&self.vk)? {
            Index::Finite(n) => Ok(n),
            Index::Infinite => Err(HomogError::NonTorsionExponent { index: 0, gamma: "tower value group".into() }),
        }
    }

    pub fn inertia_degree(&self) -> u32 {
        self.residue_degree / self.base_residue_degree
    }
}

/// A homogeneous approximation found by [`homog_approx`].
#[derive(Clone, Debug)]
pub struct Approx {
    /// Index of the first term not captured by the tower.
    pub index: usize,
    pub increment: HahnSeries,
    pub gamma: GroupElement,
    pub coeff: FieldElement,
    pub test: StrongHomog,
}

/// Scans `b` term by term; the first term outside the tower yields the
/// partial sum through it. `None` when every term is captured.
pub fn homog_approx(b: &HahnSeries, tower: &Tower) -> Result<Option<Approx>, HomogError> {
    if b.field() != &tower.field {
        return Err(HomogError::FieldMismatch);
    }
    for (index, (gamma, c)) in b.terms().iter().enumerate() {
        if tower.captures(gamma, c)? {
            continue;
        }
        let test = match tower.strongly_homogeneous_test(gamma, c) {
            Err(HomogError::NonTorsionExponent { gamma, .. }) => return Err(HomogError::NonTorsionExponent { index, gamma }),
            other => other?,
        };
        if !test.strongly_homogeneous {
            return Err(HomogError::OutsideTameScope { index, e: test.e, p: tower.field.characteristic() });
        }
        return Ok(Some(Approx {
            index,
            increment: b.partial_sum(index + 1),
            gamma: gamma.clone(),
            coeff: c.clone(),
            test,
        }));
    }
    Ok(None)
}

/// One element `a_i` of a homogeneous sequence with its data.
#[derive(Clone, Debug)]
pub struct Increment {
    pub a: HahnSeries,
    pub term_index: usize,
    pub gamma: GroupElement,
    pub coeff: FieldElement,
    pub e: u64,
    pub f: u32,
    /// `kras(a_i − a_{i−1})` over the previous field; equals γ for a
    /// strongly homogeneous monomial.
    pub kras: GroupElement,
    pub value_group: SubgroupDescriptor,
    pub residue_degree: u32,
}

#[derive(Clone, Debug)]
pub struct HomogSequence {
    pub base: Tower,
    pub increments: Vec<Increment>,
    /// Number of terms of z that were scanned.
    pub depth: usize,
}

/// Findings of [`extract_homog_sequence`], stamped with the depth.
#[derive(Clone, Debug)]
pub struct ExtractionReport {
    pub sequence: HomogSequence,
    pub value_group: SubgroupDescriptor,
    /// Residue field degrees over F_p along the sequence, base first.
    pub residue_tower: Vec<u32>,
    pub ramification_index: u64,
    pub inertia_degree: u32,
    pub degree_lower_bound: u64,
    pub hs_verified: bool,
    pub pcs_verified: bool,
}

/// The homogeneous sequence of a power series z: repeatedly take the first
/// term of `z − a_{m−1}` not lying in `K(a_1, …, a_{m−1})` and let `a_m` be
/// the partial sum of z through it. Terms are checked for the hypotheses
/// (eᵢγᵢ ∈ vK with p ∤ eᵢ) as they are scanned.
pub fn extract_homog_sequence(z: &HahnSeries, base: &Tower, depth: usize) -> Result<ExtractionReport, HomogError> {
    if z.field() != &base.field {
        return Err(HomogError::FieldMismatch);
    }
    let p = base.field.characteristic();
    let scanned = &z.terms()[..depth.min(z.terms().len())];
    for (index, (gamma, _)) in scanned.iter().enumerate() {
        match base.vk.torsion_order(gamma, TORSION_BOUND)? {
            Torsion::Order(e) if p > 0 && e % p == 0 => return Err(HomogError::OutsideTameScope { index, e, p }),
            Torsion::Order(_) => {}
            Torsion::NonTorsion(_) => return Err(HomogError::NonTorsionExponent { index, gamma: gamma.to_string() }),
        }
    }
    let zd = z.partial_sum(scanned.len());
    let mut tower = base.clone();
    let mut increments = Vec::new();
    let mut residue_tower = vec![tower.residue_degree];
    let mut prev = HahnSeries::zero(z.field(), z.rank(), crate::hahn::Bound::Infinite);
    loop {
        let rest = zd.sub(&prev)?;
        let Some(found) = homog_approx(&rest, &tower)? else {
            break;
        };
        let a = prev.add(&found.increment)?;
        tower.adjoin(&found.gamma, &found.coeff, &found.test);
        residue_tower.push(tower.residue_degree);
        increments.push(Increment {
            term_index: z.terms().iter().position(|(g, _)| g == &found.gamma).expect("term of z"),
            gamma: found.gamma.clone(),
            coeff: found.coeff.clone(),
            e: found.test.e,
            f: found.test.f,
            kras: found.gamma.clone(),
            value_group: tower.value_group().reduced(),
            residue_degree: tower.residue_degree,
            a: a.clone(),
        });
        prev = a;
    }
    let sequence = HomogSequence { base: base.clone(), increments, depth: scanned.len() };
    let hs_verified = verify_hs(&sequence, &zd)?;
    let pcs_verified = verify_pcs_chain(&sequence, z)?;
    let ramification_index = tower.ramification_index()?;
    let inertia_degree = tower.inertia_degree();
    Ok(ExtractionReport {
        value_group: tower.value_group().reduced(),
        residue_tower,
        ramification_index,
        inertia_degree,
        degree_lower_bound: ramification_index * inertia_degree as u64,
        hs_verified,
        pcs_verified,
        sequence,
    })
}

/// Re-checks (HS) from scratch: each `a_i − a_{i−1}` is a captured part
/// plus one strongly homogeneous monomial over the tower of the previous
/// increments, and it approximates `z − a_{i−1}`.
pub fn verify_hs(seq: &HomogSequence, z: &HahnSeries) -> Result<bool, HomogError> {
    let mut tower = seq.base.clone();
    let mut prev = HahnSeries::zero(z.field(), z.rank(), crate::hahn::Bound::Infinite);
    for inc in &seq.increments {
        let diff = inc.a.sub(&prev)?;
        let Some(((last_g, last_c), captured)) = diff.terms().split_last() else {
            return Ok(false);
        };
        if last_g != &inc.gamma || last_c != &inc.coeff {
            return Ok(false);
        }
        for (g, c) in captured {
            if !tower.captures(g, c)? {
                return Ok(false);
            }
        }
        let test = tower.strongly_homogeneous_test(last_g, last_c)?;
        if !test.strongly_homogeneous || test.e != inc.e || test.f != inc.f {
            return Ok(false);
        }
        let target = z.sub(&prev)?;
        let err = target.sub(&diff)?;
        let ok = match (err.value(), target.value()) {
            (Value::At(e), Value::At(t)) => e > t,
            (Value::Above(_), Value::At(_)) => true,
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
        tower.adjoin(last_g, last_c, &test);
        prev = inc.a.clone();
    }
    Ok(true)
}

/// `v(z − a_j) > v(z − a_i) = v(a_{i+1} − a_i)` for consecutive elements.
pub fn verify_pcs_chain(seq: &HomogSequence, z: &HahnSeries) -> Result<bool, HomogError> {
    let a: Vec<&HahnSeries> = seq.increments.iter().map(|i| &i.a).collect();
    let mut last: Option<GroupElement> = None;
    for w in a.windows(2) {
        let to_limit = z.sub(w[0])?.value();
        let step = w[1].sub(w[0])?.value();
        let (Value::At(l), Value::At(s)) = (to_limit, step) else {
            return Ok(false);
        };
        if l != s || last.as_ref().is_some_and(|prev| &l <= prev) {
            return Ok(false);
        }
        last = Some(l);
    }
    Ok(true)
}

/// Findings of [`check_pcs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcsReport {
    /// `v(a_{ν+1} − a_ν)` for each consecutive pair.
    pub gaps: Vec<Value>,
    pub strictly_increasing: bool,
    /// First ν at which the gaps fail to increase.
    pub first_violation: Option<usize>,
    /// Whether `v(x − a_ν) = v(a_{ν+1} − a_ν)` for all ν, if a limit was given.
    pub limit_ok: Option<bool>,
}

impl PcsReport {
    pub fn passed(&self) -> bool {
        self.strictly_increasing && self.limit_ok != Some(false)
    }
}

pub fn check_pcs(elems: &[HahnSeries], limit: Option<&HahnSeries>) -> Result<PcsReport, HomogError> {
    let gaps: Vec<Value> = elems.windows(2).map(|w| w[1].sub(&w[0]).map(|d| d.value())).collect::<Result<_, _>>()?;
    let mut first_violation = None;
    for (i, g) in gaps.iter().enumerate() {
        let Value::At(cur) = g else {
            first_violation = Some(i);
            break;
        };
        if i > 0 {
            match &gaps[i - 1] {
                Value::At(prev) if cur > prev => {}
                _ => {
                    first_violation = Some(i);
                    break;
                }
            }
        }
    }
    let limit_ok = match limit {
        None => None,
        Some(x) => {
            let mut ok = true;
            for (nu, gap) in gaps.iter().enumerate() {
                if x.sub(&elems[nu])?.value() != *gap {
                    ok = false;
                }
            }
            Some(ok)
        }
    };
    Ok(PcsReport { strictly_increasing: first_violation.is_none(), gaps, first_violation, limit_ok })
}

/// A sequence verified to be pseudo Cauchy at construction.
#[derive(Clone, Debug)]
pub struct PCSequence {
    elems: Vec<HahnSeries>,
}

impl PCSequence {
    pub fn new(elems: Vec<HahnSeries>) -> Result<Self, PcsReport> {
        let report = check_pcs(&elems, None).expect("sequence elements share a field");
        if report.strictly_increasing {
            Ok(PCSequence { elems })
        } else {
            Err(report)
        }
    }

    pub fn elems(&self) -> &[HahnSeries] {
        &self.elems
    }

    pub fn depth(&self) -> usize {
        self.elems.len()
    }
}

impl ExtractionReport {
    pub fn to_json(&self) -> serde_json::Value {
        let k = &self.sequence.base.field;
        let seq: Vec<serde_json::Value> = self
            .sequence
            .increments
            .iter()
            .map(|inc| {
                serde_json::json!({
                    "a": inc.a.to_json(),
                    "term_index": inc.term_index,
                    "monomial": [group_json(&inc.gamma), k.element_json(&inc.coeff)],
                    "family": "kummer-monomial",
                    "e": inc.e,
                    "f": inc.f,
                    "kras": group_json(&inc.kras),
                    "value_group": inc.value_group.generators.iter().map(group_json).collect::<Vec<_>>(),
                    "residue_degree": inc.residue_degree,
                })
            })
            .collect();
        serde_json::json!({
            "sequence": seq,
            "value_group_generators": self.value_group.generators.iter().map(group_json).collect::<Vec<_>>(),
            "residue_field_tower": self.residue_tower,
            "depth": self.sequence.depth,
            "ramification_index": self.ramification_index,
            "inertia_degree": self.inertia_degree,
            "degree_lower_bound": self.degree_lower_bound,
            "hs_verified": self.hs_verified,
            "pcs_verified": self.pcs_verified,
            "implicit_constant_field": if self.sequence.increments.is_empty() {
                "K".to_string()
            } else {
                format!("K(a_1..a_{}) through depth {}", self.sequence.increments.len(), self.sequence.depth)
            },
        })
    }
}

/// Convenience: `gcd(e, p) = 1` (always true in characteristic 0).
pub fn prime_to(e: u64, p: u64) -> bool {
    p == 0 || gcd_u64(e, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::Bound;

    fn g(n: i64, d: i64) -> GroupElement {
        GroupElement::ratio(n, d)
    }

    fn f2_tower() -> Tower {
        Tower::new(&FieldDescriptor::prime(2).unwrap(), SubgroupDescriptor::integers(), 1).unwrap()
    }

    fn series(k: &FieldDescriptor, terms: &[(GroupElement, FieldElement)]) -> HahnSeries {
        HahnSeries::new(k, 1, terms.iter().cloned(), Bound::Infinite).unwrap()
    }

    #[test]
    fn kras_examples() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let base = BaseField::series(f2.clone(), SubgroupDescriptor::integers());
        let c = KElem::Ser(HahnSeries::monomial(&f2, g(-1, 1), f2.one()).unwrap());
        assert_eq!(kras_family(&Family::ArtinSchreier { c }, &base).unwrap(), g(0, 1));

        let f7 = FieldDescriptor::prime(7).unwrap();
        let base7 = BaseField::series(f7.clone(), SubgroupDescriptor::integers());
        let t = KElem::Ser(HahnSeries::monomial(&f7, g(1, 1), f7.one()).unwrap());
        assert_eq!(kras_family(&Family::Kummer { c: t, e: 3 }, &base7).unwrap(), g(1, 3));

        let quarter = SubgroupDescriptor::cyclic(g(1, 4));
        let base4 = BaseField::series(f2.clone(), quarter);
        let c = KElem::Ser(HahnSeries::monomial(&f2, g(-1, 4), f2.one()).unwrap());
        assert_eq!(kras_family(&Family::ArtinSchreier { c }, &base4).unwrap(), g(0, 1));

        let c = KElem::Ser(HahnSeries::monomial(&f2, g(1, 1), f2.one()).unwrap());
        assert!(kras_family(&Family::Kummer { c, e: 2 }, &base).is_err());
    }

    #[test]
    fn strong_homogeneity_examples() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let t = f2_tower();
        let r = t.strongly_homogeneous_test(&g(1, 3), &f2.one()).unwrap();
        assert!(r.strongly_homogeneous);
        assert_eq!((r.e, r.f), (3, 1));

        let f4 = FieldDescriptor::extension(2, &[1, 1, 1]).unwrap();
        let t4 = Tower::new(&f4, SubgroupDescriptor::integers(), 1).unwrap();
        let r = t4.strongly_homogeneous_test(&g(1, 1), &f4.generator().unwrap()).unwrap();
        assert!(r.strongly_homogeneous);
        assert_eq!((r.e, r.f), (1, 2));

        let r = t.strongly_homogeneous_test(&g(1, 2), &f2.one()).unwrap();
        assert!(!r.strongly_homogeneous);
        assert_eq!(r.e, 2);
    }

    #[test]
    fn captured_monomials_use_the_tower_coefficients() {
        // u t^{1/3} over F_2((t)): then u t^{4/3} = (u t^{1/3})·t is already there.
        let f4 = FieldDescriptor::extension(2, &[1, 1, 1]).unwrap();
        let mut tower = Tower::new(&f4, SubgroupDescriptor::integers(), 1).unwrap();
        let u = f4.generator().unwrap();
        let test = tower.strongly_homogeneous_test(&g(1, 3), &u).unwrap();
        assert_eq!((test.e, test.f), (3, 1));
        tower.adjoin(&g(1, 3), &u, &test);
        assert!(tower.captures(&g(4, 3), &u).unwrap());
        assert!(!tower.captures(&g(4, 3), &f4.one()).unwrap());
    }

    #[test]
    fn homog_approx_examples() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let b = series(&f2, &[(g(1, 3), f2.one()), (g(1, 1), f2.one())]);
        let a = homog_approx(&b, &f2_tower()).unwrap().unwrap();
        assert_eq!(a.increment, series(&f2, &[(g(1, 3), f2.one())]));

        let b = series(&f2, &[(g(0, 1), f2.one()), (g(1, 1), f2.one())]);
        assert!(homog_approx(&b, &f2_tower()).unwrap().is_none());

        let f3 = FieldDescriptor::prime(3).unwrap();
        let t3 = Tower::new(&f3, SubgroupDescriptor::integers(), 1).unwrap();
        let b = series(&f3, &[(g(1, 3), f3.one())]);
        assert!(matches!(homog_approx(&b, &t3), Err(HomogError::OutsideTameScope { index: 0, e: 3, p: 3 })));
    }

    #[test]
    fn extraction_value_group() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let terms: Vec<_> = (1..=4).map(|i| (&g(1, 1) - &g(1, 3i64.pow(i)), f2.one())).collect();
        let z = series(&f2, &terms);
        let rep = extract_homog_sequence(&z, &f2_tower(), 4).unwrap();
        assert_eq!(rep.value_group.generators, vec![g(1, 81)]);
        assert_eq!(rep.sequence.increments.len(), 4);
        assert_eq!(rep.degree_lower_bound, 81);
        assert!(rep.hs_verified && rep.pcs_verified);

        let z = series(&f2, &[(g(1, 1), f2.one()), (g(2, 1), f2.one())]);
        let rep = extract_homog_sequence(&z, &f2_tower(), 4).unwrap();
        assert!(rep.sequence.increments.is_empty());
        assert_eq!(rep.degree_lower_bound, 1);
    }

    #[test]
    fn pcs_examples() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let b = |i: u32| series(&f2, &(1..=i).map(|j| (&g(1, 1) - &g(1, 3i64.pow(j)), f2.one())).collect::<Vec<_>>());
        let seq: Vec<_> = (1..=4).map(b).collect();
        let rep = check_pcs(&seq, Some(&b(5))).unwrap();
        assert!(rep.passed());
        let constant = vec![b(1), b(1), b(1)];
        assert!(!check_pcs(&constant, None).unwrap().passed());
        assert!(PCSequence::new(constant).is_err());
    }
}
