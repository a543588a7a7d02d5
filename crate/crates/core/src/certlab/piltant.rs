//! The defect tower: `y = Σ x^{sᵢ − p^{−eᵢ}}` over `K(x)`, the identities
//! `y^{p^{e_j}} − Σ_{i≤j} x^{p^{e_j}(sᵢ − p^{−eᵢ})} = Σ_{i>j} …` witnessing
//! `1/p^j ∈ vK(x, y)`, and the Artin–Schreier chain `η_i^p − η_i = η_{i−1}`
//! with `η_0 = 1/x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{CertBody, CertError, Certificate, Failure};
use crate::coeff::FieldDescriptor;
use crate::hahn::{sum_of_monomials, Bound, HahnSeries, Value};
use crate::ordgroup::{GroupElement, Index, SubgroupDescriptor};
use crate::rational::{fmt_q, is_prime, q_pow, q_string, Q};

/// Shape of the exponents of y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum PiltantVariant {
    /// `y = Σ x^{−p^{−eᵢ}}`.
    Classic,
    /// `y = Σ x^{nᵢ − p^{−eᵢ}}`; `nᵢ = i` gives a support cofinal in the
    /// p-divisible hull of ℤ.
    Shifted { n: Vec<i64> },
}

impl PiltantVariant {
    fn shift(&self, i: usize) -> i64 {
        match self {
            PiltantVariant::Classic => 0,
            // Past the end, the canonical continuation repeats the last shift.
            PiltantVariant::Shifted { n } => n[i.min(n.len() - 1)],
        }
    }

    /// Exponent of the i-th term (zero based).
    fn exponent(&self, p: u64, e: &[u64], i: usize) -> Q {
        Q::from_integer(BigInt::from(self.shift(i))) - q_pow(p, -(e[i] as i64))
    }
}

/// Exponent schedule extended by one step: `e_{N+1} = e_N + N`.
fn continued(e: &[u64]) -> Vec<u64> {
    let mut ext = e.to_vec();
    let n = e.len() as u64;
    ext.push(e[e.len() - 1] + n);
    ext
}

fn check_schedule(p: u64, e: &[u64], variant: &PiltantVariant) -> Result<Vec<Q>, CertError> {
    if !is_prime(p) {
        return Err(CertError::Hypothesis(format!("p = {p} is not prime")));
    }
    if e.is_empty() {
        return Err(CertError::Schedule { i: 1, reason: "empty schedule".into() });
    }
    if e[0] == 0 {
        return Err(CertError::Schedule { i: 1, reason: "e_1 must be a positive integer".into() });
    }
    for i in 1..e.len() {
        if e[i] < e[i - 1] + i as u64 {
            return Err(CertError::Schedule {
                i,
                reason: format!("e_{{i+1}} >= e_i + i fails: e_{} = {} < {} + {}", i + 1, e[i], e[i - 1], i),
            });
        }
    }
    if e[e.len() - 1] > 60 {
        return Err(CertError::Hypothesis("exponent schedule entries above 60 are not supported".into()));
    }
    if let PiltantVariant::Shifted { n } = variant {
        if n.len() != e.len() {
            return Err(CertError::Schedule { i: n.len().min(e.len()) + 1, reason: "shift list and schedule differ in length".into() });
        }
    }
    let ext = continued(e);
    let exps: Vec<Q> = (0..ext.len()).map(|i| variant.exponent(p, &ext, i)).collect();
    for i in 1..exps.len() {
        if exps[i] <= exps[i - 1] {
            return Err(CertError::Schedule { i, reason: "exponents of y must increase strictly".into() });
        }
    }
    Ok(exps)
}

/// `(A, B)` with A, B integers and `A·v + B = 1/p^j`, where
/// `v = I + m/p^d`, `p ∤ m`, `d ≥ j`.
fn divisibility_witness(p: u64, v: &Q, j: usize) -> Option<(Q, Q)> {
    let den = v.denom().clone();
    let pj = BigInt::from(p).pow(j as u32);
    if !(&den % &pj).is_zero() {
        return None;
    }
    let num = v.numer().mod_floor(&den);
    let ext = num.extended_gcd(&den);
    if !ext.gcd.is_one() {
        return None;
    }
    let u = ext.x.mod_floor(&den);
    let a = Q::from_integer(u * (&den / &pj));
    let target = Q::new(BigInt::one(), pj);
    let b = &target - &a * v;
    b.is_integer().then_some((a, b))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiltantLevel {
    pub j: usize,
    /// `y^{p^{e_j}} − Σ_{i≤j} x^{p^{e_j}·expᵢ}` as computed.
    pub residual: serde_json::Value,
    pub value: GroupElement,
    #[serde(with = "q_string")]
    pub multiplier: Q,
    #[serde(with = "q_string")]
    pub offset: Q,
    /// `multiplier·value + offset`, which equals `1/p^j`.
    pub witnessed: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaLevel {
    pub i: usize,
    pub eta: serde_json::Value,
    pub value: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectStep {
    pub i: usize,
    pub degree: u64,
    pub e: u64,
    pub f: u64,
    pub defect: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectSummary {
    /// `1/p^depth`, contained in `vK(x, y)`.
    pub value_group_contains: GroupElement,
    pub residue_field: crate::coeff::FieldJson,
    /// `K(x, y, η_i) | K(x, y)`.
    pub over_kxy: Vec<DefectStep>,
    /// `K(x, η_i) | K(x)`: totally ramified, no defect.
    pub over_kx: Vec<DefectStep>,
    pub assumption: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectTowerCert {
    pub p: u64,
    pub schedule: Vec<u64>,
    pub variant: PiltantVariant,
    pub y: serde_json::Value,
    pub levels: Vec<PiltantLevel>,
    pub eta: Vec<EtaLevel>,
    pub defect: DefectSummary,
}

const UNIQUENESS: &str = "the extension of v from K(x,y) to K(x,y,eta_i) is unique: the eta-chain is linearly disjoint \
from the henselization of K(x,y) over K(x); certified as an assumption, not recomputed";

fn residue_of_schedule(p: u64, e: &[u64], exps: &[Q], j: usize) -> Result<(HahnSeries, HahnSeries), CertError> {
    let k = FieldDescriptor::prime(p)?;
    let n = e.len();
    let y = sum_of_monomials(&k, exps[..n].iter().cloned().map(GroupElement::rat), 1)?
        .truncate(&Bound::Finite(GroupElement::rat(exps[n].clone())));
    let scale = q_pow(p, e[j - 1] as i64);
    let head = sum_of_monomials(&k, exps[..j].iter().map(|x| GroupElement::rat(x * &scale)), 1)?;
    Ok((y, head))
}

/// Builds the defect tower certificate for levels `1..=depth`.
pub fn build_piltant(p: u64, schedule: &[u64], depth: usize, variant: &PiltantVariant) -> Result<Certificate, CertError> {
    let exps = check_schedule(p, schedule, variant)?;
    if depth == 0 {
        return Err(CertError::Hypothesis("depth must be at least 1".into()));
    }
    if depth >= schedule.len() {
        return Err(CertError::TooShallow { level: schedule.len() });
    }
    let k = FieldDescriptor::prime(p)?;
    let mut levels = Vec::with_capacity(depth);
    let mut y_json = serde_json::Value::Null;
    for j in 1..=depth {
        let (y, head) = residue_of_schedule(p, schedule, &exps, j)?;
        y_json = y.to_json();
        let residual = y.frobenius_pow(schedule[j - 1] as u32)?.sub(&head)?;
        let value = match residual.value() {
            Value::At(g) => g,
            Value::Above(_) => return Err(CertError::TooShallow { level: j }),
        };
        let expected = GroupElement::rat(&exps[j] * q_pow(p, schedule[j - 1] as i64));
        if value != expected {
            return Err(CertError::Verification { level: j, what: format!("value {value}, expected {expected}") });
        }
        let v = value.as_rat().expect("rank one").clone();
        let (multiplier, offset) = divisibility_witness(p, &v, j)
            .ok_or_else(|| CertError::Verification { level: j, what: format!("{} does not witness 1/p^{j}", fmt_q(&v)) })?;
        let witnessed = GroupElement::rat(&multiplier * &v + &offset);
        levels.push(PiltantLevel { j, residual: residual.to_json(), value, multiplier, offset, witnessed });
    }

    let as_depth = depth + 2;
    let mut eta_prev = HahnSeries::monomial(&k, GroupElement::int(-1), k.one())?;
    let mut eta = vec![EtaLevel { i: 0, eta: eta_prev.to_json(), value: GroupElement::int(-1) }];
    for i in 1..=depth + 1 {
        let next = eta_prev.artin_schreier_root(as_depth)?;
        let expected = GroupElement::rat(-q_pow(p, -(i as i64)));
        if next.value() != Value::At(expected.clone()) {
            return Err(CertError::Verification { level: i, what: format!("v(eta_{i}) = {}, expected {expected}", next.value()) });
        }
        eta.push(EtaLevel { i, eta: next.to_json(), value: expected });
        eta_prev = next;
    }

    let mut over_kxy = Vec::new();
    let mut over_kx = Vec::new();
    for i in 1..=depth {
        let degree = p.checked_pow(i as u32).ok_or_else(|| CertError::Hypothesis("p^depth overflows".into()))?;
        over_kxy.push(DefectStep { i, degree, e: 1, f: 1, defect: degree });
        over_kx.push(DefectStep { i, degree, e: degree, f: 1, defect: 1 });
    }
    let defect = DefectSummary {
        value_group_contains: GroupElement::rat(q_pow(p, -(depth as i64))),
        residue_field: k.descriptor_json(),
        over_kxy,
        over_kx,
        assumption: UNIQUENESS.to_string(),
    };
    let body = DefectTowerCert { p, schedule: schedule.to_vec(), variant: variant.clone(), y: y_json, levels, eta, defect };
    Ok(Certificate::new(depth, CertBody::DefectTower(body)))
}

fn parse_series(v: &serde_json::Value, level: usize, what: &str) -> Result<HahnSeries, Failure> {
    HahnSeries::from_json(v).map_err(|e| Failure::at(level, format!("{what} does not parse: {e}")))
}

fn all_ones(s: &HahnSeries) -> bool {
    s.terms().iter().all(|(_, c)| s.field().is_one(c))
}

impl DefectTowerCert {
    pub(crate) fn recheck(&self, depth: usize) -> Result<(), Failure> {
        let p = self.p;
        let exps = check_schedule(p, &self.schedule, &self.variant).map_err(|e| match e {
            CertError::Schedule { i, .. } => Failure::at(i, e.to_string()),
            other => Failure::global(other.to_string()),
        })?;
        if depth == 0 || depth != self.levels.len() {
            return Err(Failure::global(format!("depth {depth} does not match the {} witnessed levels", self.levels.len())));
        }
        if depth >= self.schedule.len() {
            return Err(Failure::at(self.schedule.len(), "no schedule entry beyond this level to witness it"));
        }
        let n = self.schedule.len();
        let y = parse_series(&self.y, 0, "y")?;
        if y.field() != &FieldDescriptor::prime(p).map_err(|e| Failure::global(e.to_string()))? {
            return Err(Failure::global("y is not over F_p"));
        }
        let y_exps: Vec<Q> = y.terms().iter().map(|(g, _)| g.as_rat().cloned().unwrap_or_default()).collect();
        if y_exps != exps[..n] || !all_ones(&y) || y.trunc() != &Bound::Finite(GroupElement::rat(exps[n].clone())) {
            return Err(Failure::global("y does not match its exponent schedule"));
        }
        for (idx, level) in self.levels.iter().enumerate() {
            let j = idx + 1;
            if level.j != j {
                return Err(Failure::at(j, "levels out of order"));
            }
            let r = parse_series(&level.residual, j, "residual")?;
            let scale = q_pow(p, self.schedule[j - 1] as i64);
            let trunc = GroupElement::rat(&exps[n] * &scale);
            let want: Vec<GroupElement> =
                exps[j..n].iter().map(|x| GroupElement::rat(x * &scale)).filter(|g| *g < trunc).collect();
            let got: Vec<GroupElement> = r.terms().iter().map(|(g, _)| g.clone()).collect();
            if got != want || !all_ones(&r) || r.trunc() != &Bound::Finite(trunc) {
                return Err(Failure::at(j, "residual series differs from the identity's tail"));
            }
            if r.value() != Value::At(level.value.clone()) {
                return Err(Failure::at(j, "recorded value is not the residual's value"));
            }
            let v = level.value.as_rat().cloned().ok_or_else(|| Failure::at(j, "value is not rank one"))?;
            let target = q_pow(p, -(j as i64));
            if !level.multiplier.is_integer()
                || !level.offset.is_integer()
                || &level.multiplier * &v + &level.offset != target
                || level.witnessed != GroupElement::rat(target)
            {
                return Err(Failure::at(j, format!("witness does not produce 1/p^{j} from the value")));
            }
        }
        if self.eta.len() != depth + 2 {
            return Err(Failure::global("eta tower does not reach depth + 1"));
        }
        let mut prev: Option<HahnSeries> = None;
        for (i, level) in self.eta.iter().enumerate() {
            let s = parse_series(&level.eta, i, "eta")?;
            let expected = GroupElement::rat(-q_pow(p, -(i as i64)));
            if level.i != i || level.value != expected || s.value() != Value::At(expected) {
                return Err(Failure::at(i, "v(eta_i) differs from -1/p^i"));
            }
            match &prev {
                None => {
                    if s.terms().len() != 1 || !all_ones(&s) || !s.is_exact() {
                        return Err(Failure::at(0, "eta_0 must be 1/x"));
                    }
                }
                Some(before) => {
                    let residual = s.frobenius_pow(1).and_then(|a| a.sub(&s)).and_then(|a| a.sub(before));
                    match residual.map(|r| r.value()) {
                        Ok(Value::Above(_)) => {}
                        _ => return Err(Failure::at(i, "eta_i^p - eta_i - eta_{i-1} does not vanish below the truncation")),
                    }
                }
            }
            prev = Some(s);
        }
        let d = &self.defect;
        if d.value_group_contains != GroupElement::rat(q_pow(p, -(depth as i64))) {
            return Err(Failure::global("divisibility claim does not match the depth"));
        }
        if d.over_kxy.len() != depth || d.over_kx.len() != depth || d.assumption != UNIQUENESS {
            return Err(Failure::global("defect summary does not cover the depth"));
        }
        for i in 1..=depth {
            let deg = p.pow(i as u32);
            if d.over_kxy[i - 1] != (DefectStep { i, degree: deg, e: 1, f: 1, defect: deg }) {
                return Err(Failure::at(i, "defect claim over K(x,y)"));
            }
            // e over K(x) is the index of <1, v(eta_i)> over Z.
            let group = SubgroupDescriptor::integers().with(&[self.eta[i].value.clone()]).map_err(|e| Failure::at(i, e.to_string()))?;
            let index = group.index(&SubgroupDescriptor::integers()).map_err(|e| Failure::at(i, e.to_string()))?;
            if index != Index::Finite(deg) || d.over_kx[i - 1] != (DefectStep { i, degree: deg, e: deg, f: 1, defect: 1 }) {
                return Err(Failure::at(i, "ramification claim over K(x)"));
            }
        }
        Ok(())
    }
}
