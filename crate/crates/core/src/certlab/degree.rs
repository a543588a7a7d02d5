//! Degree lower bounds for elements close to `b_i = Σ_{j≤i} t^{γ_j}`,
//! `γ_j = j + 1/n_j`, in a model of ℚ_p where t stands for p.

use serde::{Deserialize, Serialize};

use super::{CertBody, CertError, Certificate, Failure};
use crate::coeff::FieldDescriptor;
use crate::hahn::{sum_of_monomials, HahnSeries};
use crate::homog::{check_pcs, Tower};
use crate::ordgroup::{GroupElement, SubgroupDescriptor};
use crate::rational::{gcd_u64, is_prime, lcm_u64, q};

pub(crate) const MODEL_DISCLAIMER: &str = "t stands for p and coefficients in F_p stand for Teichmueller representatives; \
exponent and residue arithmetic is exact, coefficient arithmetic of Q_p itself is not modeled";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncrementWitness {
    pub i: usize,
    pub gamma: GroupElement,
    /// Order of γ_i modulo ℤ; equals n_i.
    pub e: u64,
    pub f: u32,
}

/// `p^a` exactly divides `n_i` and the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    pub attained_at: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpVariant {
    pub gammas: Vec<GroupElement>,
    /// `v(b_{i+1} − b_i)`.
    pub gaps: Vec<GroupElement>,
    /// Upper bound of all gaps.
    pub sup: GroupElement,
    pub pseudo_cauchy: bool,
    pub cauchy: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeBoundCert {
    pub p: u64,
    pub n: Vec<u64>,
    pub gammas: Vec<GroupElement>,
    pub b: serde_json::Value,
    pub increments: Vec<IncrementWitness>,
    /// `lcm(n_1..n_i)` for each prefix.
    pub bounds: Vec<u64>,
    pub bound: u64,
    pub lcm_decomposition: Vec<PrimePower>,
    /// Generator of `ℤ + Σ ℤγ_i`.
    pub value_group_generator: GroupElement,
    pub claim: String,
    pub cp_variant: CpVariant,
    pub model_disclaimer: String,
}

fn check_schedule(p: u64, n: &[u64]) -> Result<(), CertError> {
    if !is_prime(p) {
        return Err(CertError::Hypothesis(format!("p = {p} is not prime")));
    }
    if n.is_empty() {
        return Err(CertError::Schedule { i: 1, reason: "empty n schedule".into() });
    }
    for (idx, &ni) in n.iter().enumerate() {
        let i = idx + 1;
        if ni <= 1 {
            return Err(CertError::Schedule { i, reason: format!("n_i > 1 violated (n_i = {ni})") });
        }
        if gcd_u64(ni, p) != 1 {
            return Err(CertError::NotCoprime { i, n: ni, p });
        }
        if idx > 0 && ni <= n[idx - 1] {
            return Err(CertError::Schedule { i, reason: "n_i strictly increasing violated".into() });
        }
    }
    Ok(())
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut a = 0;
        while n % d == 0 {
            n /= d;
            a += 1;
        }
        if a > 0 {
            out.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn valuation(mut n: u64, prime: u64) -> u32 {
    let mut a = 0;
    while n % prime == 0 {
        n /= prime;
        a += 1;
    }
    a
}

pub fn degree_bound_certificate(p: u64, n: &[u64], depth: usize) -> Result<Certificate, CertError> {
    if depth == 0 || depth > n.len() {
        return Err(CertError::Hypothesis(format!("depth must lie in 1..={}", n.len())));
    }
    check_schedule(p, &n[..depth])?;
    let n = &n[..depth];
    let k = FieldDescriptor::prime(p)?;
    let gammas: Vec<GroupElement> =
        n.iter().enumerate().map(|(idx, &ni)| GroupElement::rat(q(idx as i64 + 1, 1) + q(1, ni as i64))).collect();
    let b = sum_of_monomials(&k, gammas.iter().cloned(), 1)?;

    let base = Tower::new(&k, SubgroupDescriptor::integers(), 1)?;
    let mut increments = Vec::new();
    for (idx, g) in gammas.iter().enumerate() {
        let test = base.strongly_homogeneous_test(g, &k.one())?;
        if !test.strongly_homogeneous || test.e != n[idx] {
            return Err(CertError::Verification { level: idx + 1, what: format!("increment p^{g} is not strongly homogeneous of order n_i") });
        }
        increments.push(IncrementWitness { i: idx + 1, gamma: g.clone(), e: test.e, f: test.f });
    }
    let mut bounds = Vec::new();
    let mut acc = 1u64;
    for &ni in n {
        acc = lcm_u64(acc, ni);
        bounds.push(acc);
    }
    let bound = acc;
    let lcm_decomposition = factor(bound)
        .into_iter()
        .map(|(prime, exponent)| PrimePower {
            prime,
            exponent,
            attained_at: n.iter().position(|&ni| valuation(ni, prime) == exponent).expect("prime power of the lcm") + 1,
        })
        .collect();
    let group = SubgroupDescriptor::integers().with(&gammas)?.reduced();
    let value_group_generator = group.rank_one_generator().expect("rank one");

    let cp_gammas: Vec<GroupElement> = n.iter().map(|&ni| GroupElement::rat(q(1, 1) - q(1, ni as i64))).collect();
    let partial: Vec<HahnSeries> =
        (1..=depth).map(|i| sum_of_monomials(&k, cp_gammas[..i].iter().cloned(), 1)).collect::<Result<_, _>>()?;
    let pcs = check_pcs(&partial, None)?;
    let gaps = pcs.gaps.iter().filter_map(|v| v.exact().cloned()).collect();
    let cp_variant = CpVariant {
        gammas: cp_gammas,
        gaps,
        sup: GroupElement::int(1),
        pseudo_cauchy: pcs.strictly_increasing,
        cauchy: false,
    };
    let body = DegreeBoundCert {
        p,
        n: n.to_vec(),
        gammas,
        b: b.to_json(),
        increments,
        bounds,
        bound,
        lcm_decomposition,
        value_group_generator,
        claim: format!("every z with v(z - b_{depth}) > gamma_{depth} has [Q_p(z):Q_p] >= {bound}"),
        cp_variant,
        model_disclaimer: MODEL_DISCLAIMER.to_string(),
    };
    Ok(Certificate::new(depth, CertBody::DegreeLowerBound(body)))
}

impl DegreeBoundCert {
    pub(crate) fn recheck(&self, depth: usize) -> Result<(), Failure> {
        let fail = |i: usize, m: &str| Failure::at(i, m.to_string());
        if depth == 0 || self.n.len() != depth || self.gammas.len() != depth || self.increments.len() != depth || self.bounds.len() != depth {
            return Err(Failure::global(format!("depth {depth} does not match the witnessed data")));
        }
        check_schedule(self.p, &self.n).map_err(|e| Failure::global(e.to_string()))?;
        for (idx, (g, &ni)) in self.gammas.iter().zip(&self.n).enumerate() {
            let i = idx + 1;
            let x = g.as_rat().ok_or_else(|| fail(i, "gamma is not rank one"))?;
            // γ_i = i + 1/n_i has exact denominator n_i: its order modulo ℤ.
            if *x != q(i as i64, 1) + q(1, ni as i64) {
                return Err(fail(i, "gamma_i differs from i + 1/n_i"));
            }
            let w = &self.increments[idx];
            if w.i != i || &w.gamma != g || w.e != ni || w.f != 1 || *x.denom() != ni.into() {
                return Err(fail(i, "increment is not strongly homogeneous of order n_i"));
            }
            if idx > 0 && g <= &self.gammas[idx - 1] {
                return Err(fail(i, "gammas do not increase"));
            }
        }
        let b = HahnSeries::from_json(&self.b).map_err(|e| Failure::global(e.to_string()))?;
        let exps: Vec<GroupElement> = b.terms().iter().map(|(g, _)| g.clone()).collect();
        if exps != self.gammas || !b.is_exact() || b.terms().iter().any(|(_, c)| !b.field().is_one(c)) {
            return Err(Failure::global("b is not the sum of the recorded monomials"));
        }
        for (idx, &bd) in self.bounds.iter().enumerate() {
            if idx > 0 && bd < self.bounds[idx - 1] {
                return Err(fail(idx + 1, "bounds are not monotone in depth"));
            }
            if self.n[..=idx].iter().any(|&ni| bd % ni != 0) || (idx > 0 && bd % self.bounds[idx - 1] != 0) {
                return Err(fail(idx + 1, "bound is not a common multiple"));
            }
        }
        if self.bounds[depth - 1] != self.bound {
            return Err(Failure::global("final bound differs from the last prefix bound"));
        }
        let mut product = 1u64;
        for pp in &self.lcm_decomposition {
            if pp.attained_at == 0 || pp.attained_at > depth || valuation(self.n[pp.attained_at - 1], pp.prime) != pp.exponent {
                return Err(Failure::global(format!("prime power {}^{} is not attained", pp.prime, pp.exponent)));
            }
            if valuation(self.bound, pp.prime) != pp.exponent {
                return Err(Failure::global("decomposition disagrees with the bound"));
            }
            product = product.checked_mul(pp.prime.pow(pp.exponent)).ok_or_else(|| Failure::global("overflow"))?;
        }
        if product != self.bound {
            return Err(Failure::global("lcm decomposition does not multiply to the bound"));
        }
        if self.value_group_generator != GroupElement::rat(q(1, self.bound as i64)) {
            return Err(Failure::global("value group generator differs from 1/bound"));
        }
        let cp = &self.cp_variant;
        if cp.gammas.len() != depth || cp.gaps.len() + 1 != depth {
            return Err(Failure::global("C_p variant does not match the depth"));
        }
        for (idx, g) in cp.gammas.iter().enumerate() {
            if g.as_rat() != Some(&(q(1, 1) - q(1, self.n[idx] as i64))) || g >= &cp.sup {
                return Err(fail(idx + 1, "C_p exponent differs from 1 - 1/n_i"));
            }
        }
        for (idx, gap) in cp.gaps.iter().enumerate() {
            if gap != &cp.gammas[idx + 1] || (idx > 0 && gap <= &cp.gaps[idx - 1]) {
                return Err(fail(idx + 1, "C_p gaps are not strictly increasing"));
            }
        }
        if !cp.pseudo_cauchy || cp.cauchy || cp.sup != GroupElement::int(1) {
            return Err(Failure::global("C_p variant flags"));
        }
        if self.model_disclaimer != MODEL_DISCLAIMER {
            return Err(Failure::global("model disclaimer missing"));
        }
        if !self.claim.ends_with(&format!(">= {}", self.bound)) {
            return Err(Failure::global("claim does not state the bound"));
        }
        Ok(())
    }
}
