//! Seeded randomized checks of the library invariants, runnable from the
//! binary with `valext selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::certlab::{build_piltant, degree_bound_certificate, fund_ineq_check, CertBody, Certificate, PiltantVariant};
use crate::coeff::FieldDescriptor;
use crate::hahn::{Bound, HahnSeries, Value};
use crate::kxval::{poly_add, poly_mul, random_poly, BaseField, KxError, Placement, RationalFunction, VagDescriptor};
use crate::ordgroup::GroupElement;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, cases: 0, skipped: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn json(&self) -> serde_json::Value {
        json!({"suite": self.name, "cases": self.cases, "skipped": self.skipped, "passed": self.passed(), "failures": self.failures})
    }
}

fn undecided(e: &KxError) -> bool {
    matches!(e, KxError::Undecided(_) | KxError::TorsionUndecided(_))
}

fn random_descriptor(rng: &mut ChaCha8Rng) -> VagDescriptor {
    let base = match rng.gen_range(0..4) {
        0 => BaseField::p_adic([2, 3, 5][rng.gen_range(0..3)]).expect("prime"),
        1 => BaseField::TAdic { k: FieldDescriptor::prime([2, 3][rng.gen_range(0..2)]).expect("prime") },
        2 => BaseField::TAdic { k: FieldDescriptor::rationals() },
        _ => BaseField::Trivial { k: FieldDescriptor::prime(3).expect("prime") },
    };
    let center = base.random_elem(rng);
    let gamma = match rng.gen_range(0..4) {
        0 => GroupElement::int(0),
        1 => GroupElement::int(rng.gen_range(-2..=3)),
        2 => GroupElement::ratio(rng.gen_range(-5..=5), rng.gen_range(2..=6)),
        _ => GroupElement::new(vec![GroupElement::int(rng.gen_range(-2..=2)).coords()[0].clone(), GroupElement::int(1).coords()[0].clone()]),
    };
    VagDescriptor::new(base, center, gamma, Placement::Small).expect("valid descriptor")
}

/// `v(fg) = v(f) + v(g)` and `v(f + g) ≥ min(v(f), v(g))`.
pub fn valuation_axioms(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("valuation-axioms");
    for _ in 0..cases {
        let d = random_descriptor(rng);
        let f = random_poly(&d.base, 3, rng);
        let g = random_poly(&d.base, 3, rng);
        let run = || -> Result<(GroupElement, GroupElement, GroupElement, Option<GroupElement>), KxError> {
            let vf = d.eval(&f)?;
            let vg = d.eval(&g)?;
            let vfg = d.eval(&poly_mul(&d.base, &f, &g)?)?;
            let sum = poly_add(&d.base, &f, &g)?;
            let vs = if sum.is_empty() { None } else { Some(d.eval(&sum)?) };
            Ok((vf, vg, vfg, vs))
        };
        match run() {
            Ok((vf, vg, vfg, vs)) => {
                let add = &vf + &vg;
                s.check(vfg == add, || format!("v(fg) = {vfg}, v(f) + v(g) = {add}"));
                if let Some(vs) = vs {
                    let m = vf.clone().min(vg.clone());
                    s.check(vs >= m, || format!("v(f+g) = {vs} < min = {m}"));
                }
            }
            Err(KxError::ZeroPolynomial) => s.skipped += 1,
            Err(e) if undecided(&e) => s.skipped += 1,
            Err(e) => s.check(false, || e.to_string()),
        }
    }
    s
}

/// The closed formula agrees with the substitution oracle.
pub fn oracle_agreement(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("oracle-agreement");
    for _ in 0..cases {
        let d = random_descriptor(rng);
        let f = RationalFunction { num: random_poly(&d.base, 3, rng), den: random_poly(&d.base, 2, rng) };
        match (d.eval_ratfunc(&f), d.substitution_oracle(&f, 8)) {
            (Ok(a), Ok(b)) => s.check(a == b, || format!("formula {a}, oracle {b}")),
            (Err(e), _) | (_, Err(e)) if undecided(&e) || matches!(e, KxError::ZeroPolynomial | KxError::ZeroDenominator) => s.skipped += 1,
            (Err(e), _) | (_, Err(e)) => s.check(false, || e.to_string()),
        }
    }
    s
}

/// `a^p − a − u` vanishes below `v(u)/p^depth` for the Artin-Schreier root.
pub fn artin_schreier_residual(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("artin-schreier-residual");
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let k = FieldDescriptor::prime(p).expect("prime");
        let n = rng.gen_range(1..=3);
        let mut terms: Vec<(GroupElement, _)> = (0..n)
            .map(|_| (GroupElement::ratio(-rng.gen_range(1..=9), rng.gen_range(1..=4)), k.from_u64(rng.gen_range(1..p))))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        terms.dedup_by(|a, b| a.0 == b.0);
        let u = HahnSeries::new(&k, 1, terms, Bound::Infinite).expect("valid series");
        let depth = rng.gen_range(1..=4);
        let v = u.value().exact().cloned().expect("nonzero");
        let a = match u.artin_schreier_root(depth) {
            Ok(a) => a,
            Err(e) => {
                s.check(false, || e.to_string());
                continue;
            }
        };
        let target = v.scale(&num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(p).pow(depth as u32)));
        let residual = a.frobenius_pow(1).and_then(|ap| ap.sub(&a)).and_then(|r| r.sub(&u));
        match residual {
            Ok(r) => {
                let ok = r.is_zero() && matches!(r.value(), Value::Above(Bound::Finite(ref b)) if *b >= target);
                s.check(ok, || format!("residual {} for u = {}", r.value(), u.to_json()));
            }
            Err(e) => s.check(false, || e.to_string()),
        }
    }
    s
}

fn coprime_list(rng: &mut ChaCha8Rng, p: u64, len: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(len);
    while out.len() < len {
        let n = out.last().copied().unwrap_or(1) + rng.gen_range(1..=4);
        if n % p != 0 {
            out.push(n);
        }
    }
    out
}

/// Built certificates recheck; a perturbed copy does not.
pub fn certificate_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("certificate-round-trip");
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let len = rng.gen_range(3..=6);
        let mut e = vec![rng.gen_range(1..=2)];
        for i in 1..len {
            let last = *e.last().unwrap();
            e.push(last + i as u64 + rng.gen_range(0..=2));
        }
        let depth = rng.gen_range(1..len);
        let certs = [
            build_piltant(p, &e, depth, &PiltantVariant::Classic),
            degree_bound_certificate(p, &coprime_list(rng, p, len), depth),
        ];
        for c in certs {
            let c = match c {
                Ok(c) => c,
                Err(e) => {
                    s.check(false, || e.to_string());
                    continue;
                }
            };
            let parsed = Certificate::from_str(&c.to_canonical_string());
            s.check(parsed.as_ref().ok() == Some(&c), || "certificate does not survive serialization".into());
            s.check(c.recheck().passed, || format!("{} failed recheck: {:?}", c.kind(), c.recheck().failure));
            let mut bad = c.clone();
            match &mut bad.body {
                CertBody::DefectTower(t) => t.levels[0].multiplier += num_rational::BigRational::from_integer(1.into()),
                CertBody::DegreeLowerBound(b) => b.bound += 1,
                _ => unreachable!(),
            }
            s.check(!bad.recheck().passed, || format!("tampered {} passed recheck", c.kind()));
        }
    }
    s
}

/// `Σ eᵢfᵢ ≤ n`, with the slack reported exactly.
pub fn fundamental_inequality(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("fundamental-inequality");
    for _ in 0..cases {
        let pairs: Vec<(u64, u64)> = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(1..=4), rng.gen_range(1..=4))).collect();
        let total: u64 = pairs.iter().map(|(e, f)| e * f).sum();
        let n = total + rng.gen_range(0..=3);
        match fund_ineq_check(n, &pairs) {
            Ok(r) => s.check(r.pass && r.slack == (n - total) as i64 && r.equality == (n == total), || format!("{r:?}")),
            Err(e) => s.check(false, || e.to_string()),
        }
        if total > 1 {
            s.check(fund_ineq_check(total - 1, &pairs).map(|r| !r.pass).unwrap_or(true), || format!("n = {} accepted {pairs:?}", total - 1));
        }
    }
    s
}

/// Runs every suite with `scale` multiplying the case counts.
pub fn run_all(seed: u64, scale: usize) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        valuation_axioms(&mut rng, 200 * scale),
        oracle_agreement(&mut rng, 50 * scale),
        artin_schreier_residual(&mut rng, 20 * scale),
        certificate_round_trip(&mut rng, 10 * scale),
        fundamental_inequality(&mut rng, 100 * scale),
    ]
}
