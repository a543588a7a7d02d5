//! Classification certificates for `v_{a,γ}`: the torsion order of γ over
//! vK with a membership witness, or a functional separating γ from the
//! rational span of vK.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CertBody, CertError, Certificate, Failure};
use crate::kxval::{ClassWitness, Classification, ValDescriptor, VagDescriptor};
use crate::ordgroup::RankProof;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationCert {
    pub descriptor: serde_json::Value,
    pub classification: String,
    pub torsion_order: Option<u64>,
    /// Integer coefficients of `e·γ` over the generators of vK.
    pub membership: Option<Vec<String>>,
    pub rank_proof: Option<RankProof>,
}

pub fn classification_certificate(d: &VagDescriptor) -> Result<Certificate, CertError> {
    let (class, witness) = ValDescriptor::Vag(d.clone()).classify()?;
    let group = d.base_group();
    let (torsion_order, membership, rank_proof) = match witness {
        ClassWitness::Torsion(e) => {
            let m = group.member(&d.gamma.mul_int(e as i64))?;
            let w = m.witness.ok_or_else(|| CertError::Verification { level: 1, what: "e*gamma has no membership witness".into() })?;
            (Some(e), Some(w.iter().map(|x| x.to_string()).collect()), None)
        }
        ClassWitness::NonTorsion(proof) => (None, None, Some(proof)),
        ClassWitness::PseudoCauchy { .. } => unreachable!("descriptor is v_(a,gamma)"),
    };
    let body = ClassificationCert {
        descriptor: d.to_json(),
        classification: class.label().to_string(),
        torsion_order,
        membership,
        rank_proof,
    };
    Ok(Certificate::new(1, CertBody::Classification(body)))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ClassificationCert {
    pub(crate) fn recheck(&self) -> Result<(), Failure> {
        let d = VagDescriptor::from_json(&self.descriptor).map_err(|e| Failure::global(format!("descriptor: {e}")))?;
        let group = d.base_group();
        match (&self.torsion_order, &self.membership, &self.rank_proof) {
            (Some(e), Some(w), None) => {
                let w: Vec<BigInt> = w
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::global("membership witness is not a list of integers"))?;
                if *e == 0 || !group.verify_witness(&d.gamma.mul_int(*e as i64), &w) {
                    return Err(Failure::global("membership witness does not give e*gamma"));
                }
                // Least order: (e/q)γ ∉ vK for every prime q | e.
                for q in prime_factors(*e) {
                    if group.contains(&d.gamma.mul_int((e / q) as i64)) != Ok(false) {
                        return Err(Failure::global(format!("order is not minimal: (e/{q})*gamma lies in vK")));
                    }
                }
                if self.classification != Classification::ResidueTranscendental.label() {
                    return Err(Failure::global("torsion gamma must give a residue-transcendental valuation"));
                }
            }
            (None, None, Some(proof)) => {
                if !proof.verify(&group.generators, &d.gamma) {
                    return Err(Failure::global("rank proof does not separate gamma from vK"));
                }
                if self.classification != Classification::ValueTranscendental.label() {
                    return Err(Failure::global("non-torsion gamma must give a value-transcendental valuation"));
                }
            }
            _ => return Err(Failure::global("exactly one of torsion witness and rank proof is required")),
        }
        Ok(())
    }
}
