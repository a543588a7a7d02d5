use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valext::certlab::{build_extension_step, build_piltant, degree_bound_certificate, CertBody, CertTower, ExtensionStep, PiltantVariant};
use valext::coeff::{FieldDescriptor, Poly};
use valext::hahn::HahnSeries;
use valext::ordgroup::{Index, SubgroupDescriptor};
use valext::rational::{q_pow, Q};

fn schedule(rng: &mut ChaCha8Rng) -> Vec<u64> {
    let len = rng.gen_range(2..=5);
    let mut e = vec![rng.gen_range(1..=3)];
    for i in 1..len {
        let prev = e[i - 1];
        e.push(prev + i as u64 + rng.gen_range(0..=2));
    }
    e
}

fn random_tower(rng: &mut ChaCha8Rng, p: u64) -> CertTower {
    let k = FieldDescriptor::prime(p).unwrap();
    let mut tower = CertTower::new(&k, SubgroupDescriptor::integers());
    for _ in 0..rng.gen_range(1..=3) {
        let gen = tower.group.rank_one_generator().unwrap();
        let step = match rng.gen_range(0..3) {
            0 => {
                let l = [2i64, 3, 5, 7].into_iter().filter(|&l| l as u64 != p).nth(rng.gen_range(0..2)).unwrap();
                ExtensionStep::Kummer { alpha: gen.div_int(l) }
            }
            1 if tower.field.order().unwrap() <= 64 => {
                let f = tower.field.clone();
                let elems = f.elements().unwrap();
                let poly = elems
                    .iter()
                    .flat_map(|c0| elems.iter().map(move |c1| (c0.clone(), c1.clone())))
                    .map(|(c0, c1)| vec![c0, c1, f.one()])
                    .find(|c| Poly::new(&f, c.clone()).is_irreducible(&f).unwrap())
                    .unwrap();
                ExtensionStep::Residue { poly }
            }
            _ => {
                let c = HahnSeries::monomial(&tower.field, -&gen, tower.field.one()).unwrap();
                ExtensionStep::ArtinSchreier { c, depth: 4 }
            }
        };
        tower = build_extension_step(&step, None, &tower).unwrap();
    }
    tower
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn residual_exponents_are_the_identity_tail(seed: u64, p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = schedule(&mut rng);
        let depth = rng.gen_range(1..e.len());
        let cert = build_piltant(p, &e, depth, &PiltantVariant::Classic).unwrap();
        let CertBody::DefectTower(body) = &cert.body else {
            return Err(TestCaseError::fail("wrong certificate kind"));
        };
        prop_assert_eq!(body.levels.len(), depth);
        for level in &body.levels {
            let j = level.j;
            let series = HahnSeries::from_json(&level.residual).unwrap();
            let got: BTreeSet<Q> = series.terms().iter().map(|(g, _)| g.as_rat().unwrap().clone()).collect();
            let want: BTreeSet<Q> = (j + 1..=e.len()).map(|i| -q_pow(p, e[j - 1] as i64 - e[i - 1] as i64)).collect();
            prop_assert_eq!(&got, &want, "level {}", j);
            prop_assert_eq!(level.value.as_rat().unwrap(), want.iter().next().unwrap());
            let target = q_pow(p, -(j as i64));
            prop_assert_eq!(&level.multiplier * level.value.as_rat().unwrap() + &level.offset, target);
            prop_assert!(level.multiplier.is_integer() && level.offset.is_integer());
        }
        prop_assert!(cert.recheck().passed);
    }

    #[test]
    fn ramification_and_inertia_multiply(seed: u64, p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tower = random_tower(&mut rng, p);
        let totals = tower.totals().unwrap();
        let (mut e, mut f, mut n) = (1u64, 1u64, 1u64);
        for s in &tower.steps {
            prop_assert_eq!(s.group_after.index(&s.group_before).unwrap(), Index::Finite(s.e));
            prop_assert!(s.e * s.f <= s.degree);
            e *= s.e;
            f *= s.f;
            n *= s.degree;
        }
        prop_assert_eq!((totals.e, totals.f, totals.n), (e, f, n));
        prop_assert_eq!(tower.field.order().unwrap(), p.pow(f as u32));
        prop_assert_eq!(tower.group.index(&SubgroupDescriptor::integers()).unwrap(), Index::Finite(e));
        prop_assert!(tower.certificate().unwrap().recheck().passed);
    }

    #[test]
    fn degree_bound_is_monotone(seed: u64, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut n = Vec::new();
        let mut next = 2u64;
        while n.len() < 5 {
            next += rng.gen_range(0..=4);
            if next % p != 0 {
                n.push(next);
            }
            next += 1;
        }
        let mut prev = 1u64;
        for depth in 1..=n.len() {
            let cert = degree_bound_certificate(p, &n, depth).unwrap();
            let CertBody::DegreeLowerBound(b) = &cert.body else {
                return Err(TestCaseError::fail("wrong certificate kind"));
            };
            let lcm = n[..depth].iter().fold(1u64, |acc, x| acc.lcm(x));
            prop_assert_eq!(b.bound, lcm);
            prop_assert_eq!(b.bound % prev, 0);
            prop_assert!(cert.recheck().passed);
            prev = b.bound;
        }
    }
}
