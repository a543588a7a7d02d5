//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use valext::certlab::{
    build_extension_step, build_piltant, classification_certificate, degree_bound_certificate, fund_ineq_check, CertBody, CertTower,
    Certificate, ExtensionStep, PiltantVariant,
};
use valext::cli::{self, Format, RunOptions};
use valext::coeff::{smallest_irreducible, FieldDescriptor, FieldElement, Poly};
use valext::hahn::{kummer_root, Bound, HahnSeries, Value};
use valext::homog::{extract_homog_sequence, kras_family, Family, Tower};
use valext::kxval::{
    classify_summary, poly_add, poly_mul, random_poly, BaseField, ClassWitness, Classification, GroupInfo, KElem, KxError, Placement,
    RatFn, RationalFunction, ResidueInfo, ValDescriptor, VagDescriptor,
};
use valext::ordgroup::{GroupElement, SubgroupDescriptor};
use valext::rational::Q;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn g(n: i64, d: i64) -> GroupElement {
    GroupElement::ratio(n, d)
}

fn lex(a: i64, b: i64) -> GroupElement {
    GroupElement::new(vec![q(a, 1), q(b, 1)])
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonzero_poly(base: &BaseField, deg: usize, rng: &mut ChaCha8Rng) -> Vec<KElem> {
    loop {
        let f = random_poly(base, deg, rng);
        if f.iter().any(|c| !base.is_zero(c)) {
            return f;
        }
    }
}

// 1

fn valuation_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let bases = [
        ("3-adic Q", BaseField::p_adic(3).unwrap()),
        ("F_2(t)", BaseField::TAdic { k: FieldDescriptor::prime(2).unwrap() }),
        ("trivial Q", BaseField::Trivial { k: FieldDescriptor::rationals() }),
        ("trivial F_5", BaseField::Trivial { k: FieldDescriptor::prime(5).unwrap() }),
    ];
    let gammas = [g(0, 1), g(1, 1), g(1, 2), g(-2, 3), lex(1, 1), lex(0, -1)];
    let mut total = 0;
    for (name, base) in &bases {
        for i in 0..1000 {
            let gamma = gammas[i % gammas.len()].clone();
            let d = VagDescriptor::new(base.clone(), base.random_elem(&mut rng), gamma, Placement::Small).map_err(|e| e.to_string())?;
            let f = nonzero_poly(base, 3, &mut rng);
            let h = nonzero_poly(base, 3, &mut rng);
            let e = |x: Result<GroupElement, KxError>| x.map_err(|e| format!("{name}: {e}"));
            let (vf, vh) = (e(d.eval(&f))?, e(d.eval(&h))?);
            let fh = poly_mul(base, &f, &h).map_err(|e| e.to_string())?;
            ensure(e(d.eval(&fh))? == &vf + &vh, || format!("{name}: v(fg) != v(f) + v(g) for {}", d.to_json()))?;
            let sum = poly_add(base, &f, &h).map_err(|e| e.to_string())?;
            if !sum.is_empty() {
                let vs = e(d.eval(&sum))?;
                ensure(vs >= vf.clone().min(vh.clone()), || format!("{name}: v(f+g) < min for {}", d.to_json()))?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} pairs over {} bases", bases.len()))
}

// 2

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let families: [(&str, Box<dyn Fn(&mut ChaCha8Rng) -> GroupElement>); 4] = [
        ("0", Box::new(|_| g(0, 1))),
        ("1", Box::new(|_| g(1, 1))),
        ("1/2", Box::new(|_| g(1, 2))),
        ("non-torsion lex", Box::new(|r: &mut ChaCha8Rng| lex(r.gen_range(-2..=2), if r.gen_bool(0.5) { 1 } else { -1 }))),
    ];
    let bases = [BaseField::p_adic(3).unwrap(), BaseField::TAdic { k: FieldDescriptor::prime(2).unwrap() }];
    let mut total = 0;
    for (name, gamma) in &families {
        for i in 0..200 {
            let base = &bases[i % 2];
            let placement = if i % 4 < 2 { Placement::Small } else { Placement::Large };
            let d = VagDescriptor::new(base.clone(), base.random_elem(&mut rng), gamma(&mut rng), placement).map_err(|e| e.to_string())?;
            let f = RationalFunction { num: nonzero_poly(base, 3, &mut rng), den: nonzero_poly(base, 3, &mut rng) };
            let formula = d.eval_ratfunc(&f).map_err(|e| format!("gamma {name}: {e}"))?;
            let oracle = d.substitution_oracle(&f, 12).map_err(|e| format!("gamma {name}: oracle: {e}"))?;
            ensure(formula == oracle, || format!("gamma {name}: formula {formula} vs oracle {oracle} for {}", d.to_json()))?;
            total += 1;
        }
    }
    Ok(format!("{total} rational functions, 4 families"))
}

// 3

fn piltant_certificate() -> Outcome {
    let e = [1u64, 2, 4, 7, 11];
    for p in [2u64, 3] {
        let cert = build_piltant(p, &e, 4, &PiltantVariant::Classic).map_err(|x| x.to_string())?;
        let CertBody::DefectTower(body) = &cert.body else { return Err("wrong certificate kind".into()) };
        ensure(body.levels.len() == 4, || "expected 4 levels".into())?;
        for (idx, level) in body.levels.iter().enumerate() {
            let j = idx + 1;
            let want = -valext::rational::q_pow(p, e[j - 1] as i64 - e[j] as i64);
            ensure(level.value == GroupElement::rat(want.clone()), || format!("p={p}: value(L_{j}) = {} != {want}", level.value))?;
            ensure(&level.multiplier * &want + &level.offset == q(1, p.pow(j as u32) as i64), || format!("p={p}: witness at j={j}"))?;
        }
        // η_0 = 1/x, η_i a root of X^p − X − η_{i−1}.
        let fp = FieldDescriptor::prime(p).unwrap();
        let mut eta = HahnSeries::monomial(&fp, g(-1, 1), fp.one()).unwrap();
        for i in 1..=5 {
            eta = eta.artin_schreier_root(8).map_err(|x| x.to_string())?;
            let want = g(-1, p.pow(i) as i64);
            ensure(eta.value() == Value::At(want.clone()), || format!("p={p}: v(eta_{i}) = {}", eta.value()))?;
            ensure(body.eta[i as usize].value == want, || format!("p={p}: certificate eta_{i}"))?;
        }
        ensure(cert.recheck().passed, || format!("p={p}: recheck failed"))?;
    }
    Ok("p = 2, 3; levels 1..4 and eta_1..eta_5".into())
}

// 4

fn artin_schreier_residual() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fields = [FieldDescriptor::prime(2).unwrap(), smallest_irreducible(2, 2).unwrap(), smallest_irreducible(3, 2).unwrap()];
    let mut total = 0;
    for k in &fields {
        let p = k.characteristic();
        let nonzero: Vec<FieldElement> = k.elements().unwrap().into_iter().filter(|x| !k.is_zero(x)).collect();
        for _ in 0..50 {
            let mut terms: Vec<(GroupElement, FieldElement)> = (0..rng.gen_range(1..=4))
                .map(|_| (g(rng.gen_range(-12..=3), rng.gen_range(1..=6)), nonzero[rng.gen_range(0..nonzero.len())].clone()))
                .collect();
            terms.push((g(-rng.gen_range(1..=9), rng.gen_range(1..=4)), nonzero[rng.gen_range(0..nonzero.len())].clone()));
            terms.sort_by(|a, b| a.0.cmp(&b.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            let u = HahnSeries::new(k, 1, terms, Bound::Infinite).map_err(|e| e.to_string())?;
            let vu = u.value().exact().cloned().ok_or("zero u")?;
            let depth = rng.gen_range(1..=5);
            let a = u.artin_schreier_root(depth).map_err(|e| e.to_string())?;
            let residual = a.frobenius_pow(1).and_then(|ap| ap.sub(&a)).and_then(|r| r.sub(&u)).map_err(|e| e.to_string())?;
            let bound = vu.scale(&(Q::one() / Q::from_integer(BigInt::from(p).pow(depth as u32))));
            let ok = matches!(residual.value(), Value::Above(Bound::Finite(ref b)) if *b >= bound);
            ensure(ok, || format!("residual {} below {bound} for {}", residual.value(), u.to_json()))?;
            total += 1;
        }
    }
    Ok(format!("{total} random u over F_2, F_4, F_9"))
}

// 5

fn hermite_index_oracle(gens: &[Q]) -> Q {
    // ⟨gens⟩ ⊂ ℚ is (g/l)ℤ with l the lcm of denominators and g the gcd
    // of the scaled numerators.
    let l = gens.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&(x * Q::from_integer(l.clone())).to_integer()));
    Q::new(num, l)
}

fn homogeneous_extraction() -> Outcome {
    let f2 = FieldDescriptor::prime(2).unwrap();
    let exps: Vec<GroupElement> = (1..=4).map(|i| &g(1, 1) - &g(1, 3i64.pow(i))).collect();
    let z = HahnSeries::new(&f2, 1, exps.iter().map(|x| (x.clone(), f2.one())).collect::<Vec<_>>(), Bound::Infinite).unwrap();
    let tower = Tower::new(&f2, SubgroupDescriptor::integers(), 1).map_err(|e| e.to_string())?;
    let rep = extract_homog_sequence(&z, &tower, 4).map_err(|e| e.to_string())?;
    let mut gens: Vec<Q> = vec![Q::one()];
    gens.extend(exps.iter().map(|x| x.as_rat().unwrap().clone()));
    let oracle = hermite_index_oracle(&gens);
    ensure(oracle == q(1, 81), || format!("oracle gives {oracle}"))?;
    ensure(rep.value_group.generators == vec![GroupElement::rat(oracle)], || format!("value group {:?}", rep.value_group.generators))?;
    ensure(rep.hs_verified && rep.pcs_verified, || "sequence or pcs chain not verified".into())?;
    ensure(rep.degree_lower_bound == 81, || format!("degree bound {}", rep.degree_lower_bound))?;

    // Residue-tower variant over F_256 with a primitive element w.
    let f256 = smallest_irreducible(2, 8).unwrap();
    let w = f256.elements().unwrap().into_iter().find(|x| !f256.is_zero(x) && f256.degree_over(x, 1) == 8 && order(&f256, x) == 255).ok_or("no primitive element")?;
    let cs = [f256.pow(&w, 85), f256.pow(&w, 17), w.clone()];
    let z = HahnSeries::new(&f256, 1, cs.iter().enumerate().map(|(i, c)| (g(i as i64 + 1, 1), c.clone())).collect::<Vec<_>>(), Bound::Infinite).unwrap();
    let tower = Tower::new(&f256, SubgroupDescriptor::integers(), 1).map_err(|e| e.to_string())?;
    let rep = extract_homog_sequence(&z, &tower, 3).map_err(|e| e.to_string())?;
    let min_degrees: Vec<usize> = cs.iter().map(|c| f256.min_poly_over(c, 1).unwrap().degree().unwrap()).collect();
    ensure(min_degrees == [2, 4, 8], || format!("min_poly degrees {min_degrees:?}"))?;
    let mut expected = vec![1u32];
    for d in &min_degrees {
        expected.push((*expected.last().unwrap()).lcm(&(*d as u32)));
    }
    ensure(rep.residue_tower == expected, || format!("residue tower {:?}, expected {expected:?}", rep.residue_tower))?;
    ensure(rep.residue_tower == [1, 2, 4, 8], || "not F_2 ⊂ F_4 ⊂ F_16 ⊂ F_256".into())?;
    ensure(rep.hs_verified && rep.pcs_verified, || "residue variant not verified".into())?;
    Ok("value group (1/81)Z; residue tower F_2 ⊂ F_4 ⊂ F_16 ⊂ F_256".into())
}

fn order(k: &FieldDescriptor, x: &FieldElement) -> u64 {
    let mut n = 1;
    let mut y = x.clone();
    while !k.is_one(&y) {
        y = k.mul(&y, x);
        n += 1;
    }
    n
}

// 6

fn degree_lower_bound() -> Outcome {
    let n = [3u64, 5, 7, 11];
    let mut prev = 1u64;
    for depth in 1..=4 {
        let cert = degree_bound_certificate(2, &n[..depth], depth).map_err(|e| e.to_string())?;
        let CertBody::DegreeLowerBound(b) = &cert.body else { return Err("wrong kind".into()) };
        let oracle = n[..depth].iter().fold(1u64, |acc, x| acc.lcm(x));
        ensure(b.bound == oracle, || format!("depth {depth}: bound {} vs lcm {oracle}", b.bound))?;
        ensure(b.bound >= prev && b.bound % prev == 0, || format!("not monotone at depth {depth}"))?;
        ensure(cert.recheck().passed, || format!("depth {depth}: recheck failed"))?;
        prev = b.bound;
    }
    ensure(prev == 1155, || format!("final bound {prev}"))?;
    let err = degree_bound_certificate(2, &[3, 4, 5, 7], 4).err().ok_or("n = (3,4,...) accepted")?;
    ensure(err.to_string().contains("n_i coprime to p violated at i=2"), || format!("message: {err}"))?;
    Ok("bound 1155, monotone, (3,4,...) rejected at i=2".into())
}

// 7

fn kras_brute_force() -> Outcome {
    let mut cases = 0;
    let mut skipped = Vec::new();
    for e in 2u64..=6 {
        for p in [2u64, 3, 5, 7] {
            if e % p == 0 {
                continue;
            }
            let fp = FieldDescriptor::prime(p).unwrap();
            for a in 1..p {
                // Smallest F_{p^k} holding all e-th roots of a.
                let field = |k: u32| if k == 1 { fp.clone() } else { smallest_irreducible(p, k).unwrap() };
                let k = (1..=12u32).find(|&k| {
                    let qk = p.pow(k) - 1;
                    qk % e == 0 && {
                        let big = field(k);
                        big.pow(&big.from_u64(a), qk / e) == big.one()
                    }
                });
                let Some(k) = k.filter(|&k| p.pow(k) <= 200_000) else {
                    skipped.push(format!("e={e},p={p},a={a}"));
                    continue;
                };
                let big = field(k);
                let a_big = big.from_u64(a);
                let roots: Vec<FieldElement> = big.elements().unwrap().into_iter().filter(|b| big.pow(b, e) == a_big).collect();
                ensure(roots.len() == e as usize, || format!("e={e}, p={p}, a={a}: {} roots", roots.len()))?;
                for m in -3i64..=3 {
                    let c_series = HahnSeries::monomial(&big, g(m, 1), a_big.clone()).unwrap();
                    let conj: Vec<HahnSeries> = roots.iter().map(|b| HahnSeries::monomial(&big, g(m, e as i64), b.clone()).unwrap()).collect();
                    for r in &conj {
                        ensure(r.pow(e).unwrap() == c_series, || "conjugate is not a root".into())?;
                    }
                    let mut best: Option<GroupElement> = None;
                    for i in 0..conj.len() {
                        for j in 0..conj.len() {
                            if i != j {
                                let v = conj[i].sub(&conj[j]).unwrap().value().exact().cloned().ok_or("equal conjugates")?;
                                best = Some(best.map_or(v.clone(), |b| b.max(v)));
                            }
                        }
                    }
                    let c = KElem::Fun(RatFn::new(&fp, Poly::new(&fp, monomial_coeffs(&fp, m.max(0) as usize, a)), Poly::new(&fp, monomial_coeffs(&fp, (-m).max(0) as usize, 1))).unwrap());
                    let base = BaseField::TAdic { k: fp.clone() };
                    let closed = kras_family(&Family::Kummer { c, e }, &base).map_err(|x| x.to_string())?;
                    ensure(Some(&closed) == best.as_ref(), || format!("e={e}, p={p}, a={a}, m={m}: closed {closed} vs brute {best:?}"))?;
                    // The closed form also matches the Kummer root's value.
                    let root = kummer_root(&big, &g(m, 1), &a_big, e).map_err(|x| x.to_string())?;
                    ensure(root.value() == Value::At(closed.clone()), || "kummer_root value".into())?;
                    cases += 1;
                }
            }
        }
    }
    let note = if skipped.is_empty() { String::new() } else { format!("; splitting field above 200000 elements for {}", skipped.join(" ")) };
    Ok(format!("{cases} (e, p, a, m) cases{note}"))
}

fn monomial_coeffs(k: &FieldDescriptor, deg: usize, c: u64) -> Vec<FieldElement> {
    let mut v = vec![k.zero(); deg + 1];
    v[deg] = k.from_u64(c);
    v
}

// 8

fn trichotomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut counts = [0usize; 3];
    // The summary map is total on the three admissible combinations and
    // rejects the fourth.
    let combos = [
        (GroupInfo::Torsion, ResidueInfo::Algebraic),
        (GroupInfo::Torsion, ResidueInfo::Transcendental),
        (GroupInfo::NonTorsion, ResidueInfo::Algebraic),
        (GroupInfo::NonTorsion, ResidueInfo::Transcendental),
    ];
    let labels: Vec<Option<Classification>> = combos.iter().map(|(a, b)| classify_summary(*a, *b).ok()).collect();
    ensure(labels.iter().filter(|l| l.is_some()).count() == 3 && labels[3].is_none(), || format!("summary map {labels:?}"))?;

    for i in 0..100 {
        let (desc, expected) = if i % 5 == 4 {
            // pseudo-Cauchy: partial sums of Σ t^{1 − q^{−j}}
            let p = [2u64, 3][rng.gen_range(0..2)];
            let qq = if p == 2 { [3i64, 5][rng.gen_range(0..2)] } else { [2i64, 5][rng.gen_range(0..2)] };
            let k = FieldDescriptor::prime(p).unwrap();
            let len = rng.gen_range(3..=5);
            let elems: Vec<HahnSeries> = (1..=len)
                .map(|n| {
                    let terms: Vec<_> = (1..=n).map(|j| (&g(1, 1) - &g(1, qq.pow(j)), k.one())).collect();
                    HahnSeries::new(&k, 1, terms, Bound::Infinite).unwrap()
                })
                .collect();
            (ValDescriptor::PseudoCauchy { base: BaseField::series(k, SubgroupDescriptor::integers()), elems }, Classification::ValuationAlgebraic)
        } else {
            let base = match rng.gen_range(0..3) {
                0 => BaseField::p_adic(3).unwrap(),
                1 => BaseField::TAdic { k: FieldDescriptor::prime(2).unwrap() },
                _ => BaseField::Trivial { k: FieldDescriptor::rationals() },
            };
            let gamma = match rng.gen_range(0..3) {
                0 => g(rng.gen_range(-6..=6), rng.gen_range(1..=6)),
                1 => lex(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
                _ => lex(rng.gen_range(-3..=3), 0),
            };
            // vK is ℤ in the first coordinate, or 0 for the trivial base.
            let torsion = match base {
                BaseField::Trivial { .. } => gamma.is_zero(),
                _ => gamma.rank() == 1 || gamma.coords()[1].is_zero(),
            };
            let d = VagDescriptor::new(base.clone(), base.random_elem(&mut rng), gamma, Placement::Small).map_err(|e| e.to_string())?;
            let expected = if torsion { Classification::ResidueTranscendental } else { Classification::ValueTranscendental };
            (ValDescriptor::Vag(d), expected)
        };
        let (class, witness) = desc.classify().map_err(|e| e.to_string())?;
        ensure(class == expected, || format!("descriptor {i}: {class:?}, expected {expected:?}"))?;
        // Exactly one label, and the witness type matches it.
        let consistent = matches!(
            (&class, &witness),
            (Classification::ResidueTranscendental, ClassWitness::Torsion(_))
                | (Classification::ValueTranscendental, ClassWitness::NonTorsion(_))
                | (Classification::ValuationAlgebraic, ClassWitness::PseudoCauchy { .. })
        );
        ensure(consistent, || format!("descriptor {i}: witness {witness:?} for {class:?}"))?;
        if let ValDescriptor::Vag(d) = &desc {
            let cert = classification_certificate(d).map_err(|e| e.to_string())?;
            ensure(cert.recheck().passed, || format!("descriptor {i}: certificate fails recheck"))?;
        }
        counts[match class {
            Classification::ValuationAlgebraic => 0,
            Classification::ValueTranscendental => 1,
            Classification::ResidueTranscendental => 2,
        }] += 1;
    }
    ensure(counts.iter().all(|&c| c > 0), || format!("a class never occurred: {counts:?}"))?;
    Ok(format!("100 descriptors: {} algebraic, {} value-transc., {} residue-transc.", counts[0], counts[1], counts[2]))
}

// 9

fn random_tower(rng: &mut ChaCha8Rng) -> Result<CertTower, String> {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    let k = FieldDescriptor::prime(p).unwrap();
    let mut tower = CertTower::new(&k, SubgroupDescriptor::integers());
    for _ in 0..rng.gen_range(1..=3) {
        let gen = tower.group.rank_one_generator().ok_or("group not cyclic")?;
        let step = match rng.gen_range(0..3) {
            0 => {
                let l = [2i64, 3, 5, 7].into_iter().filter(|&l| l as u64 != p).nth(rng.gen_range(0..2)).unwrap();
                ExtensionStep::Kummer { alpha: gen.div_int(l) }
            }
            1 => {
                let f = &tower.field;
                if f.order().unwrap_or(u64::MAX) > 64 {
                    continue;
                }
                let elems = f.elements().unwrap();
                let poly = elems
                    .iter()
                    .flat_map(|c0| elems.iter().map(move |c1| (c0.clone(), c1.clone())))
                    .map(|(c0, c1)| vec![c0, c1, f.one()])
                    .find(|c| Poly::new(f, c.clone()).is_irreducible(f).unwrap_or(false))
                    .ok_or("no irreducible quadratic")?;
                ExtensionStep::Residue { poly }
            }
            _ => {
                let c = HahnSeries::monomial(&tower.field, GroupElement::zero(1).checked_sub(&gen).unwrap(), tower.field.one()).unwrap();
                ExtensionStep::ArtinSchreier { c, depth: 4 }
            }
        };
        tower = build_extension_step(&step, None, &tower).map_err(|e| e.to_string())?;
    }
    Ok(tower)
}

fn fundamental_inequality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut towers = 0;
    for _ in 0..40 {
        let tower = random_tower(&mut rng)?;
        let t = tower.totals().map_err(|e| e.to_string())?;
        let (mut e, mut f, mut n) = (1u64, 1u64, 1u64);
        for s in &tower.steps {
            ensure(fund_ineq_check(s.degree, &[(s.e, s.f)]).map(|r| r.pass).unwrap_or(false), || format!("step {s:?}"))?;
            e *= s.e;
            f *= s.f;
            n *= s.degree;
        }
        ensure((t.e, t.f, t.n) == (e, f, n), || format!("totals {t:?} vs products ({e}, {f}, {n})"))?;
        let r = fund_ineq_check(t.n, &[(t.e, t.f)]).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("sum e_i f_i > n for {t:?}"))?;
        let cert = tower.certificate().map_err(|e| e.to_string())?;
        ensure(cert.recheck().passed, || format!("tower certificate fails: {:?}", cert.recheck().failure))?;
        towers += 1;
    }
    // Defect towers: e·f·d equals the degree at every level.
    for p in [2u64, 3] {
        let cert = build_piltant(p, &[1, 2, 4, 7, 11], 4, &PiltantVariant::Classic).map_err(|e| e.to_string())?;
        let CertBody::DefectTower(b) = &cert.body else { unreachable!() };
        for s in b.defect.over_kxy.iter().chain(&b.defect.over_kx) {
            ensure(s.e * s.f * s.defect == s.degree, || format!("defect step {s:?}"))?;
            ensure(fund_ineq_check(s.degree, &[(s.e, s.f)]).map(|r| r.pass).unwrap_or(false), || format!("defect step {s:?}"))?;
        }
    }
    Ok(format!("{towers} random towers and 2 defect towers"))
}

// 10

fn tamper(v: &mut Json) {
    let body = &mut v["body"];
    match body["kind"].as_str().unwrap() {
        "defect-tower" => body["schedule"][2] = json!(body["schedule"][2].as_u64().unwrap() + 1),
        "degree-lower-bound" => body["bound"] = json!(body["bound"].as_u64().unwrap() + 1),
        "classification" => match body["torsion_order"].as_u64() {
            Some(e) => body["torsion_order"] = json!(2 * e),
            None => body["classification"] = json!("residue-transcendental"),
        },
        "fundamental-inequality" => body["steps"][0]["e"] = json!(body["steps"][0]["e"].as_u64().unwrap() + 1),
        other => panic!("unknown kind {other}"),
    }
}

fn certificate_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let f3 = json!({"char": 3});
    let jobs = json!({"jobs": [
        {"task": "piltant", "p": 2, "e": [1, 2, 4, 7, 11], "depth": 4},
        {"task": "piltant", "p": 3, "e": [1, 2, 4, 7, 11], "n": [1, 2, 3, 4, 5], "depth": 3},
        {"task": "degree-bound", "p": 2, "n": [3, 5, 7, 11], "depth": 4},
        {"task": "classify", "vag": {"kind": "vag", "base": {"kind": "p-adic", "p": 3}, "center": "1/2", "gamma": "1/6"}},
        {"task": "classify", "vag": {"kind": "vag", "base": {"kind": "t-adic", "field": {"char": 2}}, "center": {"num": ["1"]}, "gamma": ["1", "1"]}},
        {"task": "extension-step", "field": f3, "steps": [
            {"kind": "kummer", "alpha": "1/2"},
            {"kind": "residue", "poly": [1, 0, 1]},
            {"kind": "artin-schreier", "c": {"field": {"char": 3, "modulus": [1, 0, 1]}, "rank": 1, "terms": [["-1/2", 1]]}, "depth": 4}
        ]}
    ]});
    let job_path = dir.path().join("jobs.json");
    std::fs::write(&job_path, jobs.to_string()).map_err(|e| e.to_string())?;
    let (code, out) = cli::run_file(&job_path, &RunOptions::default(), Format::Json, None);
    ensure(code == 0, || format!("run exit {code}: {out}"))?;
    // Determinism: a second run writes byte-identical reports.
    let first: Vec<String> = (0..6).map(|i| std::fs::read_to_string(cli::default_report_path(&job_path, i, 6)).unwrap()).collect();
    let (code2, out2) = cli::run_file(&job_path, &RunOptions::default(), Format::Json, None);
    ensure(code2 == 0 && out2 == out, || "second run differs".into())?;
    for (i, text) in first.iter().enumerate() {
        ensure(std::fs::read_to_string(cli::default_report_path(&job_path, i, 6)).unwrap() == *text, || format!("report {i} not deterministic"))?;
    }
    let mut kinds = Vec::new();
    for i in 0..6 {
        let path = cli::default_report_path(&job_path, i, 6);
        let o = cli::recheck_file(&path).map_err(|e| e.to_string())?;
        ensure(o.passed, || format!("report {i} fails recheck: {}", o.text))?;
        let v: Json = serde_json::from_str(&first[i]).unwrap();
        kinds.push(v["body"]["kind"].as_str().unwrap().to_string());

        let mut bad = v.clone();
        tamper(&mut bad);
        let c = Certificate::from_json(&bad).map_err(|e| e.to_string())?;
        let r = c.recheck();
        ensure(!r.passed, || format!("tampered {} passed", kinds[i]))?;
        if kinds[i] == "defect-tower" {
            ensure(r.failure.as_ref().and_then(|f| f.level).is_some(), || "tampered exponent not tied to a level".into())?;
        }
        let mut inflated = v.clone();
        inflated["depth"] = json!(v["depth"].as_u64().unwrap() + 1);
        ensure(!Certificate::from_json(&inflated).unwrap().recheck().passed, || format!("inflated {} passed", kinds[i]))?;
    }
    let mut distinct = kinds.clone();
    distinct.sort();
    distinct.dedup();
    ensure(distinct.len() == 4, || format!("kinds covered: {distinct:?}"))?;
    Ok(format!("{} certificates of kinds {}", kinds.len(), distinct.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("valuation axioms", valuation_axioms, Some(Duration::from_secs(30))),
        ("oracle equivalence", oracle_equivalence, Some(Duration::from_secs(30))),
        ("piltant certificate", piltant_certificate, Some(Duration::from_secs(10))),
        ("artin-schreier residual", artin_schreier_residual, None),
        ("homogeneous extraction", homogeneous_extraction, Some(Duration::from_secs(5))),
        ("degree lower bound", degree_lower_bound, None),
        ("kras brute force", kras_brute_force, None),
        ("trichotomy", trichotomy, None),
        ("fundamental inequality", fundamental_inequality, None),
        ("certificate round trip", certificate_round_trip, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {:.2?}, limit {:?}", elapsed, l)),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => {
                failed += 1;
                ("FAIL", e.clone())
            }
        };
        println!("[{tag}] {:>2} {name:<24} {:>8.2?}  {detail}", i + 1, elapsed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
