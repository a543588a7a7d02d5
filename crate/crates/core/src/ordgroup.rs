//! Value groups: finitely generated subgroups of ℚⁿ under the lexicographic
//! order.
//!
//! Membership, torsion orders and indices are decided exactly by Hermite
//! reduction of the (scaled) generator matrix over ℤ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{ext_gcd, fmt_q, lcm_all, parse_q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("torsion order exceeds search bound {bound}; no decision")]
    BoundExhausted { bound: u64 },
    #[error("generator {index} of the inner group is not a member of the outer group")]
    NotSubgroup { index: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("empty group element")]
    Empty,
}

/// An element of ℚⁿ, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<Q>,
}

impl GroupElement {
    pub fn new(coords: Vec<Q>) -> Self {
        GroupElement { coords }
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement { coords: vec![Q::zero(); rank] }
    }

    /// Rank-one element.
    pub fn rat(x: Q) -> Self {
        GroupElement { coords: vec![x] }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rat(crate::rational::q(n, d))
    }

    pub fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
    }

    pub fn scale(&self, k: &Q) -> Self {
        GroupElement { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&Q::from_integer(BigInt::from(k)))
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.scale(&Q::new(BigInt::one(), BigInt::from(k)))
    }

    /// Checked lexicographic comparison.
    pub fn compare(&self, other: &Self) -> Result<Ordering, GroupError> {
        self.same_rank(other)?;
        Ok(self.cmp(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_rank(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_rank(other)?;
        Ok(self - other)
    }

    fn same_rank(&self, other: &Self) -> Result<(), GroupError> {
        if self.rank() != other.rank() {
            return Err(GroupError::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(())
    }

    /// The single coordinate of a rank-one element.
    pub fn as_rat(&self) -> Option<&Q> {
        match self.coords.as_slice() {
            [x] => Some(x),
            _ => None,
        }
    }

    /// Pads with zeros on the right (`leading = true`) or the left.
    pub fn pad(&self, rank: usize, leading: bool) -> Self {
        let extra = rank.saturating_sub(self.rank());
        let zeros = std::iter::repeat_n(Q::zero(), extra);
        let coords = if leading {
            self.coords.iter().cloned().chain(zeros).collect()
        } else {
            zeros.chain(self.coords.iter().cloned()).collect()
        };
        GroupElement { coords }
    }

    fn dot(&self, other: &[Q]) -> Q {
        self.coords.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rat() {
            return write!(f, "{}", fmt_q(x));
        }
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::q_string_vec::serialize(&self.coords, s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    /// Accepts `["a/b", ...]` or, for rank one, a bare `"a/b"`.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            One(String),
            Many(Vec<String>),
        }
        let coords = match Repr::deserialize(d)? {
            Repr::One(s) => vec![parse_q(&s).map_err(serde::de::Error::custom)?],
            Repr::Many(v) => v
                .iter()
                .map(|s| parse_q(s).map_err(serde::de::Error::custom))
                .collect::<Result<_, _>>()?,
        };
        if coords.is_empty() {
            return Err(serde::de::Error::custom(GroupError::Empty));
        }
        Ok(GroupElement { coords })
    }
}

/// Result of a torsion-order query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Torsion {
    Order(u64),
    /// Outside the rational span: the functional vanishes on every
    /// generator but not on the element.
    NonTorsion(RankProof),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProof {
    #[serde(with = "crate::rational::q_string_vec")]
    pub functional: Vec<Q>,
}

impl RankProof {
    /// Re-checks the proof against generators and the element.
    pub fn verify(&self, generators: &[GroupElement], g: &GroupElement) -> bool {
        generators.iter().all(|h| h.rank() == self.functional.len() && h.dot(&self.functional).is_zero())
            && g.rank() == self.functional.len()
            && !g.dot(&self.functional).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(u64),
    Infinite,
}

/// Membership outcome with integer witness coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<Vec<BigInt>>,
}

/// A finitely generated subgroup of ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub ambient_rank: usize,
    pub generators: Vec<GroupElement>,
}

/// Hermite form of `scale * generators`, with the unimodular transform.
struct Hermite {
    scale: BigInt,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<BigInt>>,
}

impl Hermite {
    fn build(gens: &[GroupElement], n: usize, scale: &BigInt) -> Hermite {
        let k = gens.len();
        let mut a: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|c| {
                        let s = c * Q::from_integer(scale.clone());
                        debug_assert!(s.is_integer());
                        s.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut u: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            if r == k {
                break;
            }
            for i in r + 1..k {
                if a[i][col].is_zero() {
                    continue;
                }
                let (g, s, t) = ext_gcd(&a[r][col], &a[i][col]);
                let ar = &a[r][col] / &g;
                let ai = &a[i][col] / &g;
                combine(&mut a, r, i, &s, &t, &ar, &ai);
                combine(&mut u, r, i, &s, &t, &ar, &ai);
            }
            if a[r][col].is_zero() {
                continue;
            }
            if a[r][col].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -&*x);
                u[r].iter_mut().for_each(|x| *x = -&*x);
            }
            for j in 0..r {
                let q = a[j][col].div_floor(&a[r][col]);
                if !q.is_zero() {
                    sub_row(&mut a, j, r, &q);
                    sub_row(&mut u, j, r, &q);
                }
            }
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        u.truncate(r);
        Hermite { scale: scale.clone(), rows: a, pivots, transform: u }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rational coordinates of `g` in the Hermite basis plus the residual.
    fn solve(&self, g: &GroupElement) -> (Vec<Q>, Vec<Q>) {
        let s = Q::from_integer(self.scale.clone());
        let mut b: Vec<Q> = g.coords().iter().map(|c| c * &s).collect();
        let mut y = Vec::with_capacity(self.rank());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let coef = &b[p] / Q::from_integer(row[p].clone());
            if !coef.is_zero() {
                for (bj, rj) in b.iter_mut().zip(row) {
                    *bj -= &coef * Q::from_integer(rj.clone());
                }
            }
            y.push(coef);
        }
        (y, b)
    }

    /// Basis of `{λ : rows·λ = 0}`.
    fn kernel(&self, n: usize) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut lam = vec![Q::zero(); n];
                lam[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
                    let s: Q = row
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| c != p)
                        .map(|(c, x)| Q::from_integer(x.clone()) * &lam[c])
                        .sum();
                    lam[p] = -s / Q::from_integer(row[p].clone());
                }
                lam
            })
            .collect()
    }
}

fn combine(m: &mut [Vec<BigInt>], r: usize, i: usize, s: &BigInt, t: &BigInt, ar: &BigInt, ai: &BigInt) {
    let (row_r, row_i) = (m[r].clone(), m[i].clone());
    for c in 0..row_r.len() {
        m[r][c] = s * &row_r[c] + t * &row_i[c];
        m[i][c] = -ai * &row_r[c] + ar * &row_i[c];
    }
}

fn sub_row(m: &mut [Vec<BigInt>], j: usize, r: usize, q: &BigInt) {
    let row_r = m[r].clone();
    for (x, y) in m[j].iter_mut().zip(&row_r) {
        *x -= q * y;
    }
}

fn denominators<'a>(gs: impl IntoIterator<Item = &'a GroupElement>) -> BigInt {
    let dens: Vec<BigInt> = gs.into_iter().flat_map(|g| g.coords().iter().map(|c| c.denom().clone())).collect();
    lcm_all(&dens)
}

impl SubgroupDescriptor {
    pub fn new(ambient_rank: usize, generators: Vec<GroupElement>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.rank() != ambient_rank {
                return Err(GroupError::RankMismatch { left: ambient_rank, right: g.rank() });
            }
        }
        Ok(SubgroupDescriptor { ambient_rank, generators })
    }

    pub fn trivial(rank: usize) -> Self {
        SubgroupDescriptor { ambient_rank: rank, generators: Vec::new() }
    }

    /// ℤ inside ℚ.
    pub fn integers() -> Self {
        SubgroupDescriptor { ambient_rank: 1, generators: vec![GroupElement::int(1)] }
    }

    pub fn cyclic(g: GroupElement) -> Self {
        SubgroupDescriptor { ambient_rank: g.rank(), generators: vec![g] }
    }

    /// The subgroup generated by `self` and `extra`.
    pub fn with(&self, extra: &[GroupElement]) -> Result<Self, GroupError> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Self::new(self.ambient_rank, gens)
    }

    /// Embeds into a larger ambient rank (see [`GroupElement::pad`]).
    pub fn pad(&self, rank: usize, leading: bool) -> Self {
        SubgroupDescriptor {
            ambient_rank: rank.max(self.ambient_rank),
            generators: self.generators.iter().map(|g| g.pad(rank, leading)).collect(),
        }
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.rank() != self.ambient_rank {
            return Err(GroupError::RankMismatch { left: self.ambient_rank, right: g.rank() });
        }
        Ok(())
    }

    fn hermite_with(&self, extra: &[&GroupElement]) -> Hermite {
        let scale = denominators(self.generators.iter().chain(extra.iter().copied()));
        Hermite::build(&self.generators, self.ambient_rank, &scale)
    }

    /// Dimension of the rational span.
    pub fn rank(&self) -> usize {
        self.hermite_with(&[]).rank()
    }

    /// Hermite-reduced basis: a ℤ-basis of the same group.
    pub fn reduced_basis(&self) -> Vec<GroupElement> {
        let h = self.hermite_with(&[]);
        let s = Q::from_integer(h.scale.clone());
        h.rows
            .iter()
            .map(|row| GroupElement::new(row.iter().map(|x| Q::from_integer(x.clone()) / &s).collect()))
            .collect()
    }

    pub fn reduced(&self) -> Self {
        SubgroupDescriptor { ambient_rank: self.ambient_rank, generators: self.reduced_basis() }
    }

    /// Decides `g ∈ S`; on success the witness satisfies `Σ wᵢ·genᵢ = g`.
    pub fn member(&self, g: &GroupElement) -> Result<Membership, GroupError> {
        self.check(g)?;
        let h = self.hermite_with(&[g]);
        let (y, residual) = h.solve(g);
        if !residual.iter().all(Zero::is_zero) || !y.iter().all(|c| c.is_integer()) {
            return Ok(Membership { member: false, witness: None });
        }
        let k = self.generators.len();
        let mut w = vec![BigInt::zero(); k];
        for (yj, urow) in y.iter().zip(&h.transform) {
            let yj = yj.to_integer();
            for (wi, ui) in w.iter_mut().zip(urow) {
                *wi += &yj * ui;
            }
        }
        debug_assert!(self.verify_witness(g, &w));
        Ok(Membership { member: true, witness: Some(w) })
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool, GroupError> {
        Ok(self.member(g)?.member)
    }

    /// `Σ wᵢ·genᵢ == g`, exactly.
    pub fn verify_witness(&self, g: &GroupElement, w: &[BigInt]) -> bool {
        if w.len() != self.generators.len() || g.rank() != self.ambient_rank {
            return false;
        }
        let mut acc = GroupElement::zero(self.ambient_rank);
        for (wi, gi) in w.iter().zip(&self.generators) {
            acc = &acc + &gi.scale(&Q::from_integer(wi.clone()));
        }
        &acc == g
    }

    /// Least `e ≥ 1` with `e·g ∈ S`. Non-torsion is only reported with a
    /// rank proof; orders above `bound` are an error, not a negative.
    pub fn torsion_order(&self, g: &GroupElement, bound: u64) -> Result<Torsion, GroupError> {
        self.check(g)?;
        let h = self.hermite_with(&[g]);
        let (y, residual) = h.solve(g);
        if !residual.iter().all(Zero::is_zero) {
            let s = Q::from_integer(h.scale.clone());
            let b: Vec<Q> = g.coords().iter().map(|c| c * &s).collect();
            let functional = h
                .kernel(self.ambient_rank)
                .into_iter()
                .find(|lam| !lam.iter().zip(&b).map(|(x, y)| x * y).sum::<Q>().is_zero())
                .expect("vector outside the row space pairs nontrivially with some kernel vector");
            return Ok(Torsion::NonTorsion(RankProof { functional }));
        }
        let dens: Vec<BigInt> = y.iter().map(|c| c.denom().clone()).collect();
        let e = lcm_all(&dens);
        match e.to_u64() {
            Some(e) if e <= bound => Ok(Torsion::Order(e)),
            _ => Err(GroupError::BoundExhausted { bound }),
        }
    }

    /// `(self : inner)`, requiring `inner ⊆ self`.
    pub fn index(&self, inner: &SubgroupDescriptor) -> Result<Index, GroupError> {
        if inner.ambient_rank != self.ambient_rank {
            return Err(GroupError::RankMismatch { left: self.ambient_rank, right: inner.ambient_rank });
        }
        for (i, g) in inner.generators.iter().enumerate() {
            if !self.contains(g)? {
                return Err(GroupError::NotSubgroup { index: i });
            }
        }
        let scale = denominators(self.generators.iter().chain(&inner.generators));
        let outer = Hermite::build(&self.generators, self.ambient_rank, &scale);
        let inn = Hermite::build(&inner.generators, self.ambient_rank, &scale);
        if outer.rank() != inn.rank() {
            return Ok(Index::Infinite);
        }
        let s = Q::from_integer(scale);
        let m: Vec<Vec<Q>> = inn
            .rows
            .iter()
            .map(|row| {
                let g = GroupElement::new(row.iter().map(|x| Q::from_integer(x.clone()) / &s).collect());
                let (y, _) = outer.solve(&g);
                y
            })
            .collect();
        let d = determinant(m).abs();
        debug_assert!(d.is_integer());
        d.to_integer().to_u64().map(Index::Finite).ok_or(GroupError::Overflow("subgroup index"))
    }

    /// Positive generator of a rank-one cyclic group, if it is one.
    pub fn rank_one_generator(&self) -> Option<GroupElement> {
        if self.ambient_rank != 1 {
            return None;
        }
        match self.reduced_basis().as_slice() {
            [g] => Some(g.clone()),
            _ => None,
        }
    }
}

fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Checked comparison entry point.
pub fn compare(a: &GroupElement, b: &GroupElement) -> Result<Ordering, GroupError> {
    a.compare(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn g1(n: i64, d: i64) -> GroupElement {
        GroupElement::ratio(n, d)
    }

    fn g2(a: i64, b: i64) -> GroupElement {
        GroupElement::new(vec![q(a, 1), q(b, 1)])
    }

    fn sub1(gs: &[(i64, i64)]) -> SubgroupDescriptor {
        SubgroupDescriptor::new(1, gs.iter().map(|&(n, d)| g1(n, d)).collect()).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&g1(0, 1), &g1(0, 1)).unwrap(), Ordering::Equal);
        assert_eq!(compare(&g1(1, 2), &g1(1, 3)).unwrap(), Ordering::Greater);
        assert_eq!(compare(&g2(1, 0), &g2(0, 5)).unwrap(), Ordering::Greater);
        assert!(matches!(compare(&g1(1, 1), &g2(1, 0)), Err(GroupError::RankMismatch { .. })));
    }

    #[test]
    fn member_examples() {
        let m = sub1(&[(1, 3)]).member(&g1(1, 3)).unwrap();
        assert!(m.member);
        assert_eq!(m.witness.unwrap(), vec![BigInt::one()]);
        assert!(!sub1(&[(1, 1)]).member(&g1(1, 2)).unwrap().member);
    }

    #[test]
    fn member_five_sixths_matches_brute_force() {
        // Oracle: search a/2 + b/3 = 5/6 over |a|,|b| <= 6.
        let target = q(5, 6);
        let brute: Vec<(i64, i64)> = (-6..=6)
            .flat_map(|a| (-6..=6).map(move |b| (a, b)))
            .filter(|&(a, b)| q(a, 2) + q(b, 3) == target)
            .collect();
        assert!(brute.contains(&(1, 1)));
        let s = sub1(&[(1, 2), (1, 3)]);
        let m = s.member(&g1(5, 6)).unwrap();
        assert!(m.member);
        let w = m.witness.unwrap();
        assert!(s.verify_witness(&g1(5, 6), &w));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(sub1(&[(1, 1)]).torsion_order(&g1(1, 4), 100).unwrap(), Torsion::Order(4));
        assert_eq!(sub1(&[(1, 1)]).torsion_order(&g1(1, 1), 100).unwrap(), Torsion::Order(1));
        let s = SubgroupDescriptor::new(2, vec![g2(1, 0)]).unwrap();
        match s.torsion_order(&g2(0, 1), 100).unwrap() {
            Torsion::NonTorsion(proof) => assert!(proof.verify(&s.generators, &g2(0, 1))),
            other => panic!("expected non-torsion, got {other:?}"),
        }
        assert_eq!(
            sub1(&[(1, 1)]).torsion_order(&g1(1, 7), 5),
            Err(GroupError::BoundExhausted { bound: 5 })
        );
        // Over the trivial group every nonzero element is non-torsion.
        assert!(matches!(
            SubgroupDescriptor::trivial(1).torsion_order(&g1(1, 2), 10).unwrap(),
            Torsion::NonTorsion(_)
        ));
    }

    #[test]
    fn index_examples() {
        let z = SubgroupDescriptor::integers();
        assert_eq!(sub1(&[(1, 3)]).index(&z).unwrap(), Index::Finite(3));
        assert_eq!(z.index(&z).unwrap(), Index::Finite(1));
        assert_eq!(sub1(&[(1, 2), (1, 3)]).index(&z).unwrap(), Index::Finite(6));
        assert_eq!(sub1(&[(1, 2), (1, 3)]).reduced_basis(), vec![g1(1, 6)]);
        assert!(matches!(z.index(&sub1(&[(1, 2)])), Err(GroupError::NotSubgroup { index: 0 })));
        let big = SubgroupDescriptor::new(2, vec![g2(1, 0), g2(0, 1)]).unwrap();
        let small = SubgroupDescriptor::new(2, vec![g2(1, 0)]).unwrap();
        assert_eq!(big.index(&small).unwrap(), Index::Infinite);
    }

    #[test]
    fn hermite_of_powser_group() {
        // 1, 2/3, 8/9, 26/27, 80/81 generate (1/81)Z.
        let s = sub1(&[(1, 1), (2, 3), (8, 9), (26, 27), (80, 81)]);
        assert_eq!(s.reduced_basis(), vec![g1(1, 81)]);
    }

    fn arb_g(rank: usize) -> impl Strategy<Value = GroupElement> {
        proptest::collection::vec((-20i64..20, 1i64..7), rank)
            .prop_map(|v| GroupElement::new(v.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn order_is_translation_invariant(a in arb_g(2), b in arb_g(2), c in arb_g(2)) {
            if a < b {
                prop_assert!(&a + &c < &b + &c);
            }
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        }

        #[test]
        fn witnesses_reverify(gens in proptest::collection::vec(arb_g(2), 1..4), g in arb_g(2)) {
            let s = SubgroupDescriptor::new(2, gens).unwrap();
            let m = s.member(&g).unwrap();
            if let Some(w) = m.witness {
                prop_assert!(s.verify_witness(&g, &w));
            }
        }

        #[test]
        fn torsion_order_is_least(gens in proptest::collection::vec(arb_g(1), 1..3), g in arb_g(1)) {
            let s = SubgroupDescriptor::new(1, gens).unwrap();
            if let Ok(Torsion::Order(e)) = s.torsion_order(&g, 10_000) {
                prop_assert!(s.contains(&g.mul_int(e as i64)).unwrap());
                for k in 1..e.min(50) {
                    prop_assert!(!s.contains(&g.mul_int(k as i64)).unwrap());
                }
            }
        }

        #[test]
        fn index_is_multiplicative(d1 in 1i64..6, d2 in 1i64..6, d3 in 1i64..6) {
            // T = <d1 d2 d3> ⊆ U = <d1 d3>... chain Z·a ⊆ Z·b ⊆ Z·c via divisibility.
            let c = g1(1, d1 * d2 * d3);
            let u = g1(1, d1);
            let t = g1(d2, 1);
            let sc = SubgroupDescriptor::cyclic(c);
            let su = SubgroupDescriptor::cyclic(u);
            let st = SubgroupDescriptor::cyclic(t);
            let (Index::Finite(a), Index::Finite(b), Index::Finite(ab)) =
                (sc.index(&su).unwrap(), su.index(&st).unwrap(), sc.index(&st).unwrap())
            else { panic!("finite indices expected") };
            prop_assert_eq!(a * b, ab);
        }
    }
}
