//! Finitely generated cones in Z^n, their saturations and halfspace duals.
//!
//! Everything is exact. A `GeneratedCone` is read two ways: as the monoid
//! N·g_1 + ... + N·g_k, and as its saturation, the rational cone
//! Q_{≥0}·g_1 + ... intersected with Z^n.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{self, qi, QMatrix};

pub const MAX_HALFSPACE_RANK: usize = 8;
pub const DEFAULT_MONOID_BOUND: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("rank {0} exceeds the Fourier-Motzkin guard of {MAX_HALFSPACE_RANK}")]
    RankGuard(usize),
    #[error("membership undecided: no combination with coefficients up to {bound}")]
    UndecidedAtBound { bound: u64 },
    #[error("cone is not pointed; its lineality space has dimension {0}")]
    NotPointed(usize),
}

/// A character of the diagonal torus, x_1^{a_1}···x_n^{a_n}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<BigInt>);

impl Weight {
    pub fn new<T: Into<BigInt>, I: IntoIterator<Item = T>>(coords: I) -> Self {
        Weight(coords.into_iter().map(Into::into).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![BigInt::zero(); n])
    }

    /// Standard basis vector e_i, 1-based.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.0[i - 1] = BigInt::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> Weight {
        let k = k.into();
        Weight(self.0.iter().map(|a| a * &k).collect())
    }

    pub fn dot(&self, o: &Weight) -> BigInt {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Weight {
        Weight(self.0.iter().rev().cloned().collect())
    }

    pub fn to_q(&self) -> Vec<BigRational> {
        self.0.iter().map(qi).collect()
    }

    /// Coordinates as i64, for callers that index or loop with them.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_rank(expected: usize, found: usize) -> Result<(), ConeError> {
    if expected == found {
        Ok(())
    } else {
        Err(ConeError::RankMismatch { expected, found })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCone {
    pub rank: usize,
    pub generators: Vec<Weight>,
}

impl GeneratedCone {
    /// Drops zero vectors and repeats, keeping first occurrences in order.
    pub fn new(rank: usize, gens: Vec<Weight>) -> Result<Self, ConeError> {
        let mut seen = BTreeSet::new();
        let mut generators = Vec::new();
        for g in gens {
            check_rank(rank, g.rank())?;
            if !g.is_zero() && seen.insert(g.clone()) {
                generators.push(g);
            }
        }
        Ok(GeneratedCone { rank, generators })
    }

    fn qcols(&self) -> Vec<Vec<BigRational>> {
        self.generators.iter().map(Weight::to_q).collect()
    }

    /// Dimension of the linear span of the generators.
    pub fn dimension(&self) -> usize {
        linalg::rank(&self.qcols(), self.rank)
    }

    pub fn generators_independent(&self) -> bool {
        self.dimension() == self.generators.len()
    }
}

/// Rows h with ⟨h, λ⟩ ≥ 0, primitive integer vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    pub rank: usize,
    pub inequalities: Vec<Vec<BigInt>>,
}

impl HalfspaceSystem {
    /// Normalizes every row to a primitive integer vector, drops zero rows and
    /// duplicates, and sorts.
    pub fn new(rank: usize, rows: Vec<Vec<BigRational>>) -> Result<Self, ConeError> {
        let mut set = BTreeSet::new();
        for r in rows {
            check_rank(rank, r.len())?;
            let v = linalg::primitive(&r);
            if v.iter().any(|x| !x.is_zero()) {
                set.insert(v);
            }
        }
        Ok(HalfspaceSystem { rank, inequalities: set.into_iter().collect() })
    }

    pub fn from_int_rows<T: Into<BigInt> + Copy>(rank: usize, rows: &[Vec<T>]) -> Result<Self, ConeError> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| qi(&x.into())).collect()).collect();
        HalfspaceSystem::new(rank, rows)
    }

    pub fn contains(&self, lambda: &Weight) -> Result<bool, ConeError> {
        check_rank(self.rank, lambda.rank())?;
        Ok(self.inequalities.iter().all(|h| !Weight(h.clone()).dot(lambda).is_negative()))
    }

    pub fn intersect(&self, other: &HalfspaceSystem) -> Result<HalfspaceSystem, ConeError> {
        check_rank(self.rank, other.rank)?;
        let rows = self.inequalities.iter().chain(&other.inequalities).map(|r| r.iter().map(qi).collect()).collect();
        HalfspaceSystem::new(self.rank, rows)
    }

    fn qrows(&self) -> QMatrix {
        self.inequalities.iter().map(|r| r.iter().map(qi).collect()).collect()
    }

    /// Basis of the largest linear subspace inside the cone.
    pub fn lineality(&self) -> Vec<Weight> {
        linalg::nullspace(&self.qrows(), self.rank).iter().map(|v| Weight(linalg::primitive(v))).collect()
    }

    /// Extreme rays of a pointed cone, as primitive integer vectors in sorted order.
    pub fn extreme_rays(&self) -> Result<Vec<Weight>, ConeError> {
        let lin = self.lineality();
        if !lin.is_empty() {
            return Err(ConeError::NotPointed(lin.len()));
        }
        Ok(self.rays_modulo(&[]))
    }

    /// A generating set: extreme rays of the pointed part plus ± a lineality basis.
    pub fn generators(&self) -> Vec<Weight> {
        let lin = self.lineality();
        let mut gens = self.rays_modulo(&lin);
        for l in lin {
            gens.push(l.scale(-1));
            gens.push(l);
        }
        gens
    }

    // Extreme rays of the cone cut with the orthogonal complement of `lin`.
    fn rays_modulo(&self, lin: &[Weight]) -> Vec<Weight> {
        let n = self.rank;
        let rows = self.qrows();
        let eqs: QMatrix = lin.iter().map(Weight::to_q).collect();
        let need = n - 1 - eqs.len().min(n - 1);
        let mut rays = BTreeSet::new();
        for subset in combinations(rows.len(), need) {
            let mut sys = eqs.clone();
            sys.extend(subset.iter().map(|&i| rows[i].clone()));
            let ns = linalg::nullspace(&sys, n);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r: Vec<BigRational> = ns[0].iter().map(|x| x * linalg::q(sign)).collect();
                if rows.iter().all(|h| !linalg::dot(h, &r).is_negative()) {
                    rays.insert(Weight(linalg::primitive(&r)));
                }
            }
        }
        rays.into_iter().collect()
    }
}

/// All k-subsets of 0..m in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Either presentation of a saturated cone.
#[derive(Debug, Clone)]
pub enum ConeRepr {
    Generated(GeneratedCone),
    Halfspaces(HalfspaceSystem),
}

impl ConeRepr {
    pub fn rank(&self) -> usize {
        match self {
            ConeRepr::Generated(c) => c.rank,
            ConeRepr::Halfspaces(h) => h.rank,
        }
    }

    pub fn generators(&self) -> Vec<Weight> {
        match self {
            ConeRepr::Generated(c) => c.generators.clone(),
            ConeRepr::Halfspaces(h) => h.generators(),
        }
    }

    pub fn halfspaces(&self) -> Result<HalfspaceSystem, ConeError> {
        match self {
            ConeRepr::Generated(c) => halfspaces_of(c),
            ConeRepr::Halfspaces(h) => Ok(h.clone()),
        }
    }

    pub fn contains(&self, lambda: &Weight) -> Result<bool, ConeError> {
        match self {
            ConeRepr::Generated(c) => saturated_membership(c, lambda),
            ConeRepr::Halfspaces(h) => h.contains(lambda),
        }
    }
}

impl From<GeneratedCone> for ConeRepr {
    fn from(c: GeneratedCone) -> Self {
        ConeRepr::Generated(c)
    }
}

impl From<HalfspaceSystem> for ConeRepr {
    fn from(h: HalfspaceSystem) -> Self {
        ConeRepr::Halfspaces(h)
    }
}

/// Nonnegative rational coefficients (indexed like `cone.generators`) writing λ,
/// supported on a linearly independent subset, or `None` outside the cone.
pub fn saturated_certificate(cone: &GeneratedCone, lambda: &Weight) -> Result<Option<Vec<BigRational>>, ConeError> {
    check_rank(cone.rank, lambda.rank())?;
    let k = cone.generators.len();
    if lambda.is_zero() {
        return Ok(Some(vec![BigRational::zero(); k]));
    }
    let cols = cone.qcols();
    let target = lambda.to_q();
    // Carathéodory: some independent subset carries a nonnegative solution.
    for size in 1..=cone.rank.min(k) {
        for subset in combinations(k, size) {
            let sub: Vec<_> = subset.iter().map(|&i| cols[i].clone()).collect();
            if let Some(c) = linalg::solve_unique(&sub, &target) {
                if linalg::is_nonneg(&c) {
                    let mut full = vec![BigRational::zero(); k];
                    for (&i, x) in subset.iter().zip(c) {
                        full[i] = x;
                    }
                    return Ok(Some(full));
                }
            }
        }
    }
    Ok(None)
}

pub fn saturated_membership(cone: &GeneratedCone, lambda: &Weight) -> Result<bool, ConeError> {
    Ok(saturated_certificate(cone, lambda)?.is_some())
}

/// lcm of the denominators of the saturated certificate: the smallest m it
/// proves to put mλ in the monoid.
pub fn certificate_multiplier(cert: &[BigRational]) -> BigInt {
    cert.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn monoid_membership(cone: &GeneratedCone, lambda: &Weight) -> Result<Option<Vec<BigInt>>, ConeError> {
    monoid_membership_bounded(cone, lambda, DEFAULT_MONOID_BOUND)
}

/// Nonnegative integer coefficients c with Σ c_i g_i = λ.
///
/// Independent generators: the rational solution is unique, so check it.
/// Dependent generators: if every generator has coordinate sum of one strict
/// sign the sum functional bounds the search. Otherwise coefficients are
/// searched up to `bound` and a miss is reported as undecided.
pub fn monoid_membership_bounded(cone: &GeneratedCone, lambda: &Weight, bound: u64) -> Result<Option<Vec<BigInt>>, ConeError> {
    check_rank(cone.rank, lambda.rank())?;
    let k = cone.generators.len();
    if lambda.is_zero() {
        return Ok(Some(vec![BigInt::zero(); k]));
    }
    if !saturated_membership(cone, lambda)? {
        return Ok(None);
    }
    if cone.generators_independent() {
        let c = linalg::solve_unique(&cone.qcols(), &lambda.to_q()).expect("independent and in span");
        if c.iter().all(|x| x.is_integer() && !x.is_negative()) {
            return Ok(Some(c.iter().map(|x| x.to_integer()).collect()));
        }
        return Ok(None);
    }
    let sums: Vec<BigInt> = cone.generators.iter().map(Weight::sum).collect();
    let sign = if sums.iter().all(Signed::is_negative) {
        Some(-1)
    } else if sums.iter().all(Signed::is_positive) {
        Some(1)
    } else {
        None
    };
    let mut coeffs = vec![BigInt::zero(); k];
    match sign {
        Some(s) => {
            let mags: Vec<BigInt> = sums.iter().map(|x| x.abs()).collect();
            let budget = lambda.sum() * s;
            Ok(search_by_budget(&cone.generators, &mags, 0, lambda.clone(), budget, &mut coeffs).then_some(coeffs))
        }
        None => {
            if search_by_box(&cone.generators, 0, lambda.clone(), &BigInt::from(bound), &mut coeffs) {
                Ok(Some(coeffs))
            } else {
                Err(ConeError::UndecidedAtBound { bound })
            }
        }
    }
}

// `budget` is the remaining |sum functional|; each use of generator i spends mags[i].
fn search_by_budget(gens: &[Weight], mags: &[BigInt], i: usize, rest: Weight, budget: BigInt, coeffs: &mut [BigInt]) -> bool {
    if budget.is_negative() {
        return false;
    }
    if i == gens.len() {
        return rest.is_zero();
    }
    let max = &budget / &mags[i];
    let mut c = BigInt::zero();
    let mut r = rest;
    while c <= max {
        coeffs[i] = c.clone();
        if search_by_budget(gens, mags, i + 1, r.clone(), &budget - &c * &mags[i], coeffs) {
            return true;
        }
        r = r.sub(&gens[i]);
        c += 1;
    }
    coeffs[i] = BigInt::zero();
    false
}

fn search_by_box(gens: &[Weight], i: usize, rest: Weight, bound: &BigInt, coeffs: &mut [BigInt]) -> bool {
    if i == gens.len() {
        return rest.is_zero();
    }
    let mut c = BigInt::zero();
    let mut r = rest;
    while &c <= bound {
        coeffs[i] = c.clone();
        if search_by_box(gens, i + 1, r.clone(), bound, coeffs) {
            return true;
        }
        r = r.sub(&gens[i]);
        c += 1;
    }
    coeffs[i] = BigInt::zero();
    false
}

/// Halfspace description of the saturation, by Fourier–Motzkin elimination of
/// the coefficients in x = Σ c_j g_j, c ≥ 0.
///
/// Equalities cutting out the span come back as opposite pairs of rows.
/// Redundant rows are dropped: a surviving inequality must be tight on
/// generators spanning a hyperplane of the cone's span.
pub fn halfspaces_of(cone: &GeneratedCone) -> Result<HalfspaceSystem, ConeError> {
    let n = cone.rank;
    if n > MAX_HALFSPACE_RANK {
        return Err(ConeError::RankGuard(n));
    }
    let k = cone.generators.len();
    let width = n + k;
    // row layout: [x_1..x_n | c_1..c_k]
    let mut eqs: QMatrix = (0..n)
        .map(|i| {
            let mut r = vec![BigRational::zero(); width];
            r[i] = BigRational::one();
            for (j, g) in cone.generators.iter().enumerate() {
                r[n + j] = -qi(&g.0[i]);
            }
            r
        })
        .collect();
    let mut ineqs: QMatrix = (0..k)
        .map(|j| {
            let mut r = vec![BigRational::zero(); width];
            r[n + j] = BigRational::one();
            r
        })
        .collect();
    for col in n..width {
        if let Some(pos) = eqs.iter().position(|r| !r[col].is_zero()) {
            let e = eqs.swap_remove(pos);
            let eliminate = |r: &mut Vec<BigRational>| {
                if !r[col].is_zero() {
                    let f = &r[col] / &e[col];
                    for (x, y) in r.iter_mut().zip(&e) {
                        *x -= &f * y;
                    }
                }
            };
            eqs.iter_mut().for_each(eliminate);
            ineqs.iter_mut().for_each(eliminate);
            continue;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in ineqs {
            if r[col].is_positive() {
                pos.push(r);
            } else if r[col].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for a in &pos {
            for b in &neg {
                let (fa, fb) = (-b[col].clone(), a[col].clone());
                rest.push(a.iter().zip(b).map(|(x, y)| x * &fa + y * &fb).collect());
            }
        }
        ineqs = dedupe(rest);
    }
    let span_eqs: QMatrix = eqs.into_iter().map(|r| r[..n].to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let dim = cone.dimension();
    let gens_q = cone.qcols();
    let mut rows: QMatrix = Vec::new();
    for e in &span_eqs {
        rows.push(e.clone());
        rows.push(e.iter().map(|x| -x).collect());
    }
    for r in ineqs {
        let h = r[..n].to_vec();
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        let tight: Vec<_> = gens_q.iter().filter(|g| linalg::dot(&h, g).is_zero()).cloned().collect();
        let all_tight = tight.len() == gens_q.len();
        if !all_tight && linalg::rank(&tight, n) + 1 == dim {
            rows.push(h);
        }
    }
    HalfspaceSystem::new(n, rows)
}

fn dedupe(rows: QMatrix) -> QMatrix {
    let mut seen = BTreeSet::new();
    rows.into_iter()
        .filter(|r| {
            let key = linalg::primitive(r);
            key.iter().any(|x| !x.is_zero()) && seen.insert(key)
        })
        .collect()
}

/// Mutual inclusion of the saturated cones.
pub fn cones_equal_saturated(a: &ConeRepr, b: &ConeRepr) -> Result<bool, ConeError> {
    check_rank(a.rank(), b.rank())?;
    Ok(cone_included(a, b)? && cone_included(b, a)?)
}

/// Whether the saturation of `a` lies inside that of `b`.
pub fn cone_included(a: &ConeRepr, b: &ConeRepr) -> Result<bool, ConeError> {
    check_rank(a.rank(), b.rank())?;
    let hb = b.halfspaces()?;
    for g in a.generators() {
        if !hb.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer points of the box satisfying every inequality, lexicographically ascending.
pub fn enumerate_lattice_points(sys: &HalfspaceSystem, bounds: &[(i64, i64)]) -> Result<Vec<Weight>, ConeError> {
    check_rank(sys.rank, bounds.len())?;
    let mut out = Vec::new();
    for pt in box_points(bounds) {
        let w = Weight::new(pt);
        if sys.contains(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// All integer points of a box in lexicographic order.
pub fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Halfspaces as rational rows, for callers composing systems by hand.
pub fn rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| linalg::q(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.iter().copied())
    }

    fn gc(gens: &[&[i64]]) -> GeneratedCone {
        GeneratedCone::new(gens[0].len(), gens.iter().map(|g| w(g)).collect()).unwrap()
    }

    fn hs(rows: &[Vec<i64>]) -> HalfspaceSystem {
        HalfspaceSystem::from_int_rows(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn sp4_monoid_examples() {
        let c = gc(&[&[1, -2], &[-1, -1], &[0, -2]]);
        let one = monoid_membership(&c, &w(&[1, -2])).unwrap().unwrap();
        assert_eq!(one, vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        assert_eq!(monoid_membership(&c, &w(&[0, 0])).unwrap().unwrap(), vec![BigInt::zero(); 3]);
        assert_eq!(monoid_membership(&c, &w(&[1, -1])).unwrap(), None);
    }

    #[test]
    fn independent_monoid_needs_integrality() {
        let c = gc(&[&[1, -2], &[-1, -1]]);
        // (0,-1) = 1/3·(1,-2) + 1/3·(-1,-1)
        assert_eq!(monoid_membership(&c, &w(&[0, -1])).unwrap(), None);
        assert!(monoid_membership(&c, &w(&[0, -3])).unwrap().is_some());
    }

    #[test]
    fn saturated_examples() {
        let c = gc(&[&[1, -2], &[-1, -1]]);
        assert!(saturated_membership(&c, &w(&[1, -2])).unwrap());
        assert!(saturated_membership(&c, &w(&[0, -1])).unwrap());
        assert!(!saturated_membership(&c, &w(&[1, 0])).unwrap());
        let cert = saturated_certificate(&c, &w(&[0, -1])).unwrap().unwrap();
        assert_eq!(certificate_multiplier(&cert), BigInt::from(3));
    }

    #[test]
    fn rank_mismatch_reported() {
        let c = gc(&[&[1, -2]]);
        assert_eq!(
            saturated_membership(&c, &w(&[1, 2, 3])),
            Err(ConeError::RankMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn mixed_sign_generators_hit_the_bound() {
        let c = gc(&[&[2, 0], &[-2, 0], &[0, 1]]);
        assert!(monoid_membership_bounded(&c, &w(&[4, 1]), 8).unwrap().is_some());
        assert_eq!(
            monoid_membership_bounded(&c, &w(&[1, 1]), 8),
            Err(ConeError::UndecidedAtBound { bound: 8 })
        );
    }

    #[test]
    fn halfline() {
        let h = halfspaces_of(&gc(&[&[1]])).unwrap();
        assert_eq!(h, hs(&[vec![1]]));
    }

    #[test]
    fn sp4_dual() {
        let h = halfspaces_of(&gc(&[&[1, -2], &[-1, -1]])).unwrap();
        assert_eq!(h, hs(&[vec![1, -1], vec![-2, -1]]));
        assert_eq!(h.extreme_rays().unwrap(), vec![w(&[-1, -1]), w(&[1, -2])]);
    }

    #[test]
    fn degenerate_cone_gets_equalities() {
        // a ray inside a plane of Z^3
        let h = halfspaces_of(&gc(&[&[1, 1, 0]])).unwrap();
        assert!(h.contains(&w(&[2, 2, 0])).unwrap());
        assert!(!h.contains(&w(&[2, 2, 1])).unwrap());
        assert!(!h.contains(&w(&[-1, -1, 0])).unwrap());
        assert_eq!(h.generators(), vec![w(&[1, 1, 0])]);
        // a full line is not pointed
        let line = halfspaces_of(&gc(&[&[1, 0], &[-1, 0]])).unwrap();
        assert_eq!(line.extreme_rays(), Err(ConeError::NotPointed(1)));
    }

    #[test]
    fn equality_and_strict_inclusion() {
        let a: ConeRepr = gc(&[&[1, -2], &[-1, -1]]).into();
        let b: ConeRepr = hs(&[vec![1, -1], vec![-2, -1]]).into();
        assert!(cones_equal_saturated(&a, &b).unwrap());
        assert!(cones_equal_saturated(&a, &a).unwrap());
        let gs: ConeRepr = hs(&[vec![-1, 0], vec![1, -1]]).into();
        assert!(cone_included(&gs, &a).unwrap());
        assert!(!cones_equal_saturated(&gs, &a).unwrap());
    }

    #[test]
    fn lattice_points() {
        let half = hs(&[vec![1]]);
        assert_eq!(enumerate_lattice_points(&half, &[(-2, 2)]).unwrap(), vec![w(&[0]), w(&[1]), w(&[2])]);
        let gs = hs(&[vec![-1, 0], vec![1, -1]]);
        let pts = enumerate_lattice_points(&gs, &[(-1, 1), (-1, 1)]).unwrap();
        assert_eq!(pts, vec![w(&[-1, -1]), w(&[0, -1]), w(&[0, 0])]);
        let zip = hs(&[vec![1, -1], vec![-2, -1]]);
        let pts: BTreeSet<_> = enumerate_lattice_points(&zip, &[(-2, 2), (-2, 2)]).unwrap().into_iter().collect();
        let expect: BTreeSet<_> =
            [[0, 0], [0, -1], [0, -2], [-1, -1], [-1, -2], [-2, -2], [1, -2]].iter().map(|v| w(v)).collect();
        assert_eq!(pts, expect);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
