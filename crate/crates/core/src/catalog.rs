//! The named weight cones of Sp(2n), in whichever presentations are known.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cone::{ConeError, ConeRepr, GeneratedCone, HalfspaceSystem, Weight};
use crate::linalg::qi;
use crate::rootdata::{self, eta_omega, gaussian_binomial, min_coset_reps, schubert_weight, SymplecticRootDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeName {
    GS,
    Schubert,
    SchubertSaturated,
    HW,
    Pol,
    Sigma1,
    Sigma1Prime,
    XplusI,
    ZipSp4,
    ZipSp4Saturated,
    ZipSp6Saturated,
    MuOrdSaturated,
}

impl ConeName {
    pub const ALL: [ConeName; 12] = [
        ConeName::GS,
        ConeName::Schubert,
        ConeName::SchubertSaturated,
        ConeName::HW,
        ConeName::Pol,
        ConeName::Sigma1,
        ConeName::Sigma1Prime,
        ConeName::XplusI,
        ConeName::ZipSp4,
        ConeName::ZipSp4Saturated,
        ConeName::ZipSp6Saturated,
        ConeName::MuOrdSaturated,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ConeName::GS => "gs",
            ConeName::Schubert => "schubert",
            ConeName::SchubertSaturated => "schubert-sat",
            ConeName::HW => "hw",
            ConeName::Pol => "pol",
            ConeName::Sigma1 => "sigma1",
            ConeName::Sigma1Prime => "sigma1prime",
            ConeName::XplusI => "xplus",
            ConeName::ZipSp4 => "zip-sp4",
            ConeName::ZipSp4Saturated => "zip-sp4-sat",
            ConeName::ZipSp6Saturated => "zip-sp6-sat",
            ConeName::MuOrdSaturated => "muord-sat",
        }
    }

    /// Rank forced by the name, if any.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            ConeName::ZipSp4 | ConeName::ZipSp4Saturated => Some(2),
            ConeName::ZipSp6Saturated => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for ConeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConeName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ConeName::ALL.into_iter().find(|c| c.label() == s).ok_or_else(|| {
            let names: Vec<_> = ConeName::ALL.iter().map(|c| c.label()).collect();
            format!("unknown cone '{s}', expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone)]
pub struct NamedCone {
    pub name: ConeName,
    pub n: usize,
    pub p: u64,
    /// Generators; read as a monoid for `Schubert` and `ZipSp4`, otherwise only up to saturation.
    pub generators: Option<GeneratedCone>,
    pub halfspaces: Option<HalfspaceSystem>,
}

impl NamedCone {
    pub fn repr(&self) -> ConeRepr {
        match (&self.generators, &self.halfspaces) {
            (_, Some(h)) => h.clone().into(),
            (Some(g), None) => g.clone().into(),
            (None, None) => unreachable!("catalog cones carry a presentation"),
        }
    }

    pub fn contains(&self, lambda: &Weight) -> Result<bool, ConeError> {
        self.repr().contains(lambda)
    }

    /// Halfspaces, computing them from generators if needed.
    pub fn to_halfspaces(&self) -> Result<HalfspaceSystem, ConeError> {
        self.repr().halfspaces()
    }

    /// Generators, computing rays from halfspaces if needed.
    pub fn to_generators(&self) -> Result<GeneratedCone, ConeError> {
        match &self.generators {
            Some(g) => Ok(g.clone()),
            None => GeneratedCone::new(self.n, self.repr().generators()),
        }
    }
}

pub fn build(name: ConeName, n: usize, p: u64) -> NamedCone {
    match name {
        ConeName::GS => cone_gs(n),
        ConeName::Schubert => cone_schubert(n, p),
        ConeName::SchubertSaturated => cone_schubert_saturated(n, p),
        ConeName::HW => cone_hw(&SymplecticRootDatum::split(n), p),
        ConeName::Pol => cone_pol(n, p),
        ConeName::Sigma1 => cone_sigma(ConeName::Sigma1, &sigma1(n), n, p),
        ConeName::Sigma1Prime => cone_sigma(ConeName::Sigma1Prime, &sigma1prime(n), n, p),
        ConeName::XplusI => xplus(n),
        ConeName::ZipSp4 => zip_sp4(p),
        ConeName::ZipSp4Saturated => zip_sp4_saturated(p),
        ConeName::ZipSp6Saturated => zip_sp6_saturated(p),
        ConeName::MuOrdSaturated => NamedCone { name, ..xplus(n) },
    }
}

fn rows(n: usize, rs: Vec<Vec<BigInt>>) -> HalfspaceSystem {
    let q = rs.into_iter().map(|r| r.iter().map(qi).collect()).collect();
    HalfspaceSystem::new(n, q).expect("rows built at rank n")
}

fn gens(n: usize, gs: Vec<Weight>) -> GeneratedCone {
    GeneratedCone::new(n, gs).expect("generators built at rank n")
}

/// a_i − a_{i+1} ≥ 0 for i < n.
fn levi_rows(n: usize) -> Vec<Vec<BigInt>> {
    (1..n).map(|i| Weight::unit(n, i).sub(&Weight::unit(n, i + 1)).0).collect()
}

/// X*_{+,I}(T) = {a_1 ≥ ... ≥ a_n}.
pub fn xplus(n: usize) -> NamedCone {
    NamedCone { name: ConeName::XplusI, n, p: 0, generators: None, halfspaces: Some(rows(n, levi_rows(n))) }
}

/// C_GS = {0 ≥ a_1 ≥ ... ≥ a_n}.
pub fn cone_gs(n: usize) -> NamedCone {
    let mut r = levi_rows(n);
    r.push(Weight::unit(n, 1).scale(-1).0);
    NamedCone { name: ConeName::GS, n, p: 0, generators: None, halfspaces: Some(rows(n, r)) }
}

/// The monoid h(X*_+(T)), generated by S_i = h(μ_i), i = 1..n (S_n = η_ω).
pub fn cone_schubert(n: usize, p: u64) -> NamedCone {
    let g = (1..=n).map(|i| schubert_weight(n, i, p)).collect();
    NamedCone { name: ConeName::Schubert, n, p, generators: Some(gens(n, g)), halfspaces: None }
}

/// ⟨C_Sbt⟩: (p a_{i+1} + a_{n−i}) − (p a_i + a_{n+1−i}) ≤ 0 for i < n, and p a_1 + a_n ≤ 0.
pub fn cone_schubert_saturated(n: usize, p: u64) -> NamedCone {
    let e = |i: usize| Weight::unit(n, i);
    let mut r = Vec::new();
    for i in 1..n {
        let lhs = e(i + 1).scale(p).add(&e(n - i));
        let rhs = e(i).scale(p).add(&e(n + 1 - i));
        r.push(rhs.sub(&lhs).0);
    }
    r.push(e(1).scale(p).add(&e(n)).scale(-1).0);
    let g = (1..=n).map(|i| schubert_weight(n, i, p)).collect();
    NamedCone { name: ConeName::SchubertSaturated, n, p, generators: Some(gens(n, g)), halfspaces: Some(rows(n, r)) }
}

/// For α ∈ Δ∖I, the functional λ ↦ Σ_{w ∈ ^{I_α}W_L} p^{ℓ(w)} ⟨wλ, α^∨⟩ as a coefficient row.
pub fn hw_functional(datum: &SymplecticRootDatum, alpha: usize, p: u64) -> Weight {
    let n = datum.n;
    let coroot = &datum.simple[alpha].coroot;
    let mut acc = Weight::zero(n);
    for w in min_coset_reps(n, &datum.orthogonal_levi(alpha)) {
        // ⟨wλ, c⟩ = ⟨λ, w⁻¹c⟩
        let pulled = w.inverse().act(coroot);
        acc = acc.add(&pulled.scale(BigInt::from(p).pow(w.length() as u32)));
    }
    acc
}

/// η_i = (a,...,a, b,...,b) with i entries a = [n−1, i]_p and b = −p^{n−i}[n−1, i−1]_p.
pub fn eta(n: usize, i: usize, p: u64) -> Weight {
    let a = gaussian_binomial(n as i64 - 1, i as i64, p).expect("i < n");
    let b = -BigInt::from(p).pow((n - i) as u32) * gaussian_binomial(n as i64 - 1, i as i64 - 1, p).expect("i ≥ 1");
    Weight((0..n).map(|k| if k < i { a.clone() } else { b.clone() }).collect())
}

/// C_hw: the functional of each α ∈ Δ∖I is ≤ 0, intersected with X*_{+,I}.
pub fn cone_hw(datum: &SymplecticRootDatum, p: u64) -> NamedCone {
    let n = datum.n;
    let mut r = levi_rows(n);
    for alpha in datum.outside_levi() {
        r.push(hw_functional(datum, alpha, p).scale(-1).0);
    }
    let mut g: Vec<Weight> = (1..n).map(|i| eta(n, i, p)).collect();
    g.push(eta_omega(n, p));
    NamedCone { name: ConeName::HW, n, p, generators: Some(gens(n, g)), halfspaces: Some(rows(n, r)) }
}

/// Σ_1 = {(i,j) : i ≥ j} ∪ {(i, n+1−i)}, 1-based pairs.
pub fn sigma1(n: usize) -> Vec<(usize, usize)> {
    sigma_with(n, |i, j| i >= j)
}

/// Σ'_1 = {(i,j) : i > j} ∪ {(i, n+1−i)}.
pub fn sigma1prime(n: usize) -> Vec<(usize, usize)> {
    sigma_with(n, |i, j| i > j)
}

fn sigma_with(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if keep(i, j) || j == n + 1 - i {
                out.push((i, j));
            }
        }
    }
    out
}

/// e_i − p e_j.
pub fn pol_ray(n: usize, i: usize, j: usize, p: u64) -> Weight {
    Weight::unit(n, i).sub(&Weight::unit(n, j).scale(p))
}

/// C_pol = ⟨e_i − p e_j, all i, j⟩.
pub fn cone_pol(n: usize, p: u64) -> NamedCone {
    let all: Vec<_> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    NamedCone { name: ConeName::Pol, ..cone_sigma(ConeName::Pol, &all, n, p) }
}

/// C_Σ = ⟨e_i − p e_j, (i,j) ∈ Σ⟩.
pub fn cone_sigma(name: ConeName, sigma: &[(usize, usize)], n: usize, p: u64) -> NamedCone {
    let g = sigma.iter().map(|&(i, j)| pol_ray(n, i, j, p)).collect();
    NamedCone { name, n, p, generators: Some(gens(n, g)), halfspaces: None }
}

/// The Sp(4) zip monoid N(1,−p) + N(1−p,1−p) + N(0,−p(p−1)).
pub fn zip_sp4(p: u64) -> NamedCone {
    let p = p as i64;
    let g = vec![Weight::new([1, -p]), Weight::new([1 - p, 1 - p]), Weight::new([0, -p * (p - 1)])];
    NamedCone { name: ConeName::ZipSp4, n: 2, p: p as u64, generators: Some(gens(2, g)), halfspaces: None }
}

/// ⟨(1,−p), (−1,−1)⟩ = {a_1 ≥ a_2, p a_1 + a_2 ≤ 0}.
pub fn zip_sp4_saturated(p: u64) -> NamedCone {
    let pi = p as i64;
    let g = vec![Weight::new([1, -pi]), Weight::new([-1, -1])];
    let r = vec![Weight::new([1, -1]).0, Weight::new([-pi, -1]).0];
    NamedCone { name: ConeName::ZipSp4Saturated, n: 2, p, generators: Some(gens(2, g)), halfspaces: Some(rows(2, r)) }
}

/// ⟨η_1, η_2, η_ω, S_1⟩ = {a_1 ≥ a_2 ≥ a_3, p²a_1 + a_2 + p a_3 ≤ 0, p a_1 + p²a_2 + a_3 ≤ 0}.
pub fn zip_sp6_saturated(p: u64) -> NamedCone {
    let pi = p as i64;
    let g = zip_sp6_generators(p);
    let r = vec![
        Weight::new([1, -1, 0]).0,
        Weight::new([0, 1, -1]).0,
        Weight::new([-pi * pi, -1, -pi]).0,
        Weight::new([-pi, -pi * pi, -1]).0,
    ];
    NamedCone { name: ConeName::ZipSp6Saturated, n: 3, p, generators: Some(gens(3, g)), halfspaces: Some(rows(3, r)) }
}

/// η_1, η_2, η_ω, S_1 for n = 3: the weights of f_1, f_2, det and Δ_1.
pub fn zip_sp6_generators(p: u64) -> Vec<Weight> {
    vec![eta(3, 1, p), eta(3, 2, p), eta_omega(3, p), schubert_weight(3, 1, p)]
}

/// Rational rows of a cone's halfspaces, for ad hoc intersections.
pub fn rational_rows(h: &HalfspaceSystem) -> Vec<Vec<BigRational>> {
    h.inequalities.iter().map(|r| r.iter().map(qi).collect()).collect()
}

/// C_Σ ∩ X*_{+,I} as halfspaces.
pub fn sigma_cap_xplus(sigma: &[(usize, usize)], n: usize, p: u64) -> Result<HalfspaceSystem, ConeError> {
    let hs = cone_sigma(ConeName::Sigma1Prime, sigma, n, p).to_halfspaces()?;
    hs.intersect(&xplus(n).halfspaces.expect("xplus has rows"))
}

/// The value Σ p^{n−i} a_i whose sign decides C_hw membership (with L-dominance).
pub fn hw_value(lambda: &Weight, p: u64) -> BigInt {
    let n = lambda.rank();
    lambda.0.iter().enumerate().fold(BigInt::zero(), |acc, (i, a)| acc + a * BigInt::from(p).pow((n - 1 - i) as u32))
}

pub fn in_xplus(lambda: &Weight) -> bool {
    rootdata::is_l_dominant(lambda)
}
