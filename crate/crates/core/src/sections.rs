//! Sections on the matrix model of the Sp(2n)-zip stack.
//!
//! A weight-λ section is a polynomial f on n×n matrices A that is
//! wt-homogeneous of weight λ and satisfies f(u·A·φ(u)⁻¹) = f(A) for every
//! lower unipotent u, φ being the entrywise p-th power.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cone::Weight;
use crate::fpoly::{self, a, delta, delta_minor, den_weight, det, FpPoly, MinorBasis, MinorFraction, Mono, PolyError, Substituter, T};
use crate::linalg::{self, SparseFpBasis};
use crate::rootdata::{all_permutations, schubert_weight, SymplecticRootDatum};

pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;
pub const GROUP_ORDER_CAP: u128 = 10_000;
pub const MAX_GAMMA_RANK: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectionError {
    #[error("polynomial is not wt-homogeneous")]
    InhomogeneousWeight,
    #[error("weight mismatch: found {found}, claimed {claimed}")]
    WeightMismatch { found: Weight, claimed: Weight },
    #[error("not invariant under u = 1 + t·E_({k},{l}): coefficient of t^{t_power} is {witness}")]
    NotUnipotentInvariant { k: usize, l: usize, t_power: u32, witness: String },
    #[error("{0} is not divisible as claimed")]
    NotDivisible(String),
    #[error("entry ({r},{s}) times its multiplier is not a polynomial")]
    NotPolynomial { r: usize, s: usize },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl SectionError {
    pub fn is_guard(&self) -> bool {
        matches!(self, SectionError::Guard(_))
    }

    /// Failures that would contradict a proved statement rather than a bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            SectionError::NotDivisible(_)
                | SectionError::NotPolynomial { .. }
                | SectionError::NotUnipotentInvariant { .. }
                | SectionError::WeightMismatch { .. }
                | SectionError::InhomogeneousWeight
        )
    }
}

/// A verified section: `body` has weight `weight` and is unipotent invariant.
#[derive(Debug, Clone)]
pub struct Section {
    pub n: usize,
    pub p: u64,
    pub body: FpPoly,
    pub weight: Weight,
    pub name: Option<String>,
}

impl Section {
    /// The product of two sections is a section of the summed weight.
    pub fn mul(&self, o: &Section) -> Result<Section, SectionError> {
        check_equivariance(&(&self.body * &o.body), &self.weight.add(&o.weight), self.n)
    }
}

/// Images of the entries under A ↦ u·A·φ(u)⁻¹ with u = 1 + t·E_{k,l}, k > l.
///
/// Left multiplication adds t·(row l) to row k; right multiplication by
/// φ(u)⁻¹ = 1 − t^p·E_{k,l} then subtracts t^p·(column k) from column l.
pub fn unipotent_substitution(n: usize, k: usize, l: usize, p: u64) -> HashMap<fpoly::Var, FpPoly> {
    let t = FpPoly::var(p, T);
    let tp = t.pow(p as u32);
    let y = |r: usize, c: usize| {
        let base = FpPoly::var(p, a(r, c));
        if r == k {
            &base + &(&t * &FpPoly::var(p, a(l, c)))
        } else {
            base
        }
    };
    let mut map = HashMap::new();
    for r in 1..=n {
        for c in 1..=n {
            let img = if c == l { &y(r, l) - &(&tp * &y(r, k)) } else { y(r, c) };
            if img != FpPoly::var(p, a(r, c)) {
                map.insert(a(r, c), img);
            }
        }
    }
    map
}

/// Weight check followed by invariance under every elementary u = 1 + t·E_{k,l}.
///
/// The u_{k,l}(t) generate the lower unipotent group and A ↦ uAφ(u)⁻¹ is a
/// group action, so invariance under each one-parameter subgroup, identically
/// in t, gives invariance under the whole group.
pub fn check_equivariance(f: &FpPoly, lambda: &Weight, n: usize) -> Result<Section, SectionError> {
    let p = f.p();
    if !f.is_zero() {
        let found = f.weight_of(n)?.ok_or(SectionError::InhomogeneousWeight)?;
        if &found != lambda {
            return Err(SectionError::WeightMismatch { found, claimed: lambda.clone() });
        }
    }
    for k in 1..=n {
        for l in 1..k {
            let moved = f.substitute(&unipotent_substitution(n, k, l, p));
            let diff = &moved - f;
            if let Some((t_power, coef)) = diff.coefficients_in(T).into_iter().next() {
                return Err(SectionError::NotUnipotentInvariant { k, l, t_power, witness: format!("{coef:?}") });
            }
        }
    }
    Ok(Section { n, p, body: f.clone(), weight: lambda.clone(), name: None })
}

/// Equivariance of num / Π Δ_k^{den_k}. The Δ_k are invariant, so it is
/// enough that num(uAφ(u)⁻¹)·D(A) = num(A)·D(uAφ(u)⁻¹), which with D invariant
/// is invariance of num; the weight is wt(num) − wt(D).
pub fn check_fraction_equivariance(basis: &MinorBasis, x: &MinorFraction, lambda: &Weight) -> Result<(), SectionError> {
    let n = basis.n();
    let dw = den_weight(basis, &x.den).ok_or(SectionError::InhomogeneousWeight)?;
    check_equivariance(&x.num, &lambda.add(&dw), n).map(|_| ())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionName {
    Delta(usize),
    Hasse,
    AlphaSp4,
    EpsilonSp6,
    F1Sp6,
    F2Sp6,
    ThetaSp6,
    RhoSp6,
    TauSp6,
}

impl SectionName {
    pub fn label(self) -> String {
        match self {
            SectionName::Delta(i) => format!("delta{i}"),
            SectionName::Hasse => "hasse".into(),
            SectionName::AlphaSp4 => "alphasp4".into(),
            SectionName::EpsilonSp6 => "epsilonsp6".into(),
            SectionName::F1Sp6 => "f1sp6".into(),
            SectionName::F2Sp6 => "f2sp6".into(),
            SectionName::ThetaSp6 => "thetasp6".into(),
            SectionName::RhoSp6 => "rhosp6".into(),
            SectionName::TauSp6 => "tausp6".into(),
        }
    }

    /// Matrix size the name lives on, if fixed.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            SectionName::AlphaSp4 => Some(2),
            SectionName::Delta(_) | SectionName::Hasse => None,
            _ => Some(3),
        }
    }
}

impl fmt::Display for SectionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SectionName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.to_ascii_lowercase();
        if let Some(i) = s.strip_prefix("delta") {
            return i.parse().map(SectionName::Delta).map_err(|_| format!("bad minor index in '{s}'"));
        }
        Ok(match s.as_str() {
            "hasse" => SectionName::Hasse,
            "alphasp4" => SectionName::AlphaSp4,
            "epsilonsp6" => SectionName::EpsilonSp6,
            "f1sp6" => SectionName::F1Sp6,
            "f2sp6" => SectionName::F2Sp6,
            "thetasp6" => SectionName::ThetaSp6,
            "rhosp6" => SectionName::RhoSp6,
            "tausp6" => SectionName::TauSp6,
            _ => return Err(format!("unknown section '{s}'")),
        })
    }
}

fn var(p: u64, i: usize, j: usize) -> FpPoly {
    FpPoly::var(p, a(i, j))
}

/// ε = a11·a13^p + a12·a23^p + a13·a33^p.
pub fn epsilon_sp6(p: u64) -> FpPoly {
    let pe = p as u32;
    let terms = [(1, 1, 1, 3), (1, 2, 2, 3), (1, 3, 3, 3)];
    terms.iter().fold(FpPoly::zero(p), |acc, &(i, j, k, l)| &acc + &(&var(p, i, j) * &var(p, k, l).pow(pe)))
}

/// f1 = a12·Δ2^p + Δ1·δ21^p with δ21 the plain (2,1) minor.
pub fn f1_sp6(p: u64) -> FpPoly {
    let pe = p as u32;
    &(&var(p, 1, 2) * &delta(3, 2, p).pow(pe)) + &(&delta(3, 1, p) * &delta_minor(3, 2, 1, p).pow(pe))
}

/// f2 = Δ1^p·δ32 − Δ2·a23^p where δ32 is the signed cofactor, the negative of
/// the (3,2) minor. With the plain minor the result is not invariant for odd p.
pub fn f2_sp6(p: u64) -> FpPoly {
    let pe = p as u32;
    let cofactor = -&delta_minor(3, 3, 2, p);
    &(&delta(3, 1, p).pow(pe) * &cofactor) - &(&delta(3, 2, p) * &var(p, 2, 3).pow(pe))
}

/// α = a11·Δ1^{p−1} + a22^p.
pub fn alpha_sp4(p: u64) -> FpPoly {
    &(&var(p, 1, 1) * &delta(2, 1, p).pow(p as u32 - 1)) + &var(p, 2, 2).pow(p as u32)
}

fn divide_claim(num: &FpPoly, den: &FpPoly, what: &str) -> Result<FpPoly, SectionError> {
    num.exact_divide(den)?.ok_or_else(|| SectionError::NotDivisible(what.to_string()))
}

/// θ = (Δ2^{p+1}ε + f1f2)/Δ1^{p+1}.
pub fn theta_sp6(p: u64) -> Result<FpPoly, SectionError> {
    let pe = p as u32;
    let num = &(&delta(3, 2, p).pow(pe + 1) * &epsilon_sp6(p)) + &(&f1_sp6(p) * &f2_sp6(p));
    divide_claim(&num, &delta(3, 1, p).pow(pe + 1), "Δ2^{p+1}ε + f1f2 by Δ1^{p+1}")
}

/// ρ = (Δ2·f2^{p−1} − ε^p)/Δ1^p.
pub fn rho_sp6(p: u64) -> Result<FpPoly, SectionError> {
    let pe = p as u32;
    let num = &(&delta(3, 2, p) * &f2_sp6(p).pow(pe - 1)) - &epsilon_sp6(p).pow(pe);
    divide_claim(&num, &delta(3, 1, p).pow(pe), "Δ2·f2^{p−1} − ε^p by Δ1^p")
}

/// τ = (Δ2^{p²} − f1^{p−1}ε)/Δ1^p.
pub fn tau_sp6(p: u64) -> Result<FpPoly, SectionError> {
    let pe = p as u32;
    let num = &delta(3, 2, p).pow(pe * pe) - &(&f1_sp6(p).pow(pe - 1) * &epsilon_sp6(p));
    divide_claim(&num, &delta(3, 1, p).pow(pe), "Δ2^{p²} − f1^{p−1}ε by Δ1^p")
}

/// Weight stated for a catalog section, where one is stated.
pub fn stated_weight(name: SectionName, n: usize, p: u64) -> Option<Weight> {
    let pi = p as i64;
    match name {
        SectionName::Delta(i) => Some(schubert_weight(n, i, p)),
        SectionName::Hasse => Some(crate::rootdata::eta_omega(n, p)),
        SectionName::AlphaSp4 => Some(Weight::new([0, -pi * (pi - 1)])),
        SectionName::EpsilonSp6 => Some(Weight::new([1, 0, -pi * pi])),
        SectionName::F1Sp6 => Some(crate::catalog::eta(3, 1, p)),
        SectionName::F2Sp6 => Some(crate::catalog::eta(3, 2, p)),
        SectionName::ThetaSp6 | SectionName::RhoSp6 | SectionName::TauSp6 => None,
    }
}

/// Build a named section and verify it. Names fixed to Sp(4) or Sp(6) ignore `n`.
pub fn catalog_section(name: SectionName, n: usize, p: u64) -> Result<Section, SectionError> {
    let n = name.fixed_rank().unwrap_or(n);
    let body = match name {
        SectionName::Delta(i) => {
            if i == 0 || i > n {
                return Err(SectionError::Invalid(format!("Δ_{i} needs 1 <= i <= {n}")));
            }
            delta(n, i, p)
        }
        SectionName::Hasse => delta(n, n, p),
        SectionName::AlphaSp4 => alpha_sp4(p),
        SectionName::EpsilonSp6 => epsilon_sp6(p),
        SectionName::F1Sp6 => f1_sp6(p),
        SectionName::F2Sp6 => f2_sp6(p),
        SectionName::ThetaSp6 => theta_sp6(p)?,
        SectionName::RhoSp6 => rho_sp6(p)?,
        SectionName::TauSp6 => tau_sp6(p)?,
    };
    let weight = match stated_weight(name, n, p) {
        Some(w) => w,
        None => body.weight_of(n)?.ok_or(SectionError::InhomogeneousWeight)?,
    };
    let mut s = check_equivariance(&body, &weight, n)?;
    s.name = Some(name.label());
    Ok(s)
}

/// z with zA anti-triangular, and Γ = zAφ(z)⁻¹, over the minor-localized ring.
pub struct GammaMatrix {
    pub n: usize,
    pub p: u64,
    pub basis: MinorBasis,
    pub z: Vec<Vec<MinorFraction>>,
    pub gamma: Vec<Vec<MinorFraction>>,
}

fn frac_matmul(b: &MinorBasis, x: &[Vec<MinorFraction>], y: &[Vec<MinorFraction>]) -> Vec<Vec<MinorFraction>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(b.zero(), |acc, k| b.add(&acc, &b.mul(&x[i][k], &y[k][j])))).collect())
        .collect()
}

/// Inverse of a unit lower-triangular matrix: W_ij = −Σ_{k=j+1}^{i} W_ik·L_kj.
fn unitriangular_inverse(b: &MinorBasis, l: &[Vec<MinorFraction>]) -> Vec<Vec<MinorFraction>> {
    let n = l.len();
    let mut w: Vec<Vec<MinorFraction>> = (0..n).map(|_| (0..n).map(|_| b.zero()).collect()).collect();
    for i in 0..n {
        w[i][i] = b.poly(FpPoly::one(b.p));
        for j in (0..i).rev() {
            let mut acc = b.zero();
            for k in j + 1..=i {
                acc = b.add(&acc, &b.mul(&w[i][k], &l[k][j]));
            }
            w[i][j] = b.neg(&acc);
        }
    }
    w
}

pub fn gamma_matrix(n: usize, p: u64) -> Result<GammaMatrix, SectionError> {
    if n > MAX_GAMMA_RANK || n == 0 {
        return Err(SectionError::Guard(format!("gamma matrix limited to 1 <= n <= {MAX_GAMMA_RANK}, got {n}")));
    }
    let basis = MinorBasis::new(n, p);
    let one = || basis.poly(FpPoly::one(p));
    let mut z: Vec<Vec<MinorFraction>> = (0..n).map(|_| (0..n).map(|_| basis.zero()).collect()).collect();
    for i in 1..=n {
        z[i - 1][i - 1] = one();
        // Σ_{j<i} z_ij a_{j,c} = −a_{i,c} for c in n+2−i..n; the system matrix has determinant Δ_{i−1}
        let cols: Vec<usize> = (n + 2 - i..=n).collect();
        for j in 1..i {
            let m: Vec<Vec<FpPoly>> = (1..i)
                .map(|r| {
                    let src = if r == j { i } else { r };
                    cols.iter().map(|&c| var(p, src, c)).collect()
                })
                .collect();
            let mut den = vec![0; n];
            den[i - 2] = 1;
            z[i - 1][j - 1] = basis.normalize(MinorFraction { num: -&det(&m, p), den });
        }
    }
    let amat: Vec<Vec<MinorFraction>> = fpoly::generic_matrix(n, p).into_iter().map(|r| r.into_iter().map(|f| basis.poly(f)).collect()).collect();
    let za = frac_matmul(&basis, &z, &amat);
    for (r, row) in za.iter().enumerate() {
        for (s, x) in row.iter().enumerate() {
            if r + s + 2 > n + 1 && !x.num.is_zero() {
                return Err(SectionError::Invalid(format!("zA entry ({},{}) is not zero", r + 1, s + 1)));
            }
        }
    }
    let phiz: Vec<Vec<MinorFraction>> = z.iter().map(|r| r.iter().map(|x| basis.frobenius(x)).collect()).collect();
    let gamma = frac_matmul(&basis, &za, &unitriangular_inverse(&basis, &phiz));
    let g = GammaMatrix { n, p, basis, z, gamma };
    g.check_invariants()?;
    Ok(g)
}

impl GammaMatrix {
    /// Zero pattern γ_rs = 0 for r+s > n+1 and wt(γ_rs) = e_r − p e_s.
    pub fn check_invariants(&self) -> Result<(), SectionError> {
        for r in 1..=self.n {
            for s in 1..=self.n {
                let x = &self.gamma[r - 1][s - 1];
                if r + s > self.n + 1 {
                    if !x.num.is_zero() {
                        return Err(SectionError::Invalid(format!("γ_({r},{s}) should vanish")));
                    }
                    continue;
                }
                let expect = crate::catalog::pol_ray(self.n, r, s, self.p);
                let found = self.entry_weight(r, s).ok_or(SectionError::InhomogeneousWeight)?;
                if found != expect {
                    return Err(SectionError::WeightMismatch { found, claimed: expect });
                }
            }
        }
        Ok(())
    }

    /// wt(num) − wt(den) of γ_rs, 1-based.
    pub fn entry_weight(&self, r: usize, s: usize) -> Option<Weight> {
        let x = &self.gamma[r - 1][s - 1];
        let num = x.num.weight_of(self.n).ok()??;
        Some(num.sub(&den_weight(&self.basis, &x.den)?))
    }

    pub fn entry(&self, r: usize, s: usize) -> &MinorFraction {
        &self.gamma[r - 1][s - 1]
    }
}

/// Δ_{r−1}·(Π_{m=s}^{n−r} Δ_m)^p as a factored denominator-exponent vector.
pub fn clearing_multiplier(n: usize, r: usize, s: usize, p: u64) -> Vec<u32> {
    let mut e = vec![0u32; n];
    if r >= 2 {
        e[r - 2] += 1;
    }
    for m in s..=n.saturating_sub(r) {
        if m >= 1 {
            e[m - 1] += p as u32;
        }
    }
    e
}

/// The weight S_{r−1} + pΣ_{m=s}^{n−r} S_m + e_r − p e_s.
pub fn clearing_weight(n: usize, r: usize, s: usize, p: u64) -> Weight {
    let mut w = crate::catalog::pol_ray(n, r, s, p);
    if r >= 2 {
        w = w.add(&schubert_weight(n, r - 1, p));
    }
    for m in s..=n.saturating_sub(r) {
        if m >= 1 {
            w = w.add(&schubert_weight(n, m, p).scale(p));
        }
    }
    w
}

/// Multiply γ_rs by its multiplier; the result must be a polynomial section.
pub fn clear_denominators(g: &GammaMatrix, r: usize, s: usize) -> Result<Section, SectionError> {
    let n = g.n;
    if r == 0 || s == 0 || r + s > n + 1 {
        return Err(SectionError::Invalid(format!("need 1 <= r, s and r+s <= n+1, got ({r},{s})")));
    }
    let mult = g.basis.poly(g.basis.den_poly(&clearing_multiplier(n, r, s, g.p)));
    let prod = g.basis.mul(&mult, g.entry(r, s));
    let body = g.basis.as_poly(&prod).ok_or(SectionError::NotPolynomial { r, s })?;
    let mut sec = check_equivariance(&body, &clearing_weight(n, r, s, g.p), n)?;
    sec.name = Some(format!("gamma_{r}_{s}_cleared"));
    Ok(sec)
}

/// γ_rs with every cancellable minor removed from the denominator.
pub fn reduced_entry(g: &GammaMatrix, r: usize, s: usize) -> MinorFraction {
    g.basis.normalize(g.entry(r, s).clone())
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Nonnegative integer n×n matrices with the given row and column sums, in
/// lexicographic order of their flattened entries. Stops past `cap` tables.
fn contingency_tables(rows: &[u64], cols: &[u64], cap: usize, out: &mut Vec<Vec<u64>>) -> bool {
    let n = rows.len();
    fn fill_row(row: &[u64], cols: &mut [u64], target: u64, j: usize, cur: &mut Vec<u64>, cb: &mut dyn FnMut(&[u64], &mut [u64]) -> bool) -> bool {
        if j == cols.len() - 1 {
            if target > cols[j] {
                return true;
            }
            cur.push(target);
            cols[j] -= target;
            let ok = cb(cur, cols);
            cols[j] += target;
            cur.pop();
            return ok;
        }
        for x in 0..=target.min(cols[j]) {
            cur.push(x);
            cols[j] -= x;
            let ok = fill_row(row, cols, target - x, j + 1, cur, cb);
            cols[j] += x;
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    fn rec(rows: &[u64], i: usize, cols: &mut [u64], acc: &mut Vec<u64>, cap: usize, out: &mut Vec<Vec<u64>>) -> bool {
        let n = rows.len();
        if i == n {
            if cols.iter().all(|&c| c == 0) {
                if out.len() >= cap {
                    return false;
                }
                out.push(acc.clone());
            }
            return true;
        }
        let mut cur = Vec::with_capacity(n);
        fill_row(&rows[i..=i], cols, rows[i], 0, &mut cur, &mut |row, cols| {
            let len = acc.len();
            acc.extend_from_slice(row);
            let ok = rec(rows, i + 1, cols, acc, cap, out);
            acc.truncate(len);
            ok
        })
    }
    let mut c = cols.to_vec();
    let mut acc = Vec::with_capacity(n * n);
    rec(rows, 0, &mut c, &mut acc, cap, out)
}

/// Monomials of weight λ on n×n matrices, as flattened exponent matrices.
pub fn weight_monomials(lambda: &Weight, n: usize, p: u64, cap: usize) -> Result<Vec<Vec<u64>>, SectionError> {
    let Some(lam) = lambda.to_i64() else {
        return Err(SectionError::Guard("weight coordinates exceed i64".into()));
    };
    let sum: i64 = lam.iter().sum();
    let pm = p as i64;
    if sum > 0 || sum % (1 - pm) != 0 {
        return Ok(vec![]);
    }
    // row sums r_i = λ_i + p·c_i with column sums c summing to N
    let total = (sum / (1 - pm)) as u64;
    let mut out = Vec::new();
    for cols in compositions(total, n) {
        let rows: Option<Vec<u64>> = (0..n).map(|i| u64::try_from(lam[i] + pm * cols[i] as i64).ok()).collect();
        let Some(rows) = rows else { continue };
        if !contingency_tables(&rows, &cols, cap, &mut out) {
            return Err(SectionError::Guard(format!("more than {cap} monomials of weight {lambda}")));
        }
    }
    Ok(out)
}

fn exps_to_mono(n: usize, e: &[u64]) -> Mono {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let x = e[(i - 1) * n + (j - 1)];
            if x > 0 {
                pairs.push((a(i, j), x as u32));
            }
        }
    }
    Mono::from_pairs(pairs)
}

/// dim of the weight-λ sections, by linear algebra on the monomials of weight λ.
pub fn h0_dimension(lambda: &Weight, n: usize, p: u64) -> Result<usize, SectionError> {
    h0_dimension_capped(lambda, n, p, DEFAULT_MONOMIAL_CAP)
}

pub fn h0_dimension_capped(lambda: &Weight, n: usize, p: u64, cap: usize) -> Result<usize, SectionError> {
    if lambda.rank() != n {
        return Err(SectionError::Invalid(format!("weight {lambda} is not of rank {n}")));
    }
    if !crate::rootdata::is_l_dominant(lambda) {
        return Ok(0);
    }
    let monos = weight_monomials(lambda, n, p, cap)?;
    if monos.is_empty() {
        return Ok(0);
    }
    // the simple root subgroups generate the lower unipotent group
    let mut subs: Vec<Substituter> =
        (1..n).map(|l| Substituter::new(p, unipotent_substitution(n, l + 1, l, p))).collect();
    // condition keys: (generator, monomial in a and t) interned to u32
    let mut keys: HashMap<(usize, Mono), u32> = HashMap::new();
    let mut space = SparseFpBasis::new(p);
    for e in &monos {
        let m = exps_to_mono(n, e);
        let mut vec: Vec<(u32, u64)> = Vec::new();
        for (g, sub) in subs.iter_mut().enumerate() {
            let img = sub.apply_mono(&m, 1);
            for (tm, c) in img.terms() {
                if tm == &m {
                    // the t^0 part of the image is m itself
                    let c = (c + p - 1) % p;
                    if c == 0 {
                        continue;
                    }
                    unreachable!("t-free part of the image differs from the monomial: {c}");
                }
                let next = keys.len() as u32;
                let id = *keys.entry((g, tm.clone())).or_insert(next);
                vec.push((id, c));
            }
        }
        vec.sort_unstable();
        space.insert(vec);
    }
    Ok(monos.len() - space.rank())
}

/// Number of α^a·Δ1^b·Δ2^c of weight λ, i.e. solutions of
/// a·(0,−p(p−1)) + b·(1,−p) + c·(1−p,1−p) = λ in nonnegative integers.
pub fn rzip_sp4_graded_dimension(lambda: &Weight, p: u64) -> usize {
    let Some(l) = lambda.to_i64() else { return 0 };
    if l.len() != 2 {
        return 0;
    }
    let p = p as i64;
    let (l1, l2) = (l[0], l[1]);
    // λ1 − λ2 = p(p−1)a + (p+1)b
    let diff = l1 - l2;
    if diff < 0 {
        return 0;
    }
    let mut count = 0;
    for a in 0..=diff / (p * (p - 1)) {
        let rest = diff - p * (p - 1) * a;
        if rest % (p + 1) != 0 {
            continue;
        }
        let b = rest / (p + 1);
        // λ1 = b + (1−p)c
        let c_num = l1 - b;
        if c_num % (1 - p) == 0 && c_num / (1 - p) >= 0 {
            count += 1;
        }
    }
    count
}

/// A function poly·det^{det_power} on GL_n.
#[derive(Debug, Clone)]
pub struct TwistedPoly {
    pub poly: FpPoly,
    pub det_power: i64,
}

#[derive(Debug, Clone)]
pub struct TildeResult {
    /// Π_s poly(X·s) times Π_s det(s)^{det_power}; the full f̃ is body·det^{body_det_power}.
    pub body: Option<FpPoly>,
    pub body_det_power: i64,
    /// Order in t along the test curve b·δ(t)·s, summed over s.
    pub t_valuation: i64,
    /// t_valuation / (p − 1).
    pub det_valuation: i64,
}

/// X ↦ X·s.
pub fn right_translation(n: usize, p: u64, s: &linalg::FpMat) -> HashMap<fpoly::Var, FpPoly> {
    let mut map = HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let img = (1..=n).fold(FpPoly::zero(p), |acc, m| &acc + &var(p, i, m).scale(s[m - 1][j - 1] as i64));
            map.insert(a(i, j), img);
        }
    }
    map
}

/// Entries of b·δ'(t)·s with b upper unipotent in symbols c_ij and δ'(t) = diag(t,...,t,1).
fn test_curve(n: usize, p: u64, s: &linalg::FpMat) -> HashMap<fpoly::Var, FpPoly> {
    let t = FpPoly::var(p, T);
    let bd = |i: usize, m: usize| -> FpPoly {
        let b = match i.cmp(&m) {
            Ordering::Equal => FpPoly::one(p),
            Ordering::Less => FpPoly::var(p, fpoly::c(i, m)),
            Ordering::Greater => FpPoly::zero(p),
        };
        if m < n {
            &b * &t
        } else {
            b
        }
    };
    let mut map = HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let img = (1..=n).fold(FpPoly::zero(p), |acc, m| &acc + &bd(i, m).scale(s[m - 1][j - 1] as i64));
            map.insert(a(i, j), img);
        }
    }
    map
}

/// The norm f̃(X) = Π_{s ∈ GL_n(F_p)} f(X·s) and its valuation along the boundary.
///
/// The valuation is read on the curve b·δ(t)·s with δ(t) = diag(1,...,1,t⁻¹):
/// f(bδ(t)s) = t^{−deg f}·f(bδ'(t)s) with δ' = t·δ, so each factor contributes
/// ord_t poly(bδ's) − (n−1)·k_det·... as computed below. `with_body` expands
/// the product itself, which is only feasible for small groups.
pub fn tilde_section(f: &TwistedPoly, n: usize, p: u64, with_body: bool) -> Result<TildeResult, SectionError> {
    if f.poly.is_zero() {
        return Err(SectionError::ZeroFunction);
    }
    let order = linalg::gl_order(n, p);
    if order > GROUP_ORDER_CAP {
        return Err(SectionError::Guard(format!("|GL_{n}(F_{p})| = {order} exceeds {GROUP_ORDER_CAP}")));
    }
    let deg_poly = f.poly.total_degree().unwrap_or(0) as i64;
    // total degree of f as a homogeneous function
    let deg = deg_poly + n as i64 * f.det_power;
    let group = linalg::gl_elements(n, p);
    let mut t_val = 0i64;
    let mut body = with_body.then(|| FpPoly::one(p));
    for s in &group {
        let on_curve = f.poly.substitute(&test_curve(n, p, s));
        let ord = on_curve.min_degree_in(T).expect("nonzero on the curve") as i64;
        // det(bδ's) = t^{n−1}·det s
        t_val += ord + (n as i64 - 1) * f.det_power - deg;
        if let Some(b) = body.as_mut() {
            let moved = f.poly.substitute(&right_translation(n, p, s));
            let ds = linalg::det_mod(s, p);
            let scalar = if f.det_power >= 0 {
                fpoly::FpPoly::constant(p, ds as i64).pow(f.det_power as u32)
            } else {
                fpoly::FpPoly::constant(p, linalg::inv_mod(ds, p) as i64).pow((-f.det_power) as u32)
            };
            *b = &(&*b * &moved) * &scalar;
        }
    }
    let pm1 = p as i64 - 1;
    if t_val % pm1 != 0 {
        return Err(SectionError::Invalid(format!("t-valuation {t_val} is not divisible by p-1 = {pm1}")));
    }
    Ok(TildeResult { body, body_det_power: f.det_power * group.len() as i64, t_valuation: t_val, det_valuation: t_val / pm1 })
}

/// Sign of −Σ_{w ∈ W_L} p^{ℓ(w)}⟨wλ, α^∨⟩ for α ∈ Δ∖I.
pub fn valuation_sign_predict(lambda: &Weight, alpha: usize, datum: &SymplecticRootDatum, p: u64) -> Result<Ordering, SectionError> {
    if datum.levi_type.contains(&alpha) || alpha >= datum.simple.len() {
        return Err(SectionError::Invalid(format!("simple root {alpha} is not outside the Levi type")));
    }
    let coroot = &datum.simple[alpha].coroot;
    let mut total = BigInt::zero();
    for w in all_permutations(datum.n) {
        total += w.act(lambda).dot(coroot) * BigInt::from(p).pow(w.length() as u32);
    }
    Ok((-total).signum().to_i64().unwrap_or(0).cmp(&0))
}

/// Exponent vectors of monomials and their h0 conditions, kept for reports.
pub fn monomial_count(lambda: &Weight, n: usize, p: u64, cap: usize) -> Result<usize, SectionError> {
    Ok(weight_monomials(lambda, n, p, cap)?.len())
}

/// Smallest m ≥ 1 with m·λ in the monoid spanned by `gens`, searching m ≤ `max_m`.
pub fn monoid_multiple(gens: &crate::cone::GeneratedCone, lambda: &Weight, max_m: u64) -> Option<u64> {
    (1..=max_m).find(|&m| matches!(crate::cone::monoid_membership(gens, &lambda.scale(m)), Ok(Some(_))))
}

/// Per-weight summary used by sweeps.
pub fn dims_over_box(n: usize, p: u64, bounds: &[(i64, i64)]) -> Result<BTreeMap<Vec<i64>, usize>, SectionError> {
    let mut out = BTreeMap::new();
    for pt in crate::cone::box_points(bounds) {
        let w = Weight::new(pt.clone());
        out.insert(pt, h0_dimension(&w, n, p)?);
    }
    Ok(out)
}

pub fn is_positive(b: &BigInt) -> bool {
    b.is_positive()
}
