//! Root datum of Sp(2n) with Levi GL_n, in the coordinates X*(T) = Z^n.
//!
//! Simple roots are α_i = e_{i+1} − e_i (i < n) and β = 2e_n, with coroots
//! α_i^∨ = e_{i+1} − e_i and β^∨ = e_n. Dominance is read off coordinates:
//! L-dominant means a_1 ≥ ... ≥ a_n.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("gaussian binomial needs 0 <= i <= n, got n={n}, i={i}")]
    Range { n: i64, i: i64 },
    #[error("simple root {0} lies in the Levi type I")]
    RootInLevi(usize),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub root: Weight,
    pub coroot: Weight,
}

#[derive(Debug, Clone)]
pub struct SymplecticRootDatum {
    pub n: usize,
    pub positive_roots: Vec<Weight>,
    /// Δ in the order α_1, ..., α_{n−1}, β.
    pub simple: Vec<Root>,
    /// Indices into `simple` forming I = Δ \ {β}.
    pub levi_type: Vec<usize>,
    /// Frobenius action on Δ as a permutation of indices.
    pub sigma: Vec<usize>,
}

impl SymplecticRootDatum {
    /// The split datum (σ = identity).
    pub fn split(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        let e = |i: usize| Weight::unit(n, i);
        let mut positive_roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                positive_roots.push(e(i).sub(&e(j)));
                positive_roots.push(e(i).add(&e(j)));
            }
            positive_roots.push(e(i).scale(2));
        }
        let mut simple: Vec<Root> = (1..n)
            .map(|i| {
                let a = e(i + 1).sub(&e(i));
                Root { root: a.clone(), coroot: a }
            })
            .collect();
        simple.push(Root { root: e(n).scale(2), coroot: e(n) });
        SymplecticRootDatum { n, positive_roots, simple, levi_type: (0..n - 1).collect(), sigma: (0..n).collect() }
    }

    pub fn beta_index(&self) -> usize {
        self.n - 1
    }

    pub fn beta(&self) -> &Root {
        &self.simple[self.beta_index()]
    }

    /// Indices of the simple roots outside I.
    pub fn outside_levi(&self) -> Vec<usize> {
        (0..self.simple.len()).filter(|i| !self.levi_type.contains(i)).collect()
    }

    /// I_α: roots of I orthogonal to α^∨.
    pub fn orthogonal_levi(&self, alpha: usize) -> Vec<usize> {
        let c = &self.simple[alpha].coroot;
        self.levi_type.iter().copied().filter(|&i| self.simple[i].root.dot(c).is_zero()).collect()
    }

    /// δ_α = −Σ_{i<r} p^i σ^i(α^∨) with r the σ-orbit length of α.
    pub fn delta_alpha(&self, alpha: usize, p: u64) -> Weight {
        let mut acc = Weight::zero(self.n);
        let mut cur = alpha;
        let mut pw = BigInt::one();
        loop {
            acc = acc.sub(&self.simple[cur].coroot.scale(pw.clone()));
            pw *= p;
            cur = self.sigma[cur];
            if cur == alpha {
                break;
            }
        }
        acc
    }

    /// Weights satisfying ⟨λ, α^∨⟩ ≤ 0 for every simple α.
    pub fn is_antidominant(&self, lambda: &Weight) -> bool {
        self.simple.iter().all(|r| !lambda.dot(&r.coroot).is_positive())
    }
}

pub fn pairing(lambda: &Weight, coroot: &Weight) -> Result<BigInt, RootError> {
    if lambda.rank() != coroot.rank() {
        return Err(RootError::RankMismatch { expected: coroot.rank(), found: lambda.rank() });
    }
    Ok(lambda.dot(coroot))
}

pub fn is_l_dominant(lambda: &Weight) -> bool {
    lambda.0.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_dominant(lambda: &Weight) -> bool {
    is_l_dominant(lambda) && lambda.0.last().map_or(true, |a| !a.is_negative())
}

pub fn is_antidominant(lambda: &Weight) -> bool {
    SymplecticRootDatum::split(lambda.rank().max(1)).is_antidominant(lambda)
}

/// λ ↦ λ − p·w_{0,I}λ, i.e. λ − p·reverse(λ).
pub fn h_map(lambda: &Weight, p: u64) -> Weight {
    lambda.sub(&lambda.reversed().scale(p))
}

/// μ_i = (1,...,1,0,...,0) with i ones.
pub fn fundamental_weight(n: usize, i: usize) -> Weight {
    Weight::new((0..n).map(|k| i64::from(k < i)))
}

/// S_i = h(μ_i).
pub fn schubert_weight(n: usize, i: usize, p: u64) -> Weight {
    h_map(&fundamental_weight(n, i), p)
}

/// η_ω = (1−p, ..., 1−p).
pub fn eta_omega(n: usize, p: u64) -> Weight {
    Weight::new(vec![1 - p as i64; n])
}

/// Element of W_L = S_n; `perm[i] = w(i)` on 0-based coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeviWeylElement {
    pub perm: Vec<usize>,
}

impl LeviWeylElement {
    pub fn new(perm: Vec<usize>) -> Result<Self, RootError> {
        let mut seen = vec![false; perm.len()];
        for &x in &perm {
            if x >= perm.len() || std::mem::replace(&mut seen[x], true) {
                return Err(RootError::NotPermutation(perm.len()));
            }
        }
        Ok(LeviWeylElement { perm })
    }

    pub fn identity(n: usize) -> Self {
        LeviWeylElement { perm: (0..n).collect() }
    }

    pub fn length(&self) -> usize {
        let p = &self.perm;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            inv[x] = i;
        }
        LeviWeylElement { perm: inv }
    }

    /// (wλ)_{w(i)} = λ_i.
    pub fn act(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.clone();
        for (i, &x) in self.perm.iter().enumerate() {
            out.0[x] = lambda.0[i].clone();
        }
        out
    }
}

pub fn all_permutations(n: usize) -> Vec<LeviWeylElement> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<LeviWeylElement>) {
        if cur.len() == n {
            out.push(LeviWeylElement { perm: cur.clone() });
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// ^K W_L: elements w with ℓ(s w) > ℓ(w) for every simple reflection s ∈ K.
///
/// `k` holds indices i of α_i = e_{i+1} − e_i, 0-based (so s swaps i and i+1).
/// Left multiplication by s_i raises the length exactly when w⁻¹(i) < w⁻¹(i+1).
pub fn min_coset_reps(n: usize, k: &[usize]) -> Vec<LeviWeylElement> {
    all_permutations(n)
        .into_iter()
        .filter(|w| {
            let inv = w.inverse();
            k.iter().all(|&i| inv.perm[i] < inv.perm[i + 1])
        })
        .collect()
}

/// [n choose i]_p = ∏_{k=i+1}^{n}(p^k − 1) / ∏_{k=1}^{n−i}(p^k − 1).
pub fn gaussian_binomial(n: i64, i: i64, p: u64) -> Result<BigInt, RootError> {
    if i < 0 || i > n {
        return Err(RootError::Range { n, i });
    }
    let pk = |k: i64| BigInt::from(p).pow(k as u32) - 1;
    let num: BigInt = (i + 1..=n).map(pk).product();
    let den: BigInt = (1..=n - i).map(pk).product();
    Ok(num / den)
}

/// The same coefficient as a polynomial in p, lowest degree first.
///
/// Built from the q-Pascal rule [n,i] = [n−1,i−1] + p^i·[n−1,i], so the
/// result has nonnegative integer coefficients and is not derived from the
/// product formula.
pub fn gaussian_binomial_poly(n: usize, i: usize) -> Vec<BigInt> {
    if i > n {
        return vec![];
    }
    if i == 0 || i == n {
        return vec![BigInt::one()];
    }
    let a = gaussian_binomial_poly(n - 1, i - 1);
    let b = gaussian_binomial_poly(n - 1, i);
    let mut out = vec![BigInt::zero(); (a.len()).max(b.len() + i)];
    for (k, c) in a.into_iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.into_iter().enumerate() {
        out[k + i] += c;
    }
    out
}

pub fn eval_poly(coeffs: &[BigInt], x: i64) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}
