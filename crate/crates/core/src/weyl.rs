//! The induced module V(λ) = Ind_{B_L}^L(λ) for L = GL_n, n ≤ 3, over F_p.
//!
//! Elements are functions f on GL_n with f(bX) = λ(b)f(X) for lower triangular
//! b, stored as poly·det^{det_power}. They are spanned by products of the
//! top-justified minors (rows 1..i), which are right-translation weight vectors.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cone::{combinations, Weight};
use crate::fpoly::{self, a, c, minor, FpPoly, Mono, Substituter};
use crate::linalg::{self, FpMat, SparseFpBasis};
use crate::rootdata::is_l_dominant;
use crate::sections::{self, SectionError, TwistedPoly, GROUP_ORDER_CAP};

pub const MAX_WEYL_RANK: usize = 3;
pub const SPANNING_CAP: usize = 100_000;

/// Tag keys sit above every monomial key so eliminations keep them last.
const TAG: u32 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("{0} is not L-dominant, so V(λ) = 0")]
    EmptyModule(Weight),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("spanning set has rank {found}, the Weyl formula gives {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("weight space of {weight} has dimension {dim}, expected 1")]
    NotOneDimensional { weight: Weight, dim: usize },
    #[error("function is not in the module")]
    NotInModule,
    #[error(transparent)]
    Section(#[from] SectionError),
}

impl WeylError {
    pub fn is_guard(&self) -> bool {
        match self {
            WeylError::Guard(_) => true,
            WeylError::Section(e) => e.is_guard(),
            _ => false,
        }
    }

    pub fn is_theorem_violation(&self) -> bool {
        match self {
            WeylError::DimensionMismatch { .. } | WeylError::NotOneDimensional { .. } => true,
            WeylError::Section(e) => e.is_theorem_violation(),
            _ => false,
        }
    }
}

/// ∏_{i<j} (λ_i − λ_j + j − i)/(j − i).
pub fn weyl_dimension(lambda: &Weight) -> BigInt {
    let n = lambda.rank();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= &lambda.0[i] - &lambda.0[j] + (j - i);
            den *= j - i;
        }
    }
    num / den
}

/// Nondecreasing sequences of length m with entries below k.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..k {
            cur.push(x);
            rec(k, m, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, m, 0, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Monomial interning plus a tagged echelon form of the basis, for coordinates.
#[derive(Debug, Clone)]
struct Coordinates {
    keys: HashMap<Mono, u32>,
    echelon: SparseFpBasis,
}

impl Coordinates {
    fn new(p: u64) -> Self {
        Coordinates { keys: HashMap::new(), echelon: SparseFpBasis::new(p) }
    }

    fn vector(&mut self, f: &FpPoly) -> Vec<(u32, u64)> {
        let mut v: Vec<(u32, u64)> = f
            .terms()
            .map(|(m, c)| {
                let next = self.keys.len() as u32;
                (*self.keys.entry(m.clone()).or_insert(next), c)
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// Adds f as basis vector `tag` unless it is dependent on those before it.
    fn try_push(&mut self, f: &FpPoly, tag: u32) -> bool {
        let mut v = self.vector(f);
        v.push((TAG + tag, 1));
        let r = self.echelon.reduce(v);
        if r.first().map_or(true, |e| e.0 >= TAG) {
            return false;
        }
        self.echelon.insert(r)
    }

    /// Coordinates of f in the basis, or None if f is outside the span.
    fn coords(&self, f: &FpPoly, dim: usize, p: u64) -> Option<Vec<u64>> {
        let mut v = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            v.push((*self.keys.get(m)?, c));
        }
        v.sort_unstable();
        let r = self.echelon.reduce(v);
        let mut out = vec![0u64; dim];
        for (k, x) in r {
            if k < TAG {
                return None;
            }
            out[(k - TAG) as usize] = (p - x) % p;
        }
        Some(out)
    }
}

/// A basis of V(λ) made of weight vectors.
#[derive(Debug, Clone)]
pub struct InducedModule {
    pub lambda: Weight,
    pub n: usize,
    pub p: u64,
    /// Each basis function is basis[j]·det^{det_power}.
    pub det_power: i64,
    pub basis: Vec<FpPoly>,
    pub weights: Vec<Weight>,
    coords: Coordinates,
}

pub fn build_module(lambda: &Weight, p: u64) -> Result<InducedModule, WeylError> {
    let n = lambda.rank();
    if n == 0 || n > MAX_WEYL_RANK {
        return Err(WeylError::Guard(format!("modules are built for 1 <= n <= {MAX_WEYL_RANK}, got {n}")));
    }
    if !is_l_dominant(lambda) {
        return Err(WeylError::EmptyModule(lambda.clone()));
    }
    let lam = lambda.to_i64().ok_or_else(|| WeylError::Guard("weight coordinates exceed i64".into()))?;
    let last = lam[n - 1];
    // a nonnegative last coordinate goes into the polynomial as a det power
    let (det_power, det_in_poly) = if last < 0 { (last, 0u32) } else { (0, last as u32) };

    let mut factors: Vec<Vec<(Vec<usize>, FpPoly)>> = Vec::new();
    let mut mults = Vec::new();
    let mut count: u128 = 1;
    for i in 1..n {
        let cols: Vec<Vec<usize>> = combinations(n, i).into_iter().map(|c| c.into_iter().map(|x| x + 1).collect()).collect();
        let rows: Vec<usize> = (1..=i).collect();
        let m = (lam[i - 1] - lam[i]) as usize;
        count = count.saturating_mul(binomial(cols.len() + m - 1, m));
        factors.push(cols.into_iter().map(|cs| { let f = minor(p, &rows, &cs); (cs, f) }).collect());
        mults.push(m);
    }
    if count > SPANNING_CAP as u128 {
        return Err(WeylError::Guard(format!("spanning set of {count} products exceeds {SPANNING_CAP}")));
    }
    let choices: Vec<Vec<Vec<usize>>> = factors.iter().zip(&mults).map(|(f, &m)| multisets(f.len(), m)).collect();
    let det_factor = fpoly::delta(n, n, p).pow(det_in_poly);

    let mut module = InducedModule {
        lambda: lambda.clone(),
        n,
        p,
        det_power,
        basis: Vec::new(),
        weights: Vec::new(),
        coords: Coordinates::new(p),
    };
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut f = det_factor.clone();
        let mut counts = vec![last; n];
        for (level, &k) in idx.iter().enumerate() {
            for &pick in &choices[level][k] {
                let (cols, g) = &factors[level][pick];
                f = &f * g;
                for &col in cols {
                    counts[col - 1] += 1;
                }
            }
        }
        if module.coords.try_push(&f, module.basis.len() as u32) {
            module.basis.push(f);
            module.weights.push(Weight::new(counts));
        }
        // odometer over the per-level choices
        let mut level = 0;
        loop {
            if level == idx.len() {
                break;
            }
            idx[level] += 1;
            if idx[level] < choices[level].len() {
                break;
            }
            idx[level] = 0;
            level += 1;
        }
        if level == idx.len() {
            break;
        }
    }
    let expected = weyl_dimension(lambda).to_usize().unwrap_or(usize::MAX);
    if module.basis.len() != expected {
        return Err(WeylError::DimensionMismatch { found: module.basis.len(), expected });
    }
    Ok(module)
}

impl InducedModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, j: usize) -> TwistedPoly {
        TwistedPoly { poly: self.basis[j].clone(), det_power: self.det_power }
    }

    /// Coordinates of poly·det^{det_power} in the basis.
    pub fn coordinates(&self, poly: &FpPoly) -> Option<Vec<u64>> {
        self.coords.coords(poly, self.dim(), self.p)
    }

    /// Σ_j c_j·basis[j].
    pub fn combine(&self, coefs: &[u64]) -> FpPoly {
        self.basis.iter().zip(coefs).fold(FpPoly::zero(self.p), |acc, (f, &x)| &acc + &f.scale(x as i64))
    }

    /// f(bX) = λ(b)f(X) for generic lower triangular b, checked symbolically.
    pub fn check_borel_law(&self) -> bool {
        let n = self.n;
        let p = self.p;
        let mut map = HashMap::new();
        for r in 1..=n {
            for col in 1..=n {
                let img = (1..=r).fold(FpPoly::zero(p), |acc, m| &acc + &(&FpPoly::var(p, c(r, m)) * &FpPoly::var(p, a(m, col))));
                map.insert(a(r, col), img);
            }
        }
        let lam = self.lambda.to_i64().expect("checked at build");
        let chi = Mono::from_pairs((1..=n).filter_map(|i| {
            let e = lam[i - 1] - self.det_power;
            (e > 0).then(|| (c(i, i), e as u32))
        }).collect());
        let mut sub = Substituter::new(p, map);
        self.basis.iter().all(|f| sub.apply(f) == f.mul_mono(&chi, 1))
    }

    /// Basis indices whose weight χ has χ_n ≤ 0.
    pub fn subspace_leq0(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.weights[j].0[self.n - 1] <= BigInt::from(0)).collect()
    }

    /// Matrix of f ↦ f(X·s) on the basis, column j holding the image of basis[j].
    pub fn translation_matrix(&self, s: &FpMat) -> Result<Vec<Vec<u64>>, WeylError> {
        let p = self.p;
        let ds = linalg::det_mod(s, p);
        let scalar = if self.det_power >= 0 {
            pow_mod(ds, self.det_power as u64, p)
        } else {
            pow_mod(linalg::inv_mod(ds, p), (-self.det_power) as u64, p)
        };
        let mut sub = Substituter::new(p, sections::right_translation(self.n, p, s));
        let d = self.dim();
        let mut m = vec![vec![0u64; d]; d];
        for (j, f) in self.basis.iter().enumerate() {
            let img = sub.apply(f);
            let col = self.coordinates(&img).ok_or(WeylError::NotInModule)?;
            for i in 0..d {
                m[i][j] = col[i] * scalar % p;
            }
        }
        Ok(m)
    }

    /// The translation matrix of every s in GL_n(F_p), reached from a
    /// generating set by breadth-first products.
    pub fn group_action(&self) -> Result<Vec<(FpMat, Vec<Vec<u64>>)>, WeylError> {
        let n = self.n;
        let p = self.p;
        let order = linalg::gl_order(n, p);
        if order > GROUP_ORDER_CAP {
            return Err(WeylError::Guard(format!("|GL_{n}(F_{p})| = {order} exceeds {GROUP_ORDER_CAP}")));
        }
        let gens: Vec<(FpMat, Vec<Vec<u64>>)> =
            gl_generators(n, p).into_iter().map(|g| self.translation_matrix(&g).map(|m| (g, m))).collect::<Result<_, _>>()?;
        let id: FpMat = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let d = self.dim();
        let id_rho: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
        let mut seen: HashSet<FpMat> = HashSet::from([id.clone()]);
        let mut out = vec![(id.clone(), id_rho.clone())];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (g, rg) in &gens {
                // f ↦ f(X·s·g) is ρ(s)ρ(g)
                let sg = matmul_mod(&out[k].0, g, p);
                if seen.insert(sg.clone()) {
                    let rho = matmul_mod(&out[k].1, rg, p);
                    out.push((sg, rho));
                    queue.push_back(out.len() - 1);
                }
            }
        }
        debug_assert_eq!(out.len() as u128, order);
        out.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(out)
    }

    /// Basis of the fixed space of GL_n(F_p), as coefficient vectors.
    pub fn invariants_finite_group(&self) -> Result<Vec<Vec<u64>>, WeylError> {
        let all: Vec<usize> = (0..self.dim()).collect();
        self.fixed_vectors_within(&all)
    }

    /// Invariant vectors supported on the given basis indices.
    pub fn fixed_vectors_within(&self, support: &[usize]) -> Result<Vec<Vec<u64>>, WeylError> {
        let p = self.p;
        let d = self.dim();
        let action = self.group_action()?;
        let mut sys = SparseFpBasis::new(p);
        for &j in support {
            let mut v: Vec<(u32, u64)> = Vec::new();
            for (k, (_, rho)) in action.iter().enumerate() {
                for i in 0..d {
                    let x = (rho[i][j] + if i == j { p - 1 } else { 0 }) % p;
                    if x != 0 {
                        v.push(((k * d + i) as u32, x));
                    }
                }
            }
            v.push((TAG + j as u32, 1));
            sys.insert(v);
        }
        let mut kernel: Vec<Vec<u64>> = sys
            .rows()
            .filter(|r| r[0].0 >= TAG)
            .map(|r| {
                let mut out = vec![0u64; d];
                for &(k, x) in r {
                    out[(k - TAG) as usize] = x;
                }
                out
            })
            .collect();
        kernel.sort();
        Ok(kernel)
    }

    /// The weight space of reverse(λ), which must be a line; returns its vector.
    pub fn highest_weight_vector(&self) -> Result<TwistedPoly, WeylError> {
        let target = self.lambda.reversed();
        let hits: Vec<usize> = (0..self.dim()).filter(|&j| self.weights[j] == target).collect();
        if hits.len() != 1 {
            return Err(WeylError::NotOneDimensional { weight: target, dim: hits.len() });
        }
        Ok(self.element(hits[0]))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn matmul_mod(x: &[Vec<u64>], y: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = x.len();
    let m = y[0].len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for (k, &xik) in x[i].iter().enumerate() {
            if xik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + xik * y[k][j]) % p;
            }
        }
    }
    out
}

/// Transvections 1 + E_ij together with diag(g,1,...,1), g a primitive root.
pub fn gl_generators(n: usize, p: u64) -> Vec<FpMat> {
    let id = |n: usize| -> FpMat { (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect() };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = id(n);
                m[i][j] = 1;
                gens.push(m);
            }
        }
    }
    if p > 2 {
        let g = (2..p).find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1)).expect("F_p^× is cyclic");
        let mut m = id(n);
        m[0][0] = g;
        gens.push(m);
    }
    if gens.is_empty() {
        gens.push(id(n));
    }
    gens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThminterReport {
    pub lhs: usize,
    pub rhs: usize,
    pub agree: bool,
}

/// dim H⁰ of the zip stack against dim V(λ)_{≤0} ∩ V(λ)^{GL_n(F_p)}.
pub fn thminter_check(lambda: &Weight, p: u64) -> Result<ThminterReport, WeylError> {
    let n = lambda.rank();
    let lhs = sections::h0_dimension(lambda, n, p)?;
    let rhs = match build_module(lambda, p) {
        Ok(v) => v.fixed_vectors_within(&v.subspace_leq0())?.len(),
        Err(WeylError::EmptyModule(_)) => 0,
        Err(e) => return Err(e),
    };
    Ok(ThminterReport { lhs, rhs, agree: lhs == rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleReport {
    pub dim: usize,
    pub dim_leq0: usize,
    pub dim_invariants: usize,
    pub dim_intersection: usize,
}

pub fn module_report(lambda: &Weight, p: u64) -> Result<ModuleReport, WeylError> {
    let v = match build_module(lambda, p) {
        Ok(v) => v,
        Err(WeylError::EmptyModule(_)) => return Ok(ModuleReport { dim: 0, dim_leq0: 0, dim_invariants: 0, dim_intersection: 0 }),
        Err(e) => return Err(e),
    };
    let leq0 = v.subspace_leq0();
    Ok(ModuleReport {
        dim: v.dim(),
        dim_leq0: leq0.len(),
        dim_invariants: v.invariants_finite_group()?.len(),
        dim_intersection: v.fixed_vectors_within(&leq0)?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.iter().copied())
    }

    /// Semistandard tableaux of shape `shape` with the given content, by brute force.
    fn kostka(shape: &[usize], content: &[i64]) -> usize {
        let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
        let n = content.len();
        fn rec(cells: &[(usize, usize)], k: usize, fill: &mut HashMap<(usize, usize), usize>, left: &mut Vec<i64>, n: usize) -> usize {
            if k == cells.len() {
                return usize::from(left.iter().all(|&x| x == 0));
            }
            let (r, c) = cells[k];
            let mut total = 0;
            for v in 0..n {
                if left[v] == 0 {
                    continue;
                }
                if c > 0 && fill[&(r, c - 1)] > v {
                    continue;
                }
                if r > 0 && fill[&(r - 1, c)] >= v {
                    continue;
                }
                fill.insert((r, c), v);
                left[v] -= 1;
                total += rec(cells, k + 1, fill, left, n);
                left[v] += 1;
                fill.remove(&(r, c));
            }
            total
        }
        let mut left = content.to_vec();
        if left.iter().any(|&x| x < 0) {
            return 0;
        }
        rec(&cells, 0, &mut HashMap::new(), &mut left, n)
    }

    #[test]
    fn small_modules() {
        let v = build_module(&w(&[1, 0]), 2).unwrap();
        assert_eq!(v.dim(), 2);
        let mut ws: Vec<String> = v.weights.iter().map(|x| x.to_string()).collect();
        ws.sort();
        assert_eq!(ws, vec!["(0,1)", "(1,0)"]);
        assert_eq!(v.subspace_leq0().len(), 1);
        assert_eq!(v.basis[v.subspace_leq0()[0]], FpPoly::var(2, a(1, 1)));
        let d = build_module(&w(&[1, 1]), 2).unwrap();
        assert_eq!(d.basis, vec![fpoly::delta(2, 2, 2)]);
        assert!(d.subspace_leq0().is_empty());
        assert_eq!(build_module(&w(&[2, 0]), 3).unwrap().dim(), 3);
        assert!(matches!(build_module(&w(&[0, 1]), 2), Err(WeylError::EmptyModule(_))));
    }

    #[test]
    fn dimensions_and_characters() {
        for n in 1..=3usize {
            let bounds = vec![(-2, 2); n];
            for pt in crate::cone::box_points(&bounds) {
                let lam = Weight::new(pt.clone());
                if !is_l_dominant(&lam) {
                    continue;
                }
                let v = build_module(&lam, 2).unwrap();
                assert!(v.check_borel_law(), "{lam}");
                let shape: Vec<usize> = pt.iter().map(|&x| (x - pt[n - 1]) as usize).collect();
                let mut mult: HashMap<Weight, usize> = HashMap::new();
                for x in &v.weights {
                    *mult.entry(x.clone()).or_default() += 1;
                }
                for (chi, m) in mult {
                    let content: Vec<i64> = chi.to_i64().unwrap().iter().map(|x| x - pt[n - 1]).collect();
                    assert_eq!(m, kostka(&shape, &content), "{lam} at {chi}");
                }
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let inv = |l: &[i64]| build_module(&w(l), 2).unwrap().invariants_finite_group().unwrap().len();
        assert_eq!(inv(&[0, 0]), 1);
        assert_eq!(inv(&[1, 0]), 0);
        assert_eq!(inv(&[1, 1]), 1);
    }

    #[test]
    fn group_action_is_exact() {
        let v = build_module(&w(&[2, -1]), 3).unwrap();
        let action = v.group_action().unwrap();
        assert_eq!(action.len(), 48);
        for (s, rho) in action.iter().step_by(7) {
            assert_eq!(&v.translation_matrix(s).unwrap(), rho);
        }
    }

    #[test]
    fn highest_weight_lines() {
        let v = build_module(&w(&[1, 1]), 2).unwrap();
        assert_eq!(v.highest_weight_vector().unwrap().poly, fpoly::delta(2, 2, 2));
        let v = build_module(&w(&[1, 0]), 2).unwrap();
        assert_eq!(v.highest_weight_vector().unwrap().poly, FpPoly::var(2, a(1, 2)));
        assert!(build_module(&w(&[2, 1]), 2).unwrap().highest_weight_vector().is_ok());
    }

    #[test]
    fn thminter_examples() {
        for (l, lhs) in [(vec![0, 0], 1), (vec![1, 0], 0), (vec![1, -2], 1)] {
            let r = thminter_check(&w(&l), 2).unwrap();
            assert_eq!((r.lhs, r.rhs, r.agree), (lhs, lhs, true), "{l:?}");
        }
    }
}
