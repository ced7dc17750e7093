//! Sparse polynomials over F_p in the entries a_{i,j} of an n×n matrix,
//! plus auxiliary variables (a deformation parameter t and entries c_{i,j}).
//!
//! Monomials are sorted sparse exponent lists; terms are kept in graded
//! lexicographic order with a_{1,1} > a_{1,2} > ... > a_{n,n} > t > c_{i,j}.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cone::Weight;
use crate::linalg::inv_mod;

pub type Var = u16;

const A_BASE: Var = 0;
pub const T: Var = 1024;
const C_BASE: Var = 2048;

/// a_{i,j}, 1-based, i and j at most 15.
pub fn a(i: usize, j: usize) -> Var {
    debug_assert!((1..16).contains(&i) && (1..16).contains(&j));
    A_BASE + (i * 16 + j) as Var
}

/// Auxiliary c_{i,j}.
pub fn c(i: usize, j: usize) -> Var {
    C_BASE + (i * 16 + j) as Var
}

/// (i, j) if `v` is a matrix entry a_{i,j}.
pub fn entry_of(v: Var) -> Option<(usize, usize)> {
    (v < T).then(|| ((v / 16) as usize, (v % 16) as usize))
}

pub fn var_name(v: Var) -> String {
    match v {
        _ if v < T => format!("a_{}_{}", v / 16, v % 16),
        T => "t".to_string(),
        _ => format!("c_{}_{}", (v - C_BASE) / 16, (v - C_BASE) % 16),
    }
}

pub fn parse_var(s: &str) -> Option<Var> {
    if s == "t" {
        return Some(T);
    }
    let (kind, rest) = s.split_once('_')?;
    let (i, j) = rest.split_once('_')?;
    let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
    if !(1..16).contains(&i) || !(1..16).contains(&j) {
        return None;
    }
    match kind {
        "a" => Some(a(i, j)),
        "c" => Some(c(i, j)),
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("weight is only defined on matrix entries, found {0}")]
    AuxiliaryVariable(String),
    #[error("entry a_{0}_{1} is outside an {2}x{2} matrix")]
    EntryOutOfRange(usize, usize, usize),
    #[error("malformed polynomial json: {0}")]
    Json(String),
}

/// Sorted list of (variable, positive exponent).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|x| x.1 > 0);
        pairs.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Mono(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|x| x.1).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.iter().find(|x| x.0 == v).map_or(0, |x| x.1)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// self / o when o divides self.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == o.0.len()).then_some(Mono(out))
    }

    pub fn scale_exponents(&self, k: u32) -> Mono {
        Mono(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Drop one variable, returning its exponent and the rest.
    pub fn split_off(&self, v: Var) -> (u32, Mono) {
        let e = self.exp(v);
        (e, Mono(self.0.iter().copied().filter(|x| x.0 != v).collect()))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let (a, b) = (&self.0, &o.0);
            for k in 0..a.len().min(b.len()) {
                if a[k].0 != b[k].0 {
                    // the one carrying the earlier variable is larger
                    return b[k].0.cmp(&a[k].0);
                }
                if a[k].1 != b[k].1 {
                    return a[k].1.cmp(&b[k].1);
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", var_name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over F_p with coefficients in 1..p.
#[derive(Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    terms: BTreeMap<Mono, u64>,
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        let c = c.rem_euclid(p as i64) as u64;
        FpPoly::monomial(p, Mono::one(), c)
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn var(p: u64, v: Var) -> Self {
        FpPoly::monomial(p, Mono::var(v, 1), 1)
    }

    pub fn monomial(p: u64, m: Mono, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        if c % p != 0 {
            terms.insert(m, c % p);
        }
        FpPoly { p, terms }
    }

    /// Builds from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Mono, u64)>>(p: u64, it: I) -> Self {
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert(0) += c % p;
        }
        FpPoly { p, terms: acc.into_iter().filter_map(|(m, c)| (c % p != 0).then(|| (m, c % p))).collect() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, u64)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn leading(&self) -> Option<(&Mono, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Mono) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn scale(&self, k: i64) -> FpPoly {
        let k = k.rem_euclid(self.p as i64) as u64;
        if k == 0 {
            return FpPoly::zero(self.p);
        }
        FpPoly { p: self.p, terms: self.terms.iter().map(|(m, &c)| (m.clone(), c * k % self.p)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, k: u64) -> FpPoly {
        let k = k % self.p;
        if k == 0 {
            return FpPoly::zero(self.p);
        }
        FpPoly { p: self.p, terms: self.terms.iter().map(|(x, &c)| (x.mul(m), c * k % self.p)).collect() }
    }

    fn add_scaled(&mut self, o: &FpPoly, k: u64) {
        let p = self.p;
        for (m, &c) in &o.terms {
            let add = c * k % p;
            let e = self.terms.entry(m.clone()).or_insert(0);
            *e = (*e + add) % p;
            if *e == 0 {
                self.terms.remove(m);
            }
        }
    }

    pub fn pow(&self, e: u32) -> FpPoly {
        // f^(Σ d_k p^k) = Π (φ^k f)^{d_k}, with φ the Frobenius twist
        let mut result = FpPoly::one(self.p);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            let d = e % self.p as u32;
            for _ in 0..d {
                result = &result * &base;
            }
            e /= self.p as u32;
            if e > 0 {
                base = base.frobenius_twist();
            }
        }
        result
    }

    /// Multiplies every exponent by p; equals f^p since coefficients lie in F_p.
    pub fn frobenius_twist(&self) -> FpPoly {
        FpPoly { p: self.p, terms: self.terms.iter().map(|(m, &c)| (m.scale_exponents(self.p as u32), c)).collect() }
    }

    /// q with f = q·g, or None when g does not divide f.
    pub fn exact_divide(&self, g: &FpPoly) -> Result<Option<FpPoly>, PolyError> {
        let (lm, lc) = match g.leading() {
            Some((m, c)) => (m.clone(), c),
            None => return Err(PolyError::DivisionByZero),
        };
        let inv = inv_mod(lc, self.p);
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c)) {
            let Some(qm) = m.div(&lm) else {
                return Ok(None);
            };
            let qc = c * inv % self.p;
            rem.add_scaled(&g.mul_mono(&qm, qc), self.p - 1);
            quot.insert(qm, qc);
        }
        Ok(Some(FpPoly { p: self.p, terms: quot }))
    }

    /// Largest k with g^k | f, and the cofactor.
    pub fn divide_out(&self, g: &FpPoly) -> Result<(u32, FpPoly), PolyError> {
        let mut k = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return Ok((0, cur));
        }
        while let Some(q) = cur.exact_divide(g)? {
            cur = q;
            k += 1;
        }
        Ok((k, cur))
    }

    /// Common weight of all terms under wt(a_{i,j}) = e_i − p e_j, or None when
    /// the terms disagree. Zero has no weight.
    pub fn weight_of(&self, n: usize) -> Result<Option<Weight>, PolyError> {
        let mut found: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let w = mono_weight(m, n, self.p)?;
            match &found {
                None => found = Some(w),
                Some(f) if *f == w => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(found.map(Weight::new))
    }

    /// Replace variables by polynomials; untouched variables stay.
    pub fn substitute(&self, map: &HashMap<Var, FpPoly>) -> FpPoly {
        Substituter::new(self.p, map.clone()).apply(self)
    }

    /// Coefficients with respect to powers of `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, FpPoly> {
        let mut out: BTreeMap<u32, FpPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_insert_with(|| FpPoly::zero(self.p)).terms.insert(rest, c);
        }
        out
    }

    /// Smallest exponent of `v` over all terms.
    pub fn min_degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|x| x.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, c)| {
                let exps: Map<String, Value> = m.pairs().iter().map(|&(v, e)| (var_name(v), json!(e))).collect();
                json!({"exps": exps, "coef": c})
            })
            .collect();
        json!({"p": self.p, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<FpPoly, PolyError> {
        let bad = |s: &str| PolyError::Json(s.to_string());
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("missing p"))?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Vec::new();
        for t in terms {
            let coef = t.get("coef").and_then(Value::as_u64).ok_or_else(|| bad("missing coef"))?;
            let exps = t.get("exps").and_then(Value::as_object).ok_or_else(|| bad("missing exps"))?;
            let mut pairs = Vec::new();
            for (k, e) in exps {
                let var = parse_var(k).ok_or_else(|| bad(&format!("unknown variable {k}")))?;
                let e = e.as_u64().ok_or_else(|| bad("exponent must be a nonnegative integer"))?;
                pairs.push((var, e as u32));
            }
            out.push((Mono::from_pairs(pairs), coef));
        }
        Ok(FpPoly::from_terms(p, out))
    }
}

/// Variable substitution that keeps powers of the images across calls.
pub struct Substituter {
    p: u64,
    map: HashMap<Var, FpPoly>,
    powers: HashMap<(Var, u32), FpPoly>,
}

impl Substituter {
    pub fn new(p: u64, map: HashMap<Var, FpPoly>) -> Self {
        Substituter { p, map, powers: HashMap::new() }
    }

    fn power(&mut self, v: Var, e: u32) -> &FpPoly {
        let img = &self.map[&v];
        self.powers.entry((v, e)).or_insert_with(|| img.pow(e))
    }

    /// Image of a single monomial, as a polynomial.
    pub fn apply_mono(&mut self, m: &Mono, coef: u64) -> FpPoly {
        let mut kept = Vec::new();
        let mut factor = FpPoly::monomial(self.p, Mono::one(), coef);
        for &(v, e) in m.pairs() {
            if self.map.contains_key(&v) {
                factor = &factor * self.power(v, e);
            } else {
                kept.push((v, e));
            }
        }
        factor.mul_mono(&Mono(kept), 1)
    }

    pub fn apply(&mut self, f: &FpPoly) -> FpPoly {
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        let p = self.p;
        for (m, &c) in &f.terms {
            for (fm, fc) in self.apply_mono(m, c).terms {
                let e = acc.entry(fm).or_insert(0);
                *e = (*e + fc) % p;
            }
        }
        FpPoly { p, terms: acc.into_iter().filter(|x| x.1 != 0).collect() }
    }
}

fn mono_weight(m: &Mono, n: usize, p: u64) -> Result<Vec<i64>, PolyError> {
    let mut w = vec![0i64; n];
    for &(v, e) in m.pairs() {
        let (i, j) = entry_of(v).ok_or_else(|| PolyError::AuxiliaryVariable(var_name(v)))?;
        if i > n || j > n {
            return Err(PolyError::EntryOutOfRange(i, j, n));
        }
        w[i - 1] += e as i64;
        w[j - 1] -= (p as i64) * e as i64;
    }
    Ok(w)
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c != 1 || m.0.is_empty() {
                write!(f, "{c}")?;
                if !m.0.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !m.0.is_empty() {
                write!(f, "{m:?}")?;
            }
        }
        Ok(())
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, o: &FpPoly) -> FpPoly {
        let mut r = self.clone();
        r.add_scaled(o, 1);
        r
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, o: &FpPoly) -> FpPoly {
        let mut r = self.clone();
        r.add_scaled(o, self.p - 1);
        r
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        self.scale(-1)
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(p);
        }
        let mut acc: HashMap<Mono, u64> = HashMap::with_capacity(self.len() * o.len());
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &o.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = (*e + c1 * c2) % p;
            }
        }
        FpPoly { p, terms: acc.into_iter().filter(|x| x.1 != 0).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for FpPoly {
            type Output = FpPoly;
            fn $f(self, o: FpPoly) -> FpPoly { (&self).$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

pub fn product<'a, I: IntoIterator<Item = &'a FpPoly>>(p: u64, it: I) -> FpPoly {
    it.into_iter().fold(FpPoly::one(p), |acc, f| &acc * f)
}

pub type PolyMatrix = Vec<Vec<FpPoly>>;

/// The n×n matrix of variables a_{i,j}.
pub fn generic_matrix(n: usize, p: u64) -> PolyMatrix {
    (1..=n).map(|i| (1..=n).map(|j| FpPoly::var(p, a(i, j))).collect()).collect()
}

/// Determinant by Laplace expansion along rows, memoized on the used columns.
pub fn det(m: &[Vec<FpPoly>], p: u64) -> FpPoly {
    let n = m.len();
    let mut memo: HashMap<u32, FpPoly> = HashMap::new();
    fn rec(m: &[Vec<FpPoly>], p: u64, row: usize, used: u32, memo: &mut HashMap<u32, FpPoly>) -> FpPoly {
        if row == m.len() {
            return FpPoly::one(p);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = FpPoly::zero(p);
        let mut sign = 1;
        for col in 0..m.len() {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let sub = rec(m, p, row + 1, used | (1 << col), memo);
                let term = &m[row][col] * &sub;
                acc.add_scaled(&term, if sign == 1 { 1 } else { p - 1 });
            }
            sign = -sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if n == 0 {
        return FpPoly::one(p);
    }
    rec(m, p, 0, 0, &mut memo)
}

/// Fraction-free (Bareiss) elimination; every division is exact.
pub fn det_bareiss(m: &[Vec<FpPoly>], p: u64) -> FpPoly {
    let n = m.len();
    let mut a: PolyMatrix = m.to_vec();
    let mut prev = FpPoly::one(p);
    let mut sign = 1i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return FpPoly::zero(p);
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev).expect("nonzero pivot").expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        FpPoly::one(p)
    } else {
        a[n - 1][n - 1].scale(sign)
    }
}

/// Minor of the generic matrix on the given 1-based rows and columns.
pub fn minor(p: u64, rows: &[usize], cols: &[usize]) -> FpPoly {
    let m: PolyMatrix = rows.iter().map(|&i| cols.iter().map(|&j| FpPoly::var(p, a(i, j))).collect()).collect();
    det(&m, p)
}

/// Δ_i: rows 1..i, columns n+1−i..n. Δ_0 = 1 and Δ_n = det.
pub fn delta(n: usize, i: usize, p: u64) -> FpPoly {
    let rows: Vec<usize> = (1..=i).collect();
    let cols: Vec<usize> = (n + 1 - i..=n).collect();
    minor(p, &rows, &cols)
}

/// δ_{i,j}: the unsigned minor of the generic matrix with row i and column j removed.
pub fn delta_minor(n: usize, i: usize, j: usize, p: u64) -> FpPoly {
    let rows: Vec<usize> = (1..=n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    minor(p, &rows, &cols)
}

/// num / Π Δ_k^{den[k−1]}, with the denominator kept factored over Δ_1..Δ_n.
#[derive(Clone, Debug)]
pub struct MinorFraction {
    pub num: FpPoly,
    pub den: Vec<u32>,
}

/// The minors Δ_1..Δ_n that factored denominators refer to.
pub struct MinorBasis {
    pub p: u64,
    pub deltas: Vec<FpPoly>,
}

impl MinorBasis {
    pub fn new(n: usize, p: u64) -> Self {
        MinorBasis { p, deltas: (1..=n).map(|i| delta(n, i, p)).collect() }
    }

    pub fn n(&self) -> usize {
        self.deltas.len()
    }

    pub fn den_poly(&self, den: &[u32]) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        for (d, &e) in self.deltas.iter().zip(den) {
            if e > 0 {
                acc = &acc * &d.pow(e);
            }
        }
        acc
    }

    pub fn poly(&self, f: FpPoly) -> MinorFraction {
        MinorFraction { num: f, den: vec![0; self.n()] }
    }

    pub fn zero(&self) -> MinorFraction {
        self.poly(FpPoly::zero(self.p))
    }

    /// Cancel every Δ_k that divides the numerator.
    pub fn normalize(&self, mut f: MinorFraction) -> MinorFraction {
        if f.num.is_zero() {
            f.den.iter_mut().for_each(|e| *e = 0);
            return f;
        }
        for k in 0..self.n() {
            while f.den[k] > 0 {
                match f.num.exact_divide(&self.deltas[k]).expect("minors are nonzero") {
                    Some(q) => {
                        f.num = q;
                        f.den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        f
    }

    pub fn mul(&self, x: &MinorFraction, y: &MinorFraction) -> MinorFraction {
        let den = x.den.iter().zip(&y.den).map(|(a, b)| a + b).collect();
        self.normalize(MinorFraction { num: &x.num * &y.num, den })
    }

    pub fn add(&self, x: &MinorFraction, y: &MinorFraction) -> MinorFraction {
        if x.num.is_zero() {
            return y.clone();
        }
        if y.num.is_zero() {
            return x.clone();
        }
        let den: Vec<u32> = x.den.iter().zip(&y.den).map(|(a, b)| *a.max(b)).collect();
        let lift = |f: &MinorFraction| {
            let extra: Vec<u32> = den.iter().zip(&f.den).map(|(a, b)| a - b).collect();
            &f.num * &self.den_poly(&extra)
        };
        self.normalize(MinorFraction { num: &lift(x) + &lift(y), den })
    }

    pub fn neg(&self, x: &MinorFraction) -> MinorFraction {
        MinorFraction { num: -&x.num, den: x.den.clone() }
    }

    pub fn frobenius(&self, x: &MinorFraction) -> MinorFraction {
        MinorFraction { num: x.num.frobenius_twist(), den: x.den.iter().map(|e| e * self.p as u32).collect() }
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equal(&self, x: &MinorFraction, y: &MinorFraction) -> bool {
        let (dx, dy) = (self.den_poly(&x.den), self.den_poly(&y.den));
        &x.num * &dy == &y.num * &dx
    }

    /// The fraction as a polynomial, if its denominator cancels completely.
    pub fn as_poly(&self, x: &MinorFraction) -> Option<FpPoly> {
        let x = self.normalize(x.clone());
        x.den.iter().all(|&e| e == 0).then_some(x.num)
    }
}

/// Weight of the factored denominator, Σ den_k·S_k with S_k = wt(Δ_k).
pub fn den_weight(basis: &MinorBasis, den: &[u32]) -> Option<Weight> {
    let n = basis.n();
    let mut acc = Weight::zero(n);
    for (d, &e) in basis.deltas.iter().zip(den) {
        let w = d.weight_of(n).ok()??;
        acc = acc.add(&w.scale(BigInt::from(e)));
    }
    Some(acc)
}
