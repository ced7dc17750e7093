//! Exact linear algebra: dense over Q, sparse incremental over F_p.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn qi(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let d = &f * &m[row][c];
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of {x : rows·x = 0}.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> QMatrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve Σ_j c_j·cols[j] = target. Returns the solution when it exists and is unique.
pub fn solve_unique(cols: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let mut m: QMatrix = (0..target.len())
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some((0..k).map(|r| m[r][k].clone()).collect())
}

/// Scale a rational row to a primitive integer row with the same sign pattern.
pub fn primitive(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * qi(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_nonneg(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Incremental row basis over F_p for sparse vectors keyed by u32.
///
/// Vectors are sorted (key, coef) lists with coef in 1..p. Each stored pivot
/// row has leading coefficient 1 at its smallest key.
#[derive(Debug, Clone)]
pub struct SparseFpBasis {
    p: u64,
    pivots: HashMap<u32, Vec<(u32, u64)>>,
}

impl SparseFpBasis {
    pub fn new(p: u64) -> Self {
        SparseFpBasis { p, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce v against the stored pivots; pivot keys never survive.
    pub fn reduce(&self, mut v: Vec<(u32, u64)>) -> Vec<(u32, u64)> {
        let p = self.p;
        let mut start = 0;
        while start < v.len() {
            let (key, c) = v[start];
            let Some(piv) = self.pivots.get(&key) else {
                start += 1;
                continue;
            };
            // v -= c * piv, merging the tails
            let neg = (p - c) % p;
            let mut out = Vec::with_capacity(v.len() + piv.len());
            out.extend_from_slice(&v[..start]);
            let (mut i, mut j) = (start, 0);
            while i < v.len() || j < piv.len() {
                let take = match (v.get(i), piv.get(j)) {
                    (Some(a), Some(b)) if a.0 == b.0 => {
                        let s = (a.1 + neg * b.1) % p;
                        i += 1;
                        j += 1;
                        if s == 0 {
                            continue;
                        }
                        (a.0, s)
                    }
                    (Some(a), Some(b)) if a.0 < b.0 => {
                        i += 1;
                        *a
                    }
                    (Some(_), Some(b)) | (None, Some(b)) => {
                        j += 1;
                        (b.0, neg * b.1 % p)
                    }
                    (Some(a), None) => {
                        i += 1;
                        *a
                    }
                    (None, None) => unreachable!(),
                };
                out.push(take);
            }
            v = out;
        }
        v
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<(u32, u64)>> {
        self.pivots.values()
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<(u32, u64)>) -> bool {
        let r = self.reduce(v);
        let Some(&(lead, c)) = r.iter().find(|e| e.1 != 0) else {
            return false;
        };
        let inv = inv_mod(c, self.p);
        let normed: Vec<(u32, u64)> = r
            .into_iter()
            .filter(|e| e.1 != 0)
            .map(|(k, x)| (k, x * inv % self.p))
            .collect();
        self.pivots.insert(lead, normed);
        true
    }
}

/// Rank over F_p of a family of sparse vectors.
pub fn fp_rank<I: IntoIterator<Item = Vec<(u32, u64)>>>(p: u64, vectors: I) -> usize {
    let mut b = SparseFpBasis::new(p);
    for v in vectors {
        b.insert(v);
    }
    b.rank()
}

/// Square matrix over F_p.
pub type FpMat = Vec<Vec<u64>>;

pub fn det_mod(m: &FpMat, p: u64) -> u64 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r][k] % p != 0) else {
            return 0;
        };
        if r != k {
            a.swap(r, k);
            det = (p - det) % p;
        }
        det = det * a[k][k] % p;
        let inv = inv_mod(a[k][k], p);
        for i in k + 1..n {
            let f = a[i][k] * inv % p;
            for j in k..n {
                a[i][j] = (a[i][j] + (p - f) * a[k][j]) % p;
            }
        }
    }
    det
}

/// |GL_n(F_p)| = Π_{k<n} (p^n − p^k).
pub fn gl_order(n: usize, p: u64) -> u128 {
    let pn = (p as u128).pow(n as u32);
    (0..n).map(|k| pn - (p as u128).pow(k as u32)).product()
}

/// Every element of GL_n(F_p), in lexicographic order of entries.
pub fn gl_elements(n: usize, p: u64) -> Vec<FpMat> {
    let cells = n * n;
    let total = (p as u128).pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut flat = vec![0u64; cells];
        for k in (0..cells).rev() {
            flat[k] = (c % p as u128) as u64;
            c /= p as u128;
        }
        let m: FpMat = flat.chunks(n).map(<[u64]>::to_vec).collect();
        if det_mod(&m, p) != 0 {
            out.push(m);
        }
    }
    out
}
