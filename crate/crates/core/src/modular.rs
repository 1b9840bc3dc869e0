//! Sparse rational matrices with a multi-modular kernel solver.
//!
//! Kernels of the graded multiplication maps are tall and sparse (thousands
//! of rows, a few hundred columns). The solver computes the reduced row
//! echelon form modulo a sequence of 31-bit primes, lifts the canonical
//! kernel basis by Chinese remaindering and rational reconstruction, and
//! accepts the lift only after an exact check `M v = 0` over the rationals.
//! The accepted basis is the same one [`QMatrix::nullspace`] returns.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::QMatrix;
use crate::rational::Rational;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

// Deterministic for n < 3_215_031_751.
fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_COUNT: usize = 1200;

/// Descending primes below 2^31.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut c = (1u64 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u32(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

/// Column-major sparse matrix over the rationals.
#[derive(Clone, Debug)]
pub struct SparseQMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

/// Rows x columns above which the kernel goes through the modular path.
const DENSE_LIMIT: usize = 1500;
const EXTRA_ROWS: usize = 8;

impl SparseQMatrix {
    pub fn new(rows: usize) -> Self {
        SparseQMatrix {
            rows,
            columns: Vec::new(),
        }
    }

    /// Appends a column given as `(row, value)` pairs; zero values are dropped
    /// and repeated rows are summed.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        let mut col: Vec<(usize, Rational)> = Vec::new();
        for (r, v) in entries {
            assert!(r < self.rows, "row {r} out of range");
            match col.iter_mut().find(|(i, _)| *i == r) {
                Some((_, x)) => *x += v,
                None => col.push((r, v)),
            }
        }
        col.retain(|(_, v)| !v.is_zero());
        col.sort_by_key(|(r, _)| *r);
        self.columns.push(col);
    }

    pub fn from_dense(m: &QMatrix) -> Self {
        let mut s = SparseQMatrix::new(m.rows());
        for j in 0..m.cols() {
            s.push_column((0..m.rows()).map(|i| (i, m[(i, j)].clone())));
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![Rational::zero(); self.rows];
        for (col, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * x;
            }
        }
        out
    }

    fn is_kernel_vector(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Reduction mod `p`, row-compressed to at most `cols + EXTRA_ROWS` rows by
    /// a pseudo-random combination. The compressed matrix has the same
    /// kernel with overwhelming probability; callers never rely on that
    /// without an exact check. `None` if `p` divides a denominator.
    fn reduced_mod(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        let cols = self.cols();
        let mut reduced: Vec<Vec<(usize, u64)>> = Vec::with_capacity(cols);
        for col in &self.columns {
            let mut c = Vec::with_capacity(col.len());
            for (i, v) in col {
                c.push((*i, v.to_mod(p)?));
            }
            reduced.push(c);
        }
        let target = cols + EXTRA_ROWS;
        if self.rows <= target {
            let mut dense = vec![vec![0u64; cols]; self.rows];
            for (j, col) in reduced.iter().enumerate() {
                for &(i, v) in col {
                    dense[i][j] = v;
                }
            }
            return Some(dense);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let weights: Vec<Vec<u64>> = (0..target)
            .map(|_| (0..self.rows).map(|_| rng.gen_range(1..p)).collect())
            .collect();
        let mut dense = vec![vec![0u64; cols]; target];
        for (j, col) in reduced.iter().enumerate() {
            for (r, w) in weights.iter().enumerate() {
                let mut acc = 0u64;
                for &(i, v) in col {
                    acc = (acc + w[i] * v) % p;
                }
                dense[r][j] = acc;
            }
        }
        Some(dense)
    }

    /// Rank of the (compressed) reduction mod `p`, a lower bound for the
    /// rank over the rationals.
    fn rank_mod(&self, p: u64) -> Option<usize> {
        let mut m = self.reduced_mod(p)?;
        Some(rref_mod(&mut m, self.cols(), p).len())
    }

    /// Largest rank observed over `attempts` primes. Always a lower bound for
    /// the true rank, equal to it with overwhelming probability.
    pub fn rank_lower_bound(&self, attempts: usize) -> usize {
        primes()
            .iter()
            .filter_map(|&p| self.rank_mod(p))
            .take(attempts)
            .max()
            .unwrap_or(0)
    }

    /// Canonical kernel basis, identical to `self.to_dense().nullspace()`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        if self.rows * self.cols() <= DENSE_LIMIT {
            return self.to_dense().nullspace();
        }
        self.nullspace_modular(primes().len())
            .unwrap_or_else(|| self.to_dense().nullspace())
    }

    fn nullspace_modular(&self, max_primes: usize) -> Option<Vec<Vec<Rational>>> {
        let cols = self.cols();
        let mut lift: Option<Lift> = None;
        let mut previous: Option<Vec<Vec<Rational>>> = None;
        for &p in primes().iter().take(max_primes) {
            let Some(mut m) = self.reduced_mod(p) else {
                continue;
            };
            let pivots = rref_mod(&mut m, cols, p);
            if pivots.len() == cols {
                // Full column rank mod p forces a trivial kernel over Q.
                return Some(Vec::new());
            }
            let better = match &lift {
                None => true,
                Some(l) if pivots.len() != l.pivots.len() => pivots.len() > l.pivots.len(),
                Some(l) => pivots < l.pivots,
            };
            if better {
                previous = None;
                lift = Some(Lift::new(&m, pivots, cols, p));
            } else if lift.as_ref().is_some_and(|l| l.pivots == pivots) {
                lift.as_mut().expect("checked").combine(&m, p);
            } else {
                continue;
            }
            let l = lift.as_ref().expect("set above");
            let Some(candidate) = l.reconstruct() else {
                continue;
            };
            if previous.as_ref() == Some(&candidate) {
                if candidate.iter().all(|v| self.is_kernel_vector(v)) {
                    return Some(candidate);
                }
            }
            previous = Some(candidate);
        }
        None
    }
}

/// In-place reduced row echelon form mod `p`; returns the pivot columns.
fn rref_mod(m: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let (before, rest) = m.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = (*x + f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Accumulated CRT residues for the non-trivial kernel entries.
struct Lift {
    pivots: Vec<usize>,
    free: Vec<usize>,
    modulus: BigInt,
    // residues[f][r]: entry of the kernel vector for free column `free[f]`
    // at pivot position `pivots[r]`, only for `pivots[r] < free[f]`.
    residues: Vec<Vec<BigInt>>,
}

impl Lift {
    fn entries_mod(m: &[Vec<u64>], pivots: &[usize], free: &[usize], p: u64) -> Vec<Vec<u64>> {
        free.iter()
            .map(|&f| {
                pivots
                    .iter()
                    .enumerate()
                    .take_while(|(_, &pc)| pc < f)
                    .map(|(r, _)| (p - m[r][f]) % p)
                    .collect()
            })
            .collect()
    }

    fn new(m: &[Vec<u64>], pivots: Vec<usize>, cols: usize, p: u64) -> Self {
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let residues = Self::entries_mod(m, &pivots, &free, p)
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        Lift {
            pivots,
            free,
            modulus: BigInt::from(p),
            residues,
        }
    }

    fn combine(&mut self, m: &[Vec<u64>], p: u64) {
        let fresh = Self::entries_mod(m, &self.pivots, &self.free, p);
        let pb = BigInt::from(p);
        let mod_p = self.modulus.mod_floor(&pb).to_u64().expect("fits");
        let inv = inv_mod(mod_p, p);
        for (row, new_row) in self.residues.iter_mut().zip(fresh) {
            for (a, b) in row.iter_mut().zip(new_row) {
                let a_mod = a.mod_floor(&pb).to_u64().expect("fits");
                let t = mul_mod((b + p - a_mod) % p, inv, p);
                *a += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
    }

    fn reconstruct(&self) -> Option<Vec<Vec<Rational>>> {
        let cols = self.pivots.len() + self.free.len();
        let bound = (&self.modulus >> 1u32).sqrt();
        self.free
            .iter()
            .zip(&self.residues)
            .map(|(&f, row)| {
                let mut v = vec![Rational::zero(); cols];
                v[f] = Rational::one();
                for (r, a) in row.iter().enumerate() {
                    v[self.pivots[r]] = rational_reconstruction(a, &self.modulus, &bound)?;
                }
                Some(v)
            })
            .collect()
    }
}

/// Finds `r/s` congruent to `a` mod `m` with `|r|, s <= bound`.
fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
