//! Multimodular tools: word-size prime fields, CRT, rational reconstruction,
//! sparse elimination, and exact determinants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// `2^61 - 1`, the first modulus tried by the multimodular routines.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

#[inline]
pub fn inv_mod_u64(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

#[inline]
pub fn to_mod(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// Descending sequence of large primes starting at `2^61 - 1`.
pub struct LargePrimes {
    next: u64,
}

impl LargePrimes {
    pub fn new() -> Self {
        LargePrimes { next: MERSENNE_61 }
    }
}

impl Default for LargePrimes {
    fn default() -> Self {
        LargePrimes::new()
    }
}

impl Iterator for LargePrimes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while !is_prime_u64(self.next) {
            self.next -= 1;
        }
        let p = self.next;
        self.next -= 1;
        Some(p)
    }
}

/// Combines `x ≡ a (mod m)` with `x ≡ b (mod p)`; result in `[0, m p)`.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let a_mod = (a % BigInt::from(p)).to_u64().unwrap_or(0);
    let m_mod = (m % BigInt::from(p)).to_u64().unwrap_or(0);
    let diff = (b + p - a_mod) % p;
    let t = mul_mod(diff, inv_mod_u64(m_mod, p), p);
    a + m * BigInt::from(t)
}

/// Symmetric residue in `(-m/2, m/2]`.
pub fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Finds `n/d ≡ a (mod m)` with `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Sparse linear system with small integer coefficients, one row per equation.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    /// Adds an equation; entries are merged and zeros dropped.
    pub fn push(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        if !merged.is_empty() {
            self.rows.push(merged);
        }
    }

    /// True when `x` (given with a common denominator) solves the system exactly.
    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for &(c, v) in row {
                if !x[c].is_zero() {
                    acc += &x[c] * v;
                }
            }
            acc.is_zero()
        })
    }
}

type SparseRow = Vec<(usize, u64)>;

/// Echelon form over `F_q` built one equation at a time. Pivot rows are
/// monic in their leading column.
struct SparseEchelon {
    q: u64,
    ncols: usize,
    pivots: HashMap<usize, SparseRow>,
}

impl SparseEchelon {
    fn new(ncols: usize, q: u64) -> Self {
        SparseEchelon { q, ncols, pivots: HashMap::new() }
    }

    fn insert(&mut self, mut row: SparseRow) {
        let q = self.q;
        while let Some(&(lead, coeff)) = row.first() {
            match self.pivots.get(&lead) {
                None => {
                    let inv = inv_mod_u64(coeff, q);
                    for e in row.iter_mut() {
                        e.1 = mul_mod(e.1, inv, q);
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
                Some(p) => {
                    row = axpy(&row, p, q - coeff, q);
                }
            }
        }
    }

    /// Kernel basis with identity on the free columns, and the free columns.
    fn kernel(&self) -> (Vec<usize>, Vec<Vec<u64>>) {
        let q = self.q;
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        pivot_cols.sort_unstable_by(|a, b| b.cmp(a));
        let basis = free
            .iter()
            .map(|&f| {
                let mut x = vec![0u64; self.ncols];
                x[f] = 1;
                for &c in &pivot_cols {
                    let row = &self.pivots[&c];
                    let mut acc = 0u64;
                    for &(j, v) in &row[1..] {
                        if x[j] != 0 {
                            acc = (acc + mul_mod(v, x[j], q)) % q;
                        }
                    }
                    x[c] = (q - acc) % q;
                }
                x
            })
            .collect();
        (free, basis)
    }
}

/// `a + c * b` over `F_q`, both rows sorted by column.
fn axpy(a: &SparseRow, b: &SparseRow, c: u64, q: u64) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = mul_mod(b[j].1, c, q);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = (a[i].1 + mul_mod(b[j].1, c, q)) % q;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn kernel_mod(system: &SparseSystem, q: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut ech = SparseEchelon::new(system.ncols, q);
    for row in &system.rows {
        ech.insert(row.iter().map(|&(c, v)| (c, to_mod(v, q))).filter(|e| e.1 != 0).collect());
    }
    ech.kernel()
}

/// Rational kernel basis of a sparse integer system, each vector scaled to a
/// primitive integer vector. Computed modulo large primes, lifted by CRT and
/// rational reconstruction, and verified exactly before returning.
///
/// The second component lists the factors by which the reduced-echelon basis
/// vectors were scaled; the span of the returned vectors has index dividing
/// their product in the saturated kernel lattice.
pub fn kernel_multimodular(system: &SparseSystem) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut primes = LargePrimes::new();
    let q0 = primes.next().unwrap();
    let (mut free, first) = kernel_mod(system, q0);
    let mut modulus = BigInt::from(q0);
    let mut acc: Vec<Vec<BigInt>> =
        first.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    loop {
        if let Some(out) = reconstruct(system, &acc, &modulus) {
            return out;
        }
        let q = primes.next().unwrap();
        let (f, basis) = kernel_mod(system, q);
        if f.len() < free.len() {
            // The earlier primes were unlucky (rank dropped); restart from this one.
            free = f;
            modulus = BigInt::from(q);
            acc = basis.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
            continue;
        }
        if f != free {
            continue;
        }
        for (a, b) in acc.iter_mut().zip(&basis) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x = crt_pair(x, &modulus, y, q);
            }
        }
        modulus *= BigInt::from(q);
    }
}

fn reconstruct(
    system: &SparseSystem,
    acc: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Option<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let mut out = Vec::with_capacity(acc.len());
    let mut scales = Vec::with_capacity(acc.len());
    for v in acc {
        let mut rats = Vec::with_capacity(v.len());
        for x in v {
            rats.push(rational_reconstruction(x, modulus)?);
        }
        let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let ints: Vec<BigInt> = if g.is_zero() { ints } else { ints.iter().map(|x| x / &g).collect() };
        if !system.is_solution(&ints) {
            return None;
        }
        scales.push(if g.is_zero() { den } else { den / g });
        out.push(ints);
    }
    Some((out, scales))
}

/// Replaces a basis of a full-rank sublattice by a basis of its saturation,
/// assuming the index is only divisible by primes in `primes`.
pub fn saturate(mut basis: Vec<Vec<BigInt>>, primes: &[u64]) -> Vec<Vec<BigInt>> {
    use super::rational::kernel_field;
    use super::{Field, Fp, FpMatrix, Ring};
    if basis.is_empty() {
        return basis;
    }
    let n = basis[0].len();
    for &p in primes {
        loop {
            let k = basis.len();
            let wt = FpMatrix::from_fn(n, k, &Fp::new(0, p), |i, j| Fp::from_big(&basis[j][i], p));
            let deps = kernel_field(&wt);
            let Some(c) = deps.first() else { break };
            let j = (0..k).rev().find(|&i| !c[i].is_zero_elem()).expect("nonzero dependency");
            let inv = c[j].inverse().expect("nonzero").value();
            let mut combo = vec![BigInt::zero(); n];
            for (i, ci) in c.iter().enumerate() {
                let coef = BigInt::from(mul_mod(ci.value(), inv, p));
                if coef.is_zero() {
                    continue;
                }
                for (x, b) in combo.iter_mut().zip(&basis[i]) {
                    *x += &coef * b;
                }
            }
            let pb = BigInt::from(p);
            debug_assert!(combo.iter().all(|x| (x % &pb).is_zero()));
            basis[j] = combo.into_iter().map(|x| x / &pb).collect();
        }
    }
    basis
}

/// Determinant modulo a word-size prime by Gaussian elimination.
pub fn determinant_mod(a: &IntMatrix, q: u64) -> u64 {
    let n = a.rows();
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let r = a.get(i, j).mod_floor(&BigInt::from(q));
                    r.to_u64().unwrap()
                })
                .collect()
        })
        .collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            det = (q - det) % q;
        }
        det = mul_mod(det, m[c][c], q);
        let inv = inv_mod_u64(m[c][c], q);
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul_mod(m[r][c], inv, q);
            for j in c..n {
                let sub = mul_mod(f, m[c][j], q);
                m[r][j] = (m[r][j] + q - sub) % q;
            }
        }
    }
    det
}

/// Exact determinant: CRT over enough primes to exceed twice the Hadamard-type bound.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut bound = BigInt::one();
    for i in 0..n {
        let s: BigInt = a.row(i).iter().map(|x| x.abs()).sum();
        bound *= s;
    }
    if bound.is_zero() {
        return BigInt::zero();
    }
    let target = bound * 2;
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    for q in LargePrimes::new() {
        let d = determinant_mod(a, q);
        value = crt_pair(&value, &modulus, d, q);
        modulus *= BigInt::from(q);
        if modulus > target {
            break;
        }
    }
    symmetric(&value, &modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(MERSENNE_61));
        assert!(!is_prime_u64(MERSENNE_61 - 2));
        let mut it = LargePrimes::new();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        assert!(a > b && is_prime_u64(b));
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(MERSENNE_61);
        let x = BigRational::new(BigInt::from(-7), BigInt::from(12));
        let inv12 = inv_mod_u64(12, MERSENNE_61);
        let a = BigInt::from(mul_mod(MERSENNE_61 - 7, inv12, MERSENNE_61));
        assert_eq!(rational_reconstruction(&a, &m), Some(x));
    }

    #[test]
    fn crt_combines() {
        let x = crt_pair(&BigInt::from(2), &BigInt::from(3), 3, 5);
        assert_eq!(x, BigInt::from(8));
    }

    #[test]
    fn sparse_kernel() {
        // x0 + x1 = 0, 2 x1 - 3 x2 = 0
        let mut s = SparseSystem::new(3);
        s.push(vec![(0, 1), (1, 1)]);
        s.push(vec![(1, 2), (2, -3)]);
        let (k, _) = kernel_multimodular(&s);
        assert_eq!(k.len(), 1);
        assert!(s.is_solution(&k[0]));
        assert_eq!(k[0], vec![BigInt::from(-3), BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn saturation_divides_out() {
        let b = vec![vec![BigInt::from(2), BigInt::from(-2)], vec![BigInt::from(0), BigInt::from(3)]];
        let s = saturate(b, &[2, 3]);
        let m = IntMatrix::from_fn(2, 2, &BigInt::zero(), |i, j| s[i][j].clone());
        assert_eq!(determinant(&m).abs(), BigInt::one());
    }

    #[test]
    fn exact_determinant() {
        let a = IntMatrix::from_i64(&[vec![3, 1, 4], vec![1, -5, 9], vec![2, 6, -5]]);
        // 3(25-54) - 1(-5-18) + 4(6+10)
        assert_eq!(determinant(&a), BigInt::from(3 * (25 - 54) + 23 + 4 * 16));
    }
}
