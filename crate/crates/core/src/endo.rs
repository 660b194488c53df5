//! Endomorphism rings of representations: integral centralizers, their
//! reductions mod `p`, locality, and indecomposability certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{CertKind, Certificate, Witness};
use crate::error::{Error, Result};
use crate::linalg::invariant::poly_invariant_factors;
use crate::linalg::modular::{kernel_multimodular, mul_mod, saturate, SparseSystem};
use crate::linalg::ring::{factorize, inv_mod, is_prime};
use crate::linalg::snf::solve_linear_integer;
use crate::linalg::sparse::SparseIntMatrix;
use crate::linalg::{Fp, FpMatrix, FpPoly, IntMatrix};
use crate::reps::cyclic::build_cyclic_rep;
use crate::reps::{Provenance, Representation};

const PRIMITIVE_TRIES: usize = 256;
const PRIMITIVE_SEED: u64 = 0x00e1_d0a1;

fn sparse(m: &IntMatrix) -> Result<SparseIntMatrix> {
    SparseIntMatrix::from_dense(m).ok_or_else(|| Error::Computation("generator entries exceed 64 bits".into()))
}

/// Saturated Z-basis of `{X : X Γ(g) = Γ(g) X}` over the generators.
pub fn centralizer_basis(rep: &Representation) -> Result<Vec<IntMatrix>> {
    let d = rep.degree();
    let mut system = SparseSystem::new(d * d);
    for g in rep.generator_images() {
        let gs = sparse(g)?;
        let gt = sparse(&g.transpose())?;
        for i in 0..d {
            for j in 0..d {
                // (XG - GX)_{ij} = Σ_k X_{ik} G_{kj} - Σ_k G_{ik} X_{kj}
                let mut row: Vec<(usize, i64)> = gt.row(j).map(|(k, v)| (i * d + k, v)).collect();
                row.extend(gs.row(i).map(|(k, v)| (k * d + j, -v)));
                system.push(row);
            }
        }
    }
    let (vectors, scales) = kernel_multimodular(&system);
    let mut primes: Vec<u64> = Vec::new();
    for s in &scales {
        let s = s.to_u64().ok_or_else(|| Error::Computation(format!("cannot factor kernel scale {s}")))?;
        primes.extend(factorize(s).into_iter().map(|(q, _)| q));
    }
    primes.sort_unstable();
    primes.dedup();
    let basis: Vec<IntMatrix> = saturate(vectors, &primes)
        .into_iter()
        .map(|v| IntMatrix::from_fn(d, d, &BigInt::zero(), |i, j| v[i * d + j].clone()))
        .collect();
    for x in &basis {
        for g in rep.generator_images() {
            if x.mul(g) != g.mul(x) {
                return Err(Error::Computation("centralizer element fails to commute".into()));
            }
        }
    }
    Ok(basis)
}

/// Reduced row echelon form over `F_p` in place; zero rows are dropped.
/// Returns the pivot column of each remaining row.
fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p).expect("nonzero mod p");
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = p - row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + mul_mod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` over `F_p`, `A` given by rows of length `ncols`.
fn kernel_mod(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = a.to_vec();
    let pivots = rref_mod(&mut rows, p);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = (p - row[f]) % p;
            }
            x
        })
        .collect()
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; n];
            for (k, &x) in row.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&b[k]) {
                        *o = (*o + mul_mod(x, y, q)) % q;
                    }
                }
            }
            out
        })
        .collect()
}

/// A subspace of `F_p^n` kept in reduced echelon form.
#[derive(Clone, Debug)]
struct Subspace {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(p: u64, mut vectors: Vec<Vec<u64>>) -> Self {
        let pivots = rref_mod(&mut vectors, p);
        Subspace { p, rows: vectors, pivots }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the subspace.
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c] != 0 {
                let f = p - v[c];
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + mul_mod(f, *y, p)) % p;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// The centralizer of a representation tensored with `F_p`, given by
/// structure constants in the reduction of a saturated Z-basis.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    p: u64,
    degree: usize,
    z_basis: Vec<IntMatrix>,
    /// `structure[i][j]` holds the coordinates of `b_i b_j`.
    structure: Vec<Vec<Vec<u64>>>,
    /// Nonzero entries of `structure[i][j]`.
    sparse_structure: Vec<Vec<Vec<(usize, u64)>>>,
    /// Basis matrices mod `p`.
    reduced: Vec<Vec<Vec<u64>>>,
    identity: Vec<u64>,
}

pub fn endo_algebra_mod_p(rep: &Representation, p: u64) -> Result<EndoAlgebra> {
    EndoAlgebra::from_basis(centralizer_basis(rep)?, p)
}

impl EndoAlgebra {
    /// Structure constants of the span of `basis` mod `p`. The basis must be
    /// closed under multiplication over Z and independent mod `p`.
    pub fn from_basis(z_basis: Vec<IntMatrix>, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let r = z_basis.len();
        let degree = z_basis.first().map_or(0, |b| b.rows());
        let reduced: Vec<Vec<Vec<u64>>> = z_basis
            .iter()
            .map(|b| (0..degree).map(|i| b.row(i).iter().map(|x| Fp::from_big(x, p).value()).collect()).collect())
            .collect();
        let flat: Vec<Vec<u64>> = reduced.iter().map(|b| b.concat()).collect();
        let mut ech = flat.clone();
        let positions = rref_mod(&mut ech, p);
        if positions.len() != r {
            return Err(Error::Computation(format!("centralizer basis is dependent mod {p}")));
        }
        // Coordinates are read off at the pivot positions: y = c M, so c = y M^{-1}.
        let m = FpMatrix::from_fn(r, r, &Fp::new(0, p), |k, t| Fp::new(flat[k][positions[t]] as i64, p));
        let minv = m.inverse().ok_or_else(|| Error::Computation("singular coordinate block".into()))?;
        let minv: Vec<Vec<u64>> = (0..r).map(|i| minv.row(i).iter().map(|x| x.value()).collect()).collect();
        let coords = |y: Vec<u64>| mat_mul_mod(&[y], &minv, p).pop().unwrap_or_default();
        let mut structure = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let y = positions
                    .iter()
                    .map(|&pos| {
                        let (row, col) = (pos / degree, pos % degree);
                        let mut acc = 0u64;
                        for k in 0..degree {
                            let a = reduced[i][row][k];
                            if a != 0 {
                                acc = (acc + mul_mod(a, reduced[j][k][col], p)) % p;
                            }
                        }
                        acc
                    })
                    .collect();
                structure[i][j] = coords(y);
            }
        }
        let identity = coords(positions.iter().map(|&pos| u64::from(pos / degree == pos % degree)).collect());
        let sparse_structure = structure
            .iter()
            .map(|row| row.iter().map(|c| c.iter().copied().enumerate().filter(|e| e.1 != 0).collect()).collect())
            .collect();
        Ok(EndoAlgebra { p, degree, z_basis, structure, sparse_structure, reduced, identity })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.z_basis.len()
    }

    /// Degree of the underlying representation.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn z_basis(&self) -> &[IntMatrix] {
        &self.z_basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<u64>>] {
        &self.structure
    }

    pub fn identity(&self) -> &[u64] {
        &self.identity
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn scale(&self, c: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| mul_mod(a, c % self.p, self.p)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = mul_mod(a, b, p);
                for &(k, c) in &self.sparse_structure[i][j] {
                    out[k] = (out[k] + mul_mod(ab, c, p)) % p;
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`: column `j` is `x b_j`.
    pub fn left_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let r = self.dim();
        let cols: Vec<Vec<u64>> = (0..r).map(|j| self.mul(x, &self.unit(j))).collect();
        (0..r).map(|k| (0..r).map(|j| cols[j][k]).collect()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        let r = self.dim();
        (0..r).all(|i| {
            (0..r).all(|j| {
                (0..r).all(|k| {
                    let (bi, bj, bk) = (self.unit(i), self.unit(j), self.unit(k));
                    self.mul(&self.mul(&bi, &bj), &bk) == self.mul(&bi, &self.mul(&bj, &bk))
                })
            })
        })
    }

    pub fn identity_ok(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.unit(i);
            self.mul(&self.identity, &b) == b && self.mul(&b, &self.identity) == b
        })
    }

    pub fn is_idempotent(&self, x: &[u64]) -> bool {
        self.mul(x, x) == x
    }

    /// Nonzero and not the identity.
    pub fn is_nontrivial(&self, x: &[u64]) -> bool {
        x.iter().any(|&c| c != 0) && x != self.identity.as_slice()
    }

    /// `Σ x_i B_i` reduced mod `p`.
    pub fn matrix_of(&self, x: &[u64]) -> FpMatrix {
        let n = self.natural(x);
        FpMatrix::from_fn(self.degree, self.degree, &Fp::new(0, self.p), |i, j| Fp::new(n[i][j] as i64, self.p))
    }

    fn natural(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = vec![vec![0u64; self.degree]; self.degree];
        for (&c, b) in x.iter().zip(&self.reduced) {
            if c == 0 {
                continue;
            }
            for (mrow, brow) in m.iter_mut().zip(b) {
                for (v, &w) in mrow.iter_mut().zip(brow) {
                    if w != 0 {
                        *v = (*v + mul_mod(c, w, p)) % p;
                    }
                }
            }
        }
        m
    }

    /// `Σ c_i B_i` with the coordinates lifted to `(-p/2, p/2]`.
    pub fn integral_lift(&self, x: &[u64]) -> IntMatrix {
        let p = self.p;
        let mut m = IntMatrix::zeros(self.degree, self.degree);
        for (c, b) in x.iter().zip(&self.z_basis) {
            let c = if *c > p / 2 { *c as i64 - p as i64 } else { *c as i64 };
            if c != 0 {
                m = m.add(&b.scale(&BigInt::from(c)));
            }
        }
        m
    }

    /// `N^k V = 0` for some `k`, tested on the natural module `V = F_p^d`,
    /// which is faithful.
    fn is_nilpotent(&self, s: &Subspace) -> bool {
        let p = self.p;
        if s.contains(&self.identity) {
            return false;
        }
        let mats: Vec<Vec<Vec<u64>>> = s.rows.iter().map(|x| self.natural(x)).collect();
        let mut flag = Subspace::new(p, (0..self.degree).map(|i| (0..self.degree).map(|j| u64::from(i == j)).collect()).collect());
        while flag.dim() > 0 {
            let mut images = Vec::new();
            for m in &mats {
                for v in &flag.rows {
                    images.push(m.iter().map(|row| row.iter().zip(v).fold(0u64, |a, (x, y)| (a + mul_mod(*x, *y, p)) % p)).collect());
                }
            }
            let next = Subspace::new(p, images);
            if next.dim() >= flag.dim() {
                return false;
            }
            flag = next;
        }
        true
    }

    fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|j| {
            let b = self.unit(j);
            s.rows.iter().all(|x| s.contains(&self.mul(x, &b)) && s.contains(&self.mul(&b, x)))
        })
    }

    /// `Tr(â^{p^i}) / p^i mod p` for the lift `â` of the natural matrix of `a`.
    fn trace_digit(&self, a: &[u64], i: u32) -> Result<u64> {
        let p = self.p;
        let q = p.pow(i + 1);
        let mut m = self.natural(a);
        for _ in 0..i {
            // Raising to the p-th power i times gives the p^i-th power.
            let base = m.clone();
            for _ in 1..p {
                m = mat_mul_mod(&m, &base, q);
            }
        }
        let tr = (0..m.len()).fold(0u64, |acc, k| (acc + m[k][k]) % q);
        let pi = p.pow(i);
        if tr % pi != 0 {
            return Err(Error::Computation("trace not divisible in radical computation".into()));
        }
        Ok((tr / pi) % p)
    }

    /// Jacobson radical by iterated trace-form kernels: `I_{-1} = A`,
    /// `I_i = {a ∈ I_{i-1} : g_i(ab) = 0 for all b}` with
    /// `g_i(a) = Tr(â^{p^i}) / p^i mod p` on the natural module. `g_i` is
    /// linear on `I_{i-1}`, so it is evaluated on a basis only. The result is
    /// checked to be a nilpotent two-sided ideal.
    fn radical(&self) -> Result<Subspace> {
        let (p, r) = (self.p, self.dim());
        let mut ideal = Subspace::new(p, (0..r).map(|i| self.unit(i)).collect());
        let mut i = 0u32;
        loop {
            if self.is_nilpotent(&ideal) {
                break;
            }
            if p.checked_pow(i).map_or(true, |pi| pi > self.degree as u64) {
                return Err(Error::Computation("radical iteration did not reach a nilpotent ideal".into()));
            }
            let on_basis: Vec<u64> = ideal.rows.iter().map(|y| self.trace_digit(y, i)).collect::<Result<_>>()?;
            let mut g = vec![vec![0u64; ideal.dim()]; r];
            for (k, x) in ideal.rows.iter().enumerate() {
                for (j, gj) in g.iter_mut().enumerate() {
                    // Coordinates in the echelon basis are the pivot entries.
                    let w = self.mul(x, &self.unit(j));
                    gj[k] = ideal.pivots.iter().zip(&on_basis).fold(0u64, |a, (&c, &v)| (a + mul_mod(w[c], v, p)) % p);
                }
            }
            let coeffs = kernel_mod(&g, ideal.dim(), p);
            let next: Vec<Vec<u64>> = coeffs
                .iter()
                .map(|c| {
                    c.iter().zip(&ideal.rows).fold(self.zero(), |acc, (&ck, x)| self.add(&acc, &self.scale(ck, x)))
                })
                .collect();
            ideal = Subspace::new(p, next);
            i += 1;
        }
        if !self.is_ideal(&ideal) {
            return Err(Error::Computation("radical candidate is not an ideal".into()));
        }
        Ok(ideal)
    }

    /// Minimal polynomial of `x` modulo the subspace `j`.
    fn min_poly_mod(&self, x: &[u64], j: &Subspace) -> FpPoly {
        let p = self.p;
        let mut powers = vec![j.reduce(&self.identity)];
        let mut cur = self.identity.clone();
        loop {
            cur = self.mul(&cur, x);
            powers.push(j.reduce(&cur));
            let k = powers.len();
            let cols: Vec<Vec<u64>> = (0..self.dim()).map(|t| powers.iter().map(|v| v[t]).collect()).collect();
            if let Some(c) = kernel_mod(&cols, k, p).into_iter().find(|c| c[k - 1] != 0) {
                return FpPoly::from_coeffs(c, p).monic();
            }
        }
    }

    fn eval_poly(&self, f: &FpPoly, x: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.scale(c, &self.identity));
        }
        acc
    }

    /// Lifts an idempotent modulo a nilpotent ideal by `e ↦ 3e² - 2e³`.
    fn lift_idempotent(&self, mut e: Vec<u64>) -> Result<Vec<u64>> {
        let p = self.p;
        for _ in 0..64 {
            let e2 = self.mul(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.mul(&e2, &e);
            e = self.add(&self.scale(3, &e2), &self.scale(p - (2 % p), &e3));
        }
        Err(Error::Computation("idempotent lifting did not converge".into()))
    }
}

/// Outcome of the locality analysis of an [`EndoAlgebra`].
#[derive(Clone, Debug)]
pub struct LocalityReport {
    pub local: bool,
    pub radical_dimension: usize,
    pub residue_degree: usize,
    /// Element whose minimal polynomial decided the verdict.
    pub deciding_element: Vec<u64>,
    /// Idempotent `∉ {0, 1}` for non-local algebras.
    pub idempotent: Option<Vec<u64>>,
}

pub fn analyze_locality(alg: &EndoAlgebra) -> Result<LocalityReport> {
    let p = alg.p;
    let r = alg.dim();
    if r == 0 {
        return Err(Error::InvalidParameter("empty algebra".into()));
    }
    let rad = alg.radical()?;
    let f = r - rad.dim();
    let quotient_commutative = (0..r).all(|i| {
        (0..i).all(|j| {
            let d = alg.add(&alg.structure[i][j], &alg.scale(p - 1, &alg.structure[j][i]));
            rad.contains(&d)
        })
    });
    let report = |local, x: Vec<u64>, e| LocalityReport {
        local,
        radical_dimension: rad.dim(),
        residue_degree: f,
        deciding_element: x,
        idempotent: e,
    };
    if f == 1 {
        return Ok(report(true, alg.identity.clone(), None));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PRIMITIVE_SEED);
    let candidates = (0..r).map(|i| alg.unit(i)).chain(
        std::iter::repeat_with(move || (0..r).map(|_| rng.gen_range(0..p)).collect::<Vec<u64>>()).take(PRIMITIVE_TRIES),
    );
    for x in candidates {
        let mu = alg.min_poly_mod(&x, &rad);
        let factors = mu.factor();
        if factors.len() >= 2 {
            let (g0, e0) = &factors[0];
            let g = g0.pow(*e0);
            let h = mu.div_rem(&g).0;
            // s g + t h = 1, so t h(x) is 1 on the g-part and 0 on the h-part.
            let (_, _, t) = g.ext_gcd(&h);
            let e = alg.eval_poly(&t.mul(&h).rem(&mu), &x);
            let e = alg.lift_idempotent(e)?;
            if !alg.is_nontrivial(&e) {
                return Err(Error::Computation("split produced a trivial idempotent".into()));
            }
            return Ok(report(false, x, Some(e)));
        }
        if quotient_commutative && mu.degree() == Some(f) && mu.is_irreducible() {
            return Ok(report(true, x, None));
        }
    }
    Err(Error::Computation(format!("no splitting or primitive element found in {} tries", r + PRIMITIVE_TRIES)))
}

fn matrix_strings(m: &FpMatrix) -> Vec<String> {
    m.entries().iter().map(|x| x.value().to_string()).collect()
}

fn int_strings(m: &IntMatrix) -> Vec<String> {
    m.entries().iter().map(|x| x.to_string()).collect()
}

pub fn is_local_mod_p(alg: &EndoAlgebra) -> Result<Certificate> {
    let rep = analyze_locality(alg)?;
    let cert = Certificate::new(CertKind::Local, rep.local, "radical and residue field mod p").with(Witness::LocalAlgebra {
        p: alg.p,
        dimension: alg.dim(),
        radical_dimension: rep.radical_dimension,
        residue_degree: rep.residue_degree,
    });
    Ok(match &rep.idempotent {
        Some(e) => cert.with(Witness::Idempotent {
            p: alg.p,
            rows: alg.degree,
            entries: matrix_strings(&alg.matrix_of(e)),
        }),
        None => cert,
    })
}

/// Searches all `p^dim` elements for an idempotent other than `0` and `1`.
/// Returns `None` without searching when `p^dim > limit`.
pub fn exhaustive_idempotent(alg: &EndoAlgebra, limit: u64) -> Option<Option<Vec<u64>>> {
    let (p, r) = (alg.p, alg.dim());
    let total = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&t| t <= limit))?;
    let lefts: Vec<Vec<Vec<u64>>> = (0..r).map(|i| alg.left_matrix(&alg.unit(i))).collect();
    let mut x = alg.zero();
    let mut left = vec![vec![0u64; r]; r];
    for _ in 1..total {
        // Odometer step: every touched digit increases by one mod p.
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (*xi + 1) % p;
            for (lrow, brow) in left.iter_mut().zip(&lefts[i]) {
                for (a, b) in lrow.iter_mut().zip(brow) {
                    *a = (*a + b) % p;
                }
            }
            if *xi != 0 {
                break;
            }
        }
        let sq: Vec<u64> =
            left.iter().map(|row| row.iter().zip(&x).fold(0u64, |acc, (a, b)| (acc + mul_mod(*a, *b, p)) % p)).collect();
        if sq == x && alg.is_nontrivial(&x) {
            return Some(Some(x));
        }
    }
    Some(None)
}

/// Criterion on the parameter of a cyclic bundle: `A mod p` has a single
/// invariant factor, a power of one irreducible. Returns the verdict and the
/// invariant factors.
pub fn parameter_route(a: &IntMatrix, p: u64) -> (bool, Vec<FpPoly>) {
    let factors = poly_invariant_factors(&a.reduce_mod(p));
    let ok = factors.len() == 1 && factors[0].factor().len() == 1;
    (ok, factors)
}

fn check_prime_divides(rep: &Representation, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if rep.group().order() as u64 % p != 0 {
        return Err(Error::InvalidParameter(format!("{p} does not divide |G| = {}", rep.group().order())));
    }
    Ok(())
}

/// Largest `p^dim` for which the exhaustive idempotent search runs.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Indecomposability over Z. Certified by locality of the centralizer mod
/// `p`; composite bundles go through their cyclic factors instead, since
/// they are not local modulo any single prime.
pub fn certify_indecomposable(rep: &Representation, p: u64) -> Result<Certificate> {
    certify_indecomposable_checked(rep, p, false)
}

fn oracle_agreement(alg: &EndoAlgebra, local: bool) -> Option<bool> {
    exhaustive_idempotent(alg, EXHAUSTIVE_LIMIT).map(|found| found.is_none() == local)
}

/// [`certify_indecomposable`]; with `oracle`, each locality verdict is also
/// compared with the exhaustive idempotent search where `p^dim` is small
/// enough.
pub fn certify_indecomposable_checked(rep: &Representation, p: u64, oracle: bool) -> Result<Certificate> {
    check_prime_divides(rep, p)?;
    if let Provenance::Composite { factors, m, coprime_ok } = rep.provenance() {
        if !coprime_ok {
            return Err(Error::Refused(format!(
                "indecomposability needs gcd(m, |G|) = 1 (m = {m}, |G| = {})",
                rep.group().order()
            )));
        }
        if factors.len() >= 2 {
            return certify_by_restriction(rep, factors, *m, oracle);
        }
    }
    let alg = endo_algebra_mod_p(rep, p)?;
    let loc = analyze_locality(&alg)?;
    let agrees = if oracle { oracle_agreement(&alg, loc.local) } else { None };
    let local_witness = Witness::LocalAlgebra {
        p,
        dimension: alg.dim(),
        radical_dimension: loc.radical_dimension,
        residue_degree: loc.residue_degree,
    };
    if loc.local {
        let mut cert =
            Certificate::new(CertKind::Indecomposable, true, format!("centralizer local mod {p}")).with(local_witness);
        if let Provenance::Cyclic { parameter, .. } = rep.provenance() {
            let (ok, factors) = parameter_route(parameter, p);
            cert = cert.with(Witness::InvariantFactors { p, factors: factors.iter().map(|f| f.to_string()).collect() });
            if ok {
                cert.method = format!("centralizer local mod {p}; parameter has one primary invariant factor");
            }
        }
        cert.oracle_agrees = agrees;
        return Ok(cert);
    }
    let e = loc.idempotent.expect("non-local algebras carry an idempotent");
    let lift = alg.integral_lift(&e);
    let mut cert = if lift.mul(&lift) == lift {
        Certificate::new(CertKind::Decomposable, true, "integral idempotent in the centralizer")
            .with(Witness::IntegralIdempotent { rows: alg.degree, entries: int_strings(&lift) })
            .with(local_witness)
    } else {
        Certificate::new(CertKind::Indecomposable, false, format!("centralizer not local mod {p}"))
            .with(Witness::Idempotent { p, rows: alg.degree, entries: matrix_strings(&alg.matrix_of(&e)) })
            .with(local_witness)
            .with(Witness::Note { text: format!("decomposable over Z_{p}; not decided over Z at this prime") })
    };
    cert.oracle_agrees = agrees;
    Ok(cert)
}

/// Each generator `a_i` acts as `E ⊗ Γ_i ⊗ E`, a sum of copies of the factor
/// representation `Γ_i`, which is local mod `p_i`. By Krull–Schmidt over
/// `Z_{p_i}` every Z-summand has degree divisible by `deg Γ_i`; when the lcm
/// of these degrees is the full degree there is no proper summand.
fn certify_by_restriction(rep: &Representation, factors: &[(u64, u32)], m: usize, oracle: bool) -> Result<Certificate> {
    let mut cert = Certificate::new(CertKind::Indecomposable, true, "restriction to cyclic factors, each local");
    let mut degrees = Vec::new();
    for (i, &(p, n)) in factors.iter().enumerate() {
        let factor = build_cyclic_rep(p, n, if i == 0 { m } else { 1 }, None)?;
        let di = factor.degree();
        let left: usize = degrees.iter().product();
        let right = rep.degree() / (left * di);
        let expected = IntMatrix::identity(left).kron(&factor.generator_images()[0]).kron(&IntMatrix::identity(right));
        let name = rep.group().generator_names()[i].clone();
        if rep.generator_images()[i] != expected {
            return Ok(Certificate::new(CertKind::Indecomposable, false, "restriction to cyclic factors")
                .with(Witness::Note { text: format!("{name} is not a sum of copies of its factor") }));
        }
        let alg = endo_algebra_mod_p(&factor, p)?;
        let loc = analyze_locality(&alg)?;
        if oracle {
            if let Some(a) = oracle_agreement(&alg, loc.local) {
                cert.oracle_agrees = Some(cert.oracle_agrees.unwrap_or(true) && a);
            }
        }
        cert = cert
            .with(Witness::Restriction { element: name, degree: rep.degree(), summand_degree: di, p })
            .with(Witness::LocalAlgebra {
                p,
                dimension: alg.dim(),
                radical_dimension: loc.radical_dimension,
                residue_degree: loc.residue_degree,
            });
        if !loc.local {
            cert.verdict = false;
        }
        degrees.push(di);
    }
    let l = degrees.iter().fold(1usize, |acc, &d| acc.lcm(&d));
    if l != rep.degree() {
        cert.verdict = false;
        cert = cert.with(Witness::Note { text: format!("lcm of factor degrees is {l}, not {}", rep.degree()) });
    }
    Ok(cert)
}

/// For a block upper triangular representation `[[A, U], [0, B]]` with `A`
/// of size `k`, solves `A T - T B = -U` over Z for all generators. A solution
/// conjugates the representation to `A ⊕ B`; the witness is the integral
/// idempotent `[[E, -T], [0, 0]]`.
pub fn certify_split(rep: &Representation, k: usize) -> Result<Certificate> {
    let d = rep.degree();
    if k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!("split position {k} outside 1..{d}")));
    }
    let w = d - k;
    let gens = rep.generator_images();
    if gens.iter().any(|g| !g.submatrix(k, d, 0, k).is_zero()) {
        return Err(Error::InvalidParameter(format!("images are not block upper triangular at {k}")));
    }
    let unknowns = k * w;
    let mut sys = IntMatrix::zeros(unknowns * gens.len(), unknowns);
    let mut rhs = Vec::with_capacity(unknowns * gens.len());
    for (gi, g) in gens.iter().enumerate() {
        for a in 0..k {
            for b in 0..w {
                let row = gi * unknowns + a * w + b;
                for c in 0..k {
                    let v = sys.get(row, c * w + b) + g.get(a, c);
                    sys.set(row, c * w + b, v);
                }
                for c in 0..w {
                    let v = sys.get(row, a * w + c) - g.get(k + c, k + b);
                    sys.set(row, a * w + c, v);
                }
                rhs.push(-g.get(a, k + b));
            }
        }
    }
    let Some(t) = solve_linear_integer(&sys, &rhs) else {
        return Ok(Certificate::new(CertKind::Split, false, "no integral block unipotent splitting"));
    };
    let mut e = IntMatrix::zeros(d, d);
    for a in 0..k {
        e.set(a, a, BigInt::one());
        for b in 0..w {
            e.set(a, k + b, -&t[a * w + b]);
        }
    }
    if e.mul(&e) != e || gens.iter().any(|g| e.mul(g) != g.mul(&e)) {
        return Err(Error::Computation("splitting idempotent failed verification".into()));
    }
    Ok(Certificate::new(CertKind::Decomposable, true, "integral block unipotent splitting")
        .with(Witness::IntegralIdempotent { rows: d, entries: int_strings(&e) }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{GroupSpec, HolonomyGroup};
    use crate::reps::cyclic::delta_rep;
    use crate::reps::trivial_rep;

    fn c3() -> Arc<HolonomyGroup> {
        Arc::new(HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(3, 1)] }).unwrap())
    }

    #[test]
    fn trivial_and_delta1() {
        let t = trivial_rep(c3(), 1).unwrap();
        assert_eq!(centralizer_basis(&t).unwrap().len(), 1);
        let alg = endo_algebra_mod_p(&t, 3).unwrap();
        assert!(analyze_locality(&alg).unwrap().local);

        let d1 = delta_rep(3, 1, 1).unwrap();
        let alg = endo_algebra_mod_p(&d1, 3).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.is_commutative() && alg.is_associative() && alg.identity_ok());
        let loc = analyze_locality(&alg).unwrap();
        assert!(loc.local);
        assert_eq!((loc.radical_dimension, loc.residue_degree), (1, 1));
        assert_eq!(exhaustive_idempotent(&alg, 1 << 20), Some(None));
    }

    #[test]
    fn direct_sum_has_idempotent() {
        let d0 = delta_rep(3, 1, 0).unwrap();
        let d1 = delta_rep(3, 1, 1).unwrap();
        let s = Representation::direct_sum(&[&d0, &d1], "delta_0 + delta_1").unwrap();
        let alg = endo_algebra_mod_p(&s, 3).unwrap();
        assert_eq!(alg.dim(), 3);
        let loc = analyze_locality(&alg).unwrap();
        assert!(!loc.local);
        assert!(alg.is_idempotent(loc.idempotent.as_ref().unwrap()));
        assert!(exhaustive_idempotent(&alg, 1 << 20).unwrap().is_some());
        let cert = certify_indecomposable(&s, 3).unwrap();
        assert_eq!((cert.kind, cert.verdict), (CertKind::Decomposable, true));
    }
}
