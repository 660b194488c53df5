//! Dense univariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ring::{inv_mod, EuclideanDomain, Ring};

/// Polynomial over `F_p`, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(1, p)
    }

    pub fn x(p: u64) -> Self {
        FpPoly::from_coeffs(vec![0, 1], p)
    }

    pub fn constant(c: i64, p: u64) -> Self {
        FpPoly::from_signed(&[c], p)
    }

    pub fn from_coeffs(coeffs: Vec<u64>, p: u64) -> Self {
        let mut poly = FpPoly { coeffs: coeffs.into_iter().map(|c| c % p).collect(), p };
        poly.trim();
        poly
    }

    pub fn from_signed(coeffs: &[i64], p: u64) -> Self {
        let m = p as i64;
        FpPoly::from_coeffs(coeffs.iter().map(|c| c.rem_euclid(m) as u64).collect(), p)
    }

    /// `(x - r)`.
    pub fn linear(root: i64, p: u64) -> Self {
        FpPoly::from_signed(&[-root, 1], p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        FpPoly::from_coeffs(
            self.coeffs.iter().map(|&a| ((a as u128 * c as u128) % p as u128) as u64).collect(),
            p,
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let p = self.p;
        FpPoly::from_coeffs((0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % p).collect(), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let p = self.p;
        FpPoly::from_coeffs((0..n).map(|i| (self.coeff(i) + p - rhs.coeff(i)) % p).collect(), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::from_coeffs(out.into_iter().map(|c| c as u64).collect(), self.p)
    }

    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let p = self.p;
        let db = rhs.coeffs.len() - 1;
        let inv = inv_mod(rhs.leading(), p).expect("nonzero leading coefficient") as u128;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = ((rem[k + db] as u128 * inv) % p as u128) as u64;
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let sub = (c as u128 * b as u128 % p as u128) as u64;
                rem[k + j] = (rem[k + j] + p - sub) % p;
            }
        }
        rem.truncate(db);
        (FpPoly::from_coeffs(quot, p), FpPoly::from_coeffs(rem, p))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.div_rem(rhs).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*rhs = g`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u128 % p as u128) * c as u128 % p as u128) as u64)
                .collect(),
            p,
        )
    }

    /// `self^e mod modulus` for an arbitrary-size exponent.
    pub fn pow_mod_big(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(bit) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, modulus: &Self) -> Self {
        self.pow_mod_big(&BigUint::from(e), modulus)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FpPoly::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x -> x^(1/p)`; valid when only exponents divisible by p occur.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        FpPoly::from_coeffs(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }

    /// Squarefree decomposition: monic squarefree `g_i` with `self ~ prod g_i^{e_i}`.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        if df.is_zero() {
            for (g, e) in f.pth_root().squarefree_decomposition() {
                out.push((g, e * self.p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if !z.is_constant() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if !c.is_constant() {
            for (g, e) in c.pth_root().squarefree_decomposition() {
                out.push((g, e * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = FpPoly::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if 2 * (d + 1) > deg {
                if deg > 0 {
                    out.push((f.clone(), deg));
                }
                break;
            }
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_constant() {
                out.push((g.clone(), d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.clone()];
        }
        let p = self.p;
        loop {
            let a = FpPoly::from_coeffs((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
            if a.is_constant() {
                continue;
            }
            let g = a.gcd(self);
            let candidate = if !g.is_constant() {
                g
            } else if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)).
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                let b = a.pow_mod_big(&e, self).sub(&FpPoly::one(p));
                b.gcd(self)
            };
            if !candidate.is_constant() && candidate.degree() != self.degree() {
                let rest = self.div_rem(&candidate).0.monic();
                let mut out = candidate.equal_degree(d, rng);
                out.extend(rest.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut out = Vec::new();
        for (g, e) in self.squarefree_decomposition() {
            for (part, d) in g.distinct_degree() {
                for irr in part.equal_degree(d, &mut rng) {
                    out.push((irr.monic(), e));
                }
            }
        }
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.coeffs.cmp(&b.0.coeffs)));
        // Merge equal factors coming from different squarefree layers.
        let mut merged: Vec<(FpPoly, u32)> = Vec::new();
        for (f, e) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += e,
                _ => merged.push((f, e)),
            }
        }
        merged
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    pub fn parse(s: &str, p: u64) -> Option<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return None;
        }
        let normalized = cleaned.replace('-', "+-");
        let mut acc = FpPoly::zero(p);
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let (coef, exp) = match body.find('x') {
                None => (body.parse::<i64>().ok()?, 0u32),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().ok()? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')?.parse::<u32>().ok()?
                    };
                    (c, e)
                }
            };
            let c = if neg { -coef } else { coef };
            let mut coeffs = vec![0i64; exp as usize + 1];
            coeffs[exp as usize] = c;
            acc = acc.add(&FpPoly::from_signed(&coeffs, p));
        }
        Some(acc)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self}) mod {}", self.p)
    }
}

impl Ring for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.p)
    }
    fn one_like(&self) -> Self {
        FpPoly::one(self.p)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        FpPoly::zero(self.p).sub(self)
    }
}

impl EuclideanDomain for FpPoly {
    fn euclid_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len())
    }
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self) {
        self.div_rem(rhs)
    }
    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_zero() {
            return FpPoly::one(self.p);
        }
        FpPoly::from_coeffs(vec![inv_mod(self.leading(), self.p).unwrap()], self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, p: u64) -> FpPoly {
        FpPoly::parse(s, p).unwrap()
    }

    #[test]
    fn parse_and_format() {
        let f = poly("x^2 - x + 2", 3);
        assert_eq!(f.to_string(), "x^2 + 2*x + 2");
        assert_eq!(poly("2*x^3+x", 5).coeffs(), &[0, 1, 0, 2]);
        assert_eq!(poly("0", 7), FpPoly::zero(7));
    }

    #[test]
    fn division_identity() {
        let a = poly("x^5 + 2*x^3 + x + 1", 3);
        let b = poly("x^2 + 1", 3);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly("x^4 + x + 1", 2);
        let b = poly("x^2 + 1", 2);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, FpPoly::one(2));
    }

    #[test]
    fn factor_known_cases() {
        // x^2 - 1 = (x-1)(x+1) over F_3.
        let f = poly("x^2 + 2", 3).factor();
        assert_eq!(f.len(), 2);
        // (x-1)^2 over F_3.
        let g = poly("x^2 + x + 1", 3).factor();
        assert_eq!(g, vec![(poly("x + 2", 3), 2)]);
        // x^4 + x + 1 irreducible over F_2.
        assert!(poly("x^4 + x + 1", 2).is_irreducible());
        // x^p - x splits into linear factors.
        let h = poly("x^5 - x", 5).factor();
        assert_eq!(h.len(), 5);
        assert!(h.iter().all(|(f, e)| f.degree() == Some(1) && *e == 1));
        // p-th power inputs: (x^2+1)^2 over F_2 = x^4 + 1 = (x+1)^4.
        assert_eq!(poly("x^4 + 1", 2).factor(), vec![(poly("x + 1", 2), 4)]);
    }

    #[test]
    fn factor_product_reconstructs() {
        let f = poly("x^7 + 2*x^5 + x^4 + x^2 + 2", 3);
        let mut prod = FpPoly::one(3);
        for (g, e) in f.factor() {
            assert!(g.is_irreducible());
            prod = prod.mul(&g.pow(e));
        }
        assert_eq!(prod, f.monic());
    }
}
