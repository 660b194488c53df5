//! Arithmetic in `Q(ξ_i)`, `ξ_i` a primitive `p^i`-th root of unity, in the
//! ordered bases `B_i`.
//!
//! `B_1 = {1, ξ_1, ..., ξ_1^(p-2)}` and `B_i = B_(i-1) ∪ ξ_i B_(i-1) ∪ ... ∪
//! ξ_i^(p-1) B_(i-1)`. Since `ξ_k = ξ_i^(p^(i-k))`, the monomial
//! `ξ_1^e_1 ⋯ ξ_i^e_i` is the power `ξ_i^T` with `T = e_i + p e_(i-1) + ... +
//! p^(i-1) e_1`, so `B_i` is the power basis `{ξ_i^T : T < φ(p^i)}` in a
//! different order. Elements are multiplied as polynomials modulo the
//! cyclotomic polynomial and then read back in the `B_i` order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ring::{format_rational, parse_rational};
use crate::linalg::{IntMatrix, Matrix, RatMatrix};

/// `φ(p^i)`.
pub fn phi(p: u64, i: u32) -> usize {
    if i == 0 {
        1
    } else {
        ((p - 1) * p.pow(i - 1)) as usize
    }
}

/// Position in `B_i` of the power `ξ_i^t`, `t < φ(p^i)`.
fn basis_index(p: u64, i: u32, t: usize) -> usize {
    if i == 0 {
        return 0;
    }
    let p = p as usize;
    // Base-p digits of t: e_i is least significant, e_1 most significant.
    let mut digits = Vec::with_capacity(i as usize);
    let mut rest = t;
    for _ in 0..i {
        digits.push(rest % p);
        rest /= p;
    }
    // digits[k] = e_(i-k); index = e_1 + (p-1)(e_2 + p(e_3 + ...)).
    let mut idx = 0;
    for k in 0..(i as usize - 1) {
        idx = idx * p + digits[k];
    }
    digits[i as usize - 1] + (p - 1) * idx
}

/// Exponent vectors `(e_1, ..., e_i)` of the monomials of `B_i`, in order.
pub fn cyclo_basis(p: u64, i: u32) -> Vec<Vec<u32>> {
    let n = phi(p, i);
    let mut out = vec![Vec::new(); n];
    for t in 0..n {
        let mut e = vec![0u32; i as usize];
        let mut rest = t as u64;
        for k in (0..i as usize).rev() {
            e[k] = (rest % p) as u32;
            rest /= p;
        }
        out[basis_index(p, i, t)] = e;
    }
    out
}

/// Human-readable monomial names, e.g. `xi2^2*xi1`.
pub fn basis_labels(p: u64, i: u32) -> Vec<String> {
    cyclo_basis(p, i)
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| if x == 1 { format!("xi{}", k + 1) } else { format!("xi{}^{}", k + 1, x) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect()
}

/// Element of `Q(ξ_level)` stored by coordinates in `B_level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u64,
    level: u32,
    coords: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    p: u64,
    level: u32,
    coords: Vec<String>,
}

impl CycloElement {
    pub fn new(p: u64, level: u32, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != phi(p, level) {
            return Err(Error::DimensionMismatch(format!(
                "level {level} over p={p} needs {} coordinates, got {}",
                phi(p, level),
                coords.len()
            )));
        }
        Ok(CycloElement { p, level, coords })
    }

    pub fn from_i64(p: u64, level: u32, coords: &[i64]) -> Result<Self> {
        CycloElement::new(p, level, coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(p: u64, level: u32) -> Self {
        CycloElement { p, level, coords: vec![BigRational::zero(); phi(p, level)] }
    }

    pub fn one(p: u64, level: u32) -> Self {
        CycloElement::xi_power(p, level, 0)
    }

    /// `ξ_level^t` for any integer `t`.
    pub fn xi_power(p: u64, level: u32, t: i64) -> Self {
        let order = p.pow(level) as i64;
        let mut poly = vec![BigRational::zero(); t.rem_euclid(order.max(1)) as usize + 1];
        *poly.last_mut().unwrap() = BigRational::one();
        CycloElement::from_power_poly(p, level, poly)
    }

    /// `ξ_level` itself.
    pub fn xi(p: u64, level: u32) -> Self {
        CycloElement::xi_power(p, level, 1)
    }

    /// Integer polynomial in `ξ_level`, coefficients low degree first.
    pub fn from_poly_i64(p: u64, level: u32, coeffs: &[i64]) -> Self {
        CycloElement::from_power_poly(
            p,
            level,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    fn modulus_poly(&self) -> Vec<BigRational> {
        cyclotomic_poly(self.p, self.level)
    }

    fn to_power_poly(&self) -> Vec<BigRational> {
        let n = self.coords.len();
        let mut out = vec![BigRational::zero(); n];
        for (t, slot) in out.iter_mut().enumerate() {
            *slot = self.coords[basis_index(self.p, self.level, t)].clone();
        }
        out
    }

    fn from_power_poly(p: u64, level: u32, poly: Vec<BigRational>) -> Self {
        let reduced = poly_rem(&poly, &cyclotomic_poly(p, level));
        let n = phi(p, level);
        let mut coords = vec![BigRational::zero(); n];
        for (t, c) in reduced.into_iter().enumerate().take(n) {
            coords[basis_index(p, level, t)] = c;
        }
        CycloElement { p, level, coords }
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.p != rhs.p || self.level != rhs.level {
            return Err(Error::DomainMismatch(format!(
                "Q(xi) with p={}, level {} vs p={}, level {}",
                self.p, self.level, rhs.p, rhs.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        Ok(CycloElement { p: self.p, level: self.level, coords })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        Ok(CycloElement { p: self.p, level: self.level, coords })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let prod = poly_mul(&self.to_power_poly(), &rhs.to_power_poly());
        Ok(CycloElement::from_power_poly(self.p, self.level, prod))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycloElement { p: self.p, level: self.level, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Multiplicative inverse by extended Euclid against the cyclotomic polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero element of Q(xi)".into()));
        }
        let (g, s) = poly_ext_gcd(&self.to_power_poly(), &self.modulus_poly());
        // The cyclotomic polynomial is irreducible, so g is a nonzero constant.
        if g.len() != 1 {
            return Err(Error::NotInvertible("element shares a factor with the modulus".into()));
        }
        let inv_g = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(CycloElement::from_power_poly(self.p, self.level, s))
    }

    /// Matrix of multiplication by `self` in `B_level` (column k = coords of `self * b_k`).
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.coords.len();
        let mut out = RatMatrix::zeros(n, n);
        for t in 0..n {
            let mut mono = vec![BigRational::zero(); t + 1];
            mono[t] = BigRational::one();
            let col = CycloElement::from_power_poly(self.p, self.level, poly_mul(&self.to_power_poly(), &mono));
            let k = basis_index(self.p, self.level, t);
            for (r, c) in col.coords.into_iter().enumerate() {
                out.set(r, k, c);
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(CycloJson {
            p: self.p,
            level: self.level,
            coords: self.coords.iter().map(format_rational).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: CycloJson = serde_json::from_value(v.clone())?;
        let coords = j
            .coords
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad coordinate '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        CycloElement::new(j.p, j.level, coords)
    }
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycloElement::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

/// The integer matrix `ξ̃_i` of multiplication by `ξ_i` in `B_i` (`ξ̃_0 = (1)`).
pub fn xi_matrix(p: u64, i: u32) -> IntMatrix {
    CycloElement::xi(p, i)
        .mult_matrix()
        .to_integer()
        .expect("multiplication by a root of unity is integral")
}

/// `⟨α⟩ⁱⱼ`: `φ(p^i) x φ(p^j)` matrix, zero except the last column, which holds
/// the coordinates of `α` in `B_i`.
pub fn column_embed(x: &CycloElement, j: u32) -> Result<RatMatrix> {
    if x.level > j {
        return Err(Error::InvalidParameter(format!(
            "column embedding needs source level {} <= target level {j}",
            x.level
        )));
    }
    let cols = phi(x.p, j);
    let mut m = RatMatrix::zeros(x.coords.len(), cols);
    for (r, c) in x.coords.iter().enumerate() {
        m.set(r, cols - 1, c.clone());
    }
    Ok(m)
}

/// Integer version of [`column_embed`]; fails on non-integral input.
pub fn column_embed_int(x: &CycloElement, j: u32) -> Result<IntMatrix> {
    column_embed(x, j)?
        .to_integer()
        .ok_or_else(|| Error::DomainMismatch("column embedding of a non-integral element".into()))
}

/// Coordinate column `⟨α⟩` of an element.
pub fn coords_column(x: &CycloElement) -> RatMatrix {
    Matrix::column_vector(x.coords(), &BigRational::zero())
}

/// `ε = ξ_1`, a primitive p-th root of unity.
pub fn epsilon(p: u64) -> CycloElement {
    CycloElement::xi(p, 1)
}

/// `(ε - 1)^(-1)`.
pub fn alpha(p: u64) -> CycloElement {
    let e = epsilon(p);
    e.sub(&CycloElement::one(p, 1)).and_then(|d| d.inverse()).expect("ε - 1 is invertible")
}

/// `α_i = (ε^(p-i) - 1)/(ε - 1) = 1 + ε + ... + ε^(p-i-1)`.
pub fn alpha_i(p: u64, i: u64) -> CycloElement {
    let n = (p - i) as usize;
    CycloElement::from_poly_i64(p, 1, &vec![1; n])
}

/// `β_s = (ε^s - 1)/(ε - 1) = 1 + ε + ... + ε^(s-1)`.
pub fn beta_s(p: u64, s: u64) -> CycloElement {
    CycloElement::from_poly_i64(p, 1, &vec![1; s as usize])
}

/// `Φ_{p^i}(x) = Σ_{t<p} x^(t p^(i-1))`, and `x - 1` for `i = 0`.
fn cyclotomic_poly(p: u64, i: u32) -> Vec<BigRational> {
    if i == 0 {
        return vec![-BigRational::one(), BigRational::one()];
    }
    let step = p.pow(i - 1) as usize;
    let mut out = vec![BigRational::zero(); step * (p as usize - 1) + 1];
    for t in 0..p as usize {
        out[t * step] = BigRational::one();
    }
    out
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    poly_div_rem(a, b).1
}

/// `(g, s)` with `s a ≡ g (mod b)`.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(b.to_vec()), poly_rem(a, b));
    let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_div_rem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ring::big_rational;

    #[test]
    fn basis_orders() {
        assert_eq!(basis_labels(3, 1), vec!["1", "xi1"]);
        assert_eq!(basis_labels(2, 1), vec!["1"]);
        assert_eq!(basis_labels(2, 2), vec!["1", "xi2"]);
        assert_eq!(
            basis_labels(3, 2),
            vec!["1", "xi1", "xi2", "xi2*xi1", "xi2^2", "xi2^2*xi1"]
        );
        assert_eq!(cyclo_basis(2, 3).len(), 4);
    }

    #[test]
    fn xi_matrices() {
        assert_eq!(xi_matrix(3, 1), IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]));
        assert_eq!(xi_matrix(2, 1), IntMatrix::from_i64(&[vec![-1]]));
        assert_eq!(xi_matrix(2, 2), IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]));
        assert_eq!(xi_matrix(5, 0), IntMatrix::identity(1));
    }

    #[test]
    fn mult_matrix_examples() {
        let one = CycloElement::one(3, 1);
        assert!(one.mult_matrix().is_identity());
        let x = CycloElement::from_i64(3, 1, &[1, 1]).unwrap();
        assert_eq!(x.mult_matrix(), IntMatrix::from_i64(&[vec![1, -1], vec![1, 0]]).to_rational());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycloElement::one(3, 1).inverse().unwrap(), CycloElement::one(3, 1));
        let a = alpha(3);
        assert_eq!(a.coords(), &[big_rational(-2, 3), big_rational(-1, 3)]);
        assert!(a.scale(&big_rational(3, 1)).is_integral());
        let e_inv = epsilon(3).inverse().unwrap();
        assert_eq!(e_inv, CycloElement::from_i64(3, 1, &[-1, -1]).unwrap());
        assert!(CycloElement::zero(3, 1).inverse().is_err());
    }

    #[test]
    fn embedding_examples() {
        let m = column_embed(&CycloElement::one(2, 0), 2).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[vec![0, 1]]).to_rational());
        let m = column_embed(&CycloElement::xi(3, 1), 2).unwrap();
        assert_eq!(m.shape(), (2, 6));
        assert_eq!(m.col(5), vec![big_rational(0, 1), big_rational(1, 1)]);
        assert!(column_embed(&CycloElement::zero(3, 1), 2).unwrap().is_zero());
        assert!(column_embed(&CycloElement::one(3, 2), 1).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = alpha(5);
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.contains("\"level\":1"));
        let back: CycloElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
