//! Coefficient domains used by [`Matrix`](super::Matrix).
//!
//! Elements of `Z/pZ` and `F_p[x]` carry their modulus, so a ring has no
//! global zero; every constructor takes a prototype element instead.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }
}

/// A Euclidean domain with a canonical associate for every element.
pub trait EuclideanDomain: Ring {
    /// Compares Euclidean sizes (absolute value, degree).
    fn euclid_cmp(&self, other: &Self) -> Ordering;
    /// `(q, r)` with `self = q * rhs + r` and `r` smaller than `rhs`.
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self);
    fn is_unit(&self) -> bool;
    /// Unit `u` such that `u * self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero_elem() {
            return other.is_zero_elem();
        }
        other.div_rem_euclid(self).1.is_zero_elem()
    }
}

pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_one_elem(&self) -> bool {
        One::is_one(self)
    }
}

impl EuclideanDomain for BigInt {
    fn euclid_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self) {
        Integer::div_rem(self, rhs)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Residue class modulo a prime `p`, stored in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp { value: (value as i128).rem_euclid(m) as u64, modulus }
    }

    pub fn from_big(value: &BigInt, modulus: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        Fp { value: r.try_into().expect("residue fits in u64"), modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus, modulus: self.modulus }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + self.modulus as u128 - rhs.value as u128)
            % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
    fn negate(&self) -> Self {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // p is prime, so a^(p-2) is the inverse.
        Some(self.pow(self.modulus - 2))
    }
}

/// Inverse of `a` modulo the prime `p`, or `None` when `a ≡ 0`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    Fp { value: a % p, modulus: p }.inverse().map(|x| x.value)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn big_rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Reduces a rational to `[0, 1)`.
pub fn frac_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if Zero::is_zero(&d) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for a in 1..7 {
            let x = Fp::new(a, 7);
            assert!(x.times(&x.inverse().unwrap()).is_one_elem());
        }
        assert!(Fp::new(0, 7).inverse().is_none());
    }

    #[test]
    fn bigint_euclid() {
        let (q, r) = BigInt::from(-7).div_rem_euclid(&BigInt::from(3));
        assert_eq!(q * 3 + &r, BigInt::from(-7));
        assert!(r.magnitude() < BigInt::from(3).magnitude());
        assert!(BigInt::from(-1).is_unit());
        assert_eq!(BigInt::from(-5).normalizing_unit(), BigInt::from(-1));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-2/4").unwrap(), big_rational(-1, 2));
        assert_eq!(format_rational(&big_rational(6, 3)), "2");
        assert_eq!(frac_part(&big_rational(-2, 3)), big_rational(1, 3));
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
