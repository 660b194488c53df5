//! Representations of `C_p × C_p` (`p` odd): the irreducibles `γ_0..γ_3`,
//! `ρ_i`, the glued representation `Γ_0` of degree `p²`, and its extensions
//! `Γ_n` of degree `(3p-2)n + p²`.

use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{Provenance, Representation};
use crate::cyclotomic::{alpha_i, coords_column, xi_matrix, CycloElement};
use crate::error::{Error, Result};
use crate::groups::{GroupSpec, HolonomyGroup};
use crate::linalg::ring::is_prime;
use crate::linalg::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P2Irreducible {
    /// `γ_0..γ_3`.
    Gamma(u8),
    /// `ρ_i`, `2 <= i <= p-1`.
    Rho(u64),
}

impl P2Irreducible {
    pub fn all(p: u64) -> Vec<P2Irreducible> {
        let mut out: Vec<_> = (0..4).map(P2Irreducible::Gamma).collect();
        out.extend((2..p).map(P2Irreducible::Rho));
        out
    }

    pub fn name(&self) -> String {
        match self {
            P2Irreducible::Gamma(k) => format!("gamma_{k}"),
            P2Irreducible::Rho(i) => format!("rho_{i}"),
        }
    }
}

fn eps(p: u64) -> IntMatrix {
    xi_matrix(p, 1)
}

/// Images of `a` and `b` under an irreducible.
pub fn irreducible_images(p: u64, which: P2Irreducible) -> (IntMatrix, IntMatrix) {
    let e = eps(p);
    let one = IntMatrix::identity((p - 1) as usize);
    match which {
        P2Irreducible::Gamma(0) => (IntMatrix::identity(1), IntMatrix::identity(1)),
        P2Irreducible::Gamma(1) => (one, e),
        P2Irreducible::Gamma(2) => (e, one),
        P2Irreducible::Gamma(3) => (e.clone(), e),
        P2Irreducible::Gamma(k) => panic!("no irreducible gamma_{k}"),
        P2Irreducible::Rho(i) => (e.clone(), e.pow(i)),
    }
}

fn check_p(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::Hypothesis(
            "family theorem2 requires p > 2 (the group C_2 x C_2 is not covered by this construction)".into(),
        ));
    }
    Ok(())
}

fn group(p: u64) -> Result<Arc<HolonomyGroup>> {
    Ok(Arc::new(HolonomyGroup::new(GroupSpec::ElemAbelian { p })?))
}

pub fn irreducible_rep(p: u64, which: P2Irreducible) -> Result<Representation> {
    check_p(p)?;
    if let P2Irreducible::Rho(i) = which {
        if i < 2 || i >= p {
            return Err(Error::InvalidParameter(format!("rho_{i} needs 2 <= i <= p-1")));
        }
    }
    let (a, b) = irreducible_images(p, which);
    Representation::new(group(p)?, vec![a, b], Provenance::Other { label: which.name() })
}

/// Order of the blocks of `τ`: `ρ_{p-1}, …, ρ_2, γ_3, γ_2, γ_1`.
pub fn tau_order(p: u64) -> Vec<P2Irreducible> {
    let mut out: Vec<_> = (2..p).rev().map(P2Irreducible::Rho).collect();
    out.extend([P2Irreducible::Gamma(3), P2Irreducible::Gamma(2), P2Irreducible::Gamma(1)]);
    out
}

/// Range of the condensed coordinate `s` (`1..=p+1` have width `p-1`,
/// `s = p+2` is the final coordinate).
pub fn condensed_range(p: u64, s: usize) -> Range<usize> {
    let w = (p - 1) as usize;
    assert!((1..=p as usize + 2).contains(&s), "condensed coordinate out of range");
    if s == p as usize + 2 {
        let last = (p * p - 1) as usize;
        last..last + 1
    } else {
        (s - 1) * w..s * w
    }
}

fn int_column(x: &CycloElement) -> IntMatrix {
    coords_column(x).to_integer().expect("integral element")
}

/// Generator images of `Γ_0`.
pub fn gamma0_images(p: u64) -> (IntMatrix, IntMatrix) {
    let tau = tau_order(p);
    let tau_a: Vec<IntMatrix> = tau.iter().map(|&w| irreducible_images(p, w).0).collect();
    let tau_b: Vec<IntMatrix> = tau.iter().map(|&w| irreducible_images(p, w).1).collect();
    let one = int_column(&CycloElement::one(p, 1));
    let zero = IntMatrix::zeros((p - 1) as usize, 1);
    let mut ua: Vec<&IntMatrix> = vec![&one; p as usize];
    ua.push(&zero);
    let alphas: Vec<IntMatrix> = (1..=p).map(|i| int_column(&alpha_i(p, i))).collect();
    let mut ub: Vec<&IntMatrix> = alphas.iter().collect();
    ub.push(&one);
    let glue = |blocks: &[IntMatrix], u: Vec<&IntMatrix>| {
        let t = IntMatrix::direct_sum(&blocks.iter().collect::<Vec<_>>());
        let u = IntMatrix::vstack(&u).expect("columns of equal width");
        let mut m = IntMatrix::identity((p * p) as usize);
        m.set_block(0, 0, &t);
        m.set_block(0, t.cols(), &u);
        m
    };
    (glue(&tau_a, ua), glue(&tau_b, ub))
}

/// Generator images of `Δ_n` (`n >= 1`), blocks ordered
/// `E_n⊗γ_3, E_n⊗γ_2, E_n⊗γ_1, E_n⊗γ_0`.
pub fn delta_n_images(p: u64, n: usize) -> (IntMatrix, IntMatrix) {
    let q = (p - 1) as usize;
    let en = IntMatrix::identity(n);
    let one = int_column(&CycloElement::one(p, 1));
    let eq = IntMatrix::identity(q);
    let build = |g: usize| {
        let pick = |k: u8| {
            let (a, b) = irreducible_images(p, P2Irreducible::Gamma(k));
            en.kron(if g == 0 { &a } else { &b })
        };
        let (u11, u21, u22) = if g == 0 {
            (en.kron(&eq), en.kron(&eq), en.kron(&one))
        } else {
            (IntMatrix::zeros(n * q, n * q), en.kron(&eq).neg(), IntMatrix::zeros(n * q, n))
        };
        let u12 = IntMatrix::jordan_upper(n).kron(&one);
        let d = 3 * n * q + n;
        let mut m = IntMatrix::zeros(d, d);
        m.set_block(0, 0, &pick(3));
        m.set_block(n * q, n * q, &pick(2));
        m.set_block(2 * n * q, 2 * n * q, &pick(1));
        m.set_block(3 * n * q, 3 * n * q, &pick(0));
        m.set_block(0, 2 * n * q, &u11);
        m.set_block(0, 3 * n * q, &u12);
        m.set_block(n * q, 2 * n * q, &u21);
        m.set_block(n * q, 3 * n * q, &u22);
        m
    };
    (build(0), build(1))
}

/// `(3p-2)n + p²`.
pub fn p2_degree(p: u64, n: usize) -> usize {
    (3 * p as usize - 2) * n + (p * p) as usize
}

/// `Γ_0` for `n = 0`, otherwise `Γ_n = [[Γ_0, V_n], [0, Δ_n]]`, where `V_n`
/// links the `γ_3` block of `Γ_0` to the first `γ_0` of `Δ_n`.
pub fn build_p2_rep(p: u64, n: usize) -> Result<Representation> {
    check_p(p)?;
    let (a0, b0) = gamma0_images(p);
    let images = if n == 0 {
        vec![a0, b0]
    } else {
        let (da, db) = delta_n_images(p, n);
        let d0 = (p * p) as usize;
        let q = (p - 1) as usize;
        let d = p2_degree(p, n);
        let mut v = IntMatrix::zeros(d0, d - d0);
        v.set((p as usize - 2) * q, 3 * n * q, BigInt::one());
        [(a0, da), (b0, db)]
            .into_iter()
            .map(|(g0, dn)| {
                let mut m = IntMatrix::zeros(d, d);
                m.set_block(0, 0, &g0);
                m.set_block(0, d0, &v);
                m.set_block(d0, d0, &dn);
                m
            })
            .collect()
    };
    Representation::new(group(p)?, images, Provenance::P2 { p, n })
}
