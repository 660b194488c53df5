//! Representations of cyclic `p`-groups glued from the modules `R_i = K[ξ_i]`,
//! and their tensor products over a composite cyclic group.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{Provenance, Representation};
use crate::cyclotomic::{column_embed_int, phi, xi_matrix, CycloElement};
use crate::error::{Error, Result};
use crate::groups::{GroupSpec, HolonomyGroup};
use crate::linalg::ring::is_prime;
use crate::linalg::IntMatrix;

/// The three blocks of the glued representation at the generator `a`:
/// `[[Δ_1(a), U(a)], [0, Δ_2(a)]]`.
#[derive(Clone, Debug)]
pub struct CyclicBlocks {
    pub delta1: IntMatrix,
    pub delta2: IntMatrix,
    pub u: IntMatrix,
}

impl CyclicBlocks {
    pub fn assemble(&self) -> IntMatrix {
        let z = IntMatrix::zeros(self.delta2.rows(), self.delta1.cols());
        IntMatrix::from_blocks(&[vec![&self.delta1, &self.u], vec![&z, &self.delta2]])
            .expect("block shapes agree")
    }
}

/// `J_m` (lower) for `m > 1`, the scalar `1` for `m = 1`.
pub fn default_parameter(m: usize) -> IntMatrix {
    if m == 1 {
        IntMatrix::identity(1)
    } else {
        IntMatrix::jordan_lower(m)
    }
}

/// `⟨1⟩ⁱⱼ` as an integer matrix.
fn one_embed(p: u64, i: u32, j: u32) -> IntMatrix {
    column_embed_int(&CycloElement::one(p, i), j).expect("i <= j")
}

fn check_cyclic(p: u64, n: u32, m: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if n < 2 {
        return Err(Error::Hypothesis(format!("cyclic family requires n >= 2 (got n = {n})")));
    }
    if m < 1 {
        return Err(Error::Hypothesis("cyclic family requires m >= 1".into()));
    }
    if n == 2 && m != 1 {
        return Err(Error::Hypothesis(format!("for n = 2 only m = 1 is defined (got m = {m})")));
    }
    Ok(())
}

pub fn cyclic_blocks(p: u64, n: u32, m: usize, a: &IntMatrix) -> Result<CyclicBlocks> {
    check_cyclic(p, n, m)?;
    if a.shape() != (m, m) {
        return Err(Error::DimensionMismatch(format!("parameter must be {m}x{m}, got {:?}", a.shape())));
    }
    let em = IntMatrix::identity(m);
    let delta1 = IntMatrix::direct_sum(&[&em, &em.kron(&xi_matrix(p, 1))]);
    let d2_parts: Vec<IntMatrix> = (2..=n).map(|j| em.kron(&xi_matrix(p, j))).collect();
    let delta2 = IntMatrix::direct_sum(&d2_parts.iter().collect::<Vec<_>>());
    let top: Vec<IntMatrix> = (2..=n)
        .map(|j| if j == 2 { a.kron(&one_embed(p, 0, 2)) } else { em.kron(&one_embed(p, 0, j)) })
        .collect();
    let bottom: Vec<IntMatrix> = (2..=n).map(|j| em.kron(&one_embed(p, 1, j))).collect();
    let top = IntMatrix::hstack(&top.iter().collect::<Vec<_>>())?;
    let bottom = IntMatrix::hstack(&bottom.iter().collect::<Vec<_>>())?;
    let u = IntMatrix::vstack(&[&top, &bottom])?;
    Ok(CyclicBlocks { delta1, delta2, u })
}

/// Degree `m·p^n` representation of `H_{p^n}` with parameter `A`
/// (default: [`default_parameter`]). For `n = 2` only `m = 1` is defined.
pub fn build_cyclic_rep(p: u64, n: u32, m: usize, a: Option<&IntMatrix>) -> Result<Representation> {
    check_cyclic(p, n, m)?;
    let param = a.cloned().unwrap_or_else(|| default_parameter(m));
    let blocks = cyclic_blocks(p, n, m, &param)?;
    let group = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(p, n)] })?;
    Representation::new(
        Arc::new(group),
        vec![blocks.assemble()],
        Provenance::Cyclic { p, n, m, parameter: param },
    )
}

/// Tensor product of the standard factor representations over
/// `H_{p_1^{n_1}} × ⋯ × H_{p_s^{n_s}}`: the first factor carries `m`,
/// the others use `m = 1`.
pub fn build_composite_rep(factors: &[(u64, u32)], m: usize) -> Result<Representation> {
    if m < 1 {
        return Err(Error::Hypothesis("composite family requires m >= 1".into()));
    }
    let group = HolonomyGroup::new_theorem1(factors.to_vec())?;
    let factor_images: Vec<IntMatrix> = factors
        .iter()
        .enumerate()
        .map(|(i, &(p, n))| {
            let mi = if i == 0 { m } else { 1 };
            cyclic_blocks(p, n, mi, &default_parameter(mi)).map(|b| b.assemble())
        })
        .collect::<Result<_>>()?;
    let images = (0..factors.len())
        .map(|i| {
            factor_images.iter().enumerate().fold(IntMatrix::identity(1), |acc, (j, f)| {
                if i == j {
                    acc.kron(f)
                } else {
                    acc.kron(&IntMatrix::identity(f.rows()))
                }
            })
        })
        .collect();
    let order = group.order() as u64;
    let coprime_ok = (m as u64).gcd(&order) == 1;
    Representation::new(
        Arc::new(group),
        images,
        Provenance::Composite { factors: factors.to_vec(), m, coprime_ok },
    )
}

/// `δ_i`: the action of `a` on `R_i` by multiplication with `ξ_i`, as a
/// representation of `H_{p^n}` (`i <= n`).
pub fn delta_rep(p: u64, n: u32, i: u32) -> Result<Representation> {
    if i > n {
        return Err(Error::InvalidParameter(format!("δ_{i} is not a representation of a group of order {p}^{n}")));
    }
    let group = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(p, n)] })?;
    Representation::new(Arc::new(group), vec![xi_matrix(p, i)], Provenance::Other { label: format!("delta_{i}") })
}

/// Extension of `R_i` by `R_j` (`i < j <= n`) through `⟨α⟩ⁱⱼ`:
/// `a ↦ [[ξ̃_i, ⟨α⟩ⁱⱼ], [0, ξ̃_j]]`.
pub fn extension_rep(p: u64, n: u32, j: u32, alpha: &CycloElement) -> Result<Representation> {
    let i = alpha.level();
    if alpha.p() != p || i >= j || j > n {
        return Err(Error::InvalidParameter(format!("extension needs i < j <= n (got i = {i}, j = {j}, n = {n})")));
    }
    let top = IntMatrix::hstack(&[&xi_matrix(p, i), &column_embed_int(alpha, j)?])?;
    let bottom = IntMatrix::hstack(&[&IntMatrix::zeros(phi(p, j), phi(p, i)), &xi_matrix(p, j)])?;
    let img = IntMatrix::vstack(&[&top, &bottom])?;
    let group = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(p, n)] })?;
    Representation::new(Arc::new(group), vec![img], Provenance::Other { label: format!("extension R_{i} by R_{j}") })
}

/// Top-right block of `Γ(a)^p`, i.e. `U(a^p)`.
pub fn u_of_power(blocks: &CyclicBlocks, p: u64) -> IntMatrix {
    let full = blocks.assemble().pow(p);
    let r = blocks.delta1.rows();
    full.submatrix(0, r, r, full.cols())
}

/// `Σ_{t<p} Δ_1(a)^{p-t-1} U(a) Δ_2(a)^t`.
pub fn u_power_formula(blocks: &CyclicBlocks, p: u64) -> IntMatrix {
    let mut acc = IntMatrix::zeros(blocks.u.rows(), blocks.u.cols());
    for t in 0..p {
        let term = blocks.delta1.pow(p - t - 1).mul(&blocks.u).mul(&blocks.delta2.pow(t));
        acc = acc.add(&term);
    }
    acc
}

/// The vector `v`: first basis vector of the tensor product, fixed by every
/// group element.
pub fn fixed_vector(rep: &Representation) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); rep.degree()];
    v[0] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_example() {
        let r = build_cyclic_rep(2, 2, 1, None).unwrap();
        let expected = IntMatrix::from_i64(&[vec![1, 0, 0, 1], vec![0, -1, 0, 1], vec![0, 0, 0, -1], vec![0, 0, 1, 0]]);
        assert_eq!(r.generator_images()[0], expected);
        assert!(r.verify().unwrap().all_ok());
    }

    #[test]
    fn degrees() {
        assert_eq!(build_cyclic_rep(2, 3, 1, None).unwrap().degree(), 8);
        let j2 = IntMatrix::jordan_lower(2);
        assert_eq!(build_cyclic_rep(3, 3, 2, Some(&j2)).unwrap().degree(), 54);
        assert!(build_cyclic_rep(2, 1, 1, None).is_err());
        assert!(build_cyclic_rep(2, 2, 2, None).is_err());
    }

    #[test]
    fn composite_single_factor_matches_cyclic() {
        let a = build_composite_rep(&[(2, 3)], 1).unwrap();
        let b = build_cyclic_rep(2, 3, 1, None).unwrap();
        assert_eq!(a.generator_images(), b.generator_images());
        assert!(!build_composite_rep(&[(2, 3)], 2).unwrap().coprime_ok());
    }

    #[test]
    fn extension_splits_on_multiples_of_p() {
        let r = extension_rep(3, 2, 1, &CycloElement::from_i64(3, 0, &[3]).unwrap()).unwrap();
        assert!(r.verify().unwrap().relations_ok);
    }
}
