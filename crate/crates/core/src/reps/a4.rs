//! Representations `Γ_n` of `A_4 = ⟨a, b | a² = b³ = (ab)³ = 1⟩` of degree `12n`.

use std::sync::Arc;

use super::{Provenance, Representation};
use crate::error::{Error, Result};
use crate::groups::{GroupSpec, HolonomyGroup};
use crate::linalg::IntMatrix;

pub const DELTA2_A: [[i64; 2]; 2] = [[1, 0], [0, 1]];
pub const DELTA2_B: [[i64; 2]; 2] = [[0, -1], [1, -1]];
pub const DELTA3_A: [[i64; 3]; 3] = [[0, -1, 1], [0, -1, 0], [1, -1, 0]];
pub const DELTA3_B: [[i64; 3]; 3] = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];
pub const DELTA4_A: [[i64; 3]; 3] = [[-1, -1, -1], [0, 0, 1], [0, 1, 0]];
/// `Δ_4(b)` as used. The published value is [`DELTA4_B_PRINTED`], which
/// breaks `(ab)³ = 1`; two entries differ.
pub const DELTA4_B: [[i64; 3]; 3] = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];
pub const DELTA4_B_PRINTED: [[i64; 3]; 3] = [[0, -1, 1], [1, 0, 1], [0, 1, 0]];
pub const X1_A: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, 1]];
pub const X2_A: [[i64; 2]; 3] = [[0, 1], [-1, 1], [-1, 0]];
pub const X3_A: [[i64; 3]; 3] = [[0, 0, 1], [0, 0, 0], [0, -1, 0]];
pub const ALPHA: [i64; 11] = [0, 0, 0, 0, 2, 0, 1, -1, 0, 0, 0];
pub const BETA: [i64; 11] = [0, -2, 0, 0, 0, 0, 0, 1, -1, -1, 0];

fn mat<const R: usize, const C: usize>(a: &[[i64; C]; R]) -> IntMatrix {
    IntMatrix::from_i64(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// The degree-11 block `Δ` at `a` and `b` with the given `Δ_4(b)`.
pub fn delta_images_with(delta4_b: &[[i64; 3]; 3]) -> (IntMatrix, IntMatrix) {
    let build = |d3: IntMatrix, d2: IntMatrix, d4: IntMatrix, x: Option<(IntMatrix, IntMatrix, IntMatrix)>| {
        let mut m = IntMatrix::zeros(11, 11);
        m.set_block(0, 0, &d3);
        m.set_block(3, 3, &d3);
        m.set_block(6, 6, &d2);
        m.set_block(8, 8, &d4);
        if let Some((x1, x2, x3)) = x {
            m.set_block(0, 6, &x1);
            m.set_block(0, 8, &x3);
            m.set_block(3, 6, &x2);
        }
        m
    };
    let a = build(mat(&DELTA3_A), mat(&DELTA2_A), mat(&DELTA4_A), Some((mat(&X1_A), mat(&X2_A), mat(&X3_A))));
    let b = build(mat(&DELTA3_B), mat(&DELTA2_B), mat(delta4_b), None);
    (a, b)
}

pub fn delta_images() -> (IntMatrix, IntMatrix) {
    delta_images_with(&DELTA4_B)
}

/// `J_n(0)` with its ones below the diagonal. With ones above it the
/// cocycle `f_n` restricts to a coboundary on the involutions for `n >= 2`.
pub fn nilpotent_jordan(n: usize) -> IntMatrix {
    IntMatrix::jordan_block(n, 0).transpose()
}

/// `Γ_n(a) = [[E_n, E_n⊗α + J_n(0)⊗β], [0, E_n⊗Δ(a)]]`, `Γ_n(b) = E_n ⊕ E_n⊗Δ(b)`.
pub fn gamma_n_images_with(n: usize, delta4_b: &[[i64; 3]; 3]) -> (IntMatrix, IntMatrix) {
    let (da, db) = delta_images_with(delta4_b);
    let en = IntMatrix::identity(n);
    let alpha = IntMatrix::from_i64(&[ALPHA.to_vec()]);
    let beta = IntMatrix::from_i64(&[BETA.to_vec()]);
    let u = en.kron(&alpha).add(&nilpotent_jordan(n).kron(&beta));
    let mut a = IntMatrix::identity(12 * n);
    a.set_block(0, n, &u);
    a.set_block(n, n, &en.kron(&da));
    let mut b = IntMatrix::identity(12 * n);
    b.set_block(n, n, &en.kron(&db));
    (a, b)
}

pub fn build_a4_rep(n: usize) -> Result<Representation> {
    if n < 1 {
        return Err(Error::Hypothesis("family theorem3 requires n >= 1".into()));
    }
    let (a, b) = gamma_n_images_with(n, &DELTA4_B);
    let group = HolonomyGroup::new(GroupSpec::Alt4)?;
    Representation::new(Arc::new(group), vec![a, b], Provenance::A4 { n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_n_is_faithful() {
        for n in 1..=2 {
            let r = build_a4_rep(n).unwrap();
            assert_eq!(r.degree(), 12 * n);
            assert!(r.verify().unwrap().all_ok());
        }
        assert!(build_a4_rep(0).is_err());
    }

    #[test]
    fn printed_delta4_breaks_relation() {
        let a = mat(&DELTA4_A);
        let b = mat(&DELTA4_B_PRINTED);
        assert!(!a.mul(&b).pow(3).is_identity());
        let b = mat(&DELTA4_B);
        assert!(a.mul(&b).pow(3).is_identity());
    }

    #[test]
    fn intertwining_rows_for_n2() {
        let (a, _) = gamma_n_images_with(2, &DELTA4_B);
        let u = a.submatrix(0, 2, 2, 24);
        let row = |i: usize, c0: usize| u.row(i)[c0..c0 + 11].iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(row(0, 0), ALPHA);
        assert_eq!(row(0, 11), vec![0; 11]);
        assert_eq!(row(1, 0), BETA);
        assert_eq!(row(1, 11), ALPHA);
    }
}
