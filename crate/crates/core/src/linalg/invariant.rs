//! Invariant factors of square matrices over prime fields.

use super::snf::snf_diagonal;
use super::{FpMatrix, FpPoly, Matrix, Ring};

/// The characteristic matrix `x E - A` over `F_p[x]`.
pub fn characteristic_matrix(a: &FpMatrix) -> Matrix<FpPoly> {
    assert!(a.is_square(), "characteristic matrix of a non-square matrix");
    let p = a.modulus();
    let zero = FpPoly::zero(p);
    Matrix::from_fn(a.rows(), a.cols(), &zero, |i, j| {
        let c = FpPoly::constant(a.get(i, j).value() as i64, p).negate();
        if i == j {
            c.add(&FpPoly::x(p))
        } else {
            c
        }
    })
}

/// Nontrivial invariant factors of `x E - A`, monic, each dividing the next.
pub fn poly_invariant_factors(a: &FpMatrix) -> Vec<FpPoly> {
    let (diag, rank) = snf_diagonal(&characteristic_matrix(a));
    diag.into_iter()
        .take(rank)
        .filter(|d| !d.is_constant())
        .map(|d| d.monic())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn poly(s: &str) -> FpPoly {
        FpPoly::parse(s, 3).unwrap()
    }

    #[test]
    fn known_factor_lists() {
        let id = IntMatrix::identity(2).reduce_mod(3);
        assert_eq!(poly_invariant_factors(&id), vec![poly("x - 1"), poly("x - 1")]);
        let j = IntMatrix::jordan_block(2, 1).reduce_mod(3);
        assert_eq!(poly_invariant_factors(&j), vec![poly("x^2 - 2*x + 1")]);
        let d = IntMatrix::from_i64(&[vec![1, 0], vec![0, 2]]).reduce_mod(3);
        assert_eq!(poly_invariant_factors(&d), vec![poly("x - 1").mul(&poly("x - 2"))]);
    }
}
