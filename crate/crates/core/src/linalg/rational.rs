//! Gaussian elimination over fields (rationals and F_p).

use num_rational::BigRational;

use super::{Field, Matrix, RatMatrix};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: Field>(a: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(pr) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero_elem()) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = a.get(r, c).inverse().expect("nonzero pivot");
        a.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r {
                let f = a.get(i, c).clone();
                if !f.is_zero_elem() {
                    a.add_row_multiple(i, r, &f.negate());
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_field<T: Field>(mut a: Matrix<T>) -> usize {
    rref(&mut a).len()
}

pub fn inverse_field<T: Field>(a: &Matrix<T>) -> Option<Matrix<T>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let id = Matrix::identity_like(n, a.zero_elem());
    let mut aug = Matrix::hstack(&[a, &id]).ok()?;
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.submatrix(0, n, n, 2 * n))
}

/// Basis of the right kernel; the `k`-th vector has a one at the `k`-th free column.
pub fn kernel_field<T: Field>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let zero = a.zero_elem().clone();
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); a.cols()];
            v[f] = zero.one_like();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, f).negate();
            }
            v
        })
        .collect()
}

/// One solution of `A x = b`, or `None` when inconsistent.
pub fn solve_field<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length does not match");
    let col = Matrix::column_vector(b, a.zero_elem());
    let mut aug = Matrix::hstack(&[a, &col]).ok()?;
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![a.zero_elem().clone(); a.cols()];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols()).clone();
    }
    Some(x)
}

impl RatMatrix {
    pub fn rank(&self) -> usize {
        rank_field(self.clone())
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        inverse_field(self)
    }

    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        kernel_field(self)
    }

    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        solve_field(self, b)
    }
}

#[cfg(test)]
mod tests {
    use crate::linalg::ring::big_rational;
    use crate::linalg::{FpMatrix, IntMatrix};

    #[test]
    fn rational_inverse_and_rank() {
        let a = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).to_rational();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).to_rational();
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64(&[vec![1, 1, 0], vec![0, 0, 1]]).to_rational();
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| *x == big_rational(0, 1)));
        let x = a.solve(&[big_rational(1, 2), big_rational(3, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![big_rational(1, 2), big_rational(3, 1)]);
    }

    #[test]
    fn mod_p_inverse() {
        let a = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]).reduce_mod(3);
        let inv: FpMatrix = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(IntMatrix::from_i64(&[vec![3, 0], vec![0, 1]]).reduce_mod(3).rank(), 1);
    }
}
