//! Compressed sparse row matrices with `i64` entries and checked arithmetic.
//!
//! Used as a cache for the images of every group element, where dense
//! arbitrary-precision storage would dominate memory.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<i64>,
}

impl SparseIntMatrix {
    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            vals: vec![1; n],
        }
    }

    /// Fails when an entry does not fit in `i64`.
    pub fn from_dense(m: &IntMatrix) -> Option<Self> {
        let mut row_ptr = Vec::with_capacity(m.rows() + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..m.rows() {
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    col_idx.push(j);
                    vals.push(x.to_i64()?);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Some(SparseIntMatrix { rows: m.rows(), cols: m.cols(), row_ptr, col_idx, vals })
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                out.set(i, j, BigInt::from(v));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                let mut it = self.row(i);
                it.next() == Some((i, 1)) && it.next().is_none()
            })
    }

    /// Checked product; `None` on overflow.
    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.cols, rhs.rows, "sparse shapes do not compose");
        let mut acc = vec![0i64; rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; rhs.cols];
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in rhs.row(k) {
                    acc[j] = acc[j].checked_add(a.checked_mul(b)?)?;
                    if !mark[j] {
                        mark[j] = true;
                        touched.push(j);
                    }
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != 0 {
                    col_idx.push(j);
                    vals.push(acc[j]);
                }
                acc[j] = 0;
                mark[j] = false;
            }
            touched.clear();
            row_ptr.push(col_idx.len());
        }
        Some(SparseIntMatrix { rows: self.rows, cols: rhs.cols, row_ptr, col_idx, vals })
    }

    pub fn kron(&self, rhs: &Self) -> Option<Self> {
        let mut row_ptr = Vec::with_capacity(self.rows * rhs.rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..self.rows {
            for k in 0..rhs.rows {
                for (j, a) in self.row(i) {
                    for (l, b) in rhs.row(k) {
                        col_idx.push(j * rhs.cols + l);
                        vals.push(a.checked_mul(b)?);
                    }
                }
                row_ptr.push(col_idx.len());
            }
        }
        Some(SparseIntMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            row_ptr,
            col_idx,
            vals,
        })
    }

    /// Product with a vector reduced modulo `m` (entries of `v` in `[0, m)`).
    pub fn mul_vec_mod(&self, v: &[i64], m: i64) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc: i128 = 0;
                for (j, a) in self.row(i) {
                    acc += a as i128 * v[j] as i128;
                }
                acc.rem_euclid(m as i128) as i64
            })
            .collect()
    }

    pub fn mul_vec_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, a) in self.row(i) {
                    if !v[j].is_zero() {
                        acc += &v[j] * a;
                    }
                }
                acc
            })
            .collect()
    }

    /// Entrywise sum; `None` on overflow.
    pub fn add(&self, rhs: &Self) -> Option<Self> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for i in 0..self.rows {
            let mut merged: Vec<(usize, i64)> = self.row(i).chain(rhs.row(i)).collect();
            merged.sort_unstable_by_key(|e| e.0);
            let mut k = 0;
            while k < merged.len() {
                let c = merged[k].0;
                let mut s = 0i64;
                while k < merged.len() && merged[k].0 == c {
                    s = s.checked_add(merged[k].1)?;
                    k += 1;
                }
                if s != 0 {
                    col_idx.push(c);
                    vals.push(s);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Some(SparseIntMatrix { rows: self.rows, cols: self.cols, row_ptr, col_idx, vals })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_roundtrip_and_products() {
        let a = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        let s = SparseIntMatrix::from_dense(&a).unwrap();
        assert_eq!(s.to_dense(), a);
        let s3 = s.mul(&s).unwrap().mul(&s).unwrap();
        assert!(s3.is_identity());
        let k = s.kron(&SparseIntMatrix::identity(2)).unwrap();
        assert_eq!(k.to_dense(), a.kron(&IntMatrix::identity(2)));
        assert_eq!(s.add(&s).unwrap().to_dense(), a.add(&a));
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntMatrix::from_i64(&[vec![i64::MAX / 2 + 1]]);
        let s = SparseIntMatrix::from_dense(&big).unwrap();
        assert!(s.add(&s).is_none());
    }

    #[test]
    fn modular_matvec() {
        let a = IntMatrix::from_i64(&[vec![2, -1], vec![0, 3]]);
        let s = SparseIntMatrix::from_dense(&a).unwrap();
        assert_eq!(s.mul_vec_mod(&[1, 2], 4), vec![0, 2]);
    }
}
