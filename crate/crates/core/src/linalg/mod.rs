//! Dense exact matrices over the coefficient domains in [`ring`].

pub mod invariant;
pub mod json;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod snf;
pub mod sparse;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use poly::FpPoly;
pub use ring::{EuclideanDomain, Field, Fp, Ring};

/// Row-major dense matrix. Carries a zero element so empty matrices still
/// know their coefficient domain.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;
pub type FpMatrix = Matrix<Fp>;
pub type PolyMatrix = Matrix<FpPoly>;

impl<T: Ring> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, zero: T) -> Self {
        Matrix { rows, cols, data: vec![zero.zero_like(); rows * cols], zero: zero.zero_like() }
    }

    pub fn zeros_like(rows: usize, cols: usize, proto: &T) -> Self {
        Matrix::filled(rows, cols, proto.zero_like())
    }

    pub fn identity_like(n: usize, proto: &T) -> Self {
        let mut m = Matrix::zeros_like(n, n, proto);
        for i in 0..n {
            m.data[i * n + i] = proto.one_like();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>, proto: &T) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data, zero: proto.zero_like() }
    }

    pub fn from_fn(rows: usize, cols: usize, proto: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, zero: proto.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vector(v: &[T], proto: &T) -> Self {
        Matrix::from_vec(1, v.len(), v.to_vec(), proto)
    }

    pub fn column_vector(v: &[T], proto: &T) -> Self {
        Matrix::from_vec(v.len(), 1, v.to_vec(), proto)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one_elem()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: proto.zero_like(),
        }
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros_like(self.rows, rhs.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// Panicking shorthand for shapes the caller has already validated.
    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix shapes agree")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("matrix shapes agree")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shapes compose")
    }

    pub fn neg(&self) -> Self {
        self.map(&self.zero, |x| x.negate())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(&self.zero, |x| x.times(c))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity_like(self.rows, &self.zero);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Matrix::zeros_like(r, c, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero_elem() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.times(rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Assembles a block matrix. Every block in a block-row must share its
    /// height, and every block in a block-column its width.
    pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("empty block grid".into()))?;
        let ncols = grid[0].len();
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let mut out =
            Matrix::zeros_like(heights.iter().sum(), widths.iter().sum(), &first.zero);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        Matrix::from_blocks(&[parts.to_vec()])
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let grid: Vec<Vec<&Self>> = parts.iter().map(|p| vec![*p]).collect();
        Matrix::from_blocks(&grid)
    }

    pub fn direct_sum(parts: &[&Self]) -> Self {
        let proto = parts.first().map(|m| m.zero.clone()).expect("at least one summand");
        let r: usize = parts.iter().map(|m| m.rows).sum();
        let c: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros_like(r, c, &proto);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero_elem() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero_elem() {
                continue;
            }
            let v = s.times(c);
            let d = &mut self.data[dst * self.cols + j];
            *d = d.plus(&v);
        }
    }

    /// `col[dst] += c * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero_elem() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero_elem() {
                continue;
            }
            let v = s.times(c);
            let d = &mut self.data[i * self.cols + dst];
            *d = d.plus(&v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let d = &mut self.data[i * self.cols + j];
            *d = d.times(c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let d = &mut self.data[i * self.cols + j];
            *d = d.times(c);
        }
    }

    pub fn trace(&self) -> T {
        let mut acc = self.zero.clone();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::identity_like(n, &BigInt::zero())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix::from_fn(r, c, &BigInt::zero(), |i, j| BigInt::from(rows[i][j]))
    }

    /// Lower triangular Jordan block with ones on the diagonal and subdiagonal.
    pub fn jordan_lower(m: usize) -> Self {
        Matrix::from_fn(m, m, &BigInt::zero(), |i, j| {
            BigInt::from(i64::from(i == j || i == j + 1))
        })
    }

    /// Upper triangular Jordan block with ones on the diagonal and superdiagonal.
    pub fn jordan_upper(n: usize) -> Self {
        Matrix::from_fn(n, n, &BigInt::zero(), |i, j| {
            BigInt::from(i64::from(i == j || j == i + 1))
        })
    }

    /// Jordan block `J_n(nu)`: `nu` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(n: usize, nu: i64) -> Self {
        Matrix::from_fn(n, n, &BigInt::zero(), |i, j| {
            if i == j {
                BigInt::from(nu)
            } else {
                BigInt::from(i64::from(j == i + 1))
            }
        })
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(&BigRational::zero(), |x| BigRational::from_integer(x.clone()))
    }

    pub fn reduce_mod(&self, p: u64) -> FpMatrix {
        self.map(&Fp::new(0, p), |x| Fp::from_big(x, p))
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.magnitude().clone().into()).max().unwrap_or_else(BigInt::zero)
    }

    /// Exact determinant via multimodular reduction.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(modular::determinant(self))
    }

    /// True when the matrix is invertible over the integers.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().map(|d| d.magnitude().is_one()).unwrap_or(false)
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::identity_like(n, &BigRational::zero())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(&BigInt::zero(), |x| x.to_integer()))
    }
}

impl FpMatrix {
    pub fn zeros_mod(rows: usize, cols: usize, p: u64) -> Self {
        Matrix::filled(rows, cols, Fp::new(0, p))
    }

    pub fn identity_mod(n: usize, p: u64) -> Self {
        Matrix::identity_like(n, &Fp::new(0, p))
    }

    pub fn modulus(&self) -> u64 {
        self.zero.modulus()
    }

    /// Row echelon rank over F_p.
    pub fn rank(&self) -> usize {
        rational::rank_field(self.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        rational::inverse_field(self)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|s| s.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_shapes_and_identity() {
        let a = IntMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let b = IntMatrix::from_i64(&[vec![1, 0], vec![0, 1], vec![2, 2]]);
        assert_eq!(a.kron(&b).shape(), (6, 6));
        assert_eq!(IntMatrix::identity(1).kron(&b), b);
    }

    #[test]
    fn kron_is_associative() {
        let a = IntMatrix::from_i64(&[vec![1, -1]]);
        let b = IntMatrix::from_i64(&[vec![2], vec![3]]);
        let c = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.kron(&b.kron(&c)), a.kron(&b).kron(&c));
    }

    #[test]
    fn blocks_and_direct_sum() {
        let a = IntMatrix::from_i64(&[vec![1]]);
        let b = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        let z12 = IntMatrix::zeros(1, 2);
        let z21 = IntMatrix::zeros(2, 1);
        let grid = IntMatrix::from_blocks(&[vec![&a, &z12], vec![&z21, &b]]).unwrap();
        assert_eq!(grid, IntMatrix::direct_sum(&[&a, &b]));
        assert!(IntMatrix::from_blocks(&[vec![&a, &b]]).is_err());
    }

    #[test]
    fn jordan_orientations() {
        let l = IntMatrix::jordan_lower(3);
        assert_eq!(l, IntMatrix::jordan_upper(3).transpose());
        assert_eq!(*l.get(1, 0), BigInt::from(1));
        let j0 = IntMatrix::jordan_block(2, 0);
        assert_eq!(j0, IntMatrix::from_i64(&[vec![0, 1], vec![0, 0]]));
    }

    #[test]
    fn power_and_determinant() {
        let m = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        assert!(m.pow(3).is_identity());
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let s = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(s.determinant().unwrap(), BigInt::from(-8));
    }
}
