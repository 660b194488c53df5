//! Smith and column-Hermite normal forms over Euclidean domains.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use super::{EuclideanDomain, IntMatrix, Matrix};

/// `U * A * V = D` with `D` diagonal and `d_0 | d_1 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub rank: usize,
}

impl<T: EuclideanDomain> SnfResult<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries that are not units.
    pub fn nontrivial_divisors(&self) -> Vec<T> {
        self.diagonal()
            .into_iter()
            .take(self.rank)
            .filter(|x| !x.is_unit())
            .collect()
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

impl<T: EuclideanDomain> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &T) {
        self.a.scale_row(i, c);
        if let Some(u) = &mut self.u {
            u.scale_row(i, c);
        }
    }

    /// Minimal Euclidean size in the trailing block, ties to lowest (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero_elem() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.euclid_cmp(self.a.get(bi, bj)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row `t` and column `t` outside the pivot. Returns false when a
    /// nonzero remainder is left and another pass is needed.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.a.get(t, t).clone();
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if x.is_zero_elem() {
                continue;
            }
            let (q, r) = x.div_rem_euclid(&pivot);
            self.add_row(i, t, &q.negate());
            if !r.is_zero_elem() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if x.is_zero_elem() {
                continue;
            }
            let (q, r) = x.div_rem_euclid(&pivot);
            self.add_col(j, t, &q.negate());
            if !r.is_zero_elem() {
                clean = false;
            }
        }
        clean
    }

    fn diagonalize(&mut self) -> usize {
        let k = self.a.rows().min(self.a.cols());
        for t in 0..k {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return t;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if self.eliminate(t) {
                    break;
                }
            }
        }
        k
    }

    /// Makes `d_i | d_j` for a pair of diagonal positions.
    fn fix_pair(&mut self, i: usize, j: usize) {
        let one = self.a.get(i, i).one_like();
        self.add_row(i, j, &one);
        loop {
            // Smallest nonzero entry of the 2x2 minor goes to (i, i).
            let cells = [(i, i), (i, j), (j, i), (j, j)];
            let (mut bi, mut bj) = (i, i);
            let mut found = false;
            for &(r, c) in &cells {
                let x = self.a.get(r, c);
                if x.is_zero_elem() {
                    continue;
                }
                if !found || x.euclid_cmp(self.a.get(bi, bj)) == Ordering::Less {
                    (bi, bj) = (r, c);
                    found = true;
                }
            }
            if bi != i {
                self.swap_rows(i, j);
            }
            if bj != i {
                self.swap_cols(i, j);
            }
            let p = self.a.get(i, i).clone();
            let (q, _) = self.a.get(j, i).div_rem_euclid(&p);
            self.add_row(j, i, &q.negate());
            let (q, _) = self.a.get(i, j).div_rem_euclid(&p);
            self.add_col(j, i, &q.negate());
            if self.a.get(j, i).is_zero_elem() && self.a.get(i, j).is_zero_elem() {
                if p.divides(self.a.get(j, j)) {
                    return;
                }
                self.add_row(i, j, &one);
            }
        }
    }

    fn fix_chain(&mut self, rank: usize) {
        for i in 0..rank {
            for j in i + 1..rank {
                if !self.a.get(i, i).divides(self.a.get(j, j)) {
                    self.fix_pair(i, j);
                }
            }
        }
        for i in 0..rank {
            let unit = self.a.get(i, i).normalizing_unit();
            if !unit.is_one_elem() {
                self.scale_row(i, &unit);
            }
        }
    }
}

fn reduce<T: EuclideanDomain>(a: &Matrix<T>, track: bool) -> SnfResult<T> {
    let proto = a.zero_elem().clone();
    let mut r = Reducer {
        a: a.clone(),
        u: track.then(|| Matrix::identity_like(a.rows(), &proto)),
        v: track.then(|| Matrix::identity_like(a.cols(), &proto)),
    };
    let rank = r.diagonalize();
    r.fix_chain(rank);
    let u = r.u.unwrap_or_else(|| Matrix::zeros_like(0, 0, &proto));
    let v = r.v.unwrap_or_else(|| Matrix::zeros_like(0, 0, &proto));
    SnfResult { u, d: r.a, v, rank }
}

/// Smith normal form with unimodular transforms.
pub fn snf<T: EuclideanDomain>(a: &Matrix<T>) -> SnfResult<T> {
    reduce(a, true)
}

/// Diagonal of the Smith form only (transforms are not accumulated).
pub fn snf_diagonal<T: EuclideanDomain>(a: &Matrix<T>) -> (Vec<T>, usize) {
    let r = reduce(a, false);
    (r.diagonal(), r.rank)
}

/// Solves `A x = b`, returning `None` when no solution exists in the domain.
pub fn solve_linear<T: EuclideanDomain>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length does not match");
    let s = snf(a);
    solve_with_snf(&s, b)
}

/// Solves `A x = b` reusing a precomputed Smith form of `A`.
pub fn solve_with_snf<T: EuclideanDomain>(s: &SnfResult<T>, b: &[T]) -> Option<Vec<T>> {
    let c = s.u.mul_vec(b);
    let proto = s.d.zero_elem();
    let mut y = vec![proto.clone(); s.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem_euclid(s.d.get(i, i));
            if !r.is_zero_elem() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero_elem() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

pub fn solve_linear_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_linear(a, b)
}

/// Basis of the kernel lattice `{x : A x = 0}`; saturated because it is read
/// off a unimodular transform.
pub fn kernel_saturated<T: EuclideanDomain>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let s = snf(a);
    (s.rank..a.cols()).map(|j| s.v.col(j)).collect()
}

/// Lower column-echelon form `A V = H` computed with column operations only.
#[derive(Clone, Debug)]
pub struct ColumnHermite<T> {
    pub h: Matrix<T>,
    pub v: Matrix<T>,
    /// `(row, col)` of each pivot, rows strictly increasing.
    pub pivots: Vec<(usize, usize)>,
}

pub fn column_hermite<T: EuclideanDomain>(a: &Matrix<T>) -> ColumnHermite<T> {
    let proto = a.zero_elem().clone();
    let mut r = Reducer { a: a.clone(), u: None, v: Some(Matrix::identity_like(a.cols(), &proto)) };
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..a.rows() {
        if k == a.cols() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..a.cols() {
                let x = r.a.get(i, j);
                if x.is_zero_elem() {
                    continue;
                }
                if best.map_or(true, |b| x.euclid_cmp(r.a.get(i, b)) == Ordering::Less) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            r.swap_cols(k, b);
            let p = r.a.get(i, k).clone();
            let mut done = true;
            for j in k + 1..a.cols() {
                let x = r.a.get(i, j);
                if x.is_zero_elem() {
                    continue;
                }
                let (q, rem) = x.div_rem_euclid(&p);
                r.add_col(j, k, &q.negate());
                if !rem.is_zero_elem() {
                    done = false;
                }
            }
            if done {
                pivots.push((i, k));
                k += 1;
                break;
            }
        }
    }
    ColumnHermite { h: r.a, v: r.v.expect("transform tracked"), pivots }
}

/// Integer solver by forward substitution through a column-echelon form.
/// Independent of [`snf`]; used as a cross-check.
pub fn solve_linear_hermite<T: EuclideanDomain>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length does not match");
    let ch = column_hermite(a);
    let proto = a.zero_elem().clone();
    let mut residual = b.to_vec();
    let mut y = vec![proto.clone(); a.cols()];
    let mut next = 0;
    for i in 0..a.rows() {
        if next < ch.pivots.len() && ch.pivots[next].0 == i {
            let col = ch.pivots[next].1;
            let (q, r) = residual[i].div_rem_euclid(ch.h.get(i, col));
            if !r.is_zero_elem() {
                return None;
            }
            for (row, res) in residual.iter_mut().enumerate().skip(i) {
                let h = ch.h.get(row, col);
                if !h.is_zero_elem() {
                    *res = res.minus(&h.times(&q));
                }
            }
            y[col] = q;
            next += 1;
        } else if !residual[i].is_zero_elem() {
            return None;
        }
    }
    Some(ch.v.mul_vec(&y))
}

/// Serializable record of an integer Smith form, used in certificate witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct SnfSummary {
    pub rank: usize,
    pub elementary_divisors: Vec<String>,
}

impl SnfSummary {
    pub fn of(s: &SnfResult<BigInt>) -> Self {
        SnfSummary {
            rank: s.rank,
            elementary_divisors: s.diagonal().iter().take(s.rank).map(|x| x.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FpPoly;
    use num_traits::Zero;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) {
        let s = snf(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn identity_is_fixed() {
        let s = snf(&IntMatrix::identity(3));
        assert!(s.d.is_identity() && s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn small_integer_case() {
        let a = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        check(&a);
        assert_eq!(snf(&a).diagonal(), ints(&[2, 4]));
    }

    #[test]
    fn divisibility_fix_up() {
        let a = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        check(&a);
        assert_eq!(snf(&a).diagonal(), ints(&[1, 6]));
    }

    #[test]
    fn polynomial_jordan_block() {
        let p = 3;
        let x = FpPoly::x(p);
        let one = FpPoly::one(p);
        let zero = FpPoly::zero(p);
        // x*E - J_2(1)
        let m = Matrix::from_vec(
            2,
            2,
            vec![x.sub(&one), zero.sub(&one), zero.clone(), x.sub(&one)],
            &zero,
        );
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.nontrivial_divisors(), vec![FpPoly::parse("x^2 - 2*x + 1", 3).unwrap()]);
    }

    #[test]
    fn solver_cases() {
        let id = IntMatrix::identity(3);
        assert_eq!(solve_linear_integer(&id, &ints(&[4, -1, 2])), Some(ints(&[4, -1, 2])));
        assert_eq!(solve_linear_integer(&IntMatrix::from_i64(&[vec![2]]), &ints(&[3])), None);
        let ones = IntMatrix::from_i64(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        let x = solve_linear_integer(&ones, &ints(&[1, 1, 1])).unwrap();
        assert_eq!(ones.mul_vec(&x), ints(&[1, 1, 1]));
        let y = solve_linear_hermite(&ones, &ints(&[1, 1, 1])).unwrap();
        assert_eq!(ones.mul_vec(&y), ints(&[1, 1, 1]));
        assert!(solve_linear_hermite(&ones, &ints(&[1, 2, 1])).is_none());
    }

    #[test]
    fn saturated_kernels() {
        assert_eq!(kernel_saturated(&IntMatrix::from_i64(&[vec![1, 1]])).len(), 1);
        let k = kernel_saturated(&IntMatrix::from_i64(&[vec![2, 2]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0].clone() + &v[1], BigInt::zero());
        assert_eq!(v[0].magnitude(), BigInt::from(1).magnitude());
        assert_eq!(kernel_saturated(&IntMatrix::zeros(2, 2)).len(), 2);
    }
}
