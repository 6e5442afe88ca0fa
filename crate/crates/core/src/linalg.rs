//! Small dense matrices: Cholesky factorization and symmetric eigen-decomposition.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::{lit, Real};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds from rows; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn scale(&self, k: T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * k).collect() }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Quadratic form `uᵀ M v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        u.iter().zip(self.mul_vec(v)).fold(T::zero(), |acc, (&a, b)| acc + a * b)
    }

    /// Cholesky factor `L` with `M = L Lᵀ`; `None` when a pivot drops below `rel_tol · max diag`.
    pub fn cholesky(&self, rel_tol: T) -> Option<Cholesky<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let scale = self.diagonal().into_iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d = d - l[(j, k)] * l[(j, k)];
            }
            if !(d > rel_tol * scale) {
                return None;
            }
            let djj = d.sqrt();
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / djj;
            }
        }
        Some(Cholesky { l })
    }

    /// Solves `M x = b` by Gaussian elimination with partial pivoting; `None` when a pivot
    /// drops below `rel_tol · max|M|`.
    pub fn lu_solve(&self, b: &[T], rel_tol: T) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let tol = rel_tol * self.max_abs();
        let mut a = self.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].abs().partial_cmp(&a[(j, k)].abs()).unwrap())?;
            if !(a[(p, k)].abs() > tol) {
                return None;
            }
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                x.swap(k, p);
            }
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    a[(i, j)] = a[(i, j)] - f * a[(k, j)];
                }
                x[i] = x[i] - f * x[k];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] = x[i] - a[(i, j)] * x[j];
            }
            x[i] = x[i] / a[(i, i)];
        }
        Some(x)
    }

    /// Eigenvalues (ascending) and unit eigenvectors (as columns) of a symmetric matrix, by cyclic Jacobi.
    pub fn symmetric_eigen(&self) -> (Vec<T>, Matrix<T>) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut v = Matrix::identity(n);
        for _sweep in 0..100 {
            let mut off = T::zero();
            for i in 0..n {
                for j in i + 1..n {
                    off = off + a[(i, j)] * a[(i, j)];
                }
            }
            if off.sqrt() <= T::epsilon() * T::epsilon() * (T::one() + a.max_abs()) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == T::zero() {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (lit::<T>(2.0) * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap_or(std::cmp::Ordering::Equal));
        let values = order.iter().map(|&i| a[(i, i)]).collect();
        let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
        (values, vectors)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m[(i, j)] = m[(i, j)] + a * o[(k, j)];
                }
            }
        }
        m
    }
}

/// Lower-triangular Cholesky factor.
#[derive(Clone, Debug)]
pub struct Cholesky<T> {
    l: Matrix<T>,
}

impl<T: Real> Cholesky<T> {
    pub fn factor(&self) -> &Matrix<T> {
        &self.l
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.l.rows;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] = y[i] - self.l[(i, k)] * y[k];
            }
            y[i] = y[i] / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] = y[i] - self.l[(k, i)] * y[k];
            }
            y[i] = y[i] / self.l[(i, i)];
        }
        y
    }

    pub fn inverse(&self) -> Matrix<T> {
        let n = self.l.rows;
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solves_spd_system() {
        let m = Matrix::from_rows(&[vec![4.0f64, 2.0, 0.6], vec![2.0, 5.0, 1.0], vec![0.6, 1.0, 3.0]]);
        let ch = m.cholesky(1e-12).unwrap();
        let x = ch.solve(&[1.0, 2.0, 3.0]);
        let back = m.mul_vec(&x);
        for (b, e) in back.iter().zip([1.0, 2.0, 3.0]) {
            assert!((b - e).abs() < 1e-14);
        }
        let id = &m * &ch.inverse();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cholesky_rejects_singular() {
        let m = Matrix::from_rows(&[vec![1.0f64, 2.0], vec![2.0, 4.0]]);
        assert!(m.cholesky(1e-12).is_none());
    }

    #[test]
    fn lu_handles_indefinite() {
        let m = Matrix::from_rows(&[vec![0.0f64, 2.0], vec![3.0, 1.0]]);
        let x = m.lu_solve(&[4.0, 5.0], 1e-12).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
        let s = Matrix::from_rows(&[vec![12.0f64, 6.0], vec![6.0, 3.0]]);
        assert!(s.lu_solve(&[1.0, 1.0], 1e-12).is_none());
    }

    #[test]
    fn jacobi_eigen_reconstructs() {
        let m = Matrix::from_rows(&[vec![2.0f64, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]]);
        let (vals, vecs) = m.symmetric_eigen();
        let s2 = 2f64.sqrt();
        for (v, e) in vals.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((v - e).abs() < 1e-13);
        }
        for k in 0..3 {
            let col = vecs.column(k);
            let mv = m.mul_vec(&col);
            for i in 0..3 {
                assert!((mv[i] - vals[k] * col[i]).abs() < 1e-13);
            }
        }
    }
}
