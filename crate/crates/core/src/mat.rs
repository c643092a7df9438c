//! Minimal dense row-major matrix and the vector kernels the solvers need.
//!
//! Everything at desk scale (d <= 512); no blocking, no SIMD, accuracy first.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::error::Error;
use crate::math;
use crate::Result;

/// Dense row-major `rows x cols` matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "Mat::from_rows row length",
                    expected: c,
                    got: rows[i].len(),
                });
            }
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "Mat::from_vec data length",
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn diag(entries: &[f64]) -> Self {
        let d = entries.len();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = entries[i];
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `y = A x`
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            y[i] = dot(self.row(i), x);
        }
        y
    }

    /// `y = A^T x`
    pub fn matvec_t(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.rows);
        let mut y = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            let row = self.row(i);
            for j in 0..self.cols {
                y[j] += row[j] * xi;
            }
        }
        y
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for j in 0..other.cols {
                    orow[j] += aik * brow[j];
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> Mat {
        let mut m = self.clone();
        for v in &mut m.data {
            *v *= c;
        }
        m
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: f64, other: &Mat) {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += c * b;
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let mut m = self.clone();
        m.axpy(1.0, other);
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let mut m = self.clone();
        m.axpy(-1.0, other);
        m
    }

    /// Frobenius inner product `sum_ij A_ij B_ij`.
    pub fn dot(&self, other: &Mat) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        dot(&self.data, &other.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(dot(&self.data, &self.data))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| math::max(m, math::abs(v)))
    }

    /// Column-sum norm `max_j sum_i |A_ij|`.
    pub fn one_norm(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row(i).iter().enumerate() {
                sums[j] += math::abs(*v);
            }
        }
        sums.iter().fold(0.0, |m, &v| math::max(m, v))
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: Mat,
    pivots: Vec<usize>,
}

impl LuFactors {
    pub fn factor(a: &Mat, context: &'static str) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch {
                context: "LuFactors::factor (square matrix required)",
                expected: a.rows(),
                got: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut pivots = Vec::with_capacity(n);
        let scale = math::max(a.max_abs(), f64::MIN_POSITIVE);
        for k in 0..n {
            let mut p = k;
            let mut best = math::abs(lu[(k, k)]);
            for i in (k + 1)..n {
                let v = math::abs(lu[(i, k)]);
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= scale * 1e-300 {
                return Err(Error::SingularSystem { context });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            pivots.push(p);
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    lu[(i, j)] -= factor * lu[(k, j)];
                }
            }
        }
        Ok(LuFactors { lu, pivots })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        debug_assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        // forward: L y = P b
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> Mat {
        let n = self.lu.rows();
        let mut inv = Mat::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e);
            e[j] = 0.0;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn solve_dense(a: &Mat, b: &[f64], context: &'static str) -> Result<Vec<f64>> {
    Ok(LuFactors::factor(a, context)?.solve(b))
}

/// 1-norm condition estimate `||A||_1 ||A^-1||_1` via the explicit inverse.
pub fn condition_estimate(a: &Mat, context: &'static str) -> Result<f64> {
    let lu = match LuFactors::factor(a, context) {
        Ok(lu) => lu,
        Err(Error::SingularSystem { .. }) => return Ok(f64::INFINITY),
        Err(e) => return Err(e),
    };
    Ok(a.one_norm() * lu.inverse().one_norm())
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = 0.0;
    for i in 0..a.len() {
        s += a[i] * b[i];
    }
    s
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

pub fn scale_vec(a: &mut [f64], c: f64) {
    for v in a {
        *v *= c;
    }
}
