//! Dense N-way arrays (N >= 2) at desk scale.
//!
//! Dense storage is capped at order 4 and 1e7 entries; larger problems must
//! stay in separated form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::mat::{self, Mat};
use crate::math;
use crate::separated::RankOneTerm;
use crate::Result;

/// Largest number of entries a dense array may hold.
pub const MAX_DENSE_ENTRIES: usize = 10_000_000;
/// Largest tensor order supported in dense form.
pub const MAX_DENSE_ORDER: usize = 4;

/// Dense tensor with row-major layout (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(shape: &[usize]) -> Result<Self> {
        check_shape(shape)?;
        let len = shape.iter().product();
        Ok(DenseTensor {
            shape: shape.to_vec(),
            data: vec![0.0; len],
        })
    }

    pub fn from_mat(m: &Mat) -> Self {
        DenseTensor {
            shape: vec![m.rows(), m.cols()],
            data: m.data().to_vec(),
        }
    }

    pub fn from_parts(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        check_shape(&shape)?;
        let len: usize = shape.iter().product();
        if data.len() != len {
            return Err(Error::DimensionMismatch {
                context: "DenseTensor::from_parts data length",
                expected: len,
                got: data.len(),
            });
        }
        Ok(DenseTensor { shape, data })
    }

    /// View an order-2 tensor as a matrix.
    pub fn to_mat(&self) -> Result<Mat> {
        if self.shape.len() != 2 {
            return Err(Error::DimensionMismatch {
                context: "DenseTensor::to_mat (order-2 required)",
                expected: 2,
                got: self.shape.len(),
            });
        }
        Mat::from_vec(self.shape[0], self.shape[1], self.data.clone())
    }

    #[inline]
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(mat::dot(&self.data, &self.data))
    }

    pub fn dot(&self, other: &DenseTensor) -> f64 {
        debug_assert_eq!(self.shape, other.shape);
        mat::dot(&self.data, &other.data)
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: f64, other: &DenseTensor) {
        debug_assert_eq!(self.shape, other.shape);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += c * b;
        }
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.data {
            *v *= c;
        }
    }

    /// `self += c * (x_1 (x) ... (x) x_N)`
    pub fn rank_one_accumulate(&mut self, c: f64, term: &RankOneTerm) {
        debug_assert_eq!(term.dims(), self.shape);
        match self.shape.len() {
            2 => {
                let (r, s) = (term.factor(0), term.factor(1));
                let cols = self.shape[1];
                for i in 0..self.shape[0] {
                    let ci = c * r[i];
                    if ci == 0.0 {
                        continue;
                    }
                    let row = &mut self.data[i * cols..(i + 1) * cols];
                    for j in 0..cols {
                        row[j] += ci * s[j];
                    }
                }
            }
            _ => {
                let n = self.shape.len();
                let mut idx = vec![0usize; n];
                for v in self.data.iter_mut() {
                    let mut p = c;
                    for (k, &i) in idx.iter().enumerate() {
                        p *= term.factor(k)[i];
                    }
                    *v += p;
                    advance(&mut idx, &self.shape);
                }
            }
        }
    }

    /// Frobenius inner product against a rank-one term: `sum T[i..] prod_k x_k[i_k]`.
    pub fn dot_rank_one(&self, term: &RankOneTerm) -> f64 {
        debug_assert_eq!(term.dims(), self.shape);
        match self.shape.len() {
            2 => {
                let (r, s) = (term.factor(0), term.factor(1));
                let cols = self.shape[1];
                let mut acc = 0.0;
                for i in 0..self.shape[0] {
                    acc += r[i] * mat::dot(&self.data[i * cols..(i + 1) * cols], s);
                }
                acc
            }
            _ => {
                let others: Vec<&[f64]> = (0..self.order()).map(|k| term.factor(k)).collect();
                let first = self.contract_all_but(0, &others);
                mat::dot(&first, term.factor(0))
            }
        }
    }

    /// Contract every axis except `axis` with the given vectors, returning a
    /// vector of length `shape[axis]`. `vectors[axis]` is ignored.
    pub fn contract_all_but(&self, axis: usize, vectors: &[&[f64]]) -> Vec<f64> {
        let n = self.shape.len();
        debug_assert!(axis < n);
        debug_assert_eq!(vectors.len(), n);
        if n == 2 {
            return if axis == 0 {
                // F s
                let cols = self.shape[1];
                let mut out = vec![0.0; self.shape[0]];
                for i in 0..self.shape[0] {
                    out[i] = mat::dot(&self.data[i * cols..(i + 1) * cols], vectors[1]);
                }
                out
            } else {
                // F^T r
                let cols = self.shape[1];
                let mut out = vec![0.0; cols];
                for i in 0..self.shape[0] {
                    let ri = vectors[0][i];
                    if ri == 0.0 {
                        continue;
                    }
                    let row = &self.data[i * cols..(i + 1) * cols];
                    for j in 0..cols {
                        out[j] += ri * row[j];
                    }
                }
                out
            };
        }
        let mut out = vec![0.0; self.shape[axis]];
        let mut idx = vec![0usize; n];
        for v in self.data.iter() {
            let mut w = *v;
            for k in 0..n {
                if k != axis {
                    w *= vectors[k][idx[k]];
                }
            }
            out[idx[axis]] += w;
            advance(&mut idx, &self.shape);
        }
        out
    }

    /// Apply `op` along `axis`: contract the second index of `op` with that
    /// axis. For order 2 this is `op * U` (axis 0) or `U * op^T` (axis 1).
    pub fn apply_op_axis(&self, axis: usize, op: &Mat) -> DenseTensor {
        let n = self.shape.len();
        debug_assert!(axis < n);
        debug_assert_eq!(op.cols(), self.shape[axis]);
        let mut out_shape = self.shape.clone();
        out_shape[axis] = op.rows();
        let mut out = DenseTensor {
            shape: out_shape,
            data: vec![0.0; self.data.len() / self.shape[axis] * op.rows()],
        };
        if n == 2 {
            if axis == 0 {
                let a = self.to_mat().expect("order 2");
                let prod = op.matmul(&a);
                out.data = prod.data().to_vec();
            } else {
                // rows of out = op * rows of self
                let cols = self.shape[1];
                for i in 0..self.shape[0] {
                    let row = &self.data[i * cols..(i + 1) * cols];
                    let new_row = op.matvec(row);
                    out.data[i * op.rows()..(i + 1) * op.rows()].copy_from_slice(&new_row);
                }
            }
            return out;
        }
        // generic path
        let inner: usize = self.shape[axis + 1..].iter().product();
        let outer: usize = self.shape[..axis].iter().product();
        let d_in = self.shape[axis];
        let d_out = op.rows();
        for o in 0..outer {
            for i_out in 0..d_out {
                for i_in in 0..d_in {
                    let w = op[(i_out, i_in)];
                    if w == 0.0 {
                        continue;
                    }
                    let src = (o * d_in + i_in) * inner;
                    let dst = (o * d_out + i_out) * inner;
                    for r in 0..inner {
                        out.data[dst + r] += w * self.data[src + r];
                    }
                }
            }
        }
        out
    }
}

fn check_shape(shape: &[usize]) -> Result<()> {
    if shape.len() < 2 || shape.len() > MAX_DENSE_ORDER {
        return Err(Error::InvalidInput(alloc::format!(
            "dense tensors support order 2..={MAX_DENSE_ORDER}, got {}",
            shape.len()
        )));
    }
    let mut len: usize = 1;
    for &d in shape {
        if d == 0 {
            return Err(Error::InvalidInput("zero-length axis".into()));
        }
        len = len.saturating_mul(d);
    }
    if len > MAX_DENSE_ENTRIES {
        return Err(Error::DenseTooLarge { entries: len });
    }
    Ok(())
}

#[inline]
fn advance(idx: &mut [usize], shape: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return;
        }
        idx[k] = 0;
    }
}
