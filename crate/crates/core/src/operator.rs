//! One-dimensional operators: `d x d` real matrices acting along one
//! dimension of the tensorized problem.

use alloc::vec::Vec;

use crate::error::Error;
use crate::mat::{self, Mat};
use crate::math;
use crate::oracle;
use crate::Result;

/// Eigenvalue checks during SPD validation are only attempted up to this
/// dimension (dense Jacobi at desk scale); symmetry is always checked.
const SPD_EIGEN_CHECK_MAX_DIM: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    SymmetricPositiveDefinite,
    Nonsymmetric,
}

/// A one-dimensional operator: symmetric positive definite `D`, or a general
/// (typically `B = D + A` with `A` antisymmetric) nonsymmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator1D {
    entries: Mat,
    entries_t: Mat,
    kind: OperatorKind,
}

impl Operator1D {
    /// Validate and wrap a square matrix.
    ///
    /// SPD operators must be symmetric to within `1e-12` relative, and (for
    /// desk-scale dimensions) have a positive smallest eigenvalue.
    pub fn from_matrix(entries: Mat, kind: OperatorKind) -> Result<Self> {
        if entries.rows() != entries.cols() {
            return Err(Error::DimensionMismatch {
                context: "Operator1D::from_matrix (square required)",
                expected: entries.rows(),
                got: entries.cols(),
            });
        }
        if entries.rows() == 0 {
            return Err(Error::InvalidConfig("operator dimension must be >= 1"));
        }
        if kind == OperatorKind::SymmetricPositiveDefinite {
            let scale = math::max(entries.max_abs(), f64::MIN_POSITIVE);
            let mut asym: f64 = 0.0;
            for i in 0..entries.rows() {
                for j in (i + 1)..entries.cols() {
                    asym = math::max(asym, math::abs(entries[(i, j)] - entries[(j, i)]));
                }
            }
            if asym > 1e-12 * scale {
                return Err(Error::NotSymmetric {
                    max_asymmetry: asym / scale,
                });
            }
            if entries.rows() <= SPD_EIGEN_CHECK_MAX_DIM {
                let eig = oracle::symmetric_eigen(&entries)?;
                let min = eig.values[0];
                if min <= 0.0 {
                    return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
                }
            }
        }
        let entries_t = entries.transpose();
        Ok(Operator1D {
            entries,
            entries_t,
            kind,
        })
    }

    /// Second-difference operator `(1/h^2) tridiag(-1, 2, -1)` with
    /// `h = 1/(d+1)`: homogeneous Dirichlet Laplacian on `(0,1)`.
    pub fn fd_laplacian(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig("fd_laplacian requires d >= 2"));
        }
        let h = 1.0 / (d as f64 + 1.0);
        let scale = 1.0 / (h * h);
        let m = Mat::from_fn(d, d, |i, j| {
            if i == j {
                2.0 * scale
            } else if i.abs_diff(j) == 1 {
                -scale
            } else {
                0.0
            }
        });
        Self::from_matrix(m, OperatorKind::SymmetricPositiveDefinite)
    }

    /// Diagonal operator with `d` equally spaced entries from `lo` to `hi`
    /// inclusive.
    pub fn diag_linspace(d: usize, lo: f64, hi: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig("diag_linspace requires d >= 1"));
        }
        if lo <= 0.0 {
            return Err(Error::InvalidConfig("diag_linspace requires lo > 0"));
        }
        let entries: Vec<f64> = if d == 1 {
            alloc::vec![lo]
        } else {
            (0..d)
                .map(|i| lo + (hi - lo) * i as f64 / (d - 1) as f64)
                .collect()
        };
        Self::from_matrix(Mat::diag(&entries), OperatorKind::SymmetricPositiveDefinite)
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::from_matrix(Mat::identity(d), OperatorKind::SymmetricPositiveDefinite)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    #[inline]
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    #[inline]
    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    #[inline]
    pub fn matrix_t(&self) -> &Mat {
        &self.entries_t
    }

    /// `B x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.entries.matvec(x)
    }

    /// `x^T B x` (only the symmetric part of `B` contributes).
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        mat::dot(x, &self.entries.matvec(x))
    }
}
