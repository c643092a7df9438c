//! Kronecker-sum bilinear form, energies, and residual management.
//!
//! With per-dimension operators `B_1, ..., B_N`, the operator acting on an
//! order-N tensor is `A(U) = sum_k (I (x) .. (x) B_k (x) .. (x) I) U`; for
//! N = 2 this is `B_1 U + U B_2^T`. The bilinear form used throughout is
//! `a_inner(X, Y) = X : A(Y)`, which is symmetric whenever every operator is,
//! and the energy of `U` against a right-hand side `F` is
//! `E(U) = 1/2 a_inner(U, U) - F : U`.
//!
//! Residuals are always recomputed from the original `F` over the full
//! expansion, never by incremental subtraction, to avoid the numerical
//! cancellation that accumulates over many greedy iterations.

use alloc::vec::Vec;

use crate::dense::DenseTensor;
use crate::error::Error;
use crate::mat;
use crate::operator::Operator1D;
use crate::separated::{gram_norm, Expansion, RankOneTerm, Rhs};
use crate::Result;

/// Check that a term's factor lengths match the operator dimensions.
pub fn check_dims(ops: &[Operator1D], dims: &[usize], context: &'static str) -> Result<()> {
    if ops.len() != dims.len() {
        return Err(Error::DimensionMismatch {
            context,
            expected: ops.len(),
            got: dims.len(),
        });
    }
    for (op, &d) in ops.iter().zip(dims) {
        if op.dim() != d {
            return Err(Error::DimensionMismatch {
                context,
                expected: op.dim(),
                got: d,
            });
        }
    }
    Ok(())
}

/// `A(T)` for a rank-one term: N rank-one terms, the k-th having factor k
/// replaced by `B_k x_k`.
pub fn apply_op_term(ops: &[Operator1D], term: &RankOneTerm) -> Vec<RankOneTerm> {
    let n = term.order();
    debug_assert_eq!(ops.len(), n);
    (0..n)
        .map(|k| {
            let mut factors: Vec<Vec<f64>> = Vec::with_capacity(n);
            for j in 0..n {
                if j == k {
                    factors.push(ops[k].apply(term.factor(k)));
                } else {
                    factors.push(term.factor(j).to_vec());
                }
            }
            RankOneTerm::new(factors).expect("factor count preserved")
        })
        .collect()
}

/// `A(U)` on a dense tensor.
pub fn apply_op_dense(ops: &[Operator1D], u: &DenseTensor) -> DenseTensor {
    debug_assert_eq!(ops.len(), u.order());
    let mut out = u.apply_op_axis(0, ops[0].matrix());
    for (k, op) in ops.iter().enumerate().skip(1) {
        let contrib = u.apply_op_axis(k, op.matrix());
        out.axpy(1.0, &contrib);
    }
    out
}

/// `<X, A(Y)> = sum_k (x_k . B_k y_k) prod_{j != k} (x_j . y_j)` for rank-one
/// `X`, `Y`; costs `O(sum_k d_k^2)`.
pub fn a_inner_terms(ops: &[Operator1D], x: &RankOneTerm, y: &RankOneTerm) -> f64 {
    let n = ops.len();
    debug_assert_eq!(x.order(), n);
    debug_assert_eq!(y.order(), n);
    let dots: Vec<f64> = (0..n)
        .map(|k| mat::dot(x.factor(k), y.factor(k)))
        .collect();
    let mut total = 0.0;
    for k in 0..n {
        let mut prod = mat::dot(x.factor(k), &ops[k].apply(y.factor(k)));
        for (j, d) in dots.iter().enumerate() {
            if j != k {
                prod *= d;
            }
        }
        total += prod;
    }
    total
}

/// `X : A(Y)` for dense `X`, `Y`.
pub fn a_inner_dense(ops: &[Operator1D], x: &DenseTensor, y: &DenseTensor) -> f64 {
    x.dot(&apply_op_dense(ops, y))
}

/// `X : A(T)` for dense `X` against a rank-one term.
pub fn a_inner_dense_term(ops: &[Operator1D], x: &DenseTensor, term: &RankOneTerm) -> f64 {
    apply_op_term(ops, term)
        .iter()
        .map(|t| x.dot_rank_one(t))
        .sum()
}

/// `<X, A(Y)>` for expansions, exploiting separation.
pub fn a_inner_expansions(ops: &[Operator1D], x: &Expansion, y: &Expansion) -> f64 {
    let mut total = 0.0;
    for (cx, tx) in x.iter_weighted() {
        for (cy, ty) in y.iter_weighted() {
            total += cx * cy * a_inner_terms(ops, tx, ty);
        }
    }
    total
}

/// Checked entry point for the bilinear form on expansions; rejects factor
/// lengths that do not match the operator dimensions.
pub fn a_inner(ops: &[Operator1D], x: &Expansion, y: &Expansion) -> Result<f64> {
    for side in [x, y] {
        if let Some(first) = side.terms().first() {
            check_dims(ops, &first.dims(), "a_inner")?;
            for t in side.terms() {
                if t.dims() != first.dims() {
                    return Err(Error::DimensionMismatch {
                        context: "a_inner (ragged expansion)",
                        expected: first.dims()[0],
                        got: t.dims()[0],
                    });
                }
            }
        }
    }
    Ok(a_inner_expansions(ops, x, y))
}

/// Energy `E(U) = 1/2 <U, A(U)> - F : U`, evaluated without densifying `U`.
pub fn energy(ops: &[Operator1D], u: &Expansion, f: &Rhs) -> f64 {
    let mut quad = 0.0;
    let mut linear = 0.0;
    for (k, (ck, tk)) in u.iter_weighted().enumerate() {
        quad += ck * ck * a_inner_terms(ops, tk, tk);
        for (cj, tj) in u.iter_weighted().take(k) {
            // a_inner is evaluated once per unordered pair; for nonsymmetric
            // operators only the symmetric part enters the quadratic form,
            // which this symmetrization reproduces exactly.
            quad += ck * cj * (a_inner_terms(ops, tk, tj) + a_inner_terms(ops, tj, tk));
        }
        linear += ck * f.dot_term(tk);
    }
    0.5 * quad - linear
}

/// Energy of a dense candidate (used by oracles and tests).
pub fn energy_dense(ops: &[Operator1D], u: &DenseTensor, f: &DenseTensor) -> f64 {
    0.5 * a_inner_dense(ops, u, u) - f.dot(u)
}

/// Residual `F - A(U)` with its cached Frobenius norm.
///
/// Dense right-hand sides yield dense residuals; separated right-hand sides
/// stay separated (the base terms plus `-coefficient * A(T_k)` per expansion
/// term), so no dense array is ever materialized for them.
#[derive(Debug, Clone)]
pub struct ResidualState {
    data: ResidualData,
    frobenius_norm: f64,
}

#[derive(Debug, Clone)]
pub enum ResidualData {
    Dense(DenseTensor),
    Separated(Vec<(f64, RankOneTerm)>),
}

impl ResidualState {
    /// Residual of the empty expansion: `F` itself.
    pub fn from_rhs(f: &Rhs) -> Result<Self> {
        Self::recompute(f, &Expansion::empty(), &[])
    }

    /// Recompute `F - A(U)` from the original right-hand side and the full
    /// expansion. `ops` may be empty only if `u` is.
    pub fn recompute(f: &Rhs, u: &Expansion, ops: &[Operator1D]) -> Result<Self> {
        if !u.is_empty() {
            check_dims(ops, &u.term(0).dims(), "ResidualState::recompute")?;
        }
        match f {
            Rhs::Dense(t) => {
                let mut r = t.clone();
                for (c, term) in u.iter_weighted() {
                    if term.dims() != t.shape() {
                        return Err(Error::DimensionMismatch {
                            context: "ResidualState::recompute term shape",
                            expected: t.shape()[0],
                            got: term.dims()[0],
                        });
                    }
                    for applied in apply_op_term(ops, term) {
                        r.rank_one_accumulate(-c, &applied);
                    }
                }
                let norm = r.frobenius_norm();
                Ok(ResidualState {
                    data: ResidualData::Dense(r),
                    frobenius_norm: norm,
                })
            }
            Rhs::Separated(base) => {
                let mut terms: Vec<(f64, RankOneTerm)> = base.clone();
                for (c, term) in u.iter_weighted() {
                    for applied in apply_op_term(ops, term) {
                        terms.push((-c, applied));
                    }
                }
                let norm = gram_norm(&terms);
                Ok(ResidualState {
                    data: ResidualData::Separated(terms),
                    frobenius_norm: norm,
                })
            }
        }
    }

    #[inline]
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm
    }

    pub fn data(&self) -> &ResidualData {
        &self.data
    }

    pub fn dims(&self) -> Vec<usize> {
        match &self.data {
            ResidualData::Dense(t) => t.shape().to_vec(),
            ResidualData::Separated(terms) => terms
                .first()
                .map(|(_, t)| t.dims())
                .unwrap_or_default(),
        }
    }

    /// `F_n : T` for a rank-one term.
    pub fn dot_term(&self, term: &RankOneTerm) -> f64 {
        match &self.data {
            ResidualData::Dense(t) => t.dot_rank_one(term),
            ResidualData::Separated(terms) => {
                terms.iter().map(|(c, t)| c * t.dot(term)).sum()
            }
        }
    }

    /// Contract every dimension except `axis` against the given factors.
    pub fn contract_all_but(&self, axis: usize, factors: &[&[f64]]) -> Vec<f64> {
        match &self.data {
            ResidualData::Dense(t) => t.contract_all_but(axis, factors),
            ResidualData::Separated(terms) => {
                let dim = terms
                    .first()
                    .map(|(_, t)| t.factor(axis).len())
                    .unwrap_or(0);
                let mut out = alloc::vec![0.0; dim];
                for (c, t) in terms {
                    let mut w = *c;
                    for (k, f) in factors.iter().enumerate() {
                        if k != axis {
                            w *= mat::dot(t.factor(k), f);
                        }
                    }
                    if w == 0.0 {
                        continue;
                    }
                    for (o, v) in out.iter_mut().zip(t.factor(axis)) {
                        *o += w * v;
                    }
                }
                out
            }
        }
    }

    /// Rescaled copy (used by scale-invariance checks).
    pub fn scaled(&self, c: f64) -> ResidualState {
        let data = match &self.data {
            ResidualData::Dense(t) => {
                let mut t = t.clone();
                t.scale(c);
                ResidualData::Dense(t)
            }
            ResidualData::Separated(terms) => ResidualData::Separated(
                terms.iter().map(|(w, t)| (c * w, t.clone())).collect(),
            ),
        };
        ResidualState {
            data,
            frobenius_norm: self.frobenius_norm * crate::math::abs(c),
        }
    }

    pub fn densify(&self) -> Result<DenseTensor> {
        match &self.data {
            ResidualData::Dense(t) => Ok(t.clone()),
            ResidualData::Separated(terms) => {
                let dims = self.dims();
                let mut t = DenseTensor::zeros(&dims)?;
                for (c, term) in terms {
                    t.rank_one_accumulate(*c, term);
                }
                Ok(t)
            }
        }
    }
}
