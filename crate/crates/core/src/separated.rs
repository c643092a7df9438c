//! Separated representations: rank-one terms, expansions, right-hand sides.

use alloc::vec::Vec;

use crate::dense::DenseTensor;
use crate::error::Error;
use crate::mat::{self, Mat};
use crate::math;
use crate::Result;

/// One separated term: a list of `N >= 2` factor vectors, one per dimension.
///
/// The represented tensor is the outer product of the factors. A term may be
/// exactly zero only as a "no progress" sentinel; solvers never append one.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    factors: Vec<Vec<f64>>,
}

impl RankOneTerm {
    pub fn new(factors: Vec<Vec<f64>>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidInput(
                "a rank-one term needs at least two factors".into(),
            ));
        }
        if factors.iter().any(|f| f.is_empty()) {
            return Err(Error::InvalidInput("empty factor vector".into()));
        }
        Ok(RankOneTerm { factors })
    }

    /// Matrix form `r s^T`.
    pub fn from_pair(r: &[f64], s: &[f64]) -> Self {
        RankOneTerm {
            factors: alloc::vec![r.to_vec(), s.to_vec()],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.factors.len()
    }

    #[inline]
    pub fn factor(&self, k: usize) -> &[f64] {
        &self.factors[k]
    }

    #[inline]
    pub fn factor_mut(&mut self, k: usize) -> &mut Vec<f64> {
        &mut self.factors[k]
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.len()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.factors
            .iter()
            .any(|f| f.iter().all(|&v| v == 0.0))
    }

    /// `prod_k ||x_k||_2`, which equals the Frobenius norm of the outer product.
    pub fn frobenius_norm(&self) -> f64 {
        self.factors.iter().map(|f| mat::norm2(f)).product()
    }

    /// Frobenius inner product with another term: `prod_k (x_k . y_k)`.
    pub fn dot(&self, other: &RankOneTerm) -> f64 {
        debug_assert_eq!(self.order(), other.order());
        self.factors
            .iter()
            .zip(other.factors.iter())
            .map(|(a, b)| mat::dot(a, b))
            .product()
    }

    pub fn scale(&mut self, c: f64) {
        mat::scale_vec(&mut self.factors[0], c);
    }

    /// Rescale factors so each carries the same Euclidean norm; the outer
    /// product is unchanged. A zero term is returned unchanged.
    pub fn rebalance(&mut self) {
        let n = self.order();
        let norms: Vec<f64> = self.factors.iter().map(|f| mat::norm2(f)).collect();
        let mut total = 1.0;
        for &nk in &norms {
            if nk == 0.0 {
                return;
            }
            total *= nk;
        }
        let target = math::powf(total, 1.0 / n as f64);
        for (f, nk) in self.factors.iter_mut().zip(norms) {
            mat::scale_vec(f, target / nk);
        }
    }

    pub fn densify(&self) -> Result<DenseTensor> {
        let mut t = DenseTensor::zeros(&self.dims())?;
        t.rank_one_accumulate(1.0, self);
        Ok(t)
    }

    /// Matrix form for order-2 terms.
    pub fn to_mat(&self) -> Result<Mat> {
        self.densify()?.to_mat()
    }
}

/// Ordered list of rank-one terms with optional Galerkin coefficients.
///
/// Coefficients are present in orthogonal-greedy mode (one per term) and
/// absent in pure-greedy mode, where every coefficient is implicitly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    terms: Vec<RankOneTerm>,
    coefficients: Option<Vec<f64>>,
}

impl Expansion {
    pub fn empty() -> Self {
        Expansion {
            terms: Vec::new(),
            coefficients: None,
        }
    }

    pub fn from_terms(terms: Vec<RankOneTerm>) -> Self {
        Expansion {
            terms,
            coefficients: None,
        }
    }

    pub fn with_coefficients(terms: Vec<RankOneTerm>, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != terms.len() {
            return Err(Error::DimensionMismatch {
                context: "Expansion::with_coefficients",
                expected: terms.len(),
                got: coefficients.len(),
            });
        }
        Ok(Expansion {
            terms,
            coefficients: Some(coefficients),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[RankOneTerm] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> &RankOneTerm {
        &self.terms[k]
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        self.coefficients.as_deref()
    }

    /// Effective coefficient of term `k` (1 when running without Galerkin
    /// coefficients).
    pub fn coefficient(&self, k: usize) -> f64 {
        match &self.coefficients {
            Some(c) => c[k],
            None => 1.0,
        }
    }

    pub fn push_term(&mut self, term: RankOneTerm) {
        self.terms.push(term);
        if let Some(c) = &mut self.coefficients {
            c.push(1.0);
        }
    }

    pub fn pop_term(&mut self) -> Option<RankOneTerm> {
        if let Some(c) = &mut self.coefficients {
            c.pop();
        }
        self.terms.pop()
    }

    pub fn set_coefficients(&mut self, coefficients: Vec<f64>) -> Result<()> {
        if coefficients.len() != self.terms.len() {
            return Err(Error::DimensionMismatch {
                context: "Expansion::set_coefficients",
                expected: self.terms.len(),
                got: coefficients.len(),
            });
        }
        self.coefficients = Some(coefficients);
        Ok(())
    }

    pub fn iter_weighted(&self) -> impl Iterator<Item = (f64, &RankOneTerm)> {
        self.terms
            .iter()
            .enumerate()
            .map(move |(k, t)| (self.coefficient(k), t))
    }

    pub fn densify(&self, dims: &[usize]) -> Result<DenseTensor> {
        let mut t = DenseTensor::zeros(dims)?;
        for (c, term) in self.iter_weighted() {
            if term.dims() != dims {
                return Err(Error::DimensionMismatch {
                    context: "Expansion::densify term dims",
                    expected: dims.first().copied().unwrap_or(0),
                    got: term.dims().first().copied().unwrap_or(0),
                });
            }
            t.rank_one_accumulate(c, term);
        }
        Ok(t)
    }
}

/// Right-hand side: dense array or a weighted sum of rank-one terms.
#[derive(Debug, Clone, PartialEq)]
pub enum Rhs {
    Dense(DenseTensor),
    Separated(Vec<(f64, RankOneTerm)>),
}

impl Rhs {
    pub fn dense_from_mat(m: &Mat) -> Self {
        Rhs::Dense(DenseTensor::from_mat(m))
    }

    pub fn dims(&self) -> Result<Vec<usize>> {
        match self {
            Rhs::Dense(t) => Ok(t.shape().to_vec()),
            Rhs::Separated(terms) => {
                let first = terms
                    .first()
                    .ok_or_else(|| Error::InvalidInput("empty separated right-hand side".into()))?;
                Ok(first.1.dims())
            }
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        match self {
            Rhs::Dense(t) => t.frobenius_norm(),
            Rhs::Separated(terms) => gram_norm(terms),
        }
    }

    /// `F : T` for a rank-one term `T`.
    pub fn dot_term(&self, term: &RankOneTerm) -> f64 {
        match self {
            Rhs::Dense(t) => t.dot_rank_one(term),
            Rhs::Separated(terms) => terms.iter().map(|(c, t)| c * t.dot(term)).sum(),
        }
    }

    pub fn densify(&self) -> Result<DenseTensor> {
        match self {
            Rhs::Dense(t) => Ok(t.clone()),
            Rhs::Separated(terms) => {
                let dims = self.dims()?;
                let mut t = DenseTensor::zeros(&dims)?;
                for (c, term) in terms {
                    t.rank_one_accumulate(*c, term);
                }
                Ok(t)
            }
        }
    }
}

/// Frobenius norm of a weighted sum of rank-one terms via the Gram expansion
/// `||sum c_i T_i||^2 = sum_ij c_i c_j prod_k (x_k^i . x_k^j)`.
pub fn gram_norm(terms: &[(f64, RankOneTerm)]) -> f64 {
    let mut sq = 0.0;
    for (i, (ci, ti)) in terms.iter().enumerate() {
        sq += ci * ci * ti.dot(ti);
        for (cj, tj) in terms.iter().take(i) {
            sq += 2.0 * ci * cj * ti.dot(tj);
        }
    }
    math::sqrt(math::max(sq, 0.0))
}
