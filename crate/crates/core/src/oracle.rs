//! Dense brute-force reference solvers and analytic verifications.
//!
//! Everything here is accuracy-first and desk-scale (dimensions of a few
//! hundred): cyclic Jacobi eigendecomposition, a one-sided Jacobi SVD, an
//! eigenbasis (or Kronecker) Sylvester solve, and the analytic
//! Euler-Lagrange constructions that falsify or confirm what the iterative
//! solvers produce. None of it shares code with the solver paths it checks.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Error;
use crate::fixed_point::el_residual;
use crate::inner::{apply_op_dense, ResidualState};
use crate::mat::{self, LuFactors, Mat};
use crate::math;
use crate::operator::{Operator1D, OperatorKind};
use crate::rng::{self, SeedRng};
use crate::separated::{RankOneTerm, Rhs};
use crate::svd::SvdTriplet;
use crate::Result;

/// Desk-scale cap for dense eigendecompositions and SVDs.
pub const EIGEN_MAX_DIM: usize = 512;
/// Cap on `d1 * d2` for the dense Kronecker solve (memory scales as its square).
pub const KRONECKER_MAX_DIM: usize = 4096;

/// Eigendecomposition of a symmetric matrix: `D = Q diag(values) Q^T` with
/// ascending values and orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        let d = self.vectors.rows();
        (0..d).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix, run to machine
/// precision.
pub fn symmetric_eigen(m: &Mat) -> Result<EigenDecomposition> {
    let d = m.rows();
    if m.cols() != d {
        return Err(Error::DimensionMismatch {
            context: "symmetric_eigen (square required)",
            expected: d,
            got: m.cols(),
        });
    }
    if d > EIGEN_MAX_DIM {
        return Err(Error::InvalidInput(alloc::format!(
            "symmetric_eigen capped at d <= {EIGEN_MAX_DIM}, got {d}"
        )));
    }
    let mut a = m.clone();
    let mut q = Mat::identity(d);
    let norm = math::max(m.frobenius_norm(), f64::MIN_POSITIVE);
    let tol = 1e-15 * norm;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if math::sqrt(2.0 * off) <= tol {
            break;
        }
        for p in 0..d {
            for r in (p + 1)..d {
                let apr = a[(p, r)];
                if math::abs(apr) <= 1e-300 * norm {
                    continue;
                }
                let app = a[(p, p)];
                let arr = a[(r, r)];
                let theta = (arr - app) / (2.0 * apr);
                let t = {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (math::abs(theta) + math::hypot(1.0, theta))
                };
                let c = 1.0 / math::hypot(1.0, t);
                let s = t * c;
                // rows/cols p and r of A
                for k in 0..d {
                    let akp = a[(k, p)];
                    let akr = a[(k, r)];
                    a[(k, p)] = c * akp - s * akr;
                    a[(k, r)] = s * akp + c * akr;
                }
                for k in 0..d {
                    let apk = a[(p, k)];
                    let ark = a[(r, k)];
                    a[(p, k)] = c * apk - s * ark;
                    a[(r, k)] = s * apk + c * ark;
                }
                for k in 0..d {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Mat::zeros(d, d);
    for (col, &src) in order.iter().enumerate() {
        // deterministic sign: largest-magnitude component positive
        let mut dominant = 0;
        for i in 0..d {
            if math::abs(q[(i, src)]) > math::abs(q[(dominant, src)]) {
                dominant = i;
            }
        }
        let flip = if q[(dominant, src)] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..d {
            vectors[(i, col)] = flip * q[(i, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Dense reference solve of `B_1 G + G B_2^T = F`.
///
/// Both operators symmetric positive definite: eigenbasis division
/// `G_hat_ij = F_hat_ij / (lambda_i + mu_j)`. Otherwise: dense LU on the
/// Kronecker-sum system, capped at `d1 * d2 <= 4096`.
pub fn sylvester_dense(ops: &[Operator1D], f: &Mat) -> Result<Mat> {
    if ops.len() != 2 {
        return Err(Error::InvalidConfig(
            "sylvester_dense expects exactly two operators",
        ));
    }
    let (d1, d2) = (ops[0].dim(), ops[1].dim());
    if f.rows() != d1 || f.cols() != d2 {
        return Err(Error::DimensionMismatch {
            context: "sylvester_dense right-hand side",
            expected: d1,
            got: f.rows(),
        });
    }
    let all_spd = ops
        .iter()
        .all(|op| op.kind() == OperatorKind::SymmetricPositiveDefinite);
    if all_spd {
        let e1 = symmetric_eigen(ops[0].matrix())?;
        let e2 = symmetric_eigen(ops[1].matrix())?;
        let f_hat = e1.vectors.transpose().matmul(f).matmul(&e2.vectors);
        let mut g_hat = Mat::zeros(d1, d2);
        for i in 0..d1 {
            for j in 0..d2 {
                let denom = e1.values[i] + e2.values[j];
                if denom == 0.0 {
                    return Err(Error::SingularSystem {
                        context: "sylvester eigenbasis division",
                    });
                }
                g_hat[(i, j)] = f_hat[(i, j)] / denom;
            }
        }
        return Ok(e1.vectors.matmul(&g_hat).matmul(&e2.vectors.transpose()));
    }
    // Kronecker path: (B1 (x) I + I (x) B2) vec(G) = vec(F), row-major vec.
    let n = d1 * d2;
    if n > KRONECKER_MAX_DIM {
        return Err(Error::InvalidInput(alloc::format!(
            "nonsymmetric sylvester oracle capped at d1*d2 <= {KRONECKER_MAX_DIM}, got {n}"
        )));
    }
    let b1 = ops[0].matrix();
    let b2 = ops[1].matrix();
    let mut k = Mat::zeros(n, n);
    for i in 0..d1 {
        for j in 0..d2 {
            let row = i * d2 + j;
            for l in 0..d1 {
                k[(row, l * d2 + j)] += b1[(i, l)];
            }
            for m in 0..d2 {
                k[(row, i * d2 + m)] += b2[(j, m)];
            }
        }
    }
    let lu = LuFactors::factor(&k, "kronecker sylvester")?;
    let x = lu.solve(f.data());
    Mat::from_vec(d1, d2, x)
}

/// Brute-force dense SVD (one-sided Jacobi), triplets in descending sigma.
/// Numerically zero singular values are dropped.
pub fn dense_svd(g: &Mat) -> Result<Vec<SvdTriplet>> {
    let (p, q) = (g.rows(), g.cols());
    if p > EIGEN_MAX_DIM || q > EIGEN_MAX_DIM {
        return Err(Error::InvalidInput(alloc::format!(
            "dense_svd capped at {EIGEN_MAX_DIM}, got {p}x{q}"
        )));
    }
    if p < q {
        let swapped = dense_svd(&g.transpose())?;
        return Ok(swapped
            .into_iter()
            .map(|t| SvdTriplet {
                sigma: t.sigma,
                u: t.v,
                v: t.u,
            })
            .collect());
    }
    // columns of w converge to sigma_j * u_j; v accumulates the rotations
    let mut w: Vec<Vec<f64>> = (0..q).map(|j| (0..p).map(|i| g[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..q)
        .map(|j| (0..q).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = math::max(g.frobenius_norm(), f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..q {
            for j in (i + 1)..q {
                let a = mat::dot(&w[i], &w[i]);
                let b = mat::dot(&w[j], &w[j]);
                let c = mat::dot(&w[i], &w[j]);
                if math::abs(c) <= 1e-16 * scale * scale {
                    continue;
                }
                if math::abs(c) <= 1e-15 * math::sqrt(a * b) {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * c);
                let t = {
                    let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (math::abs(zeta) + math::hypot(1.0, zeta))
                };
                let cs = 1.0 / math::hypot(1.0, t);
                let sn = cs * t;
                for r in 0..p {
                    let wi = w[i][r];
                    let wj = w[j][r];
                    w[i][r] = cs * wi - sn * wj;
                    w[j][r] = sn * wi + cs * wj;
                }
                for r in 0..q {
                    let vi = v[i][r];
                    let vj = v[j][r];
                    v[i][r] = cs * vi - sn * vj;
                    v[j][r] = sn * vi + cs * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut triplets: Vec<SvdTriplet> = Vec::new();
    let sigma_max = w.iter().map(|c| mat::norm2(c)).fold(0.0, math::max);
    let floor = sigma_max * 1e-12;
    for j in 0..q {
        let sigma = mat::norm2(&w[j]);
        if sigma <= floor {
            continue;
        }
        let u: Vec<f64> = w[j].iter().map(|&x| x / sigma).collect();
        let mut t = SvdTriplet {
            sigma,
            u,
            v: v[j].clone(),
        };
        // canonical sign as elsewhere
        let mut dominant = 0;
        for (idx, &x) in t.u.iter().enumerate() {
            if math::abs(x) > math::abs(t.u[dominant]) {
                dominant = idx;
            }
        }
        if t.u[dominant] < 0.0 {
            for x in t.u.iter_mut() {
                *x = -*x;
            }
            for x in t.v.iter_mut() {
                *x = -*x;
            }
        }
        triplets.push(t);
    }
    triplets.sort_by(|a, b| b.sigma.partial_cmp(&a.sigma).expect("finite sigmas"));
    Ok(triplets)
}

/// Analytic non-minimizing Euler-Lagrange solution that is not an eigen
/// rank-one term: with prescribed eigenpairs `(lambda1, phi1)`,
/// `(lambda2, phi2)` and
///
/// ```text
///   g = alpha1 phi1 phi1^T + alpha2 phi2 phi2^T,   F = D g + g D,
///   alpha1 = (9 lambda1 + lambda2) / (4 lambda1),
///   alpha2 = (2 lambda1 + 3 lambda2) / (2 lambda2),
///   r = phi1 + 1/2 phi2,   s = 2 phi1 + phi2,
/// ```
///
/// the term `r s^T` satisfies the Euler-Lagrange system exactly. Returns its
/// normalized EL residual, which must vanish to rounding.
pub fn verify_counterexample(
    lambda1: f64,
    lambda2: f64,
    d: usize,
    rng: &mut SeedRng,
) -> Result<f64> {
    let setup = counterexample_setup(lambda1, lambda2, d, rng)?;
    counterexample_residual(
        &setup.ops,
        &setup.phi1,
        &setup.phi2,
        setup.alpha1,
        setup.alpha2,
    )
}

/// The concrete operator and coefficients behind [`verify_counterexample`],
/// exposed so callers can perturb the coefficients and watch the residual
/// move away from zero.
pub struct CounterexampleSetup {
    pub ops: [Operator1D; 2],
    pub phi1: Vec<f64>,
    pub phi2: Vec<f64>,
    pub alpha1: f64,
    pub alpha2: f64,
}

pub fn counterexample_setup(
    lambda1: f64,
    lambda2: f64,
    d: usize,
    rng: &mut SeedRng,
) -> Result<CounterexampleSetup> {
    if lambda1 <= 0.0 || lambda2 <= 0.0 {
        return Err(Error::InvalidConfig("eigenvalues must be positive"));
    }
    if lambda1 == lambda2 {
        return Err(Error::EigenvaluesNotDistinct { gap: 0.0 });
    }
    if d < 2 {
        return Err(Error::InvalidConfig("counterexample requires d >= 2"));
    }
    let q = rng::random_orthogonal(rng, d);
    let mut values = alloc::vec![0.0; d];
    values[0] = lambda1;
    values[1] = lambda2;
    let filler = math::max(lambda1, lambda2);
    for (k, v) in values.iter_mut().enumerate().skip(2) {
        *v = filler * (1.5 + k as f64);
    }
    let raw = q.matmul(&Mat::diag(&values)).matmul(&q.transpose());
    let sym = Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    let op = Operator1D::from_matrix(sym, OperatorKind::SymmetricPositiveDefinite)?;
    let phi1: Vec<f64> = (0..d).map(|i| q[(i, 0)]).collect();
    let phi2: Vec<f64> = (0..d).map(|i| q[(i, 1)]).collect();
    Ok(CounterexampleSetup {
        ops: [op.clone(), op],
        phi1,
        phi2,
        alpha1: (9.0 * lambda1 + lambda2) / (4.0 * lambda1),
        alpha2: (2.0 * lambda1 + 3.0 * lambda2) / (2.0 * lambda2),
    })
}

/// EL residual of the counterexample term for explicit coefficients
/// (exposed so tests can perturb `alpha1` and watch the residual move away
/// from zero).
pub fn counterexample_residual(
    ops: &[Operator1D; 2],
    phi1: &[f64],
    phi2: &[f64],
    alpha1: f64,
    alpha2: f64,
) -> Result<f64> {
    let d = phi1.len();
    let mut g = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g[(i, j)] = alpha1 * phi1[i] * phi1[j] + alpha2 * phi2[i] * phi2[j];
        }
    }
    let f = apply_op_dense(
        &ops[..],
        &crate::dense::DenseTensor::from_mat(&g),
    );
    let residual = ResidualState::from_rhs(&Rhs::Dense(f))?;
    let r: Vec<f64> = phi1.iter().zip(phi2).map(|(a, b)| a + 0.5 * b).collect();
    let s: Vec<f64> = phi1.iter().zip(phi2).map(|(a, b)| 2.0 * a + b).collect();
    let term = RankOneTerm::from_pair(&r, &s);
    Ok(el_residual(&term, &residual, &ops[..]))
}

/// For `g = sum_k alpha_k phi_k phi_k^T` built from eigenpairs of `D` and
/// `F = D g + g D`, every `alpha_k phi_k (x) phi_k` with `alpha_k != 0`
/// solves the Euler-Lagrange equations. Returns the largest EL residual
/// across those terms.
pub fn eigen_rank_one_el_check(d_op: &Operator1D, alphas: &[f64]) -> Result<f64> {
    let d = d_op.dim();
    if alphas.len() > d {
        return Err(Error::DimensionMismatch {
            context: "eigen_rank_one_el_check alphas",
            expected: d,
            got: alphas.len(),
        });
    }
    let eig = symmetric_eigen(d_op.matrix())?;
    let spread = math::max(
        eig.values[d - 1] - eig.values[0],
        math::abs(eig.values[d - 1]),
    );
    for k in 1..d {
        let gap = eig.values[k] - eig.values[k - 1];
        if gap <= 1e-10 * spread {
            return Err(Error::EigenvaluesNotDistinct { gap });
        }
    }
    let mut g = Mat::zeros(d, d);
    for (k, &alpha) in alphas.iter().enumerate() {
        let phi = eig.eigenvector(k);
        for i in 0..d {
            for j in 0..d {
                g[(i, j)] += alpha * phi[i] * phi[j];
            }
        }
    }
    let ops = [d_op.clone(), d_op.clone()];
    let f = apply_op_dense(&ops[..], &crate::dense::DenseTensor::from_mat(&g));
    let residual = ResidualState::from_rhs(&Rhs::Dense(f))?;
    let mut worst: f64 = 0.0;
    for (k, &alpha) in alphas.iter().enumerate() {
        if alpha == 0.0 {
            continue;
        }
        let phi = eig.eigenvector(k);
        let scaled: Vec<f64> = phi.iter().map(|&x| alpha * x).collect();
        let term = RankOneTerm::from_pair(&scaled, &phi);
        worst = math::max(worst, el_residual(&term, &residual, &ops[..]));
    }
    Ok(worst)
}

/// Check the recurrence lemma: if `a_1 <= A` and
/// `a_{n+1} <= a_n (1 - a_n / A)`, then `a_n <= A/n` for every `n`.
///
/// The hypothesis is verified first; a violated hypothesis is an error
/// (distinct from the conclusion failing, which returns `false` and would
/// mean the lemma itself is broken).
pub fn recurrence_bound_check(a: &[f64], bound: f64) -> Result<bool> {
    if !(bound > 0.0) {
        return Err(Error::InvalidConfig("the bound A must be positive"));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    let slack = 1e-12 * bound;
    for (i, &v) in a.iter().enumerate() {
        if v < 0.0 {
            return Err(Error::RecurrenceHypothesisViolated {
                index: i + 1,
                detail: alloc::format!("a_{} = {v} is negative", i + 1),
            });
        }
    }
    if a[0] > bound + slack {
        return Err(Error::RecurrenceHypothesisViolated {
            index: 1,
            detail: alloc::format!("a_1 = {} exceeds A = {bound}", a[0]),
        });
    }
    for n in 0..a.len() - 1 {
        let allowed = a[n] * (1.0 - a[n] / bound);
        if a[n + 1] > allowed + slack {
            return Err(Error::RecurrenceHypothesisViolated {
                index: n + 2,
                detail: alloc::format!(
                    "a_{} = {} exceeds a_n (1 - a_n/A) = {allowed}",
                    n + 2,
                    a[n + 1]
                ),
            });
        }
    }
    for (i, &v) in a.iter().enumerate() {
        let n = (i + 1) as f64;
        if v > bound / n + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least-squares slope of `log(series)` against `log(n)` over 1-based
/// indices `n > skip`.
pub fn fit_decay_exponent(series: &[f64], skip: usize) -> Result<f64> {
    if series.len() < skip + 5 {
        return Err(Error::InvalidInput(
            "fit_decay_exponent needs at least skip + 5 entries".to_string(),
        ));
    }
    if series.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidInput(
            "fit_decay_exponent requires positive entries".to_string(),
        ));
    }
    let points: Vec<(f64, f64)> = series
        .iter()
        .enumerate()
        .skip(skip)
        .map(|(i, &v)| (math::ln((i + 1) as f64), math::ln(v)))
        .collect();
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return Err(Error::InvalidInput(
            "degenerate abscissa in decay fit".to_string(),
        ));
    }
    Ok((n * sxy - sx * sy) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    #[test]
    fn sylvester_identity_halves_rhs() {
        let ops = [
            Operator1D::identity(4).unwrap(),
            Operator1D::identity(4).unwrap(),
        ];
        let mut rng = rng_from_seed(31);
        let f = rng::uniform_mat(&mut rng, 4, 4, -1.0, 1.0);
        let g = sylvester_dense(&ops, &f).unwrap();
        let diff = g.sub(&f.scaled(0.5)).frobenius_norm();
        assert!(diff <= 1e-12 * f.frobenius_norm());
    }

    #[test]
    fn sylvester_diagonal_closed_form() {
        let op = Operator1D::from_matrix(
            Mat::diag(&[1.0, 2.0]),
            OperatorKind::SymmetricPositiveDefinite,
        )
        .unwrap();
        let ops = [op.clone(), op];
        let f = Mat::from_rows(&[alloc::vec![1.0, 1.0], alloc::vec![1.0, 1.0]]).unwrap();
        let g = sylvester_dense(&ops, &f).unwrap();
        let want = Mat::from_rows(&[
            alloc::vec![0.5, 1.0 / 3.0],
            alloc::vec![1.0 / 3.0, 0.25],
        ])
        .unwrap();
        assert!(g.sub(&want).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn nonsymmetric_path_matches_symmetric_when_antisymmetric_part_vanishes() {
        let mut rng = rng_from_seed(32);
        let d = 6;
        let diag = Operator1D::diag_linspace(d, 1.0, 2.0).unwrap();
        let as_nonsym =
            Operator1D::from_matrix(diag.matrix().clone(), OperatorKind::Nonsymmetric).unwrap();
        let f = rng::uniform_mat(&mut rng, d, d, 0.0, 1.0);
        let g_sym = sylvester_dense(&[diag.clone(), diag], &f).unwrap();
        let g_kron = sylvester_dense(&[as_nonsym.clone(), as_nonsym], &f).unwrap();
        let rel = g_sym.sub(&g_kron).frobenius_norm() / g_sym.frobenius_norm();
        assert!(rel <= 1e-10, "paths disagree: {rel}");
    }

    #[test]
    fn sylvester_self_consistency_on_random_pairs() {
        // residual <= 1e-9 relative on 100 random (D, F) pairs
        let mut rng = rng_from_seed(33);
        for trial in 0..100 {
            let d = 2 + (trial % 31);
            let q = rng::random_orthogonal(&mut rng, d);
            let values: Vec<f64> = (0..d)
                .map(|_| rng.gen_range(0.5..5.0))
                .collect();
            let raw = q.matmul(&Mat::diag(&values)).matmul(&q.transpose());
            let sym = Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
            let op = Operator1D::from_matrix(sym, OperatorKind::SymmetricPositiveDefinite)
                .unwrap();
            let f = rng::uniform_mat(&mut rng, d, d, -1.0, 1.0);
            let g = sylvester_dense(&[op.clone(), op.clone()], &f).unwrap();
            let lhs = op.matrix().matmul(&g).add(&g.matmul(op.matrix()));
            let rel = lhs.sub(&f).frobenius_norm() / f.frobenius_norm();
            assert!(rel <= 1e-9, "trial {trial}: residual {rel}");
        }
    }

    #[test]
    fn dense_svd_examples() {
        let g = Mat::diag(&[3.0, 1.0]);
        let t = dense_svd(&g).unwrap();
        assert_eq!(t.len(), 2);
        assert!((t[0].sigma - 3.0).abs() < 1e-12);
        assert!((t[1].sigma - 1.0).abs() < 1e-12);

        // rank-one input: single nonzero triplet
        let mut rng = rng_from_seed(34);
        let u = rng::uniform_vec(&mut rng, 5, -1.0, 1.0);
        let v = rng::uniform_vec(&mut rng, 3, -1.0, 1.0);
        let r1 = Mat::from_fn(5, 3, |i, j| u[i] * v[j]);
        let t = dense_svd(&r1).unwrap();
        assert_eq!(t.len(), 1);

        // random 6x4: reconstruction residual <= 1e-9 relative
        let g = rng::uniform_mat(&mut rng, 6, 4, -1.0, 1.0);
        let t = dense_svd(&g).unwrap();
        let mut rec = Mat::zeros(6, 4);
        for triplet in &t {
            rec.axpy(1.0, &triplet.to_mat());
        }
        let rel = rec.sub(&g).frobenius_norm() / g.frobenius_norm();
        assert!(rel <= 1e-9, "reconstruction {rel}");
        // orthonormality of the triplets
        for a in &t {
            for b in &t {
                let uu = mat::dot(&a.u, &b.u);
                let want = if core::ptr::eq(a, b) { 1.0 } else { 0.0 };
                assert!((uu - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn counterexample_vanishes_for_paper_parameters() {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        let mut rng = rng_from_seed(35);
        let r = verify_counterexample(pi2, 4.0 * pi2, 8, &mut rng).unwrap();
        assert!(r <= 1e-10, "residual {r}");
        let r = verify_counterexample(1.0, 2.0, 2, &mut rng).unwrap();
        assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn counterexample_is_sensitive_to_alpha() {
        let mut rng = rng_from_seed(36);
        let d = 6;
        let q = rng::random_orthogonal(&mut rng, d);
        let (l1, l2) = (1.3, 2.9);
        let mut values = alloc::vec![0.0; d];
        values[0] = l1;
        values[1] = l2;
        for (k, v) in values.iter_mut().enumerate().skip(2) {
            *v = 4.0 + k as f64;
        }
        let raw = q.matmul(&Mat::diag(&values)).matmul(&q.transpose());
        let sym = Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
        let op = Operator1D::from_matrix(sym, OperatorKind::SymmetricPositiveDefinite).unwrap();
        let ops = [op.clone(), op];
        let phi1: Vec<f64> = (0..d).map(|i| q[(i, 0)]).collect();
        let phi2: Vec<f64> = (0..d).map(|i| q[(i, 1)]).collect();
        let a1 = (9.0 * l1 + l2) / (4.0 * l1);
        let a2 = (2.0 * l1 + 3.0 * l2) / (2.0 * l2);
        let clean = counterexample_residual(&ops, &phi1, &phi2, a1, a2).unwrap();
        assert!(clean <= 1e-10);
        let perturbed = counterexample_residual(&ops, &phi1, &phi2, a1 + 0.1, a2).unwrap();
        assert!(perturbed > 1e-3, "perturbed residual {perturbed}");
    }

    #[test]
    fn counterexample_rejects_equal_eigenvalues() {
        let mut rng = rng_from_seed(37);
        assert!(matches!(
            verify_counterexample(2.0, 2.0, 4, &mut rng),
            Err(Error::EigenvaluesNotDistinct { .. })
        ));
    }

    #[test]
    fn eigen_rank_one_terms_solve_el() {
        let op = Operator1D::diag_linspace(6, 1.0, 3.0).unwrap();
        let worst = eigen_rank_one_el_check(&op, &[1.0, 0.5, 0.25]).unwrap();
        assert!(worst <= 1e-10, "worst {worst}");
        let single = eigen_rank_one_el_check(&op, &[0.0, 2.0]).unwrap();
        assert!(single <= 1e-12, "single {single}");
    }

    #[test]
    fn non_eigen_probe_has_positive_el_residual() {
        let op = Operator1D::diag_linspace(6, 1.0, 3.0).unwrap();
        let ops = [op.clone(), op.clone()];
        let eig = symmetric_eigen(op.matrix()).unwrap();
        let mut g = Mat::zeros(6, 6);
        for (k, alpha) in [1.0, 0.5].iter().enumerate() {
            let phi = eig.eigenvector(k);
            for i in 0..6 {
                for j in 0..6 {
                    g[(i, j)] += alpha * phi[i] * phi[j];
                }
            }
        }
        let f = apply_op_dense(&ops[..], &crate::dense::DenseTensor::from_mat(&g));
        let residual = ResidualState::from_rhs(&Rhs::Dense(f)).unwrap();
        for seed in 0..10u64 {
            let mut rng = rng_from_seed(400 + seed);
            let term = RankOneTerm::from_pair(
                &rng::uniform_vec(&mut rng, 6, -1.0, 1.0),
                &rng::uniform_vec(&mut rng, 6, -1.0, 1.0),
            );
            let res = el_residual(&term, &residual, &ops[..]);
            assert!(res > 1e-6, "seed {seed}: unexpectedly stationary ({res})");
        }
    }

    #[test]
    fn recurrence_examples() {
        // equality-driven recursion a_{n+1} = a_n (1 - a_n / A)
        let bound = 2.5;
        let mut a = alloc::vec![bound];
        for _ in 0..200 {
            let last = *a.last().unwrap();
            a.push(last * (1.0 - last / bound));
        }
        assert!(recurrence_bound_check(&a, bound).unwrap());

        // geometric halving satisfies the hypothesis starting from A/2
        let geo: Vec<f64> = (0..40).map(|k| bound / 2.0 / math::powf(2.0, k as f64)).collect();
        assert!(recurrence_bound_check(&geo, bound).unwrap());

        // a_1 = 2A violates the hypothesis
        assert!(matches!(
            recurrence_bound_check(&[2.0 * bound], bound),
            Err(Error::RecurrenceHypothesisViolated { index: 1, .. })
        ));
    }

    #[test]
    fn decay_fit_examples() {
        let series: Vec<f64> = (1..=60).map(|n| 1.0 / math::sqrt(n as f64)).collect();
        let slope = fit_decay_exponent(&series, 4).unwrap();
        assert!((slope + 0.5).abs() < 1e-6, "slope {slope}");
        let flat = alloc::vec![3.0; 30];
        let slope = fit_decay_exponent(&flat, 0).unwrap();
        assert!(slope.abs() < 1e-12);
        assert!(fit_decay_exponent(&[1.0, 2.0], 0).is_err());
    }

    #[test]
    fn jacobi_eigen_reconstructs() {
        let mut rng = rng_from_seed(38);
        let d = 12;
        let q = rng::random_orthogonal(&mut rng, d);
        let values: Vec<f64> = (0..d).map(|i| 0.5 + i as f64).collect();
        let raw = q.matmul(&Mat::diag(&values)).matmul(&q.transpose());
        let sym = Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
        let eig = symmetric_eigen(&sym).unwrap();
        for (got, want) in eig.values.iter().zip(&values) {
            assert!((got - want).abs() <= 1e-10 * want);
        }
        let qtq = eig.vectors.transpose().matmul(&eig.vectors);
        assert!(qtq.sub(&Mat::identity(d)).frobenius_norm() <= 1e-10);
        let rec = eig
            .vectors
            .matmul(&Mat::diag(&eig.values))
            .matmul(&eig.vectors.transpose());
        assert!(rec.sub(&sym).frobenius_norm() <= 1e-8 * sym.frobenius_norm());
    }
}
