//! Outer greedy loops over rank-one terms.
//!
//! The pure variant appends the fixed-point term for the current residual
//! with coefficient 1; the orthogonal variant re-optimizes all coefficients
//! after each new term by a Galerkin solve over the span of the terms found
//! so far. Both stop on the Frobenius norm of the residual. Symmetric and
//! nonsymmetric operators run through the same code path; the operator kind
//! only changes the matrix entries, so a nonsymmetric operator with zero
//! antisymmetric part reproduces the symmetric run bit for bit.

use alloc::vec::Vec;

use crate::dense::DenseTensor;
use crate::error::Error;
use crate::fixed_point::{solve_rank_one, FixedPointConfig};
use crate::inner::{a_inner_dense_term, a_inner_terms, check_dims, energy, ResidualState};
use crate::mat::{self, LuFactors, Mat};
use crate::math;
use crate::operator::Operator1D;
use crate::rng::{self, SeedRng};
use crate::separated::{Expansion, RankOneTerm, Rhs};
use crate::Result;

/// Terms whose energy norm falls below `STALL_FACTOR * ||F||_F` for three
/// consecutive iterations terminate the run as stalled.
const STALL_FACTOR: f64 = 1e-14;
const STALL_STREAK: usize = 3;
/// Galerkin systems with a (diagonally equilibrated) condition estimate above
/// this are treated as numerically singular.
const GALERKIN_CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyAlgorithm {
    Pure,
    Orthogonal,
}

#[derive(Debug, Clone)]
pub struct GreedyConfig {
    pub algorithm: GreedyAlgorithm,
    /// Frobenius-norm stopping threshold on the residual.
    pub eps: f64,
    pub max_terms: usize,
    pub fixed_point: FixedPointConfig,
    /// Fixed-point restarts per term; the restart with the most negative
    /// energy wins, ties broken by lowest restart index.
    pub restarts_per_term: usize,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            algorithm: GreedyAlgorithm::Pure,
            eps: 1e-6,
            max_terms: 500,
            fixed_point: FixedPointConfig::default(),
            restarts_per_term: 3,
        }
    }
}

impl GreedyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eps <= 0.0 {
            return Err(Error::InvalidConfig("eps must be > 0"));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be >= 1"));
        }
        if self.restarts_per_term < 1 {
            return Err(Error::InvalidConfig("restarts_per_term must be >= 1"));
        }
        self.fixed_point.validate()
    }
}

/// Per-iteration trace record.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Per-term energy `E_n = 1/2 <T, A(T)> - F_{n-1} : T`.
    pub energy: f64,
    /// Energy of the accumulated approximation `E(U_n)` (the quantity whose
    /// decay-and-plateau shape the experiments report).
    pub cumulative_energy: f64,
    pub term_a_norm: f64,
    pub residual_frobenius: f64,
    pub fixed_point_sweeps: usize,
    pub galerkin_condition_estimate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxTermsReached,
    Stalled,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub trace: Vec<TraceRecord>,
    pub termination: Termination,
    pub expansion: Expansion,
}

impl SolveReport {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    pub fn final_residual(&self) -> f64 {
        self.trace
            .last()
            .map(|r| r.residual_frobenius)
            .unwrap_or(0.0)
    }
}

/// Run the configured greedy algorithm.
pub fn solve(
    ops: &[Operator1D],
    f: &Rhs,
    cfg: &GreedyConfig,
    rng: &mut SeedRng,
) -> Result<SolveReport> {
    cfg.validate()?;
    if ops.len() < 2 {
        return Err(Error::InvalidConfig("at least two operators required"));
    }
    check_dims(ops, &f.dims()?, "greedy solve right-hand side")?;

    let f_norm = f.frobenius_norm();
    let orthogonal = cfg.algorithm == GreedyAlgorithm::Orthogonal;
    let mut expansion = Expansion::empty();
    if orthogonal {
        expansion.set_coefficients(Vec::new())?;
    }
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut residual = ResidualState::from_rhs(f)?;
    if residual.frobenius_norm() <= cfg.eps {
        return Ok(SolveReport {
            trace,
            termination: Termination::Converged,
            expansion,
        });
    }

    let mut stall_streak = 0usize;
    loop {
        // best-of-restarts fixed point on the current residual
        let mut best: Option<(RankOneTerm, usize, f64)> = None;
        for _ in 0..cfg.restarts_per_term {
            let (term, diag) = solve_rank_one(ops, &residual, &cfg.fixed_point, rng)?;
            let e = 0.5 * a_inner_terms(ops, &term, &term) - residual.dot_term(&term);
            let better = match &best {
                None => true,
                Some((_, _, be)) => e < *be,
            };
            if better {
                best = Some((term, diag.sweeps_used, e));
            }
        }
        let (mut term, mut sweeps, mut term_energy) = best.expect("restarts_per_term >= 1");

        // Galerkin coefficient update (orthogonal variant), with retries on a
        // numerically singular system
        let mut condition = None;
        if orthogonal {
            let mut failures = 0usize;
            loop {
                expansion.push_term(term.clone());
                match galerkin_coefficients(expansion.terms(), f, ops) {
                    Ok((alphas, cond)) => {
                        expansion.set_coefficients(alphas)?;
                        condition = Some(cond);
                        break;
                    }
                    Err(Error::SingularGalerkin { .. }) => {
                        expansion.pop_term();
                        failures += 1;
                        if failures >= cfg.restarts_per_term {
                            return Ok(SolveReport {
                                trace,
                                termination: Termination::Stalled,
                                expansion,
                            });
                        }
                        let (t, d) = solve_rank_one(ops, &residual, &cfg.fixed_point, rng)?;
                        term_energy =
                            0.5 * a_inner_terms(ops, &t, &t) - residual.dot_term(&t);
                        term = t;
                        sweeps = d.sweeps_used;
                    }
                    Err(e) => return Err(e),
                }
            }
        } else {
            expansion.push_term(term.clone());
        }

        let term_a_norm = math::sqrt(math::max(a_inner_terms(ops, &term, &term), 0.0));
        residual = ResidualState::recompute(f, &expansion, ops)?;
        let cumulative = energy(ops, &expansion, f);
        trace.push(TraceRecord {
            iteration: expansion.len(),
            energy: term_energy,
            cumulative_energy: cumulative,
            term_a_norm,
            residual_frobenius: residual.frobenius_norm(),
            fixed_point_sweeps: sweeps,
            galerkin_condition_estimate: condition,
        });

        if residual.frobenius_norm() <= cfg.eps {
            return Ok(SolveReport {
                trace,
                termination: Termination::Converged,
                expansion,
            });
        }
        if term_a_norm < STALL_FACTOR * f_norm {
            stall_streak += 1;
            if stall_streak >= STALL_STREAK {
                return Ok(SolveReport {
                    trace,
                    termination: Termination::Stalled,
                    expansion,
                });
            }
        } else {
            stall_streak = 0;
        }
        if expansion.len() >= cfg.max_terms {
            return Ok(SolveReport {
                trace,
                termination: Termination::MaxTermsReached,
                expansion,
            });
        }
    }
}

/// Pure Greedy Algorithm entry point.
pub fn pure_greedy(
    ops: &[Operator1D],
    f: &Rhs,
    cfg: &GreedyConfig,
    rng: &mut SeedRng,
) -> Result<SolveReport> {
    if cfg.algorithm != GreedyAlgorithm::Pure {
        return Err(Error::InvalidConfig("pure_greedy requires algorithm = pure"));
    }
    solve(ops, f, cfg, rng)
}

/// Orthogonal Greedy Algorithm entry point.
pub fn orthogonal_greedy(
    ops: &[Operator1D],
    f: &Rhs,
    cfg: &GreedyConfig,
    rng: &mut SeedRng,
) -> Result<SolveReport> {
    if cfg.algorithm != GreedyAlgorithm::Orthogonal {
        return Err(Error::InvalidConfig(
            "orthogonal_greedy requires algorithm = orthogonal",
        ));
    }
    solve(ops, f, cfg, rng)
}

/// Solve the Galerkin problem over the given terms: `M alpha = b` with
/// `M_jk = <T_j, A(T_k)>` and `b_j = F : T_j`.
///
/// The system is solved in diagonally equilibrated form (terms implicitly
/// scaled to unit energy norm); the returned condition estimate refers to
/// the equilibrated matrix, which is the meaningful measure when term norms
/// span many orders of magnitude. Estimates above `1e12` are reported as
/// [`Error::SingularGalerkin`].
pub fn galerkin_coefficients(
    terms: &[RankOneTerm],
    f: &Rhs,
    ops: &[Operator1D],
) -> Result<(Vec<f64>, f64)> {
    if terms.is_empty() {
        return Err(Error::InvalidInput(
            "galerkin_coefficients requires at least one term".into(),
        ));
    }
    let n = terms.len();
    let mut gram = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            gram[(j, k)] = a_inner_terms(ops, &terms[j], &terms[k]);
        }
    }
    let mut scale = alloc::vec![0.0; n];
    for j in 0..n {
        let djj = gram[(j, j)];
        if !(djj > 0.0) {
            return Err(Error::SingularGalerkin {
                condition_estimate: f64::INFINITY,
            });
        }
        scale[j] = 1.0 / math::sqrt(djj);
    }
    let equilibrated = Mat::from_fn(n, n, |j, k| gram[(j, k)] * scale[j] * scale[k]);
    let condition = mat::condition_estimate(&equilibrated, "galerkin gram")?;
    if !(condition <= GALERKIN_CONDITION_LIMIT) {
        return Err(Error::SingularGalerkin {
            condition_estimate: condition,
        });
    }
    let b: Vec<f64> = (0..n).map(|j| f.dot_term(&terms[j]) * scale[j]).collect();
    let lu = LuFactors::factor(&equilibrated, "galerkin gram")?;
    let beta = lu.solve(&b);
    let alphas: Vec<f64> = beta.iter().zip(&scale).map(|(b, s)| b * s).collect();
    Ok((alphas, condition))
}

/// First-order stationarity probe: the Euler-Lagrange equations say the
/// oracle residual `g_n` is A-orthogonal to every variation
/// `x_1 (x) .. (x) p_k (x) .. (x) x_N` of the term. Returns the largest
/// normalized violation over random probe directions.
pub fn check_first_order(
    term: &RankOneTerm,
    g_residual: &DenseTensor,
    ops: &[Operator1D],
    probes: usize,
    rng: &mut SeedRng,
) -> Result<f64> {
    if probes == 0 {
        return Err(Error::InvalidConfig("probes must be >= 1"));
    }
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let probe = RankOneTerm::new(
            ops.iter()
                .map(|op| rng::uniform_vec(rng, op.dim(), -1.0, 1.0))
                .collect(),
        )?;
        worst = math::max(worst, first_order_violation(term, g_residual, ops, &probe)?);
    }
    Ok(worst)
}

/// Normalized first-order violation for a single probe term:
/// `|<g_n, V>_A| / (||g_n||_A ||V||_A)` with
/// `V = sum_k x_1 (x) .. (x) p_k (x) .. (x) x_N`.
pub fn first_order_violation(
    term: &RankOneTerm,
    g_residual: &DenseTensor,
    ops: &[Operator1D],
    probe: &RankOneTerm,
) -> Result<f64> {
    let n = ops.len();
    check_dims(ops, &term.dims(), "first_order_violation term")?;
    check_dims(ops, &probe.dims(), "first_order_violation probe")?;
    let variations: Vec<RankOneTerm> = (0..n)
        .map(|k| {
            let factors: Vec<Vec<f64>> = (0..n)
                .map(|j| {
                    if j == k {
                        probe.factor(j).to_vec()
                    } else {
                        term.factor(j).to_vec()
                    }
                })
                .collect();
            RankOneTerm::new(factors).expect("factor count preserved")
        })
        .collect();
    let mut inner = 0.0;
    let mut v_norm_sq = 0.0;
    for vi in &variations {
        inner += a_inner_dense_term(ops, g_residual, vi);
        for vj in &variations {
            v_norm_sq += a_inner_terms(ops, vi, vj);
        }
    }
    let g_norm = math::sqrt(math::max(
        crate::inner::a_inner_dense(ops, g_residual, g_residual),
        0.0,
    ));
    let v_norm = math::sqrt(math::max(v_norm_sq, 0.0));
    let denom = g_norm * v_norm;
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(math::abs(inner) / denom)
}

/// Second-order optimality probe (two-dimensional case):
/// `(<T - g_n, r (x) s>_A)^2 <= ||r (x) s_n||_A^2 ||r_n (x) s||_A^2`.
/// Returns the minimum over probes of `(RHS - LHS)/RHS`; a negative value
/// certifies the term is a stationary point but not a minimizer.
pub fn check_second_order(
    term: &RankOneTerm,
    g_n: &DenseTensor,
    ops: &[Operator1D],
    probes: usize,
    rng: &mut SeedRng,
) -> Result<f64> {
    if probes == 0 {
        return Err(Error::InvalidConfig("probes must be >= 1"));
    }
    let mut worst = f64::INFINITY;
    for _ in 0..probes {
        let probe = RankOneTerm::new(
            ops.iter()
                .map(|op| rng::uniform_vec(rng, op.dim(), -1.0, 1.0))
                .collect(),
        )?;
        worst = math::min(worst, second_order_margin(term, g_n, ops, &probe)?);
    }
    Ok(worst)
}

/// Margin `(RHS - LHS)/RHS` of the second-order condition for one probe.
pub fn second_order_margin(
    term: &RankOneTerm,
    g_n: &DenseTensor,
    ops: &[Operator1D],
    probe: &RankOneTerm,
) -> Result<f64> {
    if ops.len() != 2 {
        return Err(Error::InvalidConfig(
            "the second-order condition is stated for two dimensions",
        ));
    }
    check_dims(ops, &term.dims(), "second_order_margin term")?;
    check_dims(ops, &probe.dims(), "second_order_margin probe")?;
    let r = probe.factor(0);
    let s = probe.factor(1);
    let probe_term = RankOneTerm::from_pair(r, s);
    // LHS: (<T - g_n, r (x) s>_A)^2
    let t_part = a_inner_terms(ops, term, &probe_term);
    // a_inner is <X, A(Y)>; here the first slot is the dense g_n, so apply A
    // to the probe and contract.
    let g_part = a_inner_dense_term(ops, g_n, &probe_term);
    let lhs = {
        let v = t_part - g_part;
        v * v
    };
    let mixed_a = RankOneTerm::from_pair(r, term.factor(1));
    let mixed_b = RankOneTerm::from_pair(term.factor(0), s);
    let rhs = a_inner_terms(ops, &mixed_a, &mixed_a) * a_inner_terms(ops, &mixed_b, &mixed_b);
    if rhs == 0.0 {
        // zero probe direction carries no information
        return Ok(if lhs == 0.0 { 0.0 } else { -f64::INFINITY });
    }
    Ok((rhs - lhs) / rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::apply_op_term;
    use crate::oracle;
    use crate::rng::rng_from_seed;

    fn diag_ops(d: usize) -> Vec<Operator1D> {
        let op = Operator1D::diag_linspace(d, 1.0, 2.0).unwrap();
        alloc::vec![op.clone(), op]
    }

    fn rank_one_image_rhs(ops: &[Operator1D], rng: &mut SeedRng, d: usize) -> Rhs {
        let t = RankOneTerm::from_pair(
            &rng::uniform_vec(rng, d, -1.0, 1.0),
            &rng::uniform_vec(rng, d, -1.0, 1.0),
        );
        let mut f = DenseTensor::zeros(&[d, d]).unwrap();
        for applied in apply_op_term(ops, &t) {
            f.rank_one_accumulate(1.0, &applied);
        }
        Rhs::Dense(f)
    }

    #[test]
    fn rank_one_rhs_converges_in_one_term() {
        let ops = diag_ops(6);
        let mut rng = rng_from_seed(21);
        let f = rank_one_image_rhs(&ops, &mut rng, 6);
        let cfg = GreedyConfig {
            eps: 1e-10 * f.frobenius_norm(),
            fixed_point: FixedPointConfig {
                rel_tol: 1e-13,
                max_sweeps: 2000,
                ..FixedPointConfig::default()
            },
            ..GreedyConfig::default()
        };
        let report = pure_greedy(&ops, &f, &cfg, &mut rng).unwrap();
        assert_eq!(report.termination, Termination::Converged);
        assert_eq!(report.expansion.len(), 1);
        assert!(report.final_residual() <= 1e-10 * f.frobenius_norm());
    }

    #[test]
    fn orthogonal_single_term_coefficient_is_one() {
        let ops = diag_ops(5);
        let mut rng = rng_from_seed(22);
        let f = rank_one_image_rhs(&ops, &mut rng, 5);
        let cfg = GreedyConfig {
            algorithm: GreedyAlgorithm::Orthogonal,
            eps: 1e-10 * f.frobenius_norm(),
            fixed_point: FixedPointConfig {
                rel_tol: 1e-13,
                max_sweeps: 2000,
                ..FixedPointConfig::default()
            },
            ..GreedyConfig::default()
        };
        let report = orthogonal_greedy(&ops, &f, &cfg, &mut rng).unwrap();
        assert_eq!(report.expansion.len(), 1);
        let alpha = report.expansion.coefficients().unwrap()[0];
        assert!((alpha - 1.0).abs() <= 1e-10, "alpha = {alpha}");
    }

    #[test]
    fn zero_rhs_returns_empty_expansion() {
        let ops = diag_ops(4);
        let mut rng = rng_from_seed(23);
        let f = Rhs::dense_from_mat(&Mat::zeros(4, 4));
        let cfg = GreedyConfig::default();
        let report = solve(&ops, &f, &cfg, &mut rng).unwrap();
        assert_eq!(report.termination, Termination::Converged);
        assert_eq!(report.expansion.len(), 0);
        assert!(report.trace.is_empty());
    }

    #[test]
    fn galerkin_scalar_case() {
        let ops = diag_ops(5);
        let mut rng = rng_from_seed(24);
        let t = RankOneTerm::from_pair(
            &rng::uniform_vec(&mut rng, 5, -1.0, 1.0),
            &rng::uniform_vec(&mut rng, 5, -1.0, 1.0),
        );
        let fm = rng::uniform_mat(&mut rng, 5, 5, 0.0, 1.0);
        let f = Rhs::dense_from_mat(&fm);
        let (alphas, _) = galerkin_coefficients(core::slice::from_ref(&t), &f, &ops).unwrap();
        let want = f.dot_term(&t) / a_inner_terms(&ops, &t, &t);
        assert!((alphas[0] - want).abs() <= 1e-12 * want.abs());
    }

    #[test]
    fn galerkin_recovers_known_coefficients_on_a_orthogonal_terms() {
        // eigen rank-one terms phi_i phi_j^T are A-orthogonal
        let d = 6;
        let mut rng = rng_from_seed(25);
        let q = rng::random_orthogonal(&mut rng, d);
        let lambdas: Vec<f64> = (0..d).map(|i| 1.0 + i as f64).collect();
        let dm = {
            let raw = q.matmul(&Mat::diag(&lambdas)).matmul(&q.transpose());
            Mat::from_fn(d, d, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]))
        };
        let op =
            Operator1D::from_matrix(dm, crate::operator::OperatorKind::SymmetricPositiveDefinite)
                .unwrap();
        let ops = alloc::vec![op.clone(), op];
        let phi = |k: usize| -> Vec<f64> { (0..d).map(|i| q[(i, k)]).collect() };
        let terms: Vec<RankOneTerm> = (0..3)
            .map(|k| RankOneTerm::from_pair(&phi(k), &phi(k)))
            .collect();
        let c = [2.0, -0.5, 0.25];
        // F = A(sum c_k T_k)
        let mut f_dense = DenseTensor::zeros(&[d, d]).unwrap();
        for (k, t) in terms.iter().enumerate() {
            for applied in apply_op_term(&ops, t) {
                f_dense.rank_one_accumulate(c[k], &applied);
            }
        }
        let f = Rhs::Dense(f_dense);
        let (alphas, cond) = galerkin_coefficients(&terms, &f, &ops).unwrap();
        assert!(cond < 10.0);
        for (a, want) in alphas.iter().zip(&c) {
            assert!((a - want).abs() <= 1e-10, "{a} vs {want}");
        }
    }

    #[test]
    fn duplicated_term_is_singular() {
        let ops = diag_ops(4);
        let mut rng = rng_from_seed(26);
        let t = RankOneTerm::from_pair(
            &rng::uniform_vec(&mut rng, 4, -1.0, 1.0),
            &rng::uniform_vec(&mut rng, 4, -1.0, 1.0),
        );
        let f = Rhs::dense_from_mat(&rng::uniform_mat(&mut rng, 4, 4, 0.0, 1.0));
        let result = galerkin_coefficients(&[t.clone(), t], &f, &ops);
        assert!(matches!(result, Err(Error::SingularGalerkin { .. })));
    }

    #[test]
    fn stalls_on_exhausted_rhs() {
        // eps below reachable accuracy: after the rank-one datum is captured,
        // the leftover terms are noise-sized and the stall guard fires.
        let ops = diag_ops(5);
        let mut rng = rng_from_seed(27);
        let f = rank_one_image_rhs(&ops, &mut rng, 5);
        let cfg = GreedyConfig {
            eps: 1e-300,
            max_terms: 50,
            fixed_point: FixedPointConfig {
                rel_tol: 1e-13,
                max_sweeps: 2000,
                ..FixedPointConfig::default()
            },
            ..GreedyConfig::default()
        };
        let report = pure_greedy(&ops, &f, &cfg, &mut rng).unwrap();
        assert_eq!(report.termination, Termination::Stalled);
        assert!(report.final_residual() <= 1e-10 * f.frobenius_norm());
    }

    #[test]
    fn trace_length_matches_expansion() {
        let ops = diag_ops(8);
        let mut rng = rng_from_seed(28);
        let f = Rhs::dense_from_mat(&rng::uniform_mat(&mut rng, 8, 8, 0.0, 1.0));
        let cfg = GreedyConfig {
            eps: 1e-3,
            max_terms: 40,
            ..GreedyConfig::default()
        };
        for algorithm in [GreedyAlgorithm::Pure, GreedyAlgorithm::Orthogonal] {
            let cfg = GreedyConfig {
                algorithm,
                ..cfg.clone()
            };
            let report = solve(&ops, &f, &cfg, &mut rng).unwrap();
            assert_eq!(report.trace.len(), report.expansion.len());
            if report.termination == Termination::Converged {
                assert!(report.final_residual() <= cfg.eps);
            }
        }
    }

    #[test]
    fn first_order_holds_for_converged_terms_and_fails_generically() {
        let d = 8;
        let ops = diag_ops(d);
        let mut rng = rng_from_seed(29);
        let fm = rng::uniform_mat(&mut rng, d, d, 0.0, 1.0);
        let f = Rhs::dense_from_mat(&fm);
        let residual = ResidualState::from_rhs(&f).unwrap();
        let cfg = FixedPointConfig {
            rel_tol: 1e-13,
            max_sweeps: 5000,
            ..FixedPointConfig::default()
        };
        let (term, diag) = solve_rank_one(&ops, &residual, &cfg, &mut rng).unwrap();
        assert!(diag.converged);
        // oracle residual g_1 = G - T
        let g = oracle::sylvester_dense(&ops, &fm).unwrap();
        let g1 = DenseTensor::from_mat(&g.sub(&term.to_mat().unwrap()));
        let violation = check_first_order(&term, &g1, &ops, 25, &mut rng).unwrap();
        assert!(violation <= 1e-8, "violation {violation}");

        // probe with (r, s) = (r_n, 0) reproduces <T, g_{n-1}>_A = ||T||_A^2
        let g0 = DenseTensor::from_mat(&g);
        let t_norm_sq = a_inner_terms(&ops, &term, &term);
        let lhs = a_inner_dense_term(&ops, &g0, &term);
        assert!(
            (lhs - t_norm_sq).abs() <= 1e-8 * t_norm_sq,
            "{lhs} vs {t_norm_sq}"
        );

        // a random non-stationary term violates the conditions generically
        let mut seeds_violating = 0;
        for seed in 0..10u64 {
            let mut prng = rng_from_seed(1000 + seed);
            let random_term = RankOneTerm::from_pair(
                &rng::uniform_vec(&mut prng, d, -1.0, 1.0),
                &rng::uniform_vec(&mut prng, d, -1.0, 1.0),
            );
            let gr = DenseTensor::from_mat(&g.sub(&random_term.to_mat().unwrap()));
            let v = check_first_order(&random_term, &gr, &ops, 25, &mut prng).unwrap();
            if v > 1e-3 {
                seeds_violating += 1;
            }
        }
        assert_eq!(seeds_violating, 10);
    }
}
