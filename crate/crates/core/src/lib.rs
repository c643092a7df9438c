//! Greedy rank-one solvers for tensor-structured elliptic problems.
//!
//! This crate builds separated (low-rank) approximations `U = sum_k R_k (x) S_k`
//! of the solution of discrete Sylvester problems `B1 G + G B2^T = F` (and their
//! N-dimensional Kronecker-sum analogues) by the Pure and Orthogonal Greedy
//! Algorithms, where each new rank-one term is computed by an alternating
//! fixed-point iteration on the Euler-Lagrange equations of the rank-one
//! energy minimization.
//!
//! The crate also contains the identity-operator degeneration of the method
//! (greedy singular value decomposition, [`svd`]), and dense brute-force
//! reference solvers ([`oracle`]) used to verify every claim the iterative
//! solvers make.
//!
//! The crate is `no_std`-compatible (`default-features = false,
//! features = ["libm"]`); all solver state lives on the heap via `alloc` and
//! all randomness flows through a caller-provided seeded generator.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("pgd-core requires either the `std` or the `libm` feature");

pub(crate) mod math;

pub mod dense;
pub mod error;
pub mod fixed_point;
pub mod greedy;
pub mod inner;
pub mod mat;
pub mod operator;
pub mod oracle;
pub mod rng;
pub mod separated;
pub mod svd;

pub use dense::DenseTensor;
pub use error::Error;
pub use fixed_point::{FixedPointConfig, FixedPointDiagnostics, FixedPointInit};
pub use greedy::{GreedyAlgorithm, GreedyConfig, SolveReport, Termination, TraceRecord};
pub use inner::ResidualState;
pub use mat::Mat;
pub use operator::{Operator1D, OperatorKind};
pub use separated::{Expansion, RankOneTerm, Rhs};
pub use svd::SvdTriplet;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
