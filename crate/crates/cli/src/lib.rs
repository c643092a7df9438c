//! Library surface of the `pgd` command-line harness (exposed so the
//! integration tests can drive the experiment runners directly).

pub mod config;
pub mod csvout;
pub mod experiments;
pub mod matfile;
