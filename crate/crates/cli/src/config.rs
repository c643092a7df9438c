//! Experiment configuration: CLI flags merged over an optional TOML file,
//! resolved into one canonical structure whose hash binds every CSV output
//! to the configuration that produced it.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

/// Marker error for configuration/validation failures so the binary can map
/// them to the invalid-config exit code.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}
use serde::Deserialize;

use pgd_core::greedy::GreedyAlgorithm;
use pgd_core::mat::Mat;
use pgd_core::operator::{Operator1D, OperatorKind};

use crate::matfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    EnergyTrace,
    IterationScaling,
    SvdDemo,
    Counterexample,
    Nonsym,
    RateFit,
}

impl FromStr for ExperimentKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "energy-trace" | "energy_trace" => ExperimentKind::EnergyTrace,
            "iteration-scaling" | "iteration_scaling" => ExperimentKind::IterationScaling,
            "svd-demo" | "svd_demo" => ExperimentKind::SvdDemo,
            "counterexample" => ExperimentKind::Counterexample,
            "nonsym" => ExperimentKind::Nonsym,
            "rate-fit" | "rate_fit" => ExperimentKind::RateFit,
            other => bail!(
                "unknown experiment {other:?} (expected energy-trace, iteration-scaling, \
                 svd-demo, counterexample, nonsym, rate-fit)"
            ),
        })
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExperimentKind::EnergyTrace => "energy-trace",
            ExperimentKind::IterationScaling => "iteration-scaling",
            ExperimentKind::SvdDemo => "svd-demo",
            ExperimentKind::Counterexample => "counterexample",
            ExperimentKind::Nonsym => "nonsym",
            ExperimentKind::RateFit => "rate-fit",
        };
        f.write_str(s)
    }
}

/// `laplacian | diag-linspace:LO:HI | identity | file:PATH`
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    Laplacian,
    DiagLinspace { lo: f64, hi: f64 },
    Identity,
    File(PathBuf),
}

impl FromStr for OperatorSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "laplacian" {
            return Ok(OperatorSpec::Laplacian);
        }
        if s == "identity" {
            return Ok(OperatorSpec::Identity);
        }
        if let Some(rest) = s.strip_prefix("diag-linspace:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 2 {
                bail!("diag-linspace takes LO:HI, got {rest:?}");
            }
            let lo: f64 = parts[0].parse().context("bad LO")?;
            let hi: f64 = parts[1].parse().context("bad HI")?;
            return Ok(OperatorSpec::DiagLinspace { lo, hi });
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(OperatorSpec::File(PathBuf::from(path)));
        }
        bail!("unknown operator {s:?} (expected laplacian, diag-linspace:LO:HI, identity, file:PATH)")
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::Laplacian => f.write_str("laplacian"),
            OperatorSpec::DiagLinspace { lo, hi } => write!(f, "diag-linspace:{lo}:{hi}"),
            OperatorSpec::Identity => f.write_str("identity"),
            OperatorSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl OperatorSpec {
    /// Build the one-dimensional operator at dimension `d`. File-backed
    /// matrices are validated against the requested kind; asking for a
    /// symmetric positive definite operator with a file that is not one is a
    /// validation error.
    pub fn build(&self, d: usize, kind: OperatorKind) -> Result<Operator1D> {
        let op = match self {
            OperatorSpec::Laplacian => Operator1D::fd_laplacian(d)?,
            OperatorSpec::DiagLinspace { lo, hi } => Operator1D::diag_linspace(d, *lo, *hi)?,
            OperatorSpec::Identity => Operator1D::identity(d)?,
            OperatorSpec::File(path) => {
                let m = matfile::read_matrix(path)?;
                if m.rows() != d {
                    return Err(ConfigError(format!(
                        "operator file {} is {}x{}, but --d is {d}",
                        path.display(),
                        m.rows(),
                        m.cols()
                    ))
                    .into());
                }
                return Ok(Operator1D::from_matrix(m, kind)?);
            }
        };
        if kind == OperatorKind::Nonsymmetric {
            // rebuild with the requested kind (entries unchanged)
            return Ok(Operator1D::from_matrix(op.matrix().clone(), kind)?);
        }
        Ok(op)
    }
}

/// `random-uniform | random-normal | rank-one | file:PATH`
#[derive(Debug, Clone, PartialEq)]
pub enum RhsSpec {
    RandomUniform,
    RandomNormal,
    /// `F = A(r s^T)` for random unit factors, so one greedy term solves it.
    RankOne,
    File(PathBuf),
}

impl FromStr for RhsSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random-uniform" | "random_uniform" => RhsSpec::RandomUniform,
            "random-normal" | "random_normal" => RhsSpec::RandomNormal,
            "rank-one" | "rank_one" => RhsSpec::RankOne,
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    RhsSpec::File(PathBuf::from(path))
                } else {
                    bail!("unknown rhs {other:?} (expected random-uniform, random-normal, rank-one, file:PATH)")
                }
            }
        })
    }
}

impl fmt::Display for RhsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhsSpec::RandomUniform => f.write_str("random-uniform"),
            RhsSpec::RandomNormal => f.write_str("random-normal"),
            RhsSpec::RankOne => f.write_str("rank-one"),
            RhsSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

pub fn parse_algorithm(s: &str) -> Result<GreedyAlgorithm> {
    Ok(match s {
        "pure" => GreedyAlgorithm::Pure,
        "orthogonal" => GreedyAlgorithm::Orthogonal,
        other => bail!("unknown algorithm {other:?} (expected pure or orthogonal)"),
    })
}

pub fn algorithm_name(a: GreedyAlgorithm) -> &'static str {
    match a {
        GreedyAlgorithm::Pure => "pure",
        GreedyAlgorithm::Orthogonal => "orthogonal",
    }
}

/// Fully resolved run configuration (file values overridden by flags).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: Option<ExperimentKind>,
    pub d_list: Vec<usize>,
    pub operator: OperatorSpec,
    pub rhs: RhsSpec,
    pub eps: f64,
    pub max_terms: usize,
    pub algorithm: GreedyAlgorithm,
    pub fp_tol: f64,
    pub fp_max_sweeps: usize,
    pub restarts: usize,
    pub antisym_scale: f64,
    pub seeds: Vec<u64>,
    pub oracle_tol: f64,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiment: None,
            d_list: vec![10],
            operator: OperatorSpec::DiagLinspace { lo: 1.0, hi: 2.0 },
            rhs: RhsSpec::RandomUniform,
            eps: 1e-6,
            max_terms: 500,
            algorithm: GreedyAlgorithm::Pure,
            fp_tol: 1e-8,
            fp_max_sweeps: 500,
            restarts: 3,
            antisym_scale: 0.0,
            seeds: vec![1],
            oracle_tol: 1e-4,
            out: PathBuf::from("pgd-out"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            bail!("at least one seed required");
        }
        if self.d_list.is_empty() {
            bail!("at least one dimension required");
        }
        if !(self.eps > 0.0) {
            bail!("eps must be > 0");
        }
        if self.max_terms == 0 {
            bail!("max-terms must be >= 1");
        }
        if !(self.fp_tol > 0.0 && self.fp_tol < 1.0) {
            bail!("fp-tol must lie in (0, 1)");
        }
        if self.fp_max_sweeps == 0 {
            bail!("fp-max-sweeps must be >= 1");
        }
        if self.restarts == 0 {
            bail!("restarts must be >= 1");
        }
        if !self.antisym_scale.is_finite() {
            bail!("antisym-scale must be finite");
        }
        Ok(())
    }

    /// Canonical one-line rendering; the config hash is computed from it.
    pub fn canonical_string(&self) -> String {
        format!(
            "experiment={};d_list={:?};operator={};rhs={};eps={:e};max_terms={};algorithm={};\
             fp_tol={:e};fp_max_sweeps={};restarts={};antisym_scale={:e};seeds={:?};oracle_tol={:e}",
            self.experiment.map(|e| e.to_string()).unwrap_or_else(|| "solve".into()),
            self.d_list,
            self.operator,
            self.rhs,
            self.eps,
            self.max_terms,
            algorithm_name(self.algorithm),
            self.fp_tol,
            self.fp_max_sweeps,
            self.restarts,
            self.antisym_scale,
            self.seeds,
            self.oracle_tol,
        )
    }

    pub fn hash(&self) -> u64 {
        fnv1a64(self.canonical_string().as_bytes())
    }
}

/// FNV-1a, 64-bit: stable across builds and platforms.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// TOML file counterpart of the flag set; every field optional, flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<String>,
    pub d: Option<usize>,
    pub d_list: Option<Vec<usize>>,
    pub operator: Option<String>,
    pub rhs: Option<String>,
    pub eps: Option<f64>,
    pub max_terms: Option<usize>,
    pub algorithm: Option<String>,
    pub fp_tol: Option<f64>,
    pub fp_max_sweeps: Option<usize>,
    pub restarts: Option<usize>,
    pub antisym_scale: Option<f64>,
    pub seed: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    pub oracle_tol: Option<f64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| anyhow!("config {}: {e}", path.display()))
    }

    /// Apply file values underneath an already-default config (flags are
    /// applied by the caller afterwards and therefore override these).
    pub fn apply_to(&self, cfg: &mut RunConfig) -> Result<()> {
        if let Some(e) = &self.experiment {
            cfg.experiment = Some(e.parse()?);
        }
        if let Some(d) = self.d {
            cfg.d_list = vec![d];
        }
        if let Some(list) = &self.d_list {
            cfg.d_list = list.clone();
        }
        if let Some(op) = &self.operator {
            cfg.operator = op.parse()?;
        }
        if let Some(r) = &self.rhs {
            cfg.rhs = r.parse()?;
        }
        if let Some(v) = self.eps {
            cfg.eps = v;
        }
        if let Some(v) = self.max_terms {
            cfg.max_terms = v;
        }
        if let Some(a) = &self.algorithm {
            cfg.algorithm = parse_algorithm(a)?;
        }
        if let Some(v) = self.fp_tol {
            cfg.fp_tol = v;
        }
        if let Some(v) = self.fp_max_sweeps {
            cfg.fp_max_sweeps = v;
        }
        if let Some(v) = self.restarts {
            cfg.restarts = v;
        }
        if let Some(v) = self.antisym_scale {
            cfg.antisym_scale = v;
        }
        if let Some(s) = self.seed {
            cfg.seeds = vec![s];
        }
        if let Some(s) = &self.seeds {
            cfg.seeds = s.clone();
        }
        if let Some(v) = self.oracle_tol {
            cfg.oracle_tol = v;
        }
        if let Some(p) = &self.out {
            cfg.out = p.clone();
        }
        Ok(())
    }
}

/// Helper shared by the rhs generators: a right-hand-side matrix needs no
/// validation beyond dimensions.
pub fn read_rhs_file(path: &Path, d: usize) -> Result<Mat> {
    let m = matfile::read_matrix(path)?;
    if m.rows() != d || m.cols() != d {
        return Err(ConfigError(format!(
            "rhs file {} is {}x{}, but --d is {d}",
            path.display(),
            m.rows(),
            m.cols()
        ))
        .into());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_spec_parsing() {
        assert_eq!(
            "diag-linspace:1:2".parse::<OperatorSpec>().unwrap(),
            OperatorSpec::DiagLinspace { lo: 1.0, hi: 2.0 }
        );
        assert!("diag-linspace:1".parse::<OperatorSpec>().is_err());
        assert_eq!("laplacian".parse::<OperatorSpec>().unwrap(), OperatorSpec::Laplacian);
        assert!(matches!(
            "file:/tmp/x.mat".parse::<OperatorSpec>().unwrap(),
            OperatorSpec::File(_)
        ));
        assert!("banana".parse::<OperatorSpec>().is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::default();
        let mut b = RunConfig::default();
        assert_eq!(a.hash(), b.hash());
        b.eps = 1e-5;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn file_config_merges_under_flags() {
        let text = "experiment = \"energy-trace\"\nd = 12\neps = 1e-4\nseeds = [3, 4]\n";
        let fc: FileConfig = toml::from_str(text).unwrap();
        let mut cfg = RunConfig::default();
        fc.apply_to(&mut cfg).unwrap();
        assert_eq!(cfg.experiment, Some(ExperimentKind::EnergyTrace));
        assert_eq!(cfg.d_list, vec![12]);
        assert_eq!(cfg.eps, 1e-4);
        assert_eq!(cfg.seeds, vec![3, 4]);
    }
}
