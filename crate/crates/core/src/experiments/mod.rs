//! Random Fourier datasets and interpolation error experiments.
//!
//! A [`Dataset`] draws random smooth functions; each [`RandomFunction`] can be
//! sampled on a mesh of level `N` and compared against the axis-wise
//! interpolation of those samples. [`run_experiment`] aggregates the sup
//! errors over many draws.

mod aliasing;
mod circle;
pub mod fourier;
mod measure;
mod piecewise;
mod torus;

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use rand::RngCore;
use rayon::prelude::*;
use thiserror::Error;

use crate::matchdist::MatchError;
use crate::mesh::{MeshError, MeshWithFunction};

pub use aliasing::{run_aliasing_protocol, AliasingRow, AliasingTable, ComponentRow};
pub use circle::{circle_function, sample_circle, CircleDataset, CircleFunction};
pub use measure::{parse_off, principal_measure};
pub use torus::{sample_torus, torus_function, TorusDataset, TorusFunction};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{dataset}: level N = {n} is not supported (needs {min} <= N <= {max})")]
    BadLevel {
        dataset: &'static str,
        n: u32,
        min: u32,
        max: u32,
    },
    #[error("unknown dataset {0:?}")]
    UnknownDataset(String),
    #[error("at least one sample is required")]
    NoSamples,
    #[error("mesh does not come from sampling at level {0}")]
    MeshMismatch(u32),
    #[error("{0}")]
    Degenerate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How the second component of the circle function picks its cosine
/// coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientMode {
    /// Both components share the cosine coefficients of the first.
    #[default]
    Literal,
    /// Each component has its own cosine coefficients.
    Independent,
}

/// Generator for draw `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

fn splitmix64(x: u64) -> u64 {
    SplitMix64::seed_from_u64(x).next_u64()
}

/// Stop refining once two successive estimates differ by less than this.
pub const SUP_TOLERANCE: f64 = 1e-4;
const MAX_DOUBLINGS: u32 = 4;

/// A random function that can be sampled on the meshes of its dataset.
pub trait RandomFunction: Send + Sync {
    /// Normalized value at a parameter point.
    fn eval(&self, param: &[f64]) -> [f64; 2];

    /// Mesh of level `n` carrying the (quantized) samples.
    fn sample(&self, n: u32) -> Result<MeshWithFunction, ExperimentError>;

    /// Sup of `‖φ⌐ − f‖_∞` estimated on the lattice of `resolution` steps per
    /// edge (even), and on its half-resolution sublattice. Returns
    /// `(coarse, fine)`. `mesh` must come from `self.sample(n)`.
    fn sup_errors(
        &self,
        mesh: &MeshWithFunction,
        n: u32,
        resolution: usize,
    ) -> Result<(f64, f64), ExperimentError>;
}

/// Refines from `start` steps per edge, doubling until two successive
/// estimates differ by less than [`SUP_TOLERANCE`].
pub fn sup_error(
    f: &dyn RandomFunction,
    mesh: &MeshWithFunction,
    n: u32,
    start: usize,
) -> Result<f64, ExperimentError> {
    let mut r = 2 * start;
    for _ in 0..MAX_DOUBLINGS {
        let (coarse, fine) = f.sup_errors(mesh, n, r)?;
        if (fine - coarse).abs() < SUP_TOLERANCE {
            return Ok(fine);
        }
        r *= 2;
    }
    Ok(f.sup_errors(mesh, n, r)?.1)
}

/// A family of random functions together with its meshes.
pub trait Dataset: Send + Sync {
    fn name(&self) -> &'static str;
    fn min_level(&self) -> u32;
    fn max_level(&self) -> u32 {
        9
    }
    /// Level whose mesh counts as the full model for `percent_kept`.
    fn reference_level(&self) -> u32 {
        10
    }
    /// Lattice steps per edge for the first error estimate.
    fn start_resolution(&self) -> usize;
    /// Number of simplices of the level-`n` mesh.
    fn simplex_count(&self, n: u32) -> usize;
    fn draw(
        &self,
        rng: &mut Xoshiro256PlusPlus,
        mode: CoefficientMode,
    ) -> Result<Box<dyn RandomFunction>, ExperimentError>;

    fn check_level(&self, n: u32) -> Result<(), ExperimentError> {
        if n < self.min_level() || n > self.max_level() {
            return Err(ExperimentError::BadLevel {
                dataset: self.name(),
                n,
                min: self.min_level(),
                max: self.max_level(),
            });
        }
        Ok(())
    }
}

/// Datasets by name.
pub struct DatasetRegistry {
    entries: Vec<Box<dyn Dataset>>,
}

impl DatasetRegistry {
    pub fn builtin() -> Self {
        DatasetRegistry {
            entries: vec![Box::new(CircleDataset), Box::new(TorusDataset)],
        }
    }

    pub fn register(&mut self, dataset: Box<dyn Dataset>) {
        self.entries.retain(|d| d.name() != dataset.name());
        self.entries.push(dataset);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Dataset, ExperimentError> {
        self.entries
            .iter()
            .find(|d| d.name() == name)
            .map(|d| d.as_ref())
            .ok_or_else(|| ExperimentError::UnknownDataset(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|d| d.name())
    }
}

impl Default for DatasetRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub samples: usize,
    pub levels: Vec<u32>,
    pub seed: u64,
    pub mode: CoefficientMode,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: u32,
    pub percent_kept: f64,
    pub samples: usize,
    pub mu: f64,
    pub sigma: f64,
    pub mu_plus_sigma: f64,
    /// Share of draws whose error is at most `mu + sigma`.
    pub frac_within_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub dataset: &'static str,
    pub rows: Vec<ReportRow>,
    /// `errors[i][s]`: sup error of draw `s` at `rows[i].n`.
    pub errors: Vec<Vec<f64>>,
}

impl ExperimentReport {
    pub const CSV_HEADER: &'static str = "N,percent_kept,samples,mu,sigma,mu_plus_sigma,frac_within_bound";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:.4},{},{:.6},{:.6},{:.6},{:.4}\n",
                r.n, r.percent_kept, r.samples, r.mu, r.sigma, r.mu_plus_sigma, r.frac_within_bound
            ));
        }
        s
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<(), ExperimentError> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    pub fn row(&self, n: u32) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Draws `config.samples` functions and records, for every level, the
/// distribution of the sup error of the axis-wise interpolation.
pub fn run_experiment(
    dataset: &dyn Dataset,
    config: &ExperimentConfig,
) -> Result<ExperimentReport, ExperimentError> {
    if config.samples == 0 {
        return Err(ExperimentError::NoSamples);
    }
    for &n in &config.levels {
        dataset.check_level(n)?;
    }
    let one = |s: usize| -> Result<Vec<f64>, ExperimentError> {
        let mut rng = sample_rng(config.seed, s as u64);
        let f = dataset.draw(&mut rng, config.mode)?;
        config
            .levels
            .iter()
            .map(|&n| {
                let mesh = f.sample(n)?;
                sup_error(f.as_ref(), &mesh, n, dataset.start_resolution())
            })
            .collect()
    };
    let run = || (0..config.samples).into_par_iter().map(one).collect::<Result<Vec<_>, _>>();
    let per_sample = match config.threads {
        None => run()?,
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ExperimentError::Degenerate(e.to_string()))?
            .install(run)?,
    };

    let top = dataset.simplex_count(dataset.reference_level()) as f64;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (i, &n) in config.levels.iter().enumerate() {
        let e: Vec<f64> = per_sample.iter().map(|row| row[i]).collect();
        let (mu, sigma) = mean_and_std(&e);
        let within = e.iter().filter(|&&x| x <= mu + sigma).count();
        rows.push(ReportRow {
            n,
            percent_kept: dataset.simplex_count(n) as f64 / top * 100.0,
            samples: e.len(),
            mu,
            sigma,
            mu_plus_sigma: mu + sigma,
            frac_within_bound: within as f64 / e.len() as f64,
        });
        errors.push(e);
    }
    Ok(ExperimentReport {
        dataset: dataset.name(),
        rows,
        errors,
    })
}

/// Mean and population standard deviation.
pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn run_circle_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    run_experiment(&CircleDataset, config)
}

pub fn run_torus_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    run_experiment(&TorusDataset, config)
}
