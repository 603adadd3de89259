//! One-dimensional matching distance between diagrams, and the certified
//! grid approximation of the multidimensional matching distance for `k = 2`.

mod bottleneck;
mod grid;

use rayon::prelude::*;
use thiserror::Error;

use crate::filtration::{build_scalar_filtration, scalar_reduce, FiltrationError};
use crate::mesh::MeshWithFunction;
use crate::persistence::{compute_diagrams, FieldPrime, PersistenceDiagram, PersistenceError};

pub use bottleneck::{bottleneck, diagonal_cost, matching_distance_1d, point_cost};
pub use grid::{GridSpec, GRID_CONSTANT};

/// Tolerance for the linear constraints of an admissible pair.
pub const ADMISSIBLE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("diagrams of different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("not an admissible pair: {0}")]
    NotAdmissible(String),
    #[error("tolerance must be a positive finite number, got {0}")]
    BadTolerance(f64),
    #[error("the grid sweep handles two-component functions only, got k = {0}")]
    UnsupportedK(usize),
    #[error("functions have different numbers of components ({0} and {1})")]
    ComponentMismatch(usize, usize),
    #[error("mesh {0} is not normalized to [0, 1] per component")]
    Unnormalized(char),
    #[error("no degrees requested")]
    NoDegrees,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
}

/// `(l, b)` with `l ≻ 0`, `Σ l = 1`, `Σ b = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissiblePair {
    l: Vec<f64>,
    b: Vec<f64>,
}

impl AdmissiblePair {
    pub fn new(l: Vec<f64>, b: Vec<f64>) -> Result<Self, MatchError> {
        if l.len() != b.len() || l.is_empty() {
            return Err(MatchError::NotAdmissible(format!(
                "l has {} components, b has {}",
                l.len(),
                b.len()
            )));
        }
        if l.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(MatchError::NotAdmissible("non-finite entry".into()));
        }
        if l.iter().any(|&x| x <= 0.0) {
            return Err(MatchError::NotAdmissible(format!("l = {l:?} is not positive")));
        }
        if (l.iter().sum::<f64>() - 1.0).abs() > ADMISSIBLE_TOL {
            return Err(MatchError::NotAdmissible(format!("l = {l:?} does not sum to 1")));
        }
        if b.iter().sum::<f64>().abs() > ADMISSIBLE_TOL {
            return Err(MatchError::NotAdmissible(format!("b = {b:?} does not sum to 0")));
        }
        Ok(AdmissiblePair { l, b })
    }

    /// The `k = 2` pair `l = (a, 1 − a)`, `b = (b, −b)`.
    pub fn from_ab(a: f64, b: f64) -> Result<Self, MatchError> {
        if !(a > 0.0 && a < 1.0) {
            return Err(MatchError::NotAdmissible(format!("a = {a} is outside (0, 1)")));
        }
        Self::new(vec![a, 1.0 - a], vec![b, -b])
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn min_l(&self) -> f64 {
        self.l.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Point `b + s·l` of the line.
    pub fn point(&self, s: f64) -> Vec<f64> {
        self.l.iter().zip(&self.b).map(|(l, b)| b + s * l).collect()
    }

    /// Vertex values of the reduced scalar function on `mesh`.
    pub fn reduce(&self, mesh: &MeshWithFunction) -> Result<Vec<f64>, MatchError> {
        Ok(scalar_reduce(mesh.function(), &self.l, &self.b)?)
    }
}

/// Diagrams of `g_(l,b)` on `mesh` for degrees `0..=max_degree`.
pub fn line_diagrams(
    mesh: &MeshWithFunction,
    pair: &AdmissiblePair,
    max_degree: usize,
    field: &FieldPrime,
) -> Result<Vec<PersistenceDiagram>, MatchError> {
    let g = pair.reduce(mesh)?;
    Ok(compute_diagrams(&build_scalar_filtration(mesh, &g), max_degree, field))
}

/// Rescaled distance along one line.
#[derive(Clone, Debug, PartialEq)]
pub struct LineDistance {
    /// Unscaled 1D distance per requested degree, in request order.
    pub per_degree: Vec<f64>,
    /// `min_i l_i` times the max of `per_degree`.
    pub value: f64,
    pub factor: f64,
}

/// `min_i l_i · max_q d_match(D_q(g), D_q(h))` along the line of `pair`.
pub fn rescaled_distance(
    a: &MeshWithFunction,
    b: &MeshWithFunction,
    pair: &AdmissiblePair,
    degrees: &[usize],
    field: &FieldPrime,
) -> Result<LineDistance, MatchError> {
    if a.k() != b.k() {
        return Err(MatchError::ComponentMismatch(a.k(), b.k()));
    }
    let top = *degrees.iter().max().ok_or(MatchError::NoDegrees)?;
    let da = line_diagrams(a, pair, top, field)?;
    let db = line_diagrams(b, pair, top, field)?;
    let per_degree = degrees
        .iter()
        .map(|&q| matching_distance_1d(&da[q], &db[q]))
        .collect::<Result<Vec<_>, _>>()?;
    let factor = pair.min_l();
    let worst = per_degree.iter().copied().fold(0.0, f64::max);
    Ok(LineDistance {
        per_degree,
        value: scale(factor, worst),
        factor,
    })
}

fn scale(factor: f64, d: f64) -> f64 {
    if d == f64::INFINITY {
        d
    } else {
        factor * d
    }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub epsilon: f64,
    pub degrees: Vec<usize>,
    pub prime: u32,
    /// Worker cap; `None` uses rayon's global pool.
    pub threads: Option<usize>,
    /// Accept inputs not normalized to `[0, 1]`; the result is then uncertified.
    pub allow_unnormalized: bool,
    /// Keep per-pair rows.
    pub trace: bool,
}

impl DistanceOptions {
    pub fn new(epsilon: f64) -> Self {
        DistanceOptions {
            epsilon,
            degrees: vec![0, 1],
            prime: FieldPrime::DEFAULT,
            threads: None,
            allow_unnormalized: false,
            trace: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub a: f64,
    pub b: f64,
    pub degree: usize,
    pub d1: f64,
    pub rescaled: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeDistance {
    pub degree: usize,
    pub value: f64,
    /// First pair `(a, b)` in grid order attaining `value`.
    pub argmax: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceResult {
    /// Max over degrees and pairs.
    pub value: f64,
    pub argmax: (f64, f64),
    pub epsilon: f64,
    pub grid: GridSpec,
    /// False when unnormalized inputs were accepted.
    pub certified: bool,
    pub per_degree: Vec<DegreeDistance>,
    pub trace: Vec<TraceRow>,
}

/// Max of the rescaled distance over the grid of [`GridSpec::for_tolerance`]
/// plus the two special pairs. The true distance lies in `[value, value + ε]`.
pub fn approx_matching_distance(
    a: &MeshWithFunction,
    b: &MeshWithFunction,
    options: &DistanceOptions,
) -> Result<DistanceResult, MatchError> {
    let grid = GridSpec::for_tolerance(options.epsilon)?;
    sweep(a, b, grid, options)
}

fn sweep(
    a: &MeshWithFunction,
    b: &MeshWithFunction,
    grid: GridSpec,
    options: &DistanceOptions,
) -> Result<DistanceResult, MatchError> {
    for (mesh, name) in [(a, 'A'), (b, 'B')] {
        if mesh.k() != 2 {
            return Err(MatchError::UnsupportedK(mesh.k()));
        }
        if !options.allow_unnormalized && !mesh.function().is_normalized() {
            return Err(MatchError::Unnormalized(name));
        }
    }
    if options.degrees.is_empty() {
        return Err(MatchError::NoDegrees);
    }
    let field = FieldPrime::new(options.prime)?;
    let pairs = grid.pairs();

    let eval = || -> Result<Vec<LineDistance>, MatchError> {
        pairs
            .par_iter()
            .map(|&(pa, pb)| {
                let pair = AdmissiblePair::from_ab(pa, pb)?;
                rescaled_distance(a, b, &pair, &options.degrees, &field)
            })
            .collect()
    };
    let lines = match options.threads {
        None => eval()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| MatchError::ThreadPool(e.to_string()))?
            .install(eval)?,
    };

    let mut per_degree: Vec<DegreeDistance> = options
        .degrees
        .iter()
        .map(|&degree| DegreeDistance {
            degree,
            value: f64::NEG_INFINITY,
            argmax: pairs[0],
        })
        .collect();
    let mut trace = Vec::new();
    for (&(pa, pb), line) in pairs.iter().zip(&lines) {
        for (slot, &d1) in per_degree.iter_mut().zip(&line.per_degree) {
            let rescaled = scale(line.factor, d1);
            if rescaled > slot.value {
                slot.value = rescaled;
                slot.argmax = (pa, pb);
            }
            if options.trace {
                trace.push(TraceRow {
                    a: pa,
                    b: pb,
                    degree: slot.degree,
                    d1,
                    rescaled,
                });
            }
        }
    }
    // earliest degree wins ties, and within it the earliest pair
    let best = per_degree
        .iter()
        .fold(None::<&DegreeDistance>, |acc, d| match acc {
            Some(b) if b.value >= d.value => Some(b),
            _ => Some(d),
        })
        .expect("at least one degree");
    Ok(DistanceResult {
        value: best.value,
        argmax: best.argmax,
        epsilon: options.epsilon,
        grid,
        certified: !options.allow_unnormalized
            || (a.function().is_normalized() && b.function().is_normalized()),
        per_degree,
        trace,
    })
}
