//! Persistent homology of scalar filtrations over Z_p.

mod field;
mod reduce;

use thiserror::Error;

use crate::filtration::{sublevel_set, ScalarFiltration};
use crate::mesh::MeshWithFunction;

pub use field::FieldPrime;
pub use reduce::{reduce, Reduction};

#[derive(Debug, Error, PartialEq)]
pub enum PersistenceError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("rank query needs s < t, got s = {s}, t = {t}")]
    BadInterval { s: f64, t: f64 },
    #[error("rank query needs α ≺ β componentwise, got α = {alpha:?}, β = {beta:?}")]
    NotStrictlyBelow { alpha: Vec<f64>, beta: Vec<f64> },
}

/// Persistence diagram of one homology degree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PersistenceDiagram {
    pub degree: usize,
    /// Finite points `(birth, death)` with `birth < death`, sorted.
    pub pairs: Vec<(f64, f64)>,
    /// Births of classes that never die, sorted.
    pub essential: Vec<f64>,
    /// Simplex id pairs that were born and killed at the same level.
    pub zero_length: Vec<(usize, usize)>,
}

impl PersistenceDiagram {
    /// A diagram from raw points; sorts them.
    pub fn new(degree: usize, mut pairs: Vec<(f64, f64)>, mut essential: Vec<f64>) -> Self {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        essential.sort_by(f64::total_cmp);
        PersistenceDiagram {
            degree,
            pairs,
            essential,
            zero_length: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.essential.is_empty()
    }
}

/// Diagrams of degrees `0..=max_degree`.
pub fn compute_diagrams(
    filtration: &ScalarFiltration<'_>,
    max_degree: usize,
    field: &FieldPrime,
) -> Vec<PersistenceDiagram> {
    let red = reduce(filtration, max_degree, field);
    let complex = filtration.complex();
    let mut pairs = vec![Vec::new(); max_degree + 1];
    let mut zero = vec![Vec::new(); max_degree + 1];
    let mut essential = vec![Vec::new(); max_degree + 1];
    for &(b, d) in &red.pairs {
        let q = complex.simplex(b).dim();
        let (eb, ed) = (filtration.entry(b), filtration.entry(d));
        if eb < ed {
            pairs[q].push((eb, ed));
        } else {
            zero[q].push((b, d));
        }
    }
    for &e in &red.essential {
        essential[complex.simplex(e).dim()].push(filtration.entry(e));
    }
    pairs
        .into_iter()
        .zip(essential)
        .zip(zero)
        .enumerate()
        .map(|(q, ((p, e), z))| {
            let mut d = PersistenceDiagram::new(q, p, e);
            d.zero_length = z;
            d
        })
        .collect()
}

/// Classes born at or before `s` and alive after `t`.
pub fn rank_1d(diagram: &PersistenceDiagram, s: f64, t: f64) -> Result<usize, PersistenceError> {
    if !(s < t) {
        return Err(PersistenceError::BadInterval { s, t });
    }
    let finite = diagram
        .pairs
        .iter()
        .filter(|&&(b, d)| b <= s && d > t)
        .count();
    let essential = diagram.essential.iter().filter(|&&b| b <= s).count();
    Ok(finite + essential)
}

/// Ranks of `H_q(K_α) → H_q(K_β)` for `q = 0..=max_degree`.
pub fn discrete_rank_invariants(
    mesh: &MeshWithFunction,
    alpha: &[f64],
    beta: &[f64],
    max_degree: usize,
    field: &FieldPrime,
) -> Result<Vec<usize>, PersistenceError> {
    if alpha.len() != beta.len() || alpha.iter().zip(beta).any(|(a, b)| !(a < b)) {
        return Err(PersistenceError::NotStrictlyBelow {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
        });
    }
    let complex = mesh.complex();
    let ka = sublevel_set(complex, mesh.function(), alpha);
    let kb = sublevel_set(complex, mesh.function(), beta);
    let entry = (0..complex.len())
        .map(|id| {
            if ka.contains(id) {
                0.0
            } else if kb.contains(id) {
                1.0
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let filt = ScalarFiltration::from_valid_entries(complex, entry);
    compute_diagrams(&filt, max_degree, field)
        .iter()
        .map(|d| rank_1d(d, 0.0, 1.0))
        .collect()
}

/// Rank of `H_q(K_α) → H_q(K_β)` over Z_p.
pub fn discrete_rank_invariant(
    mesh: &MeshWithFunction,
    alpha: &[f64],
    beta: &[f64],
    degree: usize,
    field: &FieldPrime,
) -> Result<usize, PersistenceError> {
    Ok(discrete_rank_invariants(mesh, alpha, beta, degree, field)?[degree])
}

#[cfg(test)]
mod tests;
