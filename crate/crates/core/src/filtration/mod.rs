//! Sublevel complexes, scalar reductions and the critical cone set.

mod cones;
mod scalar;

use thiserror::Error;

use crate::mesh::{MeshWithFunction, SimplicialComplex, VertexFunction};

pub use cones::{cone_set, is_regular_neighborhood, lambda_set, representative, Cone, ConeSet};
pub use scalar::{build_scalar_filtration, ScalarFiltration};

#[derive(Debug, Error, PartialEq)]
pub enum FiltrationError {
    #[error("direction component l[{index}] = {value} is not positive")]
    NonPositiveDirection { index: usize, value: f64 },
    #[error("expected vectors of length {expected}, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("simplex {simplex} enters before its face {face}")]
    NotAFiltration { simplex: usize, face: usize },
}

/// A set of simplex ids of one complex, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplexSet {
    len: usize,
    words: Vec<u64>,
}

impl SimplexSet {
    pub fn empty(len: usize) -> Self {
        SimplexSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for id in 0..len {
            s.insert(id);
        }
        s
    }

    /// Size of the ambient complex.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, id: usize) {
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn contains(&self, id: usize) -> bool {
        self.words[id / 64] >> (id % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&id| self.contains(id))
    }
}

impl std::fmt::Debug for SimplexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The simplicial sublevel complex `K_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SublevelComplex {
    level: Vec<f64>,
    members: SimplexSet,
}

impl SublevelComplex {
    pub fn level(&self) -> &[f64] {
        &self.level
    }

    pub fn set(&self) -> &SimplexSet {
        &self.members
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.contains(id)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub(crate) fn dominated(value: &[f64], alpha: &[f64]) -> bool {
    value.iter().zip(alpha).all(|(x, a)| x <= a)
}

/// Simplices all of whose vertices satisfy `φ(v) ⪯ α`.
pub fn sublevel(mesh: &MeshWithFunction, alpha: &[f64]) -> SublevelComplex {
    SublevelComplex {
        level: alpha.to_vec(),
        members: sublevel_set(mesh.complex(), mesh.function(), alpha),
    }
}

pub(crate) fn sublevel_set(
    complex: &SimplicialComplex,
    function: &VertexFunction,
    alpha: &[f64],
) -> SimplexSet {
    let mut set = SimplexSet::empty(complex.len());
    for v in 0..complex.num_vertices() {
        if dominated(function.value(v), alpha) {
            set.insert(v);
        }
    }
    for id in complex.num_vertices()..complex.len() {
        if complex.simplex(id).vertices().iter().all(|&v| set.contains(v)) {
            set.insert(id);
        }
    }
    set
}

/// Vertex values of `g(x) = max_i (φ_i(x) − b_i) / l_i`.
pub fn scalar_reduce(
    function: &VertexFunction,
    l: &[f64],
    b: &[f64],
) -> Result<Vec<f64>, FiltrationError> {
    let k = function.k();
    for v in [l, b] {
        if v.len() != k {
            return Err(FiltrationError::Arity {
                expected: k,
                found: v.len(),
            });
        }
    }
    if let Some((index, &value)) = l.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
        return Err(FiltrationError::NonPositiveDirection { index, value });
    }
    Ok((0..function.num_vertices())
        .map(|v| {
            function
                .value(v)
                .iter()
                .zip(l.iter().zip(b))
                .map(|(x, (li, bi))| (x - bi) / li)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tetrahedron_boundary;

    #[test]
    fn sublevel_examples() {
        let m = tetrahedron_boundary();
        let k = sublevel(&m, &[0.7, 0.6]);
        let e02 = m.complex().id_of_vertices(&[0, 2]).unwrap();
        assert_eq!(k.members().collect::<Vec<_>>(), vec![0, 2, e02]);
        assert_eq!(sublevel(&m, &[1.0, 1.0]).len(), m.complex().len());
        assert!(sublevel(&m, &[-0.1, -0.1]).is_empty());
    }

    #[test]
    fn scalar_reduce_examples() {
        let f = VertexFunction::from_rows(&[vec![0.3, 0.8], vec![0.2, -0.2]], 6).unwrap();
        let g = scalar_reduce(&f, &[0.5, 0.5], &[0.2, -0.2]).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-15);
        assert_eq!(g[1], 0.0);

        let f1 = VertexFunction::from_rows(&[vec![0.25], vec![0.75]], 6).unwrap();
        assert_eq!(scalar_reduce(&f1, &[1.0], &[0.0]).unwrap(), vec![0.25, 0.75]);

        assert!(matches!(
            scalar_reduce(&f, &[1.0, 0.0], &[0.0, 0.0]),
            Err(FiltrationError::NonPositiveDirection { index: 1, .. })
        ));
        assert!(matches!(
            scalar_reduce(&f, &[1.0], &[0.0]),
            Err(FiltrationError::Arity { .. })
        ));
    }

    #[test]
    fn bitset_operations() {
        let mut a = SimplexSet::empty(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.count(), 3);
        assert!(a.contains(129) && !a.contains(128));
        assert!(a.is_subset(&SimplexSet::full(130)));
        assert!(!SimplexSet::full(130).is_subset(&a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
    }
}
