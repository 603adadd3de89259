//! Simplicial complexes carrying vector-valued vertex functions.
//!
//! Meshes are read from and written to the VOFF text format (see [`voff`]),
//! and can be barycentrically subdivided with any registered
//! [`Interpolant`](crate::interp::Interpolant) supplying the values at the new
//! vertices.

mod complex;
mod function;
mod subdivide;
pub mod voff;

use std::sync::Arc;

use thiserror::Error;

pub use complex::{Simplex, SimplicialComplex, VertexId};
pub use function::{normalize, quantize, VertexFunction, DEFAULT_PRECISION};
pub use subdivide::{barycentric_subdivide, barycentric_subdivide_times};
pub use voff::{load_voff, parse_voff, save_voff, write_voff};

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid mesh: {0}")]
    Validation(String),
    #[error("line {line}: expected {expected} function values, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("component {0} is constant; it cannot be rescaled onto [0, 1]")]
    ConstantComponent(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A complex together with a function on its vertices.
///
/// Immutable once built. The complex is reference-counted, so meshes that
/// differ only in their function share it.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshWithFunction {
    complex: Arc<SimplicialComplex>,
    function: VertexFunction,
}

impl MeshWithFunction {
    pub fn new(complex: SimplicialComplex, function: VertexFunction) -> Result<Self, MeshError> {
        Self::shared(Arc::new(complex), function)
    }

    pub fn shared(complex: Arc<SimplicialComplex>, function: VertexFunction) -> Result<Self, MeshError> {
        if complex.num_vertices() != function.num_vertices() {
            return Err(MeshError::Validation(format!(
                "function defined on {} vertices, complex has {}",
                function.num_vertices(),
                complex.num_vertices()
            )));
        }
        Ok(MeshWithFunction { complex, function })
    }

    /// Convenience constructor from top cells and per-vertex rows, without embedding.
    pub fn from_cells(values: &[Vec<f64>], cells: &[Vec<VertexId>]) -> Result<Self, MeshError> {
        let function = VertexFunction::from_rows(values, DEFAULT_PRECISION)?;
        let complex = SimplicialComplex::from_cells(values.len(), Vec::new(), cells)?;
        Self::new(complex, function)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn function(&self) -> &VertexFunction {
        &self.function
    }

    pub fn k(&self) -> usize {
        self.function.k()
    }

    pub fn shared_complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn with_function(&self, function: VertexFunction) -> Result<Self, MeshError> {
        Self::shared(self.complex.clone(), function)
    }

    pub fn normalized(&self) -> Result<Self, MeshError> {
        self.with_function(normalize(&self.function)?)
    }

    /// The same complex with only component `j` of the function.
    pub fn component(&self, j: usize) -> Self {
        MeshWithFunction {
            complex: self.complex.clone(),
            function: self.function.select_component(j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tetrahedron_boundary as tetrahedron;

    #[test]
    fn tetrahedron_counts() {
        let m = tetrahedron();
        let c = m.complex();
        assert_eq!(c.count_of_dim(0), 4);
        assert_eq!(c.count_of_dim(1), 6);
        assert_eq!(c.count_of_dim(2), 4);
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.maximal_simplices().len(), 4);
    }

    #[test]
    fn canonical_ids_put_vertices_first() {
        let m = tetrahedron();
        for v in 0..4 {
            assert_eq!(m.complex().simplex(v).vertices(), &[v]);
        }
        let e = m.complex().id_of_vertices(&[1, 3]).unwrap();
        let facets = m.complex().facets(e);
        assert_eq!(facets, &[3, 1]);
    }

    #[test]
    fn dangling_vertex_rejected() {
        let err = SimplicialComplex::from_cells(3, vec![], &[vec![0, 1, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::Validation(_)));
    }

    #[test]
    fn duplicate_cell_rejected() {
        let err =
            SimplicialComplex::from_cells(3, vec![], &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap_err();
        assert!(matches!(err, MeshError::Validation(_)));
    }

    #[test]
    fn normalize_rescales_each_component() {
        let f = VertexFunction::from_rows(&[vec![2.0], vec![4.0], vec![6.0]], 6).unwrap();
        let n = normalize(&f).unwrap();
        assert_eq!(n.values(), &[0.0, 0.5, 1.0]);
        assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn normalize_rejects_constant_component() {
        let f = VertexFunction::from_rows(&[vec![1.0, 5.0], vec![2.0, 5.0], vec![3.0, 5.0]], 6)
            .unwrap();
        assert!(matches!(normalize(&f), Err(MeshError::ConstantComponent(1))));
    }

    #[test]
    fn values_are_quantized() {
        let f = VertexFunction::new(1, vec![1.0 / 3.0, -1e-9], 6).unwrap();
        assert_eq!(f.values(), &[0.333333, 0.0]);
        assert!(f.values()[1].is_sign_positive());
    }
}
