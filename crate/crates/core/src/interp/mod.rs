//! Point evaluation of interpolants of a vertex function over the carrier.
//!
//! Two interpolants are provided: the ordinary barycentric ([`evaluate_linear`])
//! and the axis-wise one ([`evaluate_axiswise`]), whose sublevel sets retract
//! onto the simplicial sublevel complexes of the vertex data. Both are exposed
//! through the [`Interpolant`] trait and looked up by name in an
//! [`InterpolantRegistry`].

mod axiswise;
mod registry;

use smallvec::SmallVec;
use thiserror::Error;

use crate::mesh::{SimplicialComplex, VertexFunction};

pub use axiswise::{build_interp_data, evaluate_axiswise, AxiswiseData, SimplexInterpData};
pub use registry::{
    AxiswiseInterpolant, BoundInterpolant, Interpolant, InterpolantRegistry, LinearInterpolant,
};

/// Weights below this are treated as zero; also the tolerance for `x == w_σ`.
pub const BARY_TOL: f64 = 1e-12;

pub type Weights = SmallVec<[f64; 4]>;

#[derive(Debug, Error, PartialEq)]
pub enum InterpError {
    #[error("simplex id {0} is not in the complex")]
    UnknownSimplex(usize),
    #[error("expected {expected} barycentric weights, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("barycentric weights {0:?} are negative or do not sum to 1")]
    BadWeights(Vec<f64>),
}

/// A point of the carrier, addressed by a simplex and barycentric weights
/// over its vertices (in the simplex's sorted vertex order).
#[derive(Clone, Debug, PartialEq)]
pub struct CarrierPoint {
    simplex: usize,
    weights: Weights,
}

impl CarrierPoint {
    pub fn new(
        complex: &SimplicialComplex,
        simplex: usize,
        weights: &[f64],
    ) -> Result<Self, InterpError> {
        if simplex >= complex.len() {
            return Err(InterpError::UnknownSimplex(simplex));
        }
        let expected = complex.simplex(simplex).vertices().len();
        if weights.len() != expected {
            return Err(InterpError::WrongArity {
                expected,
                found: weights.len(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&x| !(x >= -BARY_TOL)) || (sum - 1.0).abs() > BARY_TOL {
            return Err(InterpError::BadWeights(weights.to_vec()));
        }
        Ok(CarrierPoint {
            simplex,
            weights: weights.iter().map(|&x| x.max(0.0)).collect(),
        })
    }

    pub fn vertex(v: usize) -> Self {
        CarrierPoint {
            simplex: v,
            weights: smallvec::smallvec![1.0],
        }
    }

    pub fn barycenter(complex: &SimplicialComplex, simplex: usize) -> Self {
        let n = complex.simplex(simplex).vertices().len();
        CarrierPoint {
            simplex,
            weights: smallvec::smallvec![1.0 / n as f64; n],
        }
    }

    pub fn simplex(&self) -> usize {
        self.simplex
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Componentwise maximum of the vertex values of `simplex`.
pub fn mu(complex: &SimplicialComplex, function: &VertexFunction, simplex: usize) -> Vec<f64> {
    let mut out = vec![f64::NEG_INFINITY; function.k()];
    for &v in complex.simplex(simplex).vertices() {
        for (o, &x) in out.iter_mut().zip(function.value(v)) {
            *o = o.max(x);
        }
    }
    out
}

/// Barycentric average of the vertex values.
pub fn evaluate_linear(
    complex: &SimplicialComplex,
    function: &VertexFunction,
    point: &CarrierPoint,
) -> Vec<f64> {
    let mut out = vec![0.0; function.k()];
    linear_into(complex, function, point.simplex, &point.weights, &mut out);
    out
}

pub(crate) fn linear_into(
    complex: &SimplicialComplex,
    function: &VertexFunction,
    simplex: usize,
    weights: &[f64],
    out: &mut [f64],
) {
    out.iter_mut().for_each(|o| *o = 0.0);
    for (&v, &wt) in complex.simplex(simplex).vertices().iter().zip(weights) {
        for (o, &x) in out.iter_mut().zip(function.value(v)) {
            *o += wt * x;
        }
    }
}
