use std::collections::BTreeMap;

use super::{build_interp_data, linear_into, AxiswiseData, CarrierPoint, InterpError};
use crate::mesh::MeshWithFunction;

/// An interpolation scheme extending vertex values over the carrier.
pub trait Interpolant: Send + Sync {
    fn name(&self) -> &'static str;

    /// Precomputes whatever the scheme needs for `mesh`.
    fn bind<'m>(&self, mesh: &'m MeshWithFunction) -> Box<dyn BoundInterpolant + 'm>;
}

/// An interpolant ready to evaluate points of one mesh.
pub trait BoundInterpolant: Send + Sync {
    /// Evaluates at raw barycentric `weights` over `simplex`, writing k values.
    fn evaluate_into(&self, simplex: usize, weights: &[f64], out: &mut [f64]);

    fn evaluate(&self, point: &CarrierPoint) -> Result<Vec<f64>, InterpError>;
}

pub struct LinearInterpolant;

struct BoundLinear<'m> {
    mesh: &'m MeshWithFunction,
}

impl Interpolant for LinearInterpolant {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn bind<'m>(&self, mesh: &'m MeshWithFunction) -> Box<dyn BoundInterpolant + 'm> {
        Box::new(BoundLinear { mesh })
    }
}

impl BoundInterpolant for BoundLinear<'_> {
    fn evaluate_into(&self, simplex: usize, weights: &[f64], out: &mut [f64]) {
        linear_into(self.mesh.complex(), self.mesh.function(), simplex, weights, out);
    }

    fn evaluate(&self, point: &CarrierPoint) -> Result<Vec<f64>, InterpError> {
        let mut out = vec![0.0; self.mesh.k()];
        self.evaluate_into(point.simplex(), point.weights(), &mut out);
        Ok(out)
    }
}

pub struct AxiswiseInterpolant;

struct BoundAxiswise<'m> {
    mesh: &'m MeshWithFunction,
    data: AxiswiseData,
}

impl Interpolant for AxiswiseInterpolant {
    fn name(&self) -> &'static str {
        "axiswise"
    }

    fn bind<'m>(&self, mesh: &'m MeshWithFunction) -> Box<dyn BoundInterpolant + 'm> {
        Box::new(BoundAxiswise {
            mesh,
            data: build_interp_data(mesh),
        })
    }
}

impl BoundInterpolant for BoundAxiswise<'_> {
    fn evaluate_into(&self, simplex: usize, weights: &[f64], out: &mut [f64]) {
        self.data
            .evaluate_into(self.mesh.complex(), self.mesh.function(), simplex, weights, out);
    }

    fn evaluate(&self, point: &CarrierPoint) -> Result<Vec<f64>, InterpError> {
        let mut out = vec![0.0; self.mesh.k()];
        self.evaluate_into(point.simplex(), point.weights(), &mut out);
        Ok(out)
    }
}

/// Interpolants addressable by name.
pub struct InterpolantRegistry {
    entries: BTreeMap<&'static str, Box<dyn Interpolant>>,
}

impl InterpolantRegistry {
    pub fn empty() -> Self {
        InterpolantRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Registry holding `linear` and `axiswise`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(LinearInterpolant));
        r.register(Box::new(AxiswiseInterpolant));
        r
    }

    /// Adds an interpolant, replacing any previous one with the same name.
    pub fn register(&mut self, interpolant: Box<dyn Interpolant>) {
        self.entries.insert(interpolant.name(), interpolant);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Interpolant> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for InterpolantRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
