use std::f64::consts::TAU;

use rand_xoshiro::Xoshiro256PlusPlus;

use super::fourier::FourierSeries;
use super::piecewise::EdgeEval;
use super::{sample_rng, CoefficientMode, Dataset, ExperimentError, RandomFunction};
use crate::corpus::cycle_cells;
use crate::interp::build_interp_data;
use crate::mesh::{MeshError, MeshWithFunction, SimplicialComplex, VertexFunction, DEFAULT_PRECISION};

/// A random trigonometric curve `S¹ → R²`, rescaled so that each component
/// spans `[0, 1]` over the whole circle.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleFunction {
    components: [FourierSeries; 2],
    lo: [f64; 2],
    hi: [f64; 2],
}

pub(crate) fn span(components: &[FourierSeries; 2]) -> Result<([f64; 2], [f64; 2]), MeshError> {
    let mut lo = [0.0; 2];
    let mut hi = [0.0; 2];
    for (j, c) in components.iter().enumerate() {
        (lo[j], hi[j]) = c.extrema();
        if !(hi[j] - lo[j] > 1e-12) {
            return Err(MeshError::ConstantComponent(j));
        }
    }
    Ok((lo, hi))
}

impl CircleFunction {
    pub fn new(first: FourierSeries, second: FourierSeries) -> Result<Self, ExperimentError> {
        let components = [first, second];
        let (lo, hi) = span(&components)?;
        Ok(CircleFunction { components, lo, hi })
    }

    /// Draws both components; under [`CoefficientMode::Literal`] the second
    /// reuses the cosine coefficients of the first. The stream consumed is
    /// the same in both modes.
    pub fn random(rng: &mut Xoshiro256PlusPlus, mode: CoefficientMode) -> Result<Self, ExperimentError> {
        let first = FourierSeries::random(rng);
        let mut second = FourierSeries::random(rng);
        if mode == CoefficientMode::Literal {
            second.cos = first.cos;
        }
        Self::new(first, second)
    }

    pub fn components(&self) -> &[FourierSeries; 2] {
        &self.components
    }

    /// Unnormalized value.
    pub fn raw(&self, t: f64) -> [f64; 2] {
        [self.components[0].eval(t), self.components[1].eval(t)]
    }

    pub fn at(&self, t: f64) -> [f64; 2] {
        let r = self.raw(t);
        [0, 1].map(|j| (r[j] - self.lo[j]) / (self.hi[j] - self.lo[j]))
    }

    fn lattice(&self, count: usize) -> [Vec<f64>; 2] {
        [0, 1].map(|j| {
            let scale = self.hi[j] - self.lo[j];
            self.components[j]
                .eval_lattice(count)
                .into_iter()
                .map(|x| (x - self.lo[j]) / scale)
                .collect()
        })
    }
}

/// Circle function of draw 0 for `seed`.
pub fn circle_function(seed: u64, mode: CoefficientMode) -> Result<CircleFunction, ExperimentError> {
    CircleFunction::random(&mut sample_rng(seed, 0), mode)
}

/// Cycle on `2^n` vertices at `t_i = 2πi/2^n`, carrying `f(t_i)`.
pub fn sample_circle(f: &CircleFunction, n: u32) -> Result<MeshWithFunction, ExperimentError> {
    CircleDataset.check_level(n)?;
    let count = 1usize << n;
    let params: Vec<f64> = (0..count).map(|i| TAU * i as f64 / count as f64).collect();
    let coords = params.iter().map(|t| vec![t.cos(), t.sin()]).collect();
    let rows: Vec<Vec<f64>> = params.iter().map(|&t| f.at(t).to_vec()).collect();
    let complex = SimplicialComplex::from_cells(count, coords, &cycle_cells(count))?;
    let function = VertexFunction::from_rows(&rows, DEFAULT_PRECISION)?;
    Ok(MeshWithFunction::new(complex, function)?)
}

impl RandomFunction for CircleFunction {
    fn eval(&self, param: &[f64]) -> [f64; 2] {
        self.at(param[0])
    }

    fn sample(&self, n: u32) -> Result<MeshWithFunction, ExperimentError> {
        sample_circle(self, n)
    }

    fn sup_errors(
        &self,
        mesh: &MeshWithFunction,
        n: u32,
        resolution: usize,
    ) -> Result<(f64, f64), ExperimentError> {
        let nv = 1usize << n;
        let complex = mesh.complex();
        if complex.num_vertices() != nv || complex.dim() != 1 || mesh.k() != 2 {
            return Err(ExperimentError::MeshMismatch(n));
        }
        let r = resolution.max(2) & !1;
        let total = nv * r;
        let f = self.lattice(total);
        let data = build_interp_data(mesh);
        let (mut coarse, mut fine) = (0f64, 0f64);
        for i in 0..nv {
            let (a, b) = (i, (i + 1) % nv);
            let wraps = b < a;
            let id = if wraps {
                complex.id_of_vertices(&[b, a])
            } else {
                complex.id_of_vertices(&[a, b])
            }
            .ok_or(ExperimentError::MeshMismatch(n))?;
            let edge = EdgeEval::new(mesh, &data, id);
            for k in 0..=r {
                let lambda = k as f64 / r as f64;
                let s = if wraps { 1.0 - lambda } else { lambda };
                let v = edge.eval(s);
                let m = (r * i + k) % total;
                let e = (v[0] - f[0][m]).abs().max((v[1] - f[1][m]).abs());
                fine = fine.max(e);
                if k % 2 == 0 {
                    coarse = coarse.max(e);
                }
            }
        }
        Ok((coarse, fine))
    }
}

/// Random curves on the circle, sampled on cycles of `2^N` vertices.
pub struct CircleDataset;

impl Dataset for CircleDataset {
    fn name(&self) -> &'static str {
        "circle"
    }

    fn min_level(&self) -> u32 {
        2
    }

    fn start_resolution(&self) -> usize {
        64
    }

    fn simplex_count(&self, n: u32) -> usize {
        2 << n
    }

    fn draw(
        &self,
        rng: &mut Xoshiro256PlusPlus,
        mode: CoefficientMode,
    ) -> Result<Box<dyn RandomFunction>, ExperimentError> {
        Ok(Box::new(CircleFunction::random(rng, mode)?))
    }
}
