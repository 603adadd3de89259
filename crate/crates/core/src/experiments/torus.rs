use std::f64::consts::TAU;
use std::sync::{Arc, OnceLock};

use rand_xoshiro::Xoshiro256PlusPlus;

use super::fourier::FourierSeries;
use super::piecewise::{for_each_lattice_column, TriangleEval};
use super::{sample_rng, CoefficientMode, Dataset, ExperimentError, RandomFunction};
use crate::corpus::torus_cells;
use crate::interp::build_interp_data;
use crate::mesh::{MeshError, MeshWithFunction, SimplicialComplex, VertexFunction, DEFAULT_PRECISION};

/// A random map `T² → R²` whose components are products
/// `A_c(t) · (2 + B_c(u)/2)` of trigonometric polynomials, rescaled so that
/// each component spans `[0, 1]` over the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction {
    along_t: [FourierSeries; 2],
    along_u: [FourierSeries; 2],
    lo: [f64; 2],
    hi: [f64; 2],
}

impl TorusFunction {
    pub fn new(along_t: [FourierSeries; 2], along_u: [FourierSeries; 2]) -> Result<Self, ExperimentError> {
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        for c in 0..2 {
            // extremes of a product of independent factors sit at corners
            let (amin, amax) = along_t[c].extrema();
            let (bmin, bmax) = along_u[c].extrema();
            let (cmin, cmax) = (2.0 + bmin / 2.0, 2.0 + bmax / 2.0);
            let corners = [amin * cmin, amin * cmax, amax * cmin, amax * cmax];
            lo[c] = corners.iter().copied().fold(f64::INFINITY, f64::min);
            hi[c] = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !(hi[c] - lo[c] > 1e-12) {
                return Err(MeshError::ConstantComponent(c).into());
            }
        }
        Ok(TorusFunction {
            along_t,
            along_u,
            lo,
            hi,
        })
    }

    /// Draws, per component, the `t` coefficients then the `u` coefficients.
    /// The coefficient mode does not apply: components are always independent.
    pub fn random(rng: &mut Xoshiro256PlusPlus) -> Result<Self, ExperimentError> {
        let a0 = FourierSeries::random(rng);
        let b0 = FourierSeries::random(rng);
        let a1 = FourierSeries::random(rng);
        let b1 = FourierSeries::random(rng);
        Self::new([a0, a1], [b0, b1])
    }

    pub fn raw(&self, t: f64, u: f64) -> [f64; 2] {
        [0, 1].map(|c| self.along_t[c].eval(t) * (2.0 + self.along_u[c].eval(u) / 2.0))
    }

    pub fn at(&self, t: f64, u: f64) -> [f64; 2] {
        let r = self.raw(t, u);
        [0, 1].map(|c| (r[c] - self.lo[c]) / (self.hi[c] - self.lo[c]))
    }
}

/// Torus function of draw 0 for `seed`.
pub fn torus_function(seed: u64) -> Result<TorusFunction, ExperimentError> {
    TorusFunction::random(&mut sample_rng(seed, 0))
}

fn grid_size(n: u32) -> (usize, usize) {
    (1usize << n, 1usize << (n - 2))
}

/// The level-`n` complex, built once per process.
fn torus_complex(n: u32) -> Result<Arc<SimplicialComplex>, ExperimentError> {
    static CACHE: [OnceLock<Arc<SimplicialComplex>>; 10] = [const { OnceLock::new() }; 10];
    let slot = &CACHE[n as usize];
    if let Some(c) = slot.get() {
        return Ok(c.clone());
    }
    let (nt, nu) = grid_size(n);
    let mut coords = Vec::with_capacity(nt * nu);
    for i in 0..nt {
        let t = TAU * i as f64 / nt as f64;
        for j in 0..nu {
            let u = TAU * j as f64 / nu as f64;
            // t winds around the tube, u around the axis
            let ring = 2.0 + t.cos() / 2.0;
            coords.push(vec![ring * u.cos(), ring * u.sin(), t.sin() / 2.0]);
        }
    }
    let complex = SimplicialComplex::from_cells(nt * nu, coords, &torus_cells(nt, nu))?;
    Ok(slot.get_or_init(|| Arc::new(complex)).clone())
}

/// Triangulated `2^n × 2^(n−2)` grid on the torus; vertex `(i, j)` sits at
/// `(t, u) = (2πi/2^n, 2πj/2^(n−2))` and has id `i·2^(n−2) + j`.
pub fn sample_torus(f: &TorusFunction, n: u32) -> Result<MeshWithFunction, ExperimentError> {
    TorusDataset.check_level(n)?;
    let (nt, nu) = grid_size(n);
    let mut rows = Vec::with_capacity(nt * nu);
    for i in 0..nt {
        let t = TAU * i as f64 / nt as f64;
        for j in 0..nu {
            let u = TAU * j as f64 / nu as f64;
            rows.push(f.at(t, u).to_vec());
        }
    }
    let function = VertexFunction::from_rows(&rows, DEFAULT_PRECISION)?;
    Ok(MeshWithFunction::shared(torus_complex(n)?, function)?)
}

impl RandomFunction for TorusFunction {
    fn eval(&self, param: &[f64]) -> [f64; 2] {
        self.at(param[0], param[1])
    }

    fn sample(&self, n: u32) -> Result<MeshWithFunction, ExperimentError> {
        sample_torus(self, n)
    }

    /// Scans the barycentric lattice of every triangle. With two components
    /// `μ` is always attained by at most two vertices, so `w` is a vertex or
    /// an edge midpoint; every affine piece then has lattice corners and is
    /// walked directly.
    fn sup_errors(
        &self,
        mesh: &MeshWithFunction,
        n: u32,
        resolution: usize,
    ) -> Result<(f64, f64), ExperimentError> {
        if n < 4 {
            return Err(ExperimentError::MeshMismatch(n));
        }
        let (nt, nu) = grid_size(n);
        let complex = mesh.complex();
        if complex.num_vertices() != nt * nu || complex.dim() != 2 || mesh.k() != 2 {
            return Err(ExperimentError::MeshMismatch(n));
        }
        let r = resolution.max(2) & !1;
        let (mt, mu) = (nt * r, nu * r);
        // normalized f_c = g_c[t] · h_c[u] − shift_c, tables padded by one
        // period-wrapping cell so that columns never wrap
        let g = [0, 1].map(|c| {
            let scale = 1.0 / (self.hi[c] - self.lo[c]);
            let mut v: Vec<f64> = self.along_t[c].eval_lattice(mt).into_iter().map(|a| a * scale).collect();
            v.extend_from_within(..=r);
            v
        });
        let h = [0, 1].map(|c| {
            let mut v: Vec<f64> = self.along_u[c]
                .eval_lattice(mu)
                .into_iter()
                .map(|b| 2.0 + b / 2.0)
                .collect();
            v.extend_from_within(..=r);
            v
        });
        let shift = [0, 1].map(|c| self.lo[c] / (self.hi[c] - self.lo[c]));
        let data = build_interp_data(mesh);
        let id = |i: usize, j: usize| (i % nt) * nu + (j % nu);
        let inv_r = 1.0 / r as f64;

        let (mut coarse, mut fine) = (0f64, 0f64);
        // error at lattice points (k1, k2..=k2 + len) of a cell, where φ⌐ is
        // base + slope·m at offset m
        let mut scratch = vec![0.0; r + 1];
        let mut column = |ti: usize, uj: usize, k1: usize, k2: usize, len: usize, base: [f64; 2], slope: [f64; 2]| {
            let errs = &mut scratch[..=len];
            let (g0, g1) = (&g[0][ti..=ti + len], &g[1][ti..=ti + len]);
            let (h0, h1) = (&h[0][uj..=uj + len], &h[1][uj..=uj + len]);
            for (m, e) in errs.iter_mut().enumerate() {
                let x = m as f64;
                let e0 = (base[0] + slope[0] * x - (g0[m] * h0[m] - shift[0])).abs();
                let e1 = (base[1] + slope[1] * x - (g1[m] * h1[m] - shift[1])).abs();
                *e = e0.max(e1);
            }
            fine = errs.iter().fold(fine, |a, &b| a.max(b));
            if k1 % 2 == 0 {
                coarse = errs.iter().skip(k2 % 2).step_by(2).fold(coarse, |a, &b| a.max(b));
            }
        };
        for i in 0..nt {
            for j in 0..nu {
                for upper in [false, true] {
                    let corners = if upper {
                        [id(i, j), id(i, j + 1), id(i + 1, j + 1)]
                    } else {
                        [id(i, j), id(i + 1, j), id(i + 1, j + 1)]
                    };
                    let mut sorted = corners;
                    sorted.sort_unstable();
                    let perm = corners.map(|v| sorted.iter().position(|&s| s == v).unwrap());
                    let tri = complex
                        .id_of_vertices(&sorted)
                        .ok_or(ExperimentError::MeshMismatch(n))?;
                    let eval = TriangleEval::new(mesh, &data, tri);
                    // both lattice indices advance by one with k2
                    let start = |k1: usize, k2: usize| {
                        if upper {
                            (r * i + k2, r * j + k1 + k2)
                        } else {
                            (r * i + k1 + k2, r * j + k2)
                        }
                    };
                    match eval.lattice_pieces(perm, r) {
                        Some(pieces) => {
                            for p in pieces {
                                for_each_lattice_column(p.corners, |k1, ylo, yhi| {
                                    let (k1, ylo, len) = (k1 as usize, ylo as usize, (yhi - ylo) as usize);
                                    let (ti, uj) = start(k1, ylo);
                                    let base = [0, 1].map(|c| {
                                        p.base[c] + p.d1[c] * k1 as f64 + p.d2[c] * ylo as f64
                                    });
                                    column(ti, uj, k1, ylo, len, base, p.d2);
                                });
                            }
                        }
                        None => {
                            for k1 in 0..=r {
                                for k2 in 0..=r - k1 {
                                    let mut x = [0.0; 3];
                                    x[perm[0]] = (r - k1 - k2) as f64 * inv_r;
                                    x[perm[1]] = k1 as f64 * inv_r;
                                    x[perm[2]] = k2 as f64 * inv_r;
                                    let (ti, uj) = start(k1, k2);
                                    column(ti, uj, k1, k2, 0, eval.eval(x), [0.0; 2]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok((coarse, fine))
    }
}

/// Random product functions on the torus, sampled on `2^N × 2^(N−2)` grids.
pub struct TorusDataset;

impl Dataset for TorusDataset {
    fn name(&self) -> &'static str {
        "torus"
    }

    fn min_level(&self) -> u32 {
        4
    }

    fn start_resolution(&self) -> usize {
        16
    }

    /// Vertices, edges and triangles: `V + 3V + 2V`.
    fn simplex_count(&self, n: u32) -> usize {
        let (nt, nu) = grid_size(n);
        6 * nt * nu
    }

    fn draw(
        &self,
        rng: &mut Xoshiro256PlusPlus,
        _mode: CoefficientMode,
    ) -> Result<Box<dyn RandomFunction>, ExperimentError> {
        Ok(Box::new(TorusFunction::random(rng)?))
    }
}
