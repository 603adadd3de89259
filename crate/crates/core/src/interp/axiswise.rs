use smallvec::SmallVec;

use super::{mu, CarrierPoint, InterpError, Weights, BARY_TOL};
use crate::mesh::{MeshWithFunction, SimplicialComplex, VertexFunction};

/// Per-simplex data of the axis-wise interpolation.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexInterpData {
    /// Componentwise max of the vertex values.
    pub mu: Vec<f64>,
    /// Minimal face realizing `mu` (the simplex itself when no proper face does).
    pub tau: usize,
    /// The distinguished point `w`, as weights over this simplex's vertices.
    pub w: Weights,
}

/// Axis-wise interpolation data for every simplex of a mesh.
#[derive(Clone, Debug)]
pub struct AxiswiseData {
    k: usize,
    simplices: Vec<SimplexInterpData>,
}

impl AxiswiseData {
    pub fn get(&self, simplex: usize) -> &SimplexInterpData {
        &self.simplices[simplex]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Evaluates at `weights` over `simplex` into `out` (length k).
    ///
    /// Follows the inductive construction: restrict to the support face,
    /// stop at `w`, otherwise push the point along the ray from `w` to the
    /// boundary and recurse there, accumulating the linear blend.
    pub fn evaluate_into(
        &self,
        complex: &SimplicialComplex,
        function: &VertexFunction,
        simplex: usize,
        weights: &[f64],
        out: &mut [f64],
    ) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut sigma = simplex;
        let mut x: Weights = weights.iter().copied().collect();
        let mut scale = 1.0;
        loop {
            // drop to the smallest face containing x
            while x.len() > 1 {
                match x.iter().position(|&t| t <= BARY_TOL) {
                    Some(pos) => {
                        sigma = complex.facets(sigma)[pos];
                        x.remove(pos);
                    }
                    None => break,
                }
            }
            if x.len() == 1 {
                let v = complex.simplex(sigma).vertices()[0];
                for (o, &f) in out.iter_mut().zip(function.value(v)) {
                    *o += scale * f;
                }
                return;
            }
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|t| *t /= total);

            let data = &self.simplices[sigma];
            let at_w = x
                .iter()
                .zip(&data.w)
                .all(|(a, b)| (a - b).abs() <= BARY_TOL);
            if at_w {
                for (o, &m) in out.iter_mut().zip(&data.mu) {
                    *o += scale * m;
                }
                return;
            }

            // y = w + r (x - w), with r the largest step keeping all weights >= 0
            let mut r = f64::INFINITY;
            let mut hit = 0;
            for (i, (&xi, &wi)) in x.iter().zip(&data.w).enumerate() {
                let d = xi - wi;
                if d < 0.0 {
                    let ri = wi / -d;
                    if ri < r {
                        r = ri;
                        hit = i;
                    }
                }
            }
            let inv = 1.0 / r;
            for (o, &m) in out.iter_mut().zip(&data.mu) {
                *o += scale * (1.0 - inv) * m;
            }
            scale *= inv;
            let y: Weights = x
                .iter()
                .zip(&data.w)
                .enumerate()
                .map(|(i, (&xi, &wi))| {
                    if i == hit {
                        0.0
                    } else {
                        (wi + r * (xi - wi)).max(0.0)
                    }
                })
                .collect();
            x = y;
        }
    }
}

/// Builds μ, τ and w for every simplex.
///
/// τ is chosen among the faces of minimal dimension attaining μ(σ), breaking
/// ties by the lexicographically smallest vertex tuple; w is the barycenter
/// of τ.
pub fn build_interp_data(mesh: &MeshWithFunction) -> AxiswiseData {
    let complex = mesh.complex();
    let function = mesh.function();
    let simplices = (0..complex.len())
        .map(|id| {
            let verts = complex.simplex(id).vertices();
            let target = mu(complex, function, id);
            let positions =
                minimal_attaining_face(function, verts, &target).expect("σ attains its own μ");
            let tau = if positions.len() == verts.len() {
                id
            } else {
                let face: SmallVec<[usize; 4]> = positions.iter().map(|&p| verts[p]).collect();
                complex
                    .id_of_vertices(&face)
                    .expect("complex is closed under faces")
            };
            let mut w: Weights = smallvec::smallvec![0.0; verts.len()];
            let share = 1.0 / positions.len() as f64;
            for &p in &positions {
                w[p] = share;
            }
            SimplexInterpData { mu: target, tau, w }
        })
        .collect();
    AxiswiseData {
        k: function.k(),
        simplices,
    }
}

/// Positions (into `verts`) of the first vertex subset, by size then lexicographic
/// order, whose componentwise max equals `target`.
fn minimal_attaining_face(
    function: &VertexFunction,
    verts: &[usize],
    target: &[f64],
) -> Option<SmallVec<[usize; 4]>> {
    let n = verts.len();
    for size in 1..=n {
        let mut comb: SmallVec<[usize; 4]> = (0..size).collect();
        loop {
            let attains = (0..target.len()).all(|j| {
                comb.iter()
                    .map(|&p| function.value(verts[p])[j])
                    .fold(f64::NEG_INFINITY, f64::max)
                    == target[j]
            });
            if attains {
                return Some(comb);
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && comb[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            comb[i - 1] += 1;
            for j in i..size {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    None
}

pub fn evaluate_axiswise(
    mesh: &MeshWithFunction,
    data: &AxiswiseData,
    point: &CarrierPoint,
) -> Result<Vec<f64>, InterpError> {
    let mut out = vec![0.0; data.k];
    data.evaluate_into(
        mesh.complex(),
        mesh.function(),
        point.simplex(),
        point.weights(),
        &mut out,
    );
    Ok(out)
}
