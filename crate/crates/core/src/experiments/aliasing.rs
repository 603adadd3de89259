use super::ExperimentError;
use crate::filtration::build_scalar_filtration;
use crate::interp::{AxiswiseInterpolant, Interpolant, LinearInterpolant};
use crate::matchdist::{approx_matching_distance, matching_distance_1d, DistanceOptions};
use crate::mesh::{barycentric_subdivide, MeshWithFunction};
use crate::persistence::{compute_diagrams, FieldPrime, PersistenceDiagram};

/// Grid distance for one tolerance, before and after subdivision.
#[derive(Clone, Debug, PartialEq)]
pub struct AliasingRow {
    pub epsilon: f64,
    /// `None` for the max over all requested degrees.
    pub degree: Option<usize>,
    pub nonsub: f64,
    pub linear: f64,
    pub axiswise: f64,
    /// `linear − nonsub`.
    pub diff: f64,
    /// `diff / linear · 100`, and 0 when `diff` is 0.
    pub pct_diff: f64,
}

/// Distance between the diagrams of a single component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentRow {
    pub component: usize,
    pub degree: usize,
    pub nonsub: f64,
    pub linear: f64,
    pub axiswise: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AliasingTable {
    pub rows: Vec<AliasingRow>,
    pub components: Vec<ComponentRow>,
}

impl AliasingTable {
    pub const CSV_HEADER: &'static str = "row,epsilon,degree,nonsub,linear,axiswise,diff,pct_diff";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let degree = r.degree.map_or("all".to_string(), |q| q.to_string());
            s.push_str(&format!(
                "2d,{},{},{},{},{},{},{:.2}\n",
                r.epsilon, degree, r.nonsub, r.linear, r.axiswise, r.diff, r.pct_diff
            ));
        }
        for c in &self.components {
            s.push_str(&format!(
                "phi{},,{},{},{},{},{},\n",
                c.component + 1,
                c.degree,
                c.nonsub,
                c.linear,
                c.axiswise,
                c.linear - c.nonsub
            ));
        }
        s
    }
}

fn pct(diff: f64, linear: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / linear * 100.0
    }
}

/// Compares `a` and `b` as given, after one linear subdivision of both, and
/// after one axis-wise subdivision of both: the grid distance for every
/// tolerance in `epsilons`, and the distance of each single component.
///
/// `base` supplies degrees, prime, worker count and the normalization policy;
/// its tolerance is ignored.
pub fn run_aliasing_protocol(
    a: &MeshWithFunction,
    b: &MeshWithFunction,
    epsilons: &[f64],
    base: &DistanceOptions,
) -> Result<AliasingTable, ExperimentError> {
    let interpolants: [&dyn Interpolant; 2] = [&LinearInterpolant, &AxiswiseInterpolant];
    let mut variants = vec![(a.clone(), b.clone())];
    for interp in interpolants {
        variants.push((barycentric_subdivide(a, interp)?, barycentric_subdivide(b, interp)?));
    }

    let mut table = AliasingTable::default();
    for &epsilon in epsilons {
        let opts = DistanceOptions {
            epsilon,
            ..base.clone()
        };
        let results = variants
            .iter()
            .map(|(x, y)| approx_matching_distance(x, y, &opts))
            .collect::<Result<Vec<_>, _>>()?;
        let mut push = |degree: Option<usize>, v: [f64; 3]| {
            let diff = v[1] - v[0];
            table.rows.push(AliasingRow {
                epsilon,
                degree,
                nonsub: v[0],
                linear: v[1],
                axiswise: v[2],
                diff,
                pct_diff: pct(diff, v[1]),
            });
        };
        for (i, &q) in base.degrees.iter().enumerate() {
            push(Some(q), [0, 1, 2].map(|v| results[v].per_degree[i].value));
        }
        push(None, [0, 1, 2].map(|v| results[v].value));
    }

    let field = FieldPrime::new(base.prime).map_err(crate::matchdist::MatchError::from)?;
    let top = base.degrees.iter().copied().max().unwrap_or(0);
    for j in 0..a.k().min(b.k()) {
        let diagrams = variants
            .iter()
            .map(|(x, y)| (component_diagrams(x, j, top, &field), component_diagrams(y, j, top, &field)))
            .collect::<Vec<_>>();
        for &q in &base.degrees {
            let d = diagrams
                .iter()
                .map(|(dx, dy)| matching_distance_1d(&dx[q], &dy[q]))
                .collect::<Result<Vec<_>, _>>()?;
            table.components.push(ComponentRow {
                component: j,
                degree: q,
                nonsub: d[0],
                linear: d[1],
                axiswise: d[2],
            });
        }
    }
    Ok(table)
}

fn component_diagrams(
    mesh: &MeshWithFunction,
    j: usize,
    max_degree: usize,
    field: &FieldPrime,
) -> Vec<PersistenceDiagram> {
    let g: Vec<f64> = mesh.function().component(j).collect();
    compute_diagrams(&build_scalar_filtration(mesh, &g), max_degree, field)
}
