use super::MeshError;

pub const DEFAULT_PRECISION: u32 = 6;

/// Rounds `x` to `precision` fractional decimal digits.
pub fn quantize(x: f64, precision: u32) -> f64 {
    let scale = 10f64.powi(precision as i32);
    let q = (x * scale).round() / scale;
    // avoid emitting "-0.000000"
    q + 0.0
}

/// A map from vertex ids to vectors in R^k, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFunction {
    k: usize,
    precision: u32,
    values: Vec<f64>,
}

impl VertexFunction {
    /// Builds a function from row-major values, quantizing every entry.
    pub fn new(k: usize, values: Vec<f64>, precision: u32) -> Result<Self, MeshError> {
        if k == 0 {
            return Err(MeshError::Validation("function needs at least one component".into()));
        }
        if values.len() % k != 0 {
            return Err(MeshError::DimensionMismatch {
                line: 0,
                expected: k,
                found: values.len() % k,
            });
        }
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(MeshError::Validation(format!("non-finite function value {x}")));
        }
        let values = values.into_iter().map(|x| quantize(x, precision)).collect();
        Ok(VertexFunction { k, precision, values })
    }

    pub fn from_rows(rows: &[Vec<f64>], precision: u32) -> Result<Self, MeshError> {
        let k = rows.first().map_or(1, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(MeshError::Validation("rows of different lengths".into()));
        }
        Self::new(k, rows.concat(), precision)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn num_vertices(&self) -> usize {
        self.values.len() / self.k
    }

    pub fn value(&self, v: usize) -> &[f64] {
        &self.values[v * self.k..(v + 1) * self.k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn component(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(j).step_by(self.k).copied()
    }

    /// Componentwise (min, max).
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        (0..self.k)
            .map(|j| {
                self.component(j)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
            })
            .collect()
    }

    /// True when every component spans exactly [0, 1].
    pub fn is_normalized(&self) -> bool {
        self.num_vertices() > 0 && self.bounds().iter().all(|&(lo, hi)| lo == 0.0 && hi == 1.0)
    }

    /// Keeps only component `j`, as a scalar function.
    pub fn select_component(&self, j: usize) -> VertexFunction {
        VertexFunction {
            k: 1,
            precision: self.precision,
            values: self.component(j).collect(),
        }
    }
}

/// Affinely rescales every component onto [0, 1].
pub fn normalize(function: &VertexFunction) -> Result<VertexFunction, MeshError> {
    let bounds = function.bounds();
    if let Some(j) = bounds.iter().position(|&(lo, hi)| !(hi > lo)) {
        return Err(MeshError::ConstantComponent(j));
    }
    let k = function.k;
    let values = function
        .values
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let (lo, hi) = bounds[i % k];
            (x - lo) / (hi - lo)
        })
        .collect();
    VertexFunction::new(k, values, function.precision)
}
