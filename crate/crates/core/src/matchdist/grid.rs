use super::MatchError;

/// Constant of the grid error bound: pairs within `δ` of a tested pair change
/// the rescaled distance by at most `18 δ`.
pub const GRID_CONSTANT: f64 = 18.0;

/// Lattice of admissible pairs `(a_i, b_j)` for `k = 2`:
/// `a_i = (2i+1)/2^{N+1}` for `i < 2^N`, `b_j = 1 − (2j+1)/2^{N+1}` for `j < 2^{N+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    n: u32,
}

/// Pairs `(a, b)` covering the lines outside the lattice's range.
pub const SPECIAL_PAIRS: [(f64, f64); 2] = [(0.5, 2.0), (0.5, -2.0)];

impl GridSpec {
    pub const MAX_N: u32 = 20;

    pub fn new(n: u32) -> Result<Self, MatchError> {
        if n > Self::MAX_N {
            return Err(MatchError::BadTolerance(GRID_CONSTANT / 2f64.powi(n as i32)));
        }
        Ok(GridSpec { n })
    }

    /// Smallest `N` with `1/2^N ≤ ε/18`.
    pub fn for_tolerance(epsilon: f64) -> Result<Self, MatchError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(MatchError::BadTolerance(epsilon));
        }
        let target = epsilon / GRID_CONSTANT;
        let mut n = 0;
        while 1.0 / 2f64.powi(n as i32) > target {
            n += 1;
            if n > Self::MAX_N {
                return Err(MatchError::BadTolerance(epsilon));
            }
        }
        Ok(GridSpec { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The tolerance this grid certifies, `18 / 2^N`.
    pub fn tolerance(&self) -> f64 {
        GRID_CONSTANT / 2f64.powi(self.n as i32)
    }

    pub fn a_values(&self) -> Vec<f64> {
        let denom = 2f64.powi(self.n as i32 + 1);
        (0..1u64 << self.n).map(|i| (2 * i + 1) as f64 / denom).collect()
    }

    pub fn b_values(&self) -> Vec<f64> {
        let denom = 2f64.powi(self.n as i32 + 1);
        (0..1u64 << (self.n + 1))
            .map(|j| 1.0 - (2 * j + 1) as f64 / denom)
            .collect()
    }

    /// Lattice points, `a` major.
    pub fn lattice(&self) -> Vec<(f64, f64)> {
        let bs = self.b_values();
        self.a_values()
            .into_iter()
            .flat_map(|a| bs.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Lattice points followed by the special pairs.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        let mut p = self.lattice();
        p.extend(SPECIAL_PAIRS);
        p
    }
}
