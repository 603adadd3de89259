use rand::Rng;

/// Number of harmonics in every random series.
pub const HARMONICS: usize = 6;

/// `Σ_{i=1}^{6} cos_i·cos(i t) + sin_i·sin(i t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    pub cos: [f64; HARMONICS],
    pub sin: [f64; HARMONICS],
}

/// A value uniform in `[−1, 1)`.
pub fn uniform_pm1(rng: &mut impl Rng) -> f64 {
    rng.gen::<f64>() * 2.0 - 1.0
}

impl FourierSeries {
    pub fn zero() -> Self {
        FourierSeries {
            cos: [0.0; HARMONICS],
            sin: [0.0; HARMONICS],
        }
    }

    /// Draws the six cosine coefficients, then the six sine coefficients.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut s = Self::zero();
        s.cos.iter_mut().for_each(|c| *c = uniform_pm1(rng));
        s.sin.iter_mut().for_each(|c| *c = uniform_pm1(rng));
        s
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (s1, c1) = t.sin_cos();
        let (mut s, mut c) = (s1, c1);
        let mut acc = 0.0;
        for i in 0..HARMONICS {
            acc += self.cos[i] * c + self.sin[i] * s;
            (c, s) = (c * c1 - s * s1, s * c1 + c * s1);
        }
        acc
    }

    /// Values at `t_m = 2π m / count` for `m < count`.
    pub fn eval_lattice(&self, count: usize) -> Vec<f64> {
        (0..count)
            .map(|m| self.eval(std::f64::consts::TAU * m as f64 / count as f64))
            .collect()
    }

    /// Minimum and maximum over one period.
    pub fn extrema(&self) -> (f64, f64) {
        periodic_extrema(|t| self.eval(t))
    }
}

const SCAN_POINTS: usize = 4096;

/// Min and max of a smooth `2π`-periodic function: a uniform scan, then
/// golden-section refinement around the best scan points.
pub fn periodic_extrema(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let h = std::f64::consts::TAU / SCAN_POINTS as f64;
    let (mut imin, mut imax) = (0, 0);
    let mut vals = Vec::with_capacity(SCAN_POINTS);
    for m in 0..SCAN_POINTS {
        let v = f(m as f64 * h);
        if v < vals.get(imin).copied().unwrap_or(f64::INFINITY) {
            imin = m;
        }
        if v > vals.get(imax).copied().unwrap_or(f64::NEG_INFINITY) {
            imax = m;
        }
        vals.push(v);
    }
    let tmin = golden(&|t| f(t), imin as f64 * h - h, imin as f64 * h + h);
    let tmax = golden(&|t| -f(t), imax as f64 * h - h, imax as f64 * h + h);
    (f(tmin).min(vals[imin]), f(tmax).max(vals[imax]))
}

/// Minimizer of a unimodal function on `[a, b]`.
fn golden(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}
