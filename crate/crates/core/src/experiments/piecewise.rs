//! Closed-form axis-wise evaluation on edges and triangles of a two-component
//! mesh, used by the error scans. Agrees with
//! [`AxiswiseData::evaluate_into`](crate::interp::AxiswiseData::evaluate_into)
//! up to rounding.

use smallvec::SmallVec;

use crate::interp::AxiswiseData;
use crate::mesh::MeshWithFunction;

fn pair(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]
}

/// Axis-wise interpolant along an edge `[a, b]` (sorted vertex order),
/// parametrized by the weight `s` of `b`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeEval {
    fa: [f64; 2],
    fb: [f64; 2],
    mu: [f64; 2],
    /// Weight of `b` at `w`: 0, 1/2 or 1.
    sw: f64,
}

impl EdgeEval {
    pub fn new(mesh: &MeshWithFunction, data: &AxiswiseData, edge: usize) -> Self {
        let verts = mesh.complex().simplex(edge).vertices();
        let d = data.get(edge);
        EdgeEval {
            fa: pair(mesh.function().value(verts[0])),
            fb: pair(mesh.function().value(verts[1])),
            mu: pair(&d.mu),
            sw: d.w[1],
        }
    }

    #[inline]
    pub fn eval(&self, s: f64) -> [f64; 2] {
        if s < self.sw {
            lerp(self.fa, self.mu, s / self.sw)
        } else if self.sw < 1.0 {
            lerp(self.mu, self.fb, (s - self.sw) / (1.0 - self.sw))
        } else {
            self.mu
        }
    }
}

/// One affine piece of the fan from `w`: barycentric coordinates relative
/// to its corners are `inv · λ`, and the value is `val · λ`.
#[derive(Clone, Copy, Debug)]
struct Piece {
    corners: [[f64; 3]; 3],
    inv: [[f64; 3]; 3],
    val: [[f64; 3]; 2],
}

/// A piece in lattice coordinates of resolution `r`: `corners` are integer
/// points `(k1, k2)` and the value at `(k1, k2)` is `base + d1·k1 + d2·k2`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LatticePiece {
    pub corners: [(i64, i64); 3],
    pub base: [f64; 2],
    pub d1: [f64; 2],
    pub d2: [f64; 2],
}

/// Axis-wise interpolant on a triangle, at weights over its sorted vertices.
///
/// The interpolant is affine on each triangle `[w, p, q]` where `p, q` are
/// consecutive boundary breakpoints (vertices and edge midpoints acting as
/// `w` of their edge), so evaluation is a containment test plus a dot product.
#[derive(Clone, Debug)]
pub(crate) struct TriangleEval {
    pieces: SmallVec<[Piece; 6]>,
}

const PIECE_TOL: f64 = 1e-9;

impl TriangleEval {
    pub fn new(mesh: &MeshWithFunction, data: &AxiswiseData, tri: usize) -> Self {
        let complex = mesh.complex();
        let verts = complex.simplex(tri).vertices();
        let facets = complex.facets(tri);
        let d = data.get(tri);
        let w = [d.w[0], d.w[1], d.w[2]];

        let mut ring: SmallVec<[([f64; 3], [f64; 2]); 6]> = SmallVec::new();
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let mut p = [0.0; 3];
            p[i] = 1.0;
            ring.push((p, pair(mesh.function().value(verts[i]))));
            let e = data.get(facets[3 - i - j]);
            if e.w[0] > 0.0 && e.w[1] > 0.0 {
                let mut m = [0.0; 3];
                m[i] = 0.5;
                m[j] = 0.5;
                ring.push((m, pair(&e.mu)));
            }
        }
        let mu = pair(&d.mu);
        let mut pieces = SmallVec::new();
        for k in 0..ring.len() {
            let (p, vp) = ring[k];
            let (q, vq) = ring[(k + 1) % ring.len()];
            // columns: w, p, q
            let m = [[w[0], p[0], q[0]], [w[1], p[1], q[1]], [w[2], p[2], q[2]]];
            let Some(inv) = invert3(&m) else { continue };
            let mut val = [[0.0; 3]; 2];
            for c in 0..2 {
                let corner = [mu[c], vp[c], vq[c]];
                for col in 0..3 {
                    val[c][col] = (0..3).map(|r| corner[r] * inv[r][col]).sum();
                }
            }
            pieces.push(Piece {
                corners: [w, p, q],
                inv,
                val,
            });
        }
        TriangleEval { pieces }
    }

    #[cfg(test)]
    pub fn w(&self) -> [f64; 3] {
        self.pieces[0].corners[0]
    }

    /// Pieces in the frame where lattice point `(k1, k2)` has weight
    /// `(r − k1 − k2)/r, k1/r, k2/r` on sorted vertices `perm[0], perm[1],
    /// perm[2]`. `None` if a corner is off the lattice.
    pub fn lattice_pieces(&self, perm: [usize; 3], r: usize) -> Option<SmallVec<[LatticePiece; 6]>> {
        let rf = r as f64;
        let to_lattice = |x: f64| -> Option<i64> {
            let k = (x * rf).round();
            ((x * rf - k).abs() < 1e-9).then_some(k as i64)
        };
        self.pieces
            .iter()
            .map(|p| {
                let mut corners = [(0, 0); 3];
                for (c, corner) in p.corners.iter().enumerate() {
                    corners[c] = (to_lattice(corner[perm[1]])?, to_lattice(corner[perm[2]])?);
                }
                let v = |c: usize, s: usize| p.val[c][perm[s]];
                Some(LatticePiece {
                    corners,
                    base: [v(0, 0), v(1, 0)],
                    d1: [(v(0, 1) - v(0, 0)) / rf, (v(1, 1) - v(1, 0)) / rf],
                    d2: [(v(0, 2) - v(0, 0)) / rf, (v(1, 2) - v(1, 0)) / rf],
                })
            })
            .collect()
    }

    #[inline]
    pub fn eval(&self, x: [f64; 3]) -> [f64; 2] {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, p) in self.pieces.iter().enumerate() {
            let mut lowest = f64::INFINITY;
            for r in 0..3 {
                let b = p.inv[r][0] * x[0] + p.inv[r][1] * x[1] + p.inv[r][2] * x[2];
                lowest = lowest.min(b);
            }
            if lowest >= -PIECE_TOL {
                return apply(p, x);
            }
            if lowest > best.0 {
                best = (lowest, i);
            }
        }
        apply(&self.pieces[best.1], x)
    }
}

#[inline]
fn apply(p: &Piece, x: [f64; 3]) -> [f64; 2] {
    [0, 1].map(|c| p.val[c][0] * x[0] + p.val[c][1] * x[1] + p.val[c][2] * x[2])
}

/// Calls `visit(x, y)` for every integer point of the closed triangle with
/// integer corners `c`.
#[cfg(test)]
pub(crate) fn for_each_lattice_point(c: [(i64, i64); 3], mut visit: impl FnMut(i64, i64)) {
    for_each_lattice_column(c, |x, ylo, yhi| (ylo..=yhi).for_each(|y| visit(x, y)));
}

/// Calls `visit(x, ylo, yhi)` for every column of integer points of the
/// closed triangle with integer corners `c`.
pub(crate) fn for_each_lattice_column(c: [(i64, i64); 3], mut visit: impl FnMut(i64, i64, i64)) {
    let xmin = c[0].0.min(c[1].0).min(c[2].0);
    let xmax = c[0].0.max(c[1].0).max(c[2].0);
    for x in xmin..=xmax {
        // column bounds as exact rationals num/den with den > 0
        let (mut lo, mut hi) = ((1i64 << 40, 1), (-(1i64 << 40), 1));
        let mut take = |q: (i64, i64)| {
            if q.0 * lo.1 < lo.0 * q.1 {
                lo = q;
            }
            if q.0 * hi.1 > hi.0 * q.1 {
                hi = q;
            }
        };
        for e in 0..3 {
            let (a, b) = (c[e], c[(e + 1) % 3]);
            if x < a.0.min(b.0) || x > a.0.max(b.0) {
                continue;
            }
            if a.0 == b.0 {
                take((a.1, 1));
                take((b.1, 1));
            } else {
                let den = b.0 - a.0;
                let num = a.1 * den + (x - a.0) * (b.1 - a.1);
                take(if den < 0 { (-num, -den) } else { (num, den) });
            }
        }
        let ylo = -(-lo.0).div_euclid(lo.1);
        let yhi = hi.0.div_euclid(hi.1);
        if ylo <= yhi {
            visit(x, ylo, yhi);
        }
    }
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let c = |r: usize, s: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (s1, s2) = ((s + 1) % 3, (s + 2) % 3);
        m[r1][s1] * m[r2][s2] - m[r1][s2] * m[r2][s1]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    if det.abs() < 1e-12 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for r in 0..3 {
        for s in 0..3 {
            inv[r][s] = c(s, r) / det;
        }
    }
    Some(inv)
}
