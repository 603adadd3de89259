#![allow(dead_code)]

use axiswise::corpus::random_grid_values;
use axiswise::mesh::{VertexFunction, DEFAULT_PRECISION};
use axiswise::persistence::PersistenceDiagram;
use axiswise::MeshWithFunction;
use rand::Rng;

/// Bottleneck distance by enumerating every partial injection from `p` into
/// `q`; points left over on either side go to the diagonal.
pub fn brute_bottleneck(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
    fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
        (a.0 - b.0).abs().max((a.1 - b.1).abs())
    }
    fn diag(a: (f64, f64)) -> f64 {
        (a.1 - a.0) / 2.0
    }
    fn go(i: usize, p: &[(f64, f64)], q: &[(f64, f64)], used: &mut [bool], cost: f64, best: &mut f64) {
        if cost >= *best {
            return;
        }
        if i == p.len() {
            let rest = q
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(&b, _)| diag(b))
                .fold(cost, f64::max);
            *best = best.min(rest);
            return;
        }
        go(i + 1, p, q, used, cost.max(diag(p[i])), best);
        for j in 0..q.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, p, q, used, cost.max(linf(p[i], q[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, p, q, &mut vec![false; q.len()], 0.0, &mut best);
    best
}

/// Essential classes by trying every bijection.
pub fn brute_essential(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn go(i: usize, a: &[f64], b: &[f64], used: &mut [bool], cost: f64, best: &mut f64) {
        if i == a.len() {
            *best = best.min(cost);
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, cost.max((a[i] - b[j]).abs()), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}

pub fn brute_matching_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let e = brute_essential(&d1.essential, &d2.essential);
    if e == f64::INFINITY {
        return e;
    }
    e.max(brute_bottleneck(&d1.pairs, &d2.pairs))
}

/// A diagram with up to `max_points` points on a grid of step 1/8, so that
/// distances are exact in binary.
pub fn random_diagram(rng: &mut impl Rng, max_points: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points);
    let essential_count = rng.gen_range(0..=n.min(2));
    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    for i in 0..n {
        let b = rng.gen_range(-8..16) as f64 / 8.0;
        if i < essential_count {
            essential.push(b);
        } else {
            let d = b + rng.gen_range(1..16) as f64 / 8.0;
            pairs.push((b, d));
        }
    }
    PersistenceDiagram::new(0, pairs, essential)
}

/// The complex of `mesh` with fresh normalized grid values.
pub fn revalued(rng: &mut impl Rng, mesh: &MeshWithFunction) -> MeshWithFunction {
    let n = mesh.complex().num_vertices();
    let levels = rng.gen_range(3..=6);
    let rows = random_grid_values(rng, n, 2, levels);
    let f = VertexFunction::from_rows(&rows, DEFAULT_PRECISION).unwrap();
    mesh.with_function(f).unwrap()
}

/// Midpoints between consecutive distinct values, plus one point on either side.
pub fn gaps(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let mut out = vec![v[0] - 0.5];
    out.extend(v.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    out.push(v[v.len() - 1] + 0.5);
    out
}
