use super::MatchError;
use crate::persistence::PersistenceDiagram;

/// Cost of retiring `(x, y)` to the diagonal.
pub fn diagonal_cost(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

/// Cost of matching two finite points: their sup-norm distance, capped by
/// the cost of retiring both.
pub fn point_cost(p: (f64, f64), q: (f64, f64)) -> f64 {
    let direct = (p.0 - q.0).abs().max((p.1 - q.1).abs());
    direct.min(diagonal_cost(p).max(diagonal_cost(q)))
}

/// Matching distance between two diagrams of the same degree.
///
/// Essential classes match only essential classes (sorted pairing), and a
/// difference in their number gives `+∞`. Finite points are matched by an
/// exact bottleneck search over candidate costs.
pub fn matching_distance_1d(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
) -> Result<f64, MatchError> {
    if d1.degree != d2.degree {
        return Err(MatchError::DegreeMismatch(d1.degree, d2.degree));
    }
    let ess = essential_distance(&d1.essential, &d2.essential);
    if ess == f64::INFINITY {
        return Ok(ess);
    }
    Ok(ess.max(bottleneck(&d1.pairs, &d2.pairs)))
}

fn essential_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Bottleneck distance between finite point sets, with diagonal retirement.
pub fn bottleneck(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
    if p.is_empty() && q.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(p.len() * q.len() + p.len() + q.len() + 1);
    candidates.push(0.0);
    candidates.extend(p.iter().chain(q).map(|&x| diagonal_cost(x)));
    for &a in p {
        for &b in q {
            candidates.push(point_cost(a, b));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // the largest candidate (retire everything) is always feasible
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_exists(p, q, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Left side: points of `p`, then one diagonal slot per point of `q`.
/// Right side: points of `q`, then one diagonal slot per point of `p`.
fn perfect_matching_exists(p: &[(f64, f64)], q: &[(f64, f64)], r: f64) -> bool {
    let (n, m) = (p.len(), q.len());
    let size = n + m;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            if point_cost(a, b) <= r {
                adj[i].push(j);
            }
        }
        if diagonal_cost(a) <= r {
            adj[i].push(m + i);
        }
    }
    for (j, &b) in q.iter().enumerate() {
        let row = &mut adj[n + j];
        if diagonal_cost(b) <= r {
            row.push(j);
        }
        row.extend(m..m + n);
    }
    hopcroft_karp(&adj, size) == size
}

/// Maximum matching size of a bipartite graph with `adj[left] = right ids`.
fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NONE: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![NONE; n_left];
    let mut match_r = vec![NONE; n_right];
    let mut dist = vec![0usize; n_left];
    let mut queue = Vec::with_capacity(n_left);
    let mut matched = 0;
    loop {
        // BFS layering from free left vertices
        queue.clear();
        let mut found = false;
        for u in 0..n_left {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            return matched;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if match_l[u] == NONE && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it) {
                matched += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = match_r[v];
        if w == usize::MAX
            || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist, it))
        {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
