use super::{dominated, sublevel_set};
use crate::mesh::MeshWithFunction;

/// The cone `C_j(v) = {α : α_j = φ_j(v), α ⪰ φ(v)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    pub axis: usize,
    pub vertex: usize,
    pub apex: Vec<f64>,
}

impl Cone {
    pub fn contains(&self, alpha: &[f64]) -> bool {
        alpha[self.axis] == self.apex[self.axis] && dominated(&self.apex, alpha)
    }

    /// Sup-norm distance from `alpha` to the cone.
    pub fn distance(&self, alpha: &[f64]) -> f64 {
        let mut d = (alpha[self.axis] - self.apex[self.axis]).abs();
        for (i, (a, x)) in self.apex.iter().zip(alpha).enumerate() {
            if i != self.axis {
                d = d.max(a - x);
            }
        }
        d
    }
}

/// The union of all `k·|V|` cones of a mesh.
#[derive(Clone, Debug)]
pub struct ConeSet {
    cones: Vec<Cone>,
}

impl ConeSet {
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, alpha: &[f64]) -> bool {
        self.cones.iter().any(|c| c.contains(alpha))
    }

    /// Sup-norm distance from `alpha` to the nearest cone (`+∞` if there are none).
    pub fn distance(&self, alpha: &[f64]) -> f64 {
        self.cones
            .iter()
            .map(|c| c.distance(alpha))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Cones ordered by vertex, then axis.
pub fn cone_set(mesh: &MeshWithFunction) -> ConeSet {
    let f = mesh.function();
    let cones = (0..f.num_vertices())
        .flat_map(|v| {
            (0..f.k()).map(move |axis| Cone {
                axis,
                vertex: v,
                apex: f.value(v).to_vec(),
            })
        })
        .collect();
    ConeSet { cones }
}

/// Whether the closed sup-norm ball of radius `eps` around `alpha` misses
/// every cone. When it does, the sublevel complex is constant on the ball.
pub fn is_regular_neighborhood(mesh: &MeshWithFunction, alpha: &[f64], eps: f64) -> bool {
    assert!(eps > 0.0, "radius must be positive");
    cone_set(mesh).distance(alpha) > eps
}

/// Points of the cone set whose every coordinate is a vertex value, sorted
/// lexicographically.
///
/// Enumerates the product of the per-axis value sets, which costs
/// `O(|V|^k · k · |V|)`; fine for `k = 2`, steep beyond that.
pub fn lambda_set(mesh: &MeshWithFunction) -> Vec<Vec<f64>> {
    let f = mesh.function();
    let k = f.k();
    let axes: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let mut vals: Vec<f64> = f.component(j).collect();
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            vals
        })
        .collect();
    let cones = cone_set(mesh);
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if axes.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let point: Vec<f64> = idx.iter().enumerate().map(|(j, &i)| axes[j][i]).collect();
        if cones.contains(&point) {
            out.push(point);
        }
        // odometer, last axis fastest
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < axes[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// The element of Λ with the same sublevel complex as `alpha`: the
/// componentwise max over the vertices of `K_α`. `None` when `K_α` is empty.
pub fn representative(mesh: &MeshWithFunction, alpha: &[f64]) -> Option<Vec<f64>> {
    let f = mesh.function();
    let set = sublevel_set(mesh.complex(), f, alpha);
    let mut lambda: Option<Vec<f64>> = None;
    for v in (0..f.num_vertices()).filter(|&v| set.contains(v)) {
        match &mut lambda {
            None => lambda = Some(f.value(v).to_vec()),
            Some(l) => l.iter_mut().zip(f.value(v)).for_each(|(a, &x)| *a = a.max(x)),
        }
    }
    lambda
}
