//! Small synthetic meshes for tests and benchmarks.
//!
//! Every generator returns a mesh with a normalized 2-component function whose
//! values lie on a coarse grid `{0, 1/L, ..., 1}`; coarse grids produce the
//! ties that exercise tie-breaking paths.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::mesh::{MeshWithFunction, SimplicialComplex, VertexFunction, DEFAULT_PRECISION};

/// Boundary of the tetrahedron with φ(x, y, z) = (x, z) at v0 = (0,0,0),
/// v1 = (1,0,0), v2 = (0,1,0), v3 = (1/2,0,1).
pub fn tetrahedron_boundary() -> MeshWithFunction {
    let coords = vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.5, 0.0, 1.0],
    ];
    let cells = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    let complex = SimplicialComplex::from_cells(4, coords, &cells).expect("valid cells");
    let f = VertexFunction::from_rows(
        &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 0.0], vec![0.5, 1.0]],
        DEFAULT_PRECISION,
    )
    .expect("finite values");
    MeshWithFunction::new(complex, f).expect("matching vertex sets")
}

/// Triangulated torus on an `nu × nv` grid with wrap-around.
pub fn torus_cells(nu: usize, nv: usize) -> Vec<Vec<usize>> {
    let id = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut cells = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            cells.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            cells.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    cells
}

/// Triangulated `rows × cols` grid of vertices (a disk).
pub fn grid_cells(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    let id = |i: usize, j: usize| i * cols + j;
    let mut cells = Vec::new();
    for i in 0..rows - 1 {
        for j in 0..cols - 1 {
            cells.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            cells.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    cells
}

pub fn octahedron_cells() -> Vec<Vec<usize>> {
    // 0,1: poles; 2..6: equator
    let mut cells = Vec::new();
    for i in 0..4 {
        let a = 2 + i;
        let b = 2 + (i + 1) % 4;
        cells.push(vec![0, a, b]);
        cells.push(vec![1, a, b]);
    }
    cells
}

pub fn cycle_cells(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

/// Random values on the grid `{0, 1/levels, ..., 1}`, each component hitting 0 and 1.
pub fn random_grid_values(rng: &mut impl Rng, n: usize, k: usize, levels: u32) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| rng.gen_range(0..=levels) as f64 / levels as f64)
                .collect()
        })
        .collect();
    if n >= 2 {
        for j in 0..k {
            let lo = rng.gen_range(0..n);
            let mut hi = rng.gen_range(0..n);
            while hi == lo {
                hi = rng.gen_range(0..n);
            }
            rows[lo][j] = 0.0;
            rows[hi][j] = 1.0;
        }
    }
    rows
}

fn mesh_from(cells: &[Vec<usize>], n: usize, rng: &mut impl Rng, levels: u32) -> MeshWithFunction {
    let values = random_grid_values(rng, n, 2, levels);
    let complex = SimplicialComplex::from_cells(n, Vec::new(), cells).expect("generated cells");
    let f = VertexFunction::from_rows(&values, DEFAULT_PRECISION).expect("finite values");
    MeshWithFunction::new(complex, f).expect("matching vertex sets")
}

/// A random mesh of one of several shapes (torus, sphere, disk with holes,
/// random 2-complex, graph), with at most `max_simplices` simplices.
pub fn random_mesh(rng: &mut impl Rng, max_simplices: usize) -> MeshWithFunction {
    loop {
        let levels = rng.gen_range(3..=6);
        let mesh = match rng.gen_range(0..6) {
            0 => {
                let nu = rng.gen_range(3..=5);
                let nv = rng.gen_range(3..=5);
                mesh_from(&torus_cells(nu, nv), nu * nv, rng, levels)
            }
            1 => mesh_from(&octahedron_cells(), 6, rng, levels),
            2 => {
                let rows = rng.gen_range(3..=5);
                let cols = rng.gen_range(3..=5);
                let mut cells = grid_cells(rows, cols);
                let drop = rng.gen_range(0..=cells.len() / 3);
                cells.shuffle(rng);
                cells.truncate(cells.len() - drop);
                mesh_from(&cells, rows * cols, rng, levels)
            }
            3 => {
                let n = rng.gen_range(5..=9);
                let mut cells: Vec<Vec<usize>> = Vec::new();
                for _ in 0..rng.gen_range(4..=12) {
                    let mut t: Vec<usize> = (0..n).collect();
                    t.shuffle(rng);
                    t.truncate(3);
                    t.sort_unstable();
                    if !cells.contains(&t) {
                        cells.push(t);
                    }
                }
                mesh_from(&cells, n, rng, levels)
            }
            4 => {
                let n = rng.gen_range(4..=10);
                let mut cells = cycle_cells(n);
                for _ in 0..rng.gen_range(0..=3) {
                    let a = rng.gen_range(0..n);
                    let b = rng.gen_range(0..n);
                    let e = vec![a.min(b), a.max(b)];
                    if a != b && !cells.iter().any(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c == e
                    }) {
                        cells.push(e);
                    }
                }
                mesh_from(&cells, n, rng, levels)
            }
            _ => {
                // tetrahedron boundary with random values
                let cells = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
                mesh_from(&cells, 4, rng, levels)
            }
        };
        if mesh.complex().len() <= max_simplices {
            return mesh;
        }
    }
}

/// `count` random meshes from a fixed seed.
pub fn random_corpus(seed: u64, count: usize, max_simplices: usize) -> Vec<MeshWithFunction> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    (0..count).map(|_| random_mesh(&mut rng, max_simplices)).collect()
}
