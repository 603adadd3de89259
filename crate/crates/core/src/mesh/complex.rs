use std::collections::{HashMap, HashSet};
use std::fmt;

use smallvec::SmallVec;

use super::MeshError;

pub type VertexId = usize;

/// A simplex as a strictly increasing tuple of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[VertexId; 4]>);

impl Simplex {
    /// Builds a canonical simplex, sorting the ids. Fails on repeated ids.
    pub fn new(mut ids: SmallVec<[VertexId; 4]>) -> Result<Self, MeshError> {
        if ids.is_empty() {
            return Err(MeshError::Validation("empty simplex".into()));
        }
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(MeshError::Validation(format!(
                "simplex {ids:?} repeats a vertex"
            )));
        }
        Ok(Simplex(ids))
    }

    pub fn from_slice(ids: &[VertexId]) -> Result<Self, MeshError> {
        Self::new(ids.iter().copied().collect())
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// The facet obtained by dropping the vertex at `pos`.
    pub fn facet(&self, pos: usize) -> Simplex {
        let mut ids = self.0.clone();
        ids.remove(pos);
        Simplex(ids)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A finite abstract simplicial complex, closed under faces.
///
/// Simplices are enumerated canonically by `(dimension, vertex tuple)`, so the
/// id of the 0-simplex `{v}` is `v` itself and every face precedes its cofaces.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    coords: Vec<Vec<f64>>,
    simplices: Vec<Simplex>,
    dim_offsets: Vec<usize>,
    facets: Vec<SmallVec<[usize; 4]>>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds the closure of `cells` over `n_vertices` vertices.
    ///
    /// `coords` is either empty (no embedding) or holds one coordinate vector
    /// per vertex, all of the same length.
    pub fn from_cells(
        n_vertices: usize,
        coords: Vec<Vec<f64>>,
        cells: &[Vec<VertexId>],
    ) -> Result<Self, MeshError> {
        if !coords.is_empty() {
            if coords.len() != n_vertices {
                return Err(MeshError::Validation(format!(
                    "{} coordinate rows for {n_vertices} vertices",
                    coords.len()
                )));
            }
            let d = coords[0].len();
            if coords.iter().any(|c| c.len() != d) {
                return Err(MeshError::Validation(
                    "vertices carry embeddings of different dimensions".into(),
                ));
            }
        }

        let mut seen_cells = HashSet::new();
        let mut all: HashSet<Simplex> = (0..n_vertices).map(Simplex::vertex).collect();
        for cell in cells {
            if let Some(&bad) = cell.iter().find(|&&v| v >= n_vertices) {
                return Err(MeshError::Validation(format!(
                    "cell {cell:?} references vertex {bad}, but only {n_vertices} vertices exist"
                )));
            }
            let s = Simplex::from_slice(cell)?;
            if s.0.len() > 16 {
                return Err(MeshError::Validation(format!(
                    "cell {cell:?} has dimension {}, above the supported maximum of 15",
                    s.dim()
                )));
            }
            if !seen_cells.insert(s.clone()) {
                return Err(MeshError::Validation(format!("duplicate cell {s:?}")));
            }
            let n = s.0.len();
            for mask in 1u32..(1u32 << n) {
                let face: SmallVec<[VertexId; 4]> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s.0[i])
                    .collect();
                all.insert(Simplex(face));
            }
        }

        let mut simplices: Vec<Simplex> = all.into_iter().collect();
        simplices.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

        let top = simplices.last().map_or(0, |s| s.dim());
        let mut dim_offsets = vec![0; top + 2];
        for s in &simplices {
            dim_offsets[s.dim() + 1] += 1;
        }
        for d in 1..dim_offsets.len() {
            dim_offsets[d] += dim_offsets[d - 1];
        }

        let index: HashMap<Simplex, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let facets = simplices
            .iter()
            .map(|s| {
                if s.dim() == 0 {
                    SmallVec::new()
                } else {
                    (0..s.0.len()).map(|p| index[&s.facet(p)]).collect()
                }
            })
            .collect();

        Ok(SimplicialComplex {
            coords,
            simplices,
            dim_offsets,
            facets,
            index,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.count_of_dim(0)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Highest simplex dimension (0 for a complex of isolated vertices).
    pub fn dim(&self) -> usize {
        self.dim_offsets.len().saturating_sub(2)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        if d + 1 >= self.dim_offsets.len() {
            0
        } else {
            self.dim_offsets[d + 1] - self.dim_offsets[d]
        }
    }

    /// Ids of all simplices of dimension `d`.
    pub fn ids_of_dim(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.dim_offsets.len() {
            0..0
        } else {
            self.dim_offsets[d]..self.dim_offsets[d + 1]
        }
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Facet ids of simplex `id`; entry `i` drops the `i`-th vertex.
    pub fn facets(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn id_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn id_of_vertices(&self, ids: &[VertexId]) -> Option<usize> {
        Simplex::from_slice(ids).ok().and_then(|s| self.id_of(&s))
    }

    pub fn embedding_dim(&self) -> usize {
        self.coords.first().map_or(0, Vec::len)
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|d| {
                let c = self.count_of_dim(d) as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Simplices that are not a proper face of any other simplex, in canonical order.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        let mut is_face = vec![false; self.len()];
        for f in &self.facets {
            for &id in f {
                is_face[id] = true;
            }
        }
        (0..self.len()).filter(|&i| !is_face[i]).collect()
    }
}
