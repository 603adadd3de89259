use super::{FiltrationError, SimplexSet};
use crate::mesh::{MeshWithFunction, SimplicialComplex};

/// A one-parameter filtration of (a subcomplex of) a complex.
///
/// Each simplex has an entry value; simplices with entry `+∞` are not part of
/// the filtration. The total order sorts by entry value, then canonical id,
/// which is the same as (entry, dimension, vertex tuple).
#[derive(Clone, Debug)]
pub struct ScalarFiltration<'a> {
    complex: &'a SimplicialComplex,
    entry: Vec<f64>,
    order: Vec<usize>,
    levels: Vec<f64>,
}

/// Lower-star filtration of vertex values `g`: a simplex enters at the max of
/// its vertex values.
pub fn build_scalar_filtration<'a>(mesh: &'a MeshWithFunction, g: &[f64]) -> ScalarFiltration<'a> {
    let complex = mesh.complex();
    assert_eq!(g.len(), complex.num_vertices(), "one value per vertex");
    let entry = (0..complex.len())
        .map(|id| {
            complex
                .simplex(id)
                .vertices()
                .iter()
                .map(|&v| g[v])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    ScalarFiltration::from_valid_entries(complex, entry)
}

impl<'a> ScalarFiltration<'a> {
    /// Filtration from explicit entry values, checking that every face enters
    /// no later than its cofaces.
    pub fn from_entries(
        complex: &'a SimplicialComplex,
        entry: Vec<f64>,
    ) -> Result<Self, FiltrationError> {
        assert_eq!(entry.len(), complex.len(), "one entry per simplex");
        for id in 0..complex.len() {
            for &face in complex.facets(id) {
                if !(entry[face] <= entry[id]) && entry[id] != f64::INFINITY {
                    return Err(FiltrationError::NotAFiltration { simplex: id, face });
                }
            }
        }
        Ok(Self::from_valid_entries(complex, entry))
    }

    pub(crate) fn from_valid_entries(complex: &'a SimplicialComplex, entry: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..complex.len())
            .filter(|&id| entry[id] < f64::INFINITY)
            .collect();
        order.sort_by(|&a, &b| entry[a].total_cmp(&entry[b]).then(a.cmp(&b)));
        let mut levels: Vec<f64> = order.iter().map(|&id| entry[id]).collect();
        levels.dedup();
        ScalarFiltration {
            complex,
            entry,
            order,
            levels,
        }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    /// Entry value of `id`, `+∞` when absent.
    pub fn entry(&self, id: usize) -> f64 {
        self.entry[id]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entry
    }

    /// Simplex ids in filtration order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Distinct entry values, increasing.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Simplices with entry value `≤ s`.
    pub fn sublevel_at(&self, s: f64) -> SimplexSet {
        let mut set = SimplexSet::empty(self.complex.len());
        for &id in &self.order {
            if self.entry[id] > s {
                break;
            }
            set.insert(id);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cycle_cells, tetrahedron_boundary};
    use crate::filtration::{scalar_reduce, sublevel};

    fn path() -> MeshWithFunction {
        MeshWithFunction::from_cells(
            &[vec![0.0], vec![1.0], vec![2.0]],
            &[vec![0, 1], vec![1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn path_order_and_levels() {
        let m = path();
        let g: Vec<f64> = m.function().values().to_vec();
        let f = build_scalar_filtration(&m, &g);
        let c = m.complex();
        let e01 = c.id_of_vertices(&[0, 1]).unwrap();
        let e12 = c.id_of_vertices(&[1, 2]).unwrap();
        assert_eq!(f.order(), &[0, 1, e01, 2, e12]);
        assert_eq!(f.levels(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn constant_values_order_by_dimension_then_tuple() {
        let m = MeshWithFunction::from_cells(&vec![vec![0.0]; 3], &cycle_cells(3)).unwrap();
        let f = build_scalar_filtration(&m, &[0.0; 3]);
        assert_eq!(f.order(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(f.levels(), &[0.0]);
    }

    #[test]
    fn tetrahedron_level_zero() {
        let m = tetrahedron_boundary();
        let g = scalar_reduce(m.function(), &[0.5, 0.5], &[0.0, 0.0]).unwrap();
        assert_eq!(g, vec![0.0, 2.0, 0.0, 2.0]);
        let f = build_scalar_filtration(&m, &g);
        assert_eq!(&f.sublevel_at(0.0), sublevel(&m, &[0.0, 0.0]).set());
    }

    #[test]
    fn faces_must_enter_first() {
        let m = path();
        let c = m.complex();
        let mut entry = vec![0.0; c.len()];
        entry[0] = 1.0;
        assert!(ScalarFiltration::from_entries(c, entry.clone()).is_err());
        entry[0] = f64::INFINITY;
        entry[3] = f64::INFINITY;
        assert!(ScalarFiltration::from_entries(c, entry).is_ok());
    }
}
