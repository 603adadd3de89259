use super::{MeshError, MeshWithFunction, SimplicialComplex, VertexFunction};
use crate::interp::Interpolant;

/// First barycentric subdivision.
///
/// The new vertex for simplex id `s` gets id `s`, so original vertices keep
/// their ids and values. Values at the other barycenters come from
/// `interpolant`; coordinates (when present) are barycenters of the embedding.
pub fn barycentric_subdivide(
    mesh: &MeshWithFunction,
    interpolant: &dyn Interpolant,
) -> Result<MeshWithFunction, MeshError> {
    let complex = mesh.complex();
    let k = mesh.k();
    let n = complex.len();

    let bound = interpolant.bind(mesh);
    let mut values = Vec::with_capacity(n * k);
    let mut buf = vec![0.0; k];
    for id in 0..n {
        let verts = complex.simplex(id).vertices();
        if verts.len() == 1 {
            values.extend_from_slice(mesh.function().value(verts[0]));
        } else {
            let w = vec![1.0 / verts.len() as f64; verts.len()];
            bound.evaluate_into(id, &w, &mut buf);
            values.extend_from_slice(&buf);
        }
    }

    let coords = if complex.embedding_dim() > 0 {
        (0..n)
            .map(|id| {
                let verts = complex.simplex(id).vertices();
                let mut c = vec![0.0; complex.embedding_dim()];
                for &v in verts {
                    for (ci, x) in c.iter_mut().zip(&complex.coords()[v]) {
                        *ci += x / verts.len() as f64;
                    }
                }
                c
            })
            .collect()
    } else {
        Vec::new()
    };

    // top cells: full flags of each maximal simplex
    let mut cells = Vec::new();
    for top in complex.maximal_simplices() {
        let mut chain = vec![top];
        collect_flags(complex, top, &mut chain, &mut cells);
    }

    let sd = SimplicialComplex::from_cells(n, coords, &cells)?;
    let function = VertexFunction::new(k, values, mesh.function().precision())?;
    MeshWithFunction::new(sd, function)
}

fn collect_flags(
    complex: &SimplicialComplex,
    current: usize,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let facets = complex.facets(current);
    if facets.is_empty() {
        out.push(chain.clone());
        return;
    }
    for &f in facets {
        chain.push(f);
        collect_flags(complex, f, chain, out);
        chain.pop();
    }
}

/// Applies [`barycentric_subdivide`] `times` times.
pub fn barycentric_subdivide_times(
    mesh: &MeshWithFunction,
    interpolant: &dyn Interpolant,
    times: usize,
) -> Result<MeshWithFunction, MeshError> {
    let mut current = mesh.clone();
    for _ in 0..times {
        current = barycentric_subdivide(&current, interpolant)?;
    }
    Ok(current)
}
