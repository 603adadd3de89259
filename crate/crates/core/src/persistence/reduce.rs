use super::FieldPrime;
use crate::filtration::ScalarFiltration;

/// A sparse column: (row position in filtration order, nonzero coefficient),
/// sorted by row.
type Column = Vec<(u32, u32)>;

/// Result of reducing the boundary matrix up to some dimension.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    /// (birth simplex, death simplex) ids.
    pub pairs: Vec<(usize, usize)>,
    /// Ids of simplices creating classes that never die.
    pub essential: Vec<usize>,
}

fn boundary(filt: &ScalarFiltration<'_>, pos_of: &[u32], id: usize, field: &FieldPrime) -> Column {
    let complex = filt.complex();
    let mut col: Column = complex
        .facets(id)
        .iter()
        .enumerate()
        .map(|(i, &f)| (pos_of[f], if i % 2 == 0 { 1 } else { field.neg(1) }))
        .collect();
    col.sort_unstable_by_key(|e| e.0);
    col
}

/// `target −= c · other`, both sorted.
fn eliminate(target: &mut Column, other: &Column, c: u32, field: &FieldPrime, scratch: &mut Column) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < other.len() {
        let ti = target.get(i).map_or(u32::MAX, |e| e.0);
        let oj = other.get(j).map_or(u32::MAX, |e| e.0);
        if ti < oj {
            scratch.push(target[i]);
            i += 1;
        } else if oj < ti {
            scratch.push((oj, field.sub_mul(0, c, other[j].1)));
            j += 1;
        } else {
            let v = field.sub_mul(target[i].1, c, other[j].1);
            if v != 0 {
                scratch.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    std::mem::swap(target, scratch);
}

/// Reduces columns of dimension `1..=max_degree + 1` with clearing,
/// highest dimension first, and reads off pairs and essential classes of
/// degrees `0..=max_degree`.
pub fn reduce(filt: &ScalarFiltration<'_>, max_degree: usize, field: &FieldPrime) -> Reduction {
    let complex = filt.complex();
    let order = filt.order();
    let n = order.len();
    let mut pos_of = vec![u32::MAX; complex.len()];
    for (pos, &id) in order.iter().enumerate() {
        pos_of[id] = pos as u32;
    }

    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); complex.dim() + 1];
    for (pos, &id) in order.iter().enumerate() {
        by_dim[complex.simplex(id).dim()].push(pos as u32);
    }

    // death_of[pos] = position of the column whose pivot is pos
    let mut death_of = vec![u32::MAX; n];
    let mut negative = vec![false; n];
    let mut reduced: Vec<Option<Column>> = vec![None; n];
    let mut scratch = Column::new();

    let top = (max_degree + 1).min(complex.dim());
    for d in (1..=top).rev() {
        for &pos in &by_dim[d] {
            if death_of[pos as usize] != u32::MAX {
                // cleared: this simplex is a pivot of a higher column
                continue;
            }
            let id = order[pos as usize];
            let mut col = boundary(filt, &pos_of, id, field);
            while let Some(&(low, coeff)) = col.last() {
                let other_pos = death_of[low as usize];
                if other_pos == u32::MAX {
                    break;
                }
                let other = reduced[other_pos as usize].as_ref().expect("pivot column kept");
                let c = field.mul(coeff, field.inv(other.last().expect("nonzero pivot").1));
                eliminate(&mut col, other, c, field, &mut scratch);
            }
            if let Some(&(low, _)) = col.last() {
                death_of[low as usize] = pos;
                negative[pos as usize] = true;
                reduced[pos as usize] = Some(col);
            }
        }
        // columns of dimension d are no longer needed once d − 1 starts
        for &pos in &by_dim[d] {
            reduced[pos as usize] = None;
        }
    }

    let mut out = Reduction::default();
    for d in 0..=max_degree.min(complex.dim()) {
        for &pos in &by_dim[d] {
            let pos = pos as usize;
            if negative[pos] {
                continue;
            }
            match death_of[pos] {
                u32::MAX => out.essential.push(order[pos]),
                death => out.pairs.push((order[pos], order[death as usize])),
            }
        }
    }
    out
}
