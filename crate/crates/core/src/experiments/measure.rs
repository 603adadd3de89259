use super::ExperimentError;
use crate::mesh::{SimplicialComplex, VertexFunction, DEFAULT_PRECISION};

fn parse_err(line: usize, msg: impl Into<String>) -> ExperimentError {
    ExperimentError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads a plain OFF surface. Polygons are fan-triangulated; colors after
/// the vertex indices are ignored.
pub fn parse_off(text: &str) -> Result<SimplicialComplex, ExperimentError> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        l.split_whitespace().map(move |t| (i + 1, t))
    });
    let (ln, header) = tokens.next().ok_or_else(|| parse_err(0, "empty file"))?;
    if header != "OFF" {
        return Err(parse_err(ln, "expected `OFF` header"));
    }
    let mut lines: Vec<(usize, Vec<&str>)> = Vec::new();
    for (ln, tok) in tokens {
        match lines.last_mut() {
            Some((l, v)) if *l == ln => v.push(tok),
            _ => lines.push((ln, vec![tok])),
        }
    }
    let mut lines = lines.into_iter();
    let num = |tok: &str, ln: usize| -> Result<usize, ExperimentError> {
        tok.parse().map_err(|_| parse_err(ln, format!("cannot parse `{tok}`")))
    };
    let (ln, counts) = lines.next().ok_or_else(|| parse_err(1, "missing counts"))?;
    if counts.len() < 2 {
        return Err(parse_err(ln, "expected `nv nf [ne]`"));
    }
    let nv = num(counts[0], ln)?;
    let nf = num(counts[1], ln)?;

    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, toks) = lines.next().ok_or_else(|| parse_err(0, "missing vertex lines"))?;
        if toks.len() < 3 {
            return Err(parse_err(ln, "expected three coordinates"));
        }
        let xyz = toks[..3]
            .iter()
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(ln, format!("cannot parse `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        coords.push(xyz);
    }
    let mut cells = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (ln, toks) = lines.next().ok_or_else(|| parse_err(0, "missing face lines"))?;
        let m = num(toks[0], ln)?;
        if m < 3 || toks.len() < m + 1 {
            return Err(parse_err(ln, "a face needs at least three vertex indices"));
        }
        let idx = toks[1..=m]
            .iter()
            .map(|t| num(t, ln))
            .collect::<Result<Vec<_>, _>>()?;
        for w in 1..m - 1 {
            cells.push(vec![idx[0], idx[w], idx[w + 1]]);
        }
    }
    Ok(SimplicialComplex::from_cells(nv, coords, &cells)?)
}

fn sub(a: &[f64], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Two-component shape measure of a surface in R³.
///
/// With `c` the area-weighted mean of triangle centroids and
/// `w = Σ (v − c)‖v − c‖ / Σ ‖v − c‖²`, the components are
/// `1 − dist(v, line through c along w) / max` and
/// `1 − dist(v, plane through c normal to w) / max`.
pub fn principal_measure(complex: &SimplicialComplex) -> Result<VertexFunction, ExperimentError> {
    if complex.embedding_dim() != 3 {
        return Err(ExperimentError::Degenerate(format!(
            "needs vertex coordinates in R^3, found dimension {}",
            complex.embedding_dim()
        )));
    }
    let coords = complex.coords();
    let mut centre = [0.0; 3];
    let mut area = 0.0;
    for t in complex.ids_of_dim(2) {
        let v = complex.simplex(t).vertices();
        let (p, q, r) = (&coords[v[0]], &coords[v[1]], &coords[v[2]]);
        let o = [p[0], p[1], p[2]];
        let a = cross(&sub(q, &o), &sub(r, &o));
        let w = dot(&a, &a).sqrt() / 2.0;
        for i in 0..3 {
            centre[i] += w * (p[i] + q[i] + r[i]) / 3.0;
        }
        area += w;
    }
    if !(area > 0.0) {
        return Err(ExperimentError::Degenerate("surface has zero area".into()));
    }
    centre.iter_mut().for_each(|x| *x /= area);

    let mut num = [0.0; 3];
    let mut den = 0.0;
    for p in coords {
        let d = sub(p, &centre);
        let n2 = dot(&d, &d);
        let n = n2.sqrt();
        for i in 0..3 {
            num[i] += d[i] * n;
        }
        den += n2;
    }
    let w = num.map(|x| x / den);
    let len = dot(&w, &w).sqrt();
    if !(len > 1e-12) {
        return Err(ExperimentError::Degenerate("principal direction vanishes".into()));
    }
    let axis = w.map(|x| x / len);

    let (to_line, to_plane): (Vec<f64>, Vec<f64>) = coords
        .iter()
        .map(|p| {
            let d = sub(p, &centre);
            let h = dot(&d, &axis);
            ((dot(&d, &d) - h * h).max(0.0).sqrt(), h.abs())
        })
        .unzip();
    let rescale = |d: Vec<f64>, what: &str| -> Result<Vec<f64>, ExperimentError> {
        let max = d.iter().copied().fold(0.0, f64::max);
        if !(max > 0.0) {
            return Err(ExperimentError::Degenerate(format!("all vertices lie on the {what}")));
        }
        Ok(d.into_iter().map(|x| 1.0 - x / max).collect())
    };
    let phi1 = rescale(to_line, "principal line")?;
    let phi2 = rescale(to_plane, "principal plane")?;
    let values = phi1.into_iter().zip(phi2).flat_map(|(a, b)| [a, b]).collect();
    Ok(VertexFunction::new(2, values, DEFAULT_PRECISION)?)
}
