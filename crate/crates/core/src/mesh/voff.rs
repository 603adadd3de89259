//! The VOFF text format.
//!
//! ```text
//! VOFF k
//! nv nc
//! x1 ... xd | f1 ... fk        (nv vertex lines; d may be 0)
//! m i1 ... i{m+1}              (nc top-cell lines)
//! ```
//!
//! Lines starting with `#` are comments. Only top-dimensional cells are listed;
//! lower faces are synthesized on load.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{
    quantize, MeshError, MeshWithFunction, SimplicialComplex, VertexFunction, DEFAULT_PRECISION,
};

pub fn load_voff(path: impl AsRef<Path>) -> Result<MeshWithFunction, MeshError> {
    let text = fs::read_to_string(path)?;
    parse_voff(&text, DEFAULT_PRECISION)
}

pub fn save_voff(mesh: &MeshWithFunction, path: impl AsRef<Path>) -> Result<(), MeshError> {
    fs::write(path, write_voff(mesh))?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> MeshError {
    MeshError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, MeshError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("cannot parse `{tok}`")))
}

/// Parses VOFF text, quantizing coordinates and values to `precision` digits.
pub fn parse_voff(text: &str, precision: u32) -> Result<MeshWithFunction, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("VOFF") {
        return Err(parse_err(ln, "expected `VOFF k` header"));
    }
    let k: usize = parse_num(toks.next().ok_or_else(|| parse_err(ln, "missing k"))?, ln)?;
    if k == 0 || toks.next().is_some() {
        return Err(parse_err(ln, "malformed `VOFF k` header"));
    }

    let (ln, counts) = lines.next().ok_or_else(|| parse_err(ln, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| parse_num(t, ln))
        .collect::<Result<_, _>>()?;
    let [nv, nc] = counts[..] else {
        return Err(parse_err(ln, "expected `nv nc`"));
    };

    let mut coords = Vec::with_capacity(nv);
    let mut values = Vec::with_capacity(nv * k);
    let mut embed_dim = None;
    for _ in 0..nv {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {nv} vertex lines")))?;
        let (left, right) = line
            .split_once('|')
            .ok_or_else(|| parse_err(ln, "vertex line lacks `|` separator"))?;
        let xs: Vec<f64> = left
            .split_whitespace()
            .map(|t| parse_num::<f64>(t, ln).map(|x| quantize(x, precision)))
            .collect::<Result<_, _>>()?;
        match embed_dim {
            None => embed_dim = Some(xs.len()),
            Some(d) if d != xs.len() => {
                return Err(parse_err(ln, format!("expected {d} coordinates, found {}", xs.len())))
            }
            _ => {}
        }
        let fs: Vec<f64> = right
            .split_whitespace()
            .map(|t| parse_num(t, ln))
            .collect::<Result<_, _>>()?;
        if fs.len() != k {
            return Err(MeshError::DimensionMismatch {
                line: ln,
                expected: k,
                found: fs.len(),
            });
        }
        coords.push(xs);
        values.extend(fs);
    }
    if embed_dim == Some(0) {
        coords.clear();
    }

    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {nc} cell lines")))?;
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| parse_num(t, ln))
            .collect::<Result<_, _>>()?;
        let (&m, ids) = nums
            .split_first()
            .ok_or_else(|| parse_err(ln, "empty cell line"))?;
        if ids.len() != m + 1 {
            return Err(parse_err(
                ln,
                format!("cell of dimension {m} needs {} vertex ids, found {}", m + 1, ids.len()),
            ));
        }
        cells.push(ids.to_vec());
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the declared cells"));
    }

    let complex = SimplicialComplex::from_cells(nv, coords, &cells)?;
    let function = VertexFunction::new(k, values, precision)?;
    MeshWithFunction::new(complex, function)
}

/// Serializes a mesh, listing only its maximal simplices.
pub fn write_voff(mesh: &MeshWithFunction) -> String {
    let c = mesh.complex();
    let f = mesh.function();
    let p = f.precision() as usize;
    let top = c.maximal_simplices();
    let mut out = String::new();
    let _ = writeln!(out, "VOFF {}", f.k());
    let _ = writeln!(out, "{} {}", c.num_vertices(), top.len());
    for v in 0..c.num_vertices() {
        if let Some(xs) = c.coords().get(v) {
            for x in xs {
                let _ = write!(out, "{:.p$} ", quantize(*x, p as u32));
            }
        }
        out.push('|');
        for x in f.value(v) {
            let _ = write!(out, " {x:.p$}");
        }
        out.push('\n');
    }
    for id in top {
        let s = c.simplex(id);
        let _ = write!(out, "{}", s.dim());
        for v in s.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
