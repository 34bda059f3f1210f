//! MatrixMarket, alist and JSON bundle formats for parity-check matrices.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codes::{CssCode, Labels};
use crate::error::{Error, Result};
use crate::f2la::BitMatrix;

const MTX_HEADER: &str = "%%MatrixMarket matrix coordinate pattern general";

/// Writes `m` as a coordinate pattern file. `role` goes into the `%% css` comment line.
pub fn write_mtx(m: &BitMatrix, role: &str) -> String {
    let mut out = format!(
        "{MTX_HEADER}\n%% css role={role} n={}\n{} {} {}\n",
        m.cols(),
        m.rows(),
        m.cols(),
        m.count_ones()
    );
    for (r, c) in m.entries() {
        out.push_str(&format!("{} {}\n", r + 1, c + 1));
    }
    out
}

/// Reads a coordinate file. Pattern files give ones; integer files are reduced mod 2.
/// Returns the matrix and the role from the `%% css` comment, if present.
pub fn read_mtx(text: &str) -> Result<(BitMatrix, Option<String>)> {
    let err = |m: String| Error::parse("MatrixMarket", m);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() < 4 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(err(format!("unsupported header {header:?}")));
    }
    let pattern = match fields[3].as_str() {
        "pattern" => true,
        "integer" => false,
        other => return Err(err(format!("unsupported field {other}"))),
    };
    let mut role = None;
    let mut size: Option<(usize, usize, usize)> = None;
    let mut m = BitMatrix::zeros(0, 0);
    let mut seen = 0;
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('%') {
            if let Some(rest) = comment.trim_start_matches('%').trim().strip_prefix("css") {
                role = rest
                    .split_whitespace()
                    .find_map(|kv| kv.strip_prefix("role="))
                    .map(str::to_string);
            }
            continue;
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(format!("line {}: bad number {t:?}", lineno + 2))))
            .collect::<Result<_>>()?;
        match size {
            None => {
                let [r, c, nnz] = nums[..] else {
                    return Err(err("size line needs three numbers".into()));
                };
                if r < 0 || c < 0 || nnz < 0 {
                    return Err(err("negative size".into()));
                }
                size = Some((r as usize, c as usize, nnz as usize));
                m = BitMatrix::zeros(r as usize, c as usize);
            }
            Some((rows, cols, _)) => {
                let want = if pattern { 2 } else { 3 };
                if nums.len() != want {
                    return Err(err(format!("line {}: expected {want} numbers", lineno + 2)));
                }
                let (r, c) = (nums[0], nums[1]);
                if r < 1 || c < 1 || r as usize > rows || c as usize > cols {
                    return Err(err(format!("line {}: entry ({r},{c}) out of range", lineno + 2)));
                }
                let one = pattern || nums[2].rem_euclid(2) == 1;
                if one {
                    m.flip(r as usize - 1, c as usize - 1);
                }
                seen += 1;
            }
        }
    }
    let (_, _, nnz) = size.ok_or_else(|| err("missing size line".into()))?;
    if seen != nnz {
        return Err(err(format!("expected {nnz} entries, found {seen}")));
    }
    Ok((m, role))
}

/// alist format: the m×n matrix is listed by columns and then by rows, 1-based, zero padded.
pub fn write_alist(h: &BitMatrix) -> String {
    let (m, n) = h.shape();
    let t = h.transpose();
    let col_w = h.col_weights();
    let row_w = h.row_weights();
    let max_c = col_w.iter().copied().max().unwrap_or(0);
    let max_r = row_w.iter().copied().max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let padded = |supp: Vec<usize>, width: usize| {
        let mut v: Vec<usize> = supp.into_iter().map(|i| i + 1).collect();
        v.resize(width.max(v.len()), 0);
        join(&v)
    };
    let mut out = format!("{n} {m}\n{max_c} {max_r}\n{}\n{}\n", join(&col_w), join(&row_w));
    for c in 0..n {
        out.push_str(&padded(t.row_support(c), max_c));
        out.push('\n');
    }
    for r in 0..m {
        out.push_str(&padded(h.row_support(r), max_r));
        out.push('\n');
    }
    out
}

pub fn read_alist(text: &str) -> Result<BitMatrix> {
    let err = |m: String| Error::parse("alist", m);
    let mut nums = text.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| err(format!("bad number {t:?}"))));
    let mut next = || nums.next().unwrap_or_else(|| Err(err("unexpected end of file".into())));
    let (n, m) = (next()?, next()?);
    let (max_c, max_r) = (next()?, next()?);
    let col_w: Vec<usize> = (0..n).map(|_| next()).collect::<Result<_>>()?;
    let row_w: Vec<usize> = (0..m).map(|_| next()).collect::<Result<_>>()?;
    let mut h = BitMatrix::zeros(m, n);
    for (c, &w) in col_w.iter().enumerate() {
        let entries: Vec<usize> = (0..max_c).map(|_| next()).collect::<Result<_>>()?;
        let rows: Vec<usize> = entries.into_iter().filter(|&r| r != 0).collect();
        if rows.len() != w || rows.iter().any(|&r| r > m) {
            return Err(err(format!("column {} does not match its weight", c + 1)));
        }
        for r in rows {
            h.set(r - 1, c, true);
        }
    }
    for (r, &w) in row_w.iter().enumerate() {
        let entries: Vec<usize> = (0..max_r).map(|_| next()).collect::<Result<_>>()?;
        let cols: Vec<usize> = entries.into_iter().filter(|&c| c != 0).collect();
        if cols.len() != w || cols.iter().any(|&c| c == 0 || c > n || !h.get(r, c - 1)) {
            return Err(err(format!("row {} disagrees with the column lists", r + 1)));
        }
    }
    Ok(h)
}

/// JSON code bundle pointing at two MatrixMarket files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeBundle {
    pub name: String,
    pub hx: PathBuf,
    pub hz: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

/// Writes `<name>.json`, `<name>.hx.mtx` and `<name>.hz.mtx` into `dir`; returns the bundle path.
pub fn save_bundle(dir: &Path, name: &str, code: &CssCode) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let hx = PathBuf::from(format!("{name}.hx.mtx"));
    let hz = PathBuf::from(format!("{name}.hz.mtx"));
    fs::write(dir.join(&hx), write_mtx(code.hx(), "hx"))?;
    fs::write(dir.join(&hz), write_mtx(code.hz(), "hz"))?;
    let bundle = CodeBundle {
        name: name.to_string(),
        hx,
        hz,
        labels: Some(code.labels().clone()),
    };
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, serde_json::to_string_pretty(&bundle)?)?;
    Ok(path)
}

/// Loads a bundle; matrix paths are relative to the bundle file.
pub fn load_bundle(path: &Path) -> Result<(String, CssCode)> {
    let bundle: CodeBundle = serde_json::from_str(&fs::read_to_string(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let (hx, _) = read_mtx(&fs::read_to_string(base.join(&bundle.hx))?)?;
    let (hz, _) = read_mtx(&fs::read_to_string(base.join(&bundle.hz))?)?;
    let code = match bundle.labels {
        Some(labels) => CssCode::with_labels(hx, hz, labels)?,
        None => CssCode::new(hx, hz)?,
    };
    Ok((bundle.name, code))
}
