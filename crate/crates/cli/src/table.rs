//! Rebuilds published table rows and flags each one MATCH, MISMATCH or SKIPPED.

use std::fmt;
use std::str::FromStr;

use conelift::distance::{distance_upper, Side};
use conelift::{Distance, FamilyTag, HomOptions, UpperOptions};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{table_group, table_rows, TableRow};
use crate::pipeline::{distances, figure_of_merit, Pipeline};
use crate::SchemaError;

/// Which rows to rebuild: every row, or rows of the listed family parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowSelector {
    All,
    /// Each entry is `[a, b]` or `[a, b, c, d]`; `index` optionally narrows to one cover index.
    Params(Vec<(Vec<usize>, Option<usize>)>),
}

impl RowSelector {
    fn selects(&self, row: &TableRow) -> bool {
        match self {
            RowSelector::All => true,
            RowSelector::Params(list) => list.iter().any(|(params, index)| {
                let f = row.family;
                let ours = if params.len() == 4 { vec![f.a, f.b, f.c, f.d] } else { vec![f.a, f.b] };
                ours == *params && index.is_none_or(|i| i == row.index)
            }),
        }
    }
}

impl FromStr for RowSelector {
    type Err = SchemaError;

    /// `all`, or `;`-separated `a,b[,c,d][@index]`.
    fn from_str(s: &str) -> Result<Self, SchemaError> {
        if s.trim() == "all" {
            return Ok(RowSelector::All);
        }
        let bad = || SchemaError(format!("row selector {s:?}: expected `all` or `a,b[,c,d][@index];...`"));
        let list = s
            .split(';')
            .map(|part| {
                let (params, index) = match part.split_once('@') {
                    Some((p, i)) => (p, Some(i.trim().parse().map_err(|_| bad())?)),
                    None => (part, None),
                };
                let nums = params
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                match nums.len() {
                    2 | 4 => Ok((nums, index)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RowSelector::Params(list))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableOptions {
    pub trials: u64,
    pub seed: u64,
    /// How many `(n, k)`-matching lifts get a distance search.
    pub max_candidates: usize,
    pub kernel_dim_cap: usize,
    pub node_budget: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            trials: 1000,
            seed: 0,
            max_candidates: 4,
            kernel_dim_cap: 20,
            node_budget: 50_000_000,
        }
    }
}

/// Parameters of the lift reported for a row.
#[derive(Clone, Debug, Serialize)]
pub struct Found {
    pub n: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    /// Position of the voltage among the sorted, deduplicated surjective assignments.
    pub hom_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    #[serde(skip)]
    pub row: TableRow,
    /// `max(w_X, w_Z, q_X, q_Z)` of the base code.
    pub weight: usize,
    pub status: Status,
    pub found: Option<Found>,
    pub note: String,
}

impl RowResult {
    pub fn merit(&self) -> Option<f64> {
        self.found
            .as_ref()
            .map(|f| figure_of_merit(f.n, f.k, f.d_x.value, f.d_z.value))
    }
}

pub fn reproduce_table(tag: FamilyTag, selector: &RowSelector, opts: &TableOptions) -> anyhow::Result<Vec<RowResult>> {
    let rows: Vec<TableRow> = table_rows(tag).into_iter().filter(|r| selector.selects(r)).collect();
    if rows.is_empty() {
        return Err(SchemaError(format!("no {tag} rows match the selector")).into());
    }
    rows.par_iter().map(|row| reproduce_row(row, opts)).collect()
}

fn skipped(row: &TableRow, weight: usize, note: impl Into<String>) -> RowResult {
    RowResult {
        row: *row,
        weight,
        status: Status::Skipped,
        found: None,
        note: note.into(),
    }
}

fn within(row: &TableRow, f: &Found) -> bool {
    f.n == row.n && f.k == row.k && f.d_x.value <= row.d_x && f.d_z.value <= row.d_z
}

fn reproduce_row(row: &TableRow, opts: &TableOptions) -> anyhow::Result<RowResult> {
    let base = row.family.build()?;
    let weight = base.params().max_weight();
    let upper = UpperOptions {
        trials: opts.trials,
        seed: opts.seed,
        depth: 2,
    };
    if row.index == 1 {
        let (dx, dz) = distances(&base, opts.kernel_dim_cap, upper)?;
        let found = Found {
            n: base.n(),
            k: base.k(),
            d_x: dx.distance(),
            d_z: dz.distance(),
            hom_index: 0,
        };
        let status = if within(row, &found) { Status::Match } else { Status::Mismatch };
        return Ok(RowResult {
            row: *row,
            weight,
            status,
            found: Some(found),
            note: String::new(),
        });
    }
    let Some(g) = table_group(row.group) else {
        return Ok(skipped(row, weight, "group-unsupported"));
    };
    let pipeline = Pipeline::new(base)?;
    let hom_opts = HomOptions {
        node_budget: opts.node_budget,
        ..HomOptions::surjective_deduped()
    };
    let voltages = match pipeline.voltages(&g, &hom_opts) {
        Ok(v) => v,
        Err(e @ (conelift::Error::NodeBudget { .. } | conelift::Error::Unsimplifiable { .. })) => {
            return Ok(skipped(row, weight, format!("budget: {e}")));
        }
        Err(e) => return Err(e.into()),
    };
    let mut ks = Vec::new();
    let mut candidates = Vec::new();
    for (i, v) in voltages.iter().enumerate() {
        let lift = pipeline.lift(v, &g)?;
        ks.push(lift.lifted.k());
        if lift.lifted.n() == row.n && lift.lifted.k() == row.k && candidates.len() < opts.max_candidates {
            candidates.push((i, lift));
        }
    }
    if candidates.is_empty() {
        ks.sort_unstable();
        ks.dedup();
        return Ok(RowResult {
            row: *row,
            weight,
            status: Status::Mismatch,
            found: None,
            note: format!("{} lifts, none with n={} k={}; k values {ks:?}", voltages.len(), row.n, row.k),
        });
    }
    let mut best: Option<Found> = None;
    for (i, lift) in candidates {
        let dx = distance_upper(&lift.lifted, Side::X, upper)?;
        let dz = distance_upper(&lift.lifted, Side::Z, upper)?;
        let f = Found {
            n: lift.lifted.n(),
            k: lift.lifted.k(),
            d_x: dx.distance(),
            d_z: dz.distance(),
            hom_index: i,
        };
        if best.as_ref().is_none_or(|b| better(row, &f, b)) {
            best = Some(f);
        }
    }
    let best = best.expect("at least one candidate");
    let status = if within(row, &best) { Status::Match } else { Status::Mismatch };
    Ok(RowResult {
        row: *row,
        weight,
        status,
        found: Some(best),
        note: format!("{} lifts", voltages.len()),
    })
}

/// Within the published bounds beats outside them. Among lifts within, larger distances
/// win; among lifts outside, the ones closest to the bounds win.
fn better(row: &TableRow, f: &Found, than: &Found) -> bool {
    let key = |f: &Found| (f.d_x.value.min(f.d_z.value), f.d_x.value + f.d_z.value);
    match (within(row, f), within(row, than)) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => key(f) > key(than),
        (false, false) => key(f) < key(than),
    }
}

/// CSV with the tables' columns, then the published parameters, the flag and a note.
pub fn to_csv(tag: FamilyTag, results: &[RowResult]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let with_cd = tag == FamilyTag::VR;
    let mut header = vec!["a", "b"];
    if with_cd {
        header.extend(["c", "d"]);
    }
    header.extend(["W", "index", "group", "n", "k", "dX<=", "dZ<=", "kd2/n", "table", "status", "note"]);
    w.write_record(&header)?;
    for r in results {
        let f = r.row.family;
        let mut rec = vec![f.a.to_string(), f.b.to_string()];
        if with_cd {
            rec.extend([f.c.to_string(), f.d.to_string()]);
        }
        rec.extend([r.weight.to_string(), r.row.index.to_string(), r.row.group.to_string()]);
        match &r.found {
            Some(found) => rec.extend([
                found.n.to_string(),
                found.k.to_string(),
                found.d_x.value.to_string(),
                found.d_z.value.to_string(),
                format!("{:.2}", r.merit().unwrap_or(0.0)),
            ]),
            None => rec.extend(std::iter::repeat_n(String::new(), 5)),
        }
        let row = r.row;
        rec.push(format!("[[{},{},({},{})]]", row.n, row.k, row.d_x, row.d_z));
        rec.push(r.status.to_string());
        rec.push(r.note.clone());
        w.write_record(&rec)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
