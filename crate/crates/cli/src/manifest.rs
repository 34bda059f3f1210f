//! JSON run manifests: one code, one group, every lift written to disk.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use conelift::covers::LiftReport;
use conelift::io::{load_bundle, save_bundle};
use conelift::{CodeParams, CssCode, DistanceReport, FamilySpec, GroupSpec, HomOptions, UpperOptions};
use serde::{Deserialize, Serialize};

use crate::pipeline::{distances, Pipeline};
use crate::{InvariantViolation, SchemaError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InputSpec {
    Family(FamilySpec),
    /// Path to a JSON code bundle, relative to the manifest.
    Bundle(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    pub surjective_only: bool,
    pub dedupe: bool,
    pub node_budget: u64,
    /// Set to zero to skip distances.
    pub trials: u64,
    pub seed: u64,
    pub kernel_dim_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            surjective_only: false,
            dedupe: false,
            node_budget: 50_000_000,
            trials: 1000,
            seed: 0,
            kernel_dim_cap: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub input: InputSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub options: RunOptions,
    /// Output directory, relative to the manifest.
    pub output: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftSummary {
    pub index: usize,
    pub generator_images: Vec<usize>,
    pub params: CodeParams,
    pub report: LiftReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub status: &'static str,
    pub input: InputSpec,
    pub group: String,
    pub group_order: usize,
    pub options: RunOptions,
    pub base: CodeParams,
    pub generators: usize,
    pub relators: usize,
    pub homs: usize,
    pub lifts: Vec<LiftSummary>,
    pub all_pass: bool,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_distances(mut p: CodeParams, d: Option<&(DistanceReport, DistanceReport)>) -> CodeParams {
    if let Some((dx, dz)) = d {
        p.d_x = Some(dx.distance());
        p.d_z = Some(dz.distance());
    }
    p
}

pub fn load_manifest(path: &Path) -> anyhow::Result<RunManifest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| SchemaError(format!("{}: {e}", path.display())).into())
}

/// Runs the whole pipeline and writes, under the output directory:
/// `base.*`, `complex.json`, `homs.json`, `lift_NNN/{lift.*, voltage.json, distance.json}`
/// and `summary.json`. Fails with an [`InvariantViolation`] if any lift fails verification.
pub fn run_manifest(path: &Path) -> anyhow::Result<RunSummary> {
    let manifest = load_manifest(path)?;
    let root = path.parent().unwrap_or(Path::new("."));
    let out = root.join(&manifest.output);
    fs::create_dir_all(&out)?;
    let base: CssCode = match &manifest.input {
        InputSpec::Family(spec) => spec.build().map_err(|e| SchemaError(e.to_string()))?,
        InputSpec::Bundle(p) => load_bundle(&root.join(p))?.1,
    };
    let g = manifest.group.build().map_err(|e| SchemaError(e.to_string()))?;
    let opts = &manifest.options;
    let upper = UpperOptions {
        trials: opts.trials.max(1),
        seed: opts.seed,
        depth: 2,
    };
    save_bundle(&out, "base", &base)?;
    let pipeline = Pipeline::new(base)?;
    write_json(&out.join("complex.json"), &pipeline.complex.dump())?;
    let hom_opts = HomOptions {
        surjective_only: opts.surjective_only,
        dedupe: opts.dedupe,
        node_budget: opts.node_budget,
        ..HomOptions::default()
    };
    let mut summary = RunSummary {
        status: "ok",
        input: manifest.input.clone(),
        group: g.name().to_string(),
        group_order: g.order(),
        options: opts.clone(),
        base: pipeline.base.params(),
        generators: pipeline.presentation.generator_count(),
        relators: pipeline.presentation.relators.len(),
        homs: 0,
        lifts: Vec::new(),
        all_pass: true,
    };
    let voltages = match pipeline.voltages(&g, &hom_opts) {
        Ok(v) => v,
        Err(conelift::Error::NodeBudget { budget, found, partial }) => {
            summary.status = "budget";
            summary.homs = found;
            write_json(&out.join("homs.partial.json"), &partial)?;
            write_json(&out.join("summary.json"), &summary)?;
            return Err(conelift::Error::NodeBudget {
                budget,
                found,
                partial: Vec::new(),
            })
            .context("hom search stopped early; partial results written");
        }
        Err(e) => return Err(e.into()),
    };
    summary.homs = voltages.len();
    let images: Vec<&Vec<usize>> = voltages.iter().map(|v| &v.generator_images).collect();
    write_json(&out.join("homs.json"), &images)?;
    for (i, v) in voltages.iter().enumerate() {
        let dir = out.join(format!("lift_{i:03}"));
        fs::create_dir_all(&dir)?;
        let lift = pipeline.lift(v, &g)?;
        let report = pipeline.verify(&lift, &g)?;
        save_bundle(&dir, "lift", &lift.lifted)?;
        write_json(&dir.join("voltage.json"), &v.dump(&pipeline.complex))?;
        let d = if opts.trials > 0 {
            let d = distances(&lift.lifted, opts.kernel_dim_cap, upper)?;
            write_json(&dir.join("distance.json"), &[&d.0, &d.1])?;
            Some(d)
        } else {
            None
        };
        summary.all_pass &= report.all_pass();
        summary.lifts.push(LiftSummary {
            index: i,
            generator_images: v.generator_images.clone(),
            params: with_distances(lift.lifted.params(), d.as_ref()),
            report,
        });
    }
    if !summary.all_pass {
        summary.status = "invariant";
    }
    write_json(&out.join("summary.json"), &summary)?;
    if !summary.all_pass {
        return Err(InvariantViolation("a lift failed verification; see summary.json".into()).into());
    }
    Ok(summary)
}
