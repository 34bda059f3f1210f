use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use conelift::covers::{lift_code, VoltageEntry};
use conelift::distance::{distance_exact, distance_upper};
use conelift::io::{load_bundle, read_alist, read_mtx, save_bundle};
use conelift::products::{balanced_product, check_lpc_equivalence, cycle_voltages};
use conelift::{ClassicalCode, CssCode, FamilySpec, FamilyTag, HomOptions, Side, UpperOptions, VoltageAssignment};
use conelift_cli::catalog::parse_group;
use conelift_cli::manifest::run_manifest;
use conelift_cli::pipeline::{distances, Pipeline};
use conelift_cli::table::{reproduce_table, to_csv, RowSelector, TableOptions};
use conelift_cli::{exit_code, InvariantViolation};
use serde::Serialize;

/// Lifted CSS codes from covers of Tanner cone-complexes.
#[derive(Parser)]
#[command(name = "conelift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Family codes built from presentation complexes.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Tanner cone-complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Regular covers and the lifted codes they define.
    #[command(subcommand)]
    Lift(LiftCmd),
    /// n, k, weights and distances of a code bundle.
    Params(ParamsArgs),
    /// X and Z distances with certified witnesses.
    Distance(DistanceArgs),
    /// Hypergraph products.
    #[command(subcommand)]
    Hpc(HpcCmd),
    /// Balanced products of lifted codes.
    #[command(subcommand)]
    Product(ProductCmd),
    /// Executable equivalence checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Rebuild published table rows and flag each one.
    ReproduceTable(TableArgs),
    /// Execute a JSON run manifest.
    Run { manifest: PathBuf },
}

#[derive(Subcommand)]
enum FamilyCmd {
    Build {
        #[arg(long)]
        tag: FamilyTag,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Rows of strips (EL and VL only).
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Dump vertices, edges and faces as JSON, with presentation statistics.
    Build {
        code: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GroupArg {
    /// A name (Z3, A4, Z3xZ3, Z9:Z3, SL(2,3), ...), inline JSON, or a JSON file.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand)]
enum LiftCmd {
    /// Enumerate flat voltage assignments and write every lift.
    Enumerate {
        code: PathBuf,
        #[command(flatten)]
        group: GroupArg,
        /// Keep non-surjective assignments.
        #[arg(long)]
        all_homs: bool,
        /// Keep assignments that differ by a group automorphism.
        #[arg(long)]
        keep_duplicates: bool,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lift a code with a voltage dump.
    Apply {
        code: PathBuf,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        voltage: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ParamsArgs {
    code: PathBuf,
    /// Exact distances when the kernel dimension is at most this.
    #[arg(long, default_value_t = 20)]
    kernel_cap: usize,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip distances.
    #[arg(long)]
    no_distance: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    X,
    Z,
    Both,
}

#[derive(Args)]
struct DistanceArgs {
    code: PathBuf,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    side: SideArg,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Required for the estimator; ignored with `--exact`.
    #[arg(long, required_unless_present = "exact")]
    seed: Option<u64>,
    /// Row combinations per information set, 1 to 3.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Enumerate the kernel instead of estimating.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 24)]
    kernel_cap: usize,
}

#[derive(Subcommand)]
enum HpcCmd {
    Build {
        #[arg(long = "h1")]
        h1: Option<PathBuf>,
        #[arg(long = "cycle1")]
        cycle1: Option<usize>,
        #[arg(long = "h2")]
        h2: Option<PathBuf>,
        #[arg(long = "cycle2")]
        cycle2: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "hpc")]
        name: String,
    },
}

#[derive(Subcommand)]
enum ProductCmd {
    /// Balanced product of two lifts of code bundles.
    Balanced {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        left_voltage: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        right_voltage: PathBuf,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "balanced")]
        name: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Goursat lift of a cycle product against the lifted product code, over all flat pairs.
    LpcEquivalence {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        cycles: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = ["Z2".to_string(), "Z3".to_string()])]
        groups: Vec<String>,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    tag: FamilyTag,
    /// `all`, or `a,b[,c,d][@index]` entries separated by `;`.
    #[arg(long, default_value = "all")]
    rows: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_candidates: usize,
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load_code(path: &Path) -> Result<CssCode> {
    Ok(load_bundle(path).with_context(|| format!("loading {}", path.display()))?.1)
}

fn load_voltage(path: &Path) -> Result<Vec<VoltageEntry>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn classical(h: Option<PathBuf>, cycle: Option<usize>) -> Result<ClassicalCode> {
    match (h, cycle) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let m = if path.extension().is_some_and(|e| e == "alist") {
                read_alist(&text)?
            } else {
                read_mtx(&text)?.0
            };
            Ok(ClassicalCode::new(m)?)
        }
        (None, Some(len)) if len >= 2 => Ok(ClassicalCode::repetition_cycle(len)),
        _ => bail!(conelift_cli::SchemaError("give exactly one of a matrix file or a cycle length ≥ 2".into())),
    }
}

#[derive(Serialize)]
struct LiftOut {
    index: usize,
    generator_images: Vec<usize>,
    n: usize,
    k: usize,
    verified: bool,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Family(FamilyCmd::Build { tag, a, b, c, d, rows, out, name }) => {
            let spec = FamilySpec { tag, a, b, c, d, r: rows };
            let code = spec.build()?;
            let name = name.unwrap_or_else(|| spec.to_string().replace(['(', ')', ','], "_").trim_end_matches('_').to_string());
            let path = save_bundle(&out, &name, &code)?;
            eprintln!("wrote {}", path.display());
            print_json(&code.params())
        }
        Command::Complex(ComplexCmd::Build { code, out }) => {
            let p = Pipeline::new(load_code(&code)?)?;
            #[derive(Serialize)]
            struct Out {
                vertices: usize,
                edges: usize,
                faces: usize,
                euler_characteristic: i64,
                generators: usize,
                relators: usize,
                simplified: bool,
            }
            let k = &p.complex;
            if let Some(out) = out {
                fs::write(&out, serde_json::to_string_pretty(&k.dump())?)?;
            }
            print_json(&Out {
                vertices: k.vertex_count(),
                edges: k.edge_count(),
                faces: k.face_count(),
                euler_characteristic: k.euler_characteristic(),
                generators: p.presentation.generator_count(),
                relators: p.presentation.relators.len(),
                simplified: p.presentation.complete,
            })
        }
        Command::Lift(LiftCmd::Enumerate { code, group, all_homs, keep_duplicates, node_budget, out }) => {
            let g = parse_group(&group.group)?;
            let p = Pipeline::new(load_code(&code)?)?;
            let opts = HomOptions {
                surjective_only: !all_homs,
                dedupe: !keep_duplicates,
                node_budget,
                ..HomOptions::default()
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for (i, v) in p.voltages(&g, &opts)?.iter().enumerate() {
                let lift = p.lift(v, &g)?;
                let verified = p.verify(&lift, &g)?.all_pass();
                ok &= verified;
                let dir = out.join(format!("lift_{i:03}"));
                save_bundle(&dir, "lift", &lift.lifted)?;
                fs::write(dir.join("voltage.json"), serde_json::to_string_pretty(&v.dump(&p.complex))?)?;
                rows.push(LiftOut {
                    index: i,
                    generator_images: v.generator_images.clone(),
                    n: lift.lifted.n(),
                    k: lift.lifted.k(),
                    verified,
                });
            }
            print_json(&rows)?;
            if !ok {
                bail!(InvariantViolation("a lift failed verification".into()));
            }
            Ok(())
        }
        Command::Lift(LiftCmd::Apply { code, group, voltage, out }) => {
            let g = parse_group(&group.group)?;
            let p = Pipeline::new(load_code(&code)?)?;
            let v = VoltageAssignment::import(&p.complex, &g, &load_voltage(&voltage)?)?;
            let lift = p.lift(&v, &g)?;
            let report = p.verify(&lift, &g)?;
            save_bundle(&out, "lift", &lift.lifted)?;
            print_json(&report)?;
            if !report.all_pass() {
                bail!(InvariantViolation("the lift failed verification".into()));
            }
            Ok(())
        }
        Command::Params(a) => {
            let code = load_code(&a.code)?;
            let mut params = code.params();
            if !a.no_distance {
                let opts = UpperOptions { trials: a.trials, seed: a.seed, depth: 2 };
                let (dx, dz) = distances(&code, a.kernel_cap, opts)?;
                params.d_x = Some(dx.distance());
                params.d_z = Some(dz.distance());
            }
            eprintln!("{params}");
            print_json(&params)
        }
        Command::Distance(a) => {
            let code = load_code(&a.code)?;
            let sides: &[Side] = match a.side {
                SideArg::X => &[Side::X],
                SideArg::Z => &[Side::Z],
                SideArg::Both => &[Side::X, Side::Z],
            };
            let opts = UpperOptions { trials: a.trials, seed: a.seed.unwrap_or(0), depth: a.depth };
            let reports = sides
                .iter()
                .map(|&s| if a.exact { distance_exact(&code, s, a.kernel_cap) } else { distance_upper(&code, s, opts) })
                .collect::<conelift::Result<Vec<_>>>()?;
            print_json(&reports)
        }
        Command::Hpc(HpcCmd::Build { h1, cycle1, h2, cycle2, out, name }) => {
            let code = conelift::hpc(&classical(h1, cycle1)?, &classical(h2, cycle2)?);
            save_bundle(&out, &name, &code)?;
            print_json(&code.params())
        }
        Command::Product(ProductCmd::Balanced { left, left_voltage, right, right_voltage, group, out, name }) => {
            let g = parse_group(&group.group)?;
            let lift_of = |code: &Path, voltage: &Path| -> Result<conelift::RegularLift> {
                let base = load_code(code)?;
                let k = conelift::ConeComplex::build(&base);
                let v = VoltageAssignment::import(&k, &g, &load_voltage(voltage)?)?;
                Ok(lift_code(&base, &k, &v, &g)?)
            };
            let code = balanced_product(&lift_of(&left, &left_voltage)?, &lift_of(&right, &right_voltage)?, &g)?;
            save_bundle(&out, &name, &code)?;
            print_json(&code.params())
        }
        Command::Verify(VerifyCmd::LpcEquivalence { cycles, groups }) => {
            #[derive(Serialize)]
            struct Case {
                group: String,
                cycle1: usize,
                cycle2: usize,
                voltage1: usize,
                voltage2: usize,
                equal: bool,
            }
            let mut cases = Vec::new();
            for name in &groups {
                let g = parse_group(name)?;
                for &l1 in &cycles {
                    for &l2 in &cycles {
                        for (x1, t1) in cycle_voltages(l1, &g).iter().enumerate() {
                            for (x2, t2) in cycle_voltages(l2, &g).iter().enumerate() {
                                let r = check_lpc_equivalence(t1, t2, &g)?;
                                cases.push(Case {
                                    group: g.name().to_string(),
                                    cycle1: l1,
                                    cycle2: l2,
                                    voltage1: x1,
                                    voltage2: x2,
                                    equal: r.equal,
                                });
                            }
                        }
                    }
                }
            }
            let failed = cases.iter().filter(|c| !c.equal).count();
            print_json(&cases)?;
            eprintln!("{} cases, {failed} mismatches", cases.len());
            if failed > 0 {
                bail!(InvariantViolation(format!("{failed} product pairs disagree")));
            }
            Ok(())
        }
        Command::ReproduceTable(a) => {
            let selector: RowSelector = a.rows.parse()?;
            let opts = TableOptions {
                trials: a.trials,
                seed: a.seed,
                max_candidates: a.max_candidates,
                node_budget: a.node_budget,
                ..TableOptions::default()
            };
            let results = reproduce_table(a.tag, &selector, &opts)?;
            let csv = to_csv(a.tag, &results)?;
            match a.out {
                Some(path) => fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Run { manifest } => {
            let summary = run_manifest(&manifest)?;
            eprintln!("{} lifts, all verified: {}", summary.lifts.len(), summary.all_pass);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
