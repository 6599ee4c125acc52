//! The `twistgab` command line.
//!
//! Exit codes: 0 success, 2 input error, 3 budget exceeded (a partial report
//! is still written), 4 internal inconsistency between independent routes.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::budget::{pow_sat, Budget, DEFAULT_AMBIENT, DEFAULT_CODEWORDS, DEFAULT_SUBSPACES};
use crate::codes::{projective_count, CodeSpec, Twist};
use crate::covering::Flavor;
use crate::error::{Error, Result};
use crate::io::{elements_from_json, read_json, FieldSpec};
use crate::report::{self, DeepHoleRequest, SCHEMA};
use crate::subspace::gaussian_binomial;
use crate::tower::{Element, FieldTower};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "twistgab",
    version,
    about = "Twisted Gabidulin codes: MRD/MDS checks, constructions, covering radii"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field spec JSON: {"p","e","m","base_modulus","top_modulus"}.
    #[arg(long, global = true)]
    pub field: Option<PathBuf>,
    /// Code spec JSON (for `construct`, a construction recipe).
    #[arg(long, global = true)]
    pub code: Option<PathBuf>,
    /// Sweep grid JSON; replaces --code.
    #[arg(long, global = true, conflicts_with = "code")]
    pub sweep: Option<PathBuf>,
    #[arg(long, global = true, env = "TWISTGAB_BUDGET_SUBSPACES", default_value_t = DEFAULT_SUBSPACES,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_subspaces: u64,
    #[arg(long, global = true, env = "TWISTGAB_BUDGET_CODEWORDS", default_value_t = DEFAULT_CODEWORDS,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_codewords: u64,
    #[arg(long, global = true, env = "TWISTGAB_BUDGET_AMBIENT", default_value_t = DEFAULT_AMBIENT,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_ambient: u64,
    /// Worker threads; 0 uses one per core. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distances, MRD/MDS/AMDS/NMDS flags and route agreement.
    Classify,
    /// Forbidden twist values and Omega sets.
    Forbidden,
    /// Build an MRD code from a recipe (chain, scalar-multiple, sum-product-free).
    Construct,
    /// Covering radius with theorem bounds.
    Covering,
    /// Deep-hole checks: family vectors, explicit vectors or random samples.
    Deephole(DeepholeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    /// g x^[k] + f
    K,
    /// g x^[h] + f
    H,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct DeepholeArgs {
    #[arg(long, value_enum, default_value_t = FlavorArg::Both)]
    pub flavor: FlavorArg,
    /// Scalars g by index; all non-zero elements when absent.
    #[arg(long, num_args = 1..)]
    pub g: Vec<u32>,
    /// Use every message f instead of only f = 0.
    #[arg(long)]
    pub all_f: bool,
    /// JSON array of vectors to test instead of family vectors.
    #[arg(long, conflicts_with = "random")]
    pub vectors: Option<PathBuf>,
    /// Test this many uniformly random vectors drawn from --seed.
    #[arg(long)]
    pub random: Option<usize>,
}

impl Cli {
    pub fn budget(&self) -> Budget {
        Budget {
            subspaces: self.budget_subspaces,
            codewords: self.budget_codewords,
            ambient: self.budget_ambient,
        }
    }

    fn name(&self) -> &'static str {
        match self.command {
            Command::Classify => "classify",
            Command::Forbidden => "forbidden",
            Command::Construct => "construct",
            Command::Covering => "covering",
            Command::Deephole(_) => "deephole",
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Inconsistency { .. } => EXIT_INCONSISTENT,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_BUDGET => "budget",
        EXIT_INCONSISTENT => "inconsistency",
        _ => "input",
    }
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {} workers: {e}", cli.workers);
            return EXIT_INPUT;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok((report, code)) => match emit(&cli, &report) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("error ({}): {e}", error_kind(&e));
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, report: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")))
}

/// Builds the report and its exit code. Errors that leave nothing to report
/// are returned as `Err`.
pub fn execute(cli: &Cli) -> Result<(Value, i32)> {
    let field = crate::io::parse_field_spec(&read_json(require(&cli.field, "field")?)?)?;
    let tower = field.build()?;
    let budget = cli.budget();
    let started = Instant::now();

    let mut header = serde_json::Map::new();
    header.insert("schema".into(), json!(SCHEMA));
    header.insert("command".into(), json!(cli.name()));
    header.insert("field".into(), serde_json::to_value(FieldSpec::of(&tower))?);
    header.insert("seed".into(), json!(cli.seed));
    header.insert(
        "budgets".into(),
        json!({"subspaces": budget.subspaces, "codewords": budget.codewords, "ambient": budget.ambient}),
    );

    let (specs, sweep_info) = if let Command::Construct = cli.command {
        (Vec::new(), None)
    } else if let Some(path) = &cli.sweep {
        let grid = expand_sweep(&tower, &read_json(path)?)?;
        check_sweep_cost(&tower, cli, &grid.specs, &budget)?;
        let info =
            json!({"grid_points": grid.points, "skipped": grid.skipped, "specs": grid.specs.len()});
        (grid.specs, Some(info))
    } else {
        let doc = read_json(require(&cli.code, "code")?)?;
        (vec![report::spec_from_document(&tower, &doc)?], None)
    };

    let jobs: Vec<Option<&CodeSpec>> = match cli.command {
        Command::Construct => vec![None],
        _ => specs.iter().map(Some).collect(),
    };
    let mut results = Vec::new();
    let mut code = EXIT_OK;
    let mut incomplete = false;
    for spec in jobs {
        let t = Instant::now();
        match run_one(cli, &tower, spec, &budget) {
            Ok((mut v, complete)) => {
                if cli.timings {
                    v["elapsed_ms"] = json!(t.elapsed().as_millis() as u64);
                }
                results.push(v);
                incomplete |= !complete;
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::Inconsistency { .. })) => {
                eprintln!("error ({}): {e}", error_kind(&e));
                let mut entry =
                    json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
                if let Some(s) = spec {
                    entry["spec"] = crate::io::code_spec_to_json(&tower, s);
                }
                results.push(entry);
                if let Error::Inconsistency { .. } = e {
                    code = EXIT_INCONSISTENT;
                    break;
                }
                incomplete = true;
            }
            Err(e) => return Err(e),
        }
    }
    if incomplete && code == EXIT_OK {
        code = EXIT_BUDGET;
    }

    if let Some(info) = sweep_info {
        header.insert("sweep".into(), info);
        if let Command::Classify = cli.command {
            header.insert("table".into(), classify_table(&results));
        }
    }
    header.insert("results".into(), Value::Array(results));
    header.insert("complete".into(), json!(!incomplete && code == EXIT_OK));
    if cli.timings {
        header.insert(
            "elapsed_ms".into(),
            json!(started.elapsed().as_millis() as u64),
        );
    }
    Ok((Value::Object(header), code))
}

fn run_one(
    cli: &Cli,
    tower: &FieldTower,
    spec: Option<&CodeSpec>,
    budget: &Budget,
) -> Result<(Value, bool)> {
    let Some(spec) = spec else {
        let recipe = read_json(require(&cli.code, "code")?)?;
        let v = report::construct_report(tower, &recipe, budget)?;
        let complete = v["complete"].as_bool().unwrap_or(false);
        return Ok((v, complete));
    };
    match &cli.command {
        Command::Classify => Ok((report::classify_report(tower, spec, budget)?, true)),
        Command::Forbidden => Ok((report::forbidden_report(tower, spec, budget)?, true)),
        Command::Covering => report::covering_command(tower, spec, budget),
        Command::Deephole(args) => {
            let req = deephole_request(tower, spec, args, cli.seed)?;
            Ok((report::deephole_report(tower, spec, &req, budget)?, true))
        }
        Command::Construct => unreachable!("construct has no code spec"),
    }
}

fn classify_table(results: &[Value]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| {
                json!({
                    "h": r["spec"]["h"],
                    "k": r["spec"]["k"],
                    "twists": r["spec"]["twists"],
                    "d_rank": r["rank"]["d_rank"],
                    "is_mrd": r["rank"]["is_mrd"],
                    "label": r["label"],
                    "norm_condition": r["routes"]["norm_condition"]["holds"],
                    "error": r.get("error").cloned().unwrap_or(Value::Null),
                })
            })
            .collect(),
    )
}

fn deephole_request(
    tower: &FieldTower,
    spec: &CodeSpec,
    args: &DeepholeArgs,
    seed: u64,
) -> Result<DeepHoleRequest> {
    if let Some(path) = &args.vectors {
        let doc = read_json(path)?;
        let vs = doc
            .as_array()
            .ok_or_else(|| Error::Parse("vectors file must hold an array of vectors".into()))?
            .iter()
            .map(|v| elements_from_json(tower, v))
            .collect::<Result<Vec<_>>>()?;
        return Ok(DeepHoleRequest::Vectors(vs));
    }
    if let Some(count) = args.random {
        return Ok(DeepHoleRequest::Random { count, seed });
    }
    let flavors = match args.flavor {
        FlavorArg::K => vec![Flavor::TopPower],
        FlavorArg::H => vec![Flavor::TwistRow],
        FlavorArg::Both => vec![Flavor::TopPower, Flavor::TwistRow],
    };
    let gs = if args.g.is_empty() {
        tower.nonzero_elements().collect()
    } else {
        args.g
            .iter()
            .map(|&g| tower.element(g))
            .collect::<Result<Vec<_>>>()?
    };
    let fs = if args.all_f {
        report::all_messages(tower, spec.k)
    } else {
        vec![vec![Element::ZERO; spec.k]]
    };
    Ok(DeepHoleRequest::Family { flavors, gs, fs })
}

/// Expanded sweep grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub specs: Vec<CodeSpec>,
    pub points: usize,
    /// Grid points with h ≥ k, which name no code.
    pub skipped: usize,
}

fn int_or_list(v: Option<&Value>, key: &str, default: Vec<usize>) -> Result<Vec<usize>> {
    match v {
        None => Ok(default),
        Some(Value::Number(n)) => n
            .as_u64()
            .map(|x| vec![x as usize])
            .ok_or_else(|| Error::Parse(format!("\"{key}\" must be a non-negative integer"))),
        Some(Value::Array(items)) => items
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("\"{key}\" entries must be integers")))
            })
            .collect(),
        Some(other) => Err(Error::Parse(format!(
            "\"{key}\" must be an integer or list, got {other}"
        ))),
    }
}

/// Cartesian product of k × h × twist exponents × η tuples.
///
/// ```json
/// {"alpha": [...] | "n": 4, "k": [1, 2], "h": [0, 1],
///  "ts": [[0], [0, 1]], "etas": "all" | [[e1, ...], ...]}
/// ```
///
/// `"n"` takes α = (1, ω, ..., ω^{n−1}) for the root ω of the top modulus.
/// `"ts": [[]]` or an absent `"ts"` sweeps Gabidulin codes. With `"etas":
/// "all"` every tuple of non-zero elements is used, first entry slowest.
pub fn expand_sweep(tower: &FieldTower, v: &Value) -> Result<SweepGrid> {
    if !v.is_object() {
        return Err(Error::Parse("sweep grid must be an object".into()));
    }
    let alpha = match (v.get("alpha"), v.get("n")) {
        (Some(a), None) => elements_from_json(tower, a)?,
        (None, Some(n)) => {
            let n = n
                .as_u64()
                .ok_or_else(|| Error::Parse("\"n\" must be an integer".into()))?
                as usize;
            (0..n).map(|i| tower.pow(tower.root(), i as u64)).collect()
        }
        _ => {
            return Err(Error::Parse(
                "sweep grid needs exactly one of \"alpha\" and \"n\"".into(),
            ))
        }
    };
    let ks = int_or_list(v.get("k"), "k", Vec::new())?;
    if ks.is_empty() {
        return Err(Error::Parse("sweep grid needs \"k\"".into()));
    }
    let hs = int_or_list(v.get("h"), "h", vec![0])?;
    let tss: Vec<Vec<usize>> = match v.get("ts") {
        None => vec![Vec::new()],
        Some(Value::Array(items)) if items.iter().all(Value::is_array) => items
            .iter()
            .map(|ts| int_or_list(Some(ts), "ts", Vec::new()))
            .collect::<Result<_>>()?,
        Some(other) => {
            return Err(Error::Parse(format!(
                "\"ts\" must be a list of lists, got {other}"
            )))
        }
    };
    let explicit: Option<Vec<Vec<Element>>> = match v.get("etas") {
        None => None,
        Some(Value::String(s)) if s == "all" => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .map(|tuple| elements_from_json(tower, tuple))
                .collect::<Result<_>>()?,
        ),
        Some(other) => {
            return Err(Error::Parse(format!(
                "\"etas\" must be \"all\" or a list, got {other}"
            )))
        }
    };
    let mut specs = Vec::new();
    let (mut points, mut skipped) = (0, 0);
    for &k in &ks {
        for &h in &hs {
            for ts in &tss {
                let tuples = match &explicit {
                    _ if ts.is_empty() => vec![Vec::new()],
                    Some(list) => list.clone(),
                    None => all_nonzero_tuples(tower, ts.len()),
                };
                for etas in tuples {
                    points += 1;
                    if !ts.is_empty() && h >= k {
                        skipped += 1;
                        continue;
                    }
                    if etas.len() != ts.len() {
                        return Err(Error::Parse(format!(
                            "eta tuple of length {} for {} twists",
                            etas.len(),
                            ts.len()
                        )));
                    }
                    let twists = ts
                        .iter()
                        .zip(&etas)
                        .map(|(&t, &eta)| Twist { t, eta })
                        .collect();
                    let spec = CodeSpec::twisted(
                        alpha.clone(),
                        k,
                        if ts.is_empty() { 0 } else { h },
                        twists,
                    );
                    spec.validate(tower)?;
                    if ts.is_empty() && specs.contains(&spec) {
                        skipped += 1;
                        continue;
                    }
                    specs.push(spec);
                }
            }
        }
    }
    Ok(SweepGrid {
        specs,
        points,
        skipped,
    })
}

fn all_nonzero_tuples(tower: &FieldTower, len: usize) -> Vec<Vec<Element>> {
    let q1 = tower.order() as u64 - 1;
    let count = pow_sat(q1, len) as u64;
    (0..count)
        .map(|idx| {
            let mut rest = idx;
            let mut tuple: Vec<Element> = (0..len)
                .map(|_| {
                    let d = (rest % q1) as u32 + 1;
                    rest /= q1;
                    Element::from_index(d)
                })
                .collect();
            tuple.reverse();
            tuple
        })
        .collect()
}

/// Refuses a grid whose summed brute-force work exceeds the budgets.
fn check_sweep_cost(
    tower: &FieldTower,
    cli: &Cli,
    specs: &[CodeSpec],
    budget: &Budget,
) -> Result<()> {
    let q = tower.q() as u64;
    let order = tower.order();
    let mut codewords: u128 = 0;
    let mut subspaces: u128 = 0;
    let mut ambient: u128 = 0;
    for s in specs {
        let (n, k) = (s.n(), s.k);
        match cli.command {
            Command::Classify => {
                codewords = codewords
                    .saturating_add(projective_count(order, k))
                    .saturating_add(projective_count(order, n - k));
                subspaces = subspaces.saturating_add(gaussian_binomial(n, k, q));
            }
            Command::Forbidden => subspaces = subspaces.saturating_add(gaussian_binomial(n, k, q)),
            Command::Covering | Command::Deephole(_) => {
                ambient = ambient.saturating_add(pow_sat(order as u64, n));
            }
            Command::Construct => {}
        }
    }
    crate::budget::check("sweep codeword scans", codewords, budget.codewords)?;
    crate::budget::check("sweep subspace scans", subspaces, budget.subspaces)?;
    crate::budget::check("sweep ambient scans", ambient, budget.ambient)
}
