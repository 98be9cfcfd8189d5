//! The `tangentad` command line. Every command produces one JSON document
//! (header, command-specific result, diagram report); with `--out` the
//! document goes to a file and a table rendering of it to stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model_aux::fincat::{Bounds, FiniteCategory};
use crate::model_poly::{PolyMap, PolyModel};
use crate::pie_limits::vf_via_pie;
use crate::report::{Report, Status};
use crate::restriction::{check_restriction_laws, extended_vf, RationalMap, RationalModel};
use crate::suites;
use crate::tangent_core::{check_tangent_axioms, Samples};
use crate::tangent_monads::writer_monad;
use crate::vector_fields::{bracket, bracket_preimage, side_condition, vf_pushforward, VectorField};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tangentad", version, about = "Checks tangent-category structure on concrete models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples; each suite has its own default.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Absolute tolerance for floating-point comparisons.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Size bounds for finite categories, as `objects=5,morphisms=12,probe=3`.
    #[arg(long, global = true)]
    bound: Option<String>,
    /// Write the JSON report here and print a table instead.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check suite, or the tangent axioms on maps read from files.
    Check {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long, value_enum, default_value = "poly")]
        model: ModelKind,
        /// A model mutation, e.g. `c-identity` or `alpha-double-tangent`.
        #[arg(long)]
        mutate: Option<String>,
        /// Map files (poly, rational) or category files (fincat).
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
    },
    /// Bracket of two polynomial vector fields.
    Bracket {
        u: PathBuf,
        v: PathBuf,
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Push a polynomial vector field forward along the writer monad.
    Pushforward {
        field: PathBuf,
        #[arg(long, default_value_t = 1)]
        monoid_dim: usize,
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Tangent monad laws for the writer monad and the vector-field monad.
    Monad {
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Vector fields of finite categories as an equifier of an inserter.
    Pie {
        #[arg(required = true)]
        categories: Vec<PathBuf>,
    },
    /// Restriction laws, or the restriction data of one rational map.
    Restriction {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Weil algebra relations and fundamental pullbacks.
    Weil {
        #[arg(long, default_value_t = 3)]
        height: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Weil,
    Poly,
    Smooth,
    Bracket,
    Lie,
    FRelated,
    VfMonad,
    Monad,
    Universality,
    Pie,
    Restriction,
    Cross,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelKind {
    Poly,
    Dual,
    Fincat,
    Rational,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Oracle {
    Classical,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

struct Global {
    seed: u64,
    samples: Option<usize>,
    tolerance: f64,
    bounds: Bounds,
}

impl Global {
    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// What a command hands back for rendering.
struct Outcome {
    config: Value,
    result: Value,
    report: Report,
}

impl Outcome {
    fn new(config: Value, report: Report) -> Self {
        Outcome { config, result: Value::Null, report }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Bound(_) => EXIT_BOUND,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tangentad: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let tolerance = cli.tolerance.unwrap_or(1e-9);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Parse(format!("tolerance must be positive, got {tolerance}")));
    }
    let bounds = match &cli.bound {
        Some(s) => Bounds::parse(s)?,
        None => Bounds::from_env()?,
    };
    let g = Global { seed: cli.seed, samples: cli.samples, tolerance, bounds };
    let outcome = match cli.command {
        Command::Check { suite, model, mutate, inputs } => cmd_check(&g, suite, model, mutate.as_deref(), &inputs)?,
        Command::Bracket { u, v, oracle } => cmd_bracket(&g, &u, &v, oracle)?,
        Command::Pushforward { field, monoid_dim, mutate } => cmd_pushforward(&g, &field, monoid_dim, mutate.as_deref())?,
        Command::Monad { mutate } => cmd_monad(&g, mutate.as_deref())?,
        Command::Pie { categories } => cmd_pie(&g, &categories)?,
        Command::Restriction { input } => cmd_restriction(&g, input.as_deref())?,
        Command::Weil { height } => {
            Outcome::new(json!({"command": "weil", "height": height}), suites::weil_suite(height))
        }
    };
    let doc = document(&g, &outcome);
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            print!("{}", render_table(&outcome, path));
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(if outcome.report.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn document(g: &Global, o: &Outcome) -> Value {
    let failed = o.report.failures().len();
    let mut doc = json!({
        "tool": "tangentad",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": g.seed,
        "config": o.config,
        "summary": {
            "diagrams": o.report.len(),
            "passed": o.report.len() - failed,
            "failed": failed,
        },
        "diagrams": o.report,
    });
    if !o.result.is_null() {
        doc["result"] = o.result.clone();
    }
    doc
}

/// Per-diagram pass/fail counts and the first witness of each failing id.
fn render_table(o: &Outcome, path: &Path) -> String {
    let mut rows: Vec<(String, usize, usize, Option<String>)> = Vec::new();
    for r in &o.report.entries {
        if rows.last().is_none_or(|row| row.0 != r.diagram_id) {
            rows.push((r.diagram_id.clone(), 0, 0, None));
        }
        let row = rows.last_mut().expect("row just pushed");
        match r.status {
            Status::Pass => row.1 += 1,
            Status::Fail => {
                row.2 += 1;
                if row.3.is_none() {
                    row.3 = Some(format!("{}: {}", r.sample_id, r.witness.clone().unwrap_or_default()));
                }
            }
        }
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("diagram".len());
    let mut s = format!("{:width$}  {:>6}  {:>6}\n", "diagram", "pass", "fail");
    for (id, pass, fail, witness) in &rows {
        s += &format!("{id:width$}  {pass:>6}  {fail:>6}\n");
        if let Some(w) = witness {
            s += &format!("  first failure at {w}\n");
        }
    }
    if let Value::Object(m) = &o.result {
        for (k, v) in m {
            s += &format!("{k}: {v}\n");
        }
    }
    s += &format!(
        "{} diagrams, {} failures; report written to {}\n",
        o.report.len(),
        o.report.failures().len(),
        path.display()
    );
    s
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_category(path: &Path, bounds: &Bounds) -> Result<(String, FiniteCategory)> {
    let c: FiniteCategory = read_json(path)?;
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    bounds.check(&c, &name)?;
    Ok((name, c))
}

fn cmd_check(
    g: &Global,
    suite: Option<Suite>,
    model: ModelKind,
    mutate: Option<&str>,
    inputs: &[PathBuf],
) -> Result<Outcome> {
    let mut config = json!({
        "command": "check",
        "model": value_name(model),
        "mutate": mutate,
        "tolerance": g.tolerance,
    });
    if !inputs.is_empty() {
        if suite.is_some() {
            return Err(Error::Parse("--input and --suite are exclusive".into()));
        }
        config["inputs"] = json!(inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
        let report = check_inputs(g, model, mutate, inputs)?;
        return Ok(Outcome::new(config, report));
    }
    let suite = suite.unwrap_or(match model {
        ModelKind::Poly => Suite::Poly,
        ModelKind::Dual => Suite::Smooth,
        ModelKind::Fincat => Suite::Pie,
        ModelKind::Rational => Suite::Restriction,
    });
    config["suite"] = json!(value_name(suite));
    let report = if suite == Suite::All {
        let mut rep = Report::new();
        for s in [
            Suite::Weil,
            Suite::Poly,
            Suite::Smooth,
            Suite::Bracket,
            Suite::Lie,
            Suite::FRelated,
            Suite::VfMonad,
            Suite::Monad,
            Suite::Universality,
            Suite::Pie,
            Suite::Restriction,
            Suite::Cross,
        ] {
            rep.extend(run_suite(g, s, None, &mut config)?);
        }
        rep.sorted()
    } else {
        run_suite(g, suite, mutate, &mut config)?
    };
    Ok(Outcome::new(config, report))
}

fn run_suite(g: &Global, suite: Suite, mutate: Option<&str>, config: &mut Value) -> Result<Report> {
    let name = value_name(suite);
    let samples = suites::default_samples(&name).map(|d| g.samples(d));
    if let Some(n) = samples.filter(|&n| n > 0) {
        config["samples"][&name] = json!(n);
    }
    suites::run_named(&name, g.seed, samples, g.tolerance, &g.bounds, mutate)
}

/// The tangent axioms on the given maps together with seeded random ones.
fn check_inputs(g: &Global, model: ModelKind, mutate: Option<&str>, inputs: &[PathBuf]) -> Result<Report> {
    match model {
        ModelKind::Poly => {
            let maps = inputs.iter().map(|p| read_json::<PolyMap>(p)).collect::<Result<Vec<_>>>()?;
            let mut samples = suites::poly_samples(&mut suites::rng(g.seed), g.samples(0));
            samples.morphisms.splice(0..0, maps);
            let m = match mutate.map(suites::parse_poly_mutation).transpose()? {
                Some(m) => PolyModel::mutated(m),
                None => PolyModel::new(),
            };
            Ok(check_tangent_axioms(&m, &samples)?.sorted())
        }
        ModelKind::Rational => {
            if mutate.is_some() {
                return Err(Error::Parse("the rational model takes no mutation".into()));
            }
            let maps = inputs.iter().map(|p| read_json::<RationalMap>(p)).collect::<Result<Vec<_>>>()?;
            let mut rep = check_tangent_axioms(&RationalModel, &Samples::new(vec![1, 2], maps.clone()))?;
            let triples: Vec<_> =
                maps.iter().map(|f| (f.clone(), f.clone(), RationalMap::identity(f.target_dim()))).collect();
            rep.extend(check_restriction_laws(&triples));
            Ok(rep.sorted())
        }
        ModelKind::Fincat => {
            if mutate.is_some() {
                return Err(Error::Parse("the fincat model takes no mutation".into()));
            }
            let cats = inputs.iter().map(|p| load_category(p, &g.bounds)).collect::<Result<Vec<_>>>()?;
            suites::pie_suite(&cats, &g.bounds)
        }
        ModelKind::Dual => Err(Error::Unsupported("the dual model has no file format; use --suite smooth".into())),
    }
}

fn read_field(path: &Path) -> Result<VectorField<PolyModel>> {
    let v: VectorField<PolyModel> = read_json(path)?;
    v.validate(&PolyModel::new()).map_err(|w| Error::Invalid(format!("{}: {w}", path.display())))?;
    Ok(v)
}

fn strings(ps: &[crate::poly::Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn cmd_bracket(_g: &Global, u_path: &Path, v_path: &Path, oracle: Option<Oracle>) -> Result<Outcome> {
    let model = PolyModel::new();
    let (u, v) = (read_field(u_path)?, read_field(v_path)?);
    if u.base != v.base {
        return Err(Error::Mismatch(format!("fields over ℚ^{} and ℚ^{}", u.base, v.base)));
    }
    let mut rep = Report::new();
    let h = bracket_preimage(&model, &u, &v)?;
    rep.record("bracket/side-condition", "input", side_condition(&model, &u.base, &h));
    let b = bracket(&model, &u, &v)?;
    let section = strings(&suites::principal(&b));
    let mut result = json!({ "bracket": section, "field": b });
    if oracle == Some(Oracle::Classical) {
        let classical = suites::classical_bracket(&suites::principal(&u), &suites::principal(&v));
        let verdict = if classical == suites::principal(&b) {
            Ok(())
        } else {
            Err(format!("bracket {section:?} but Jv̂·û − Jû·v̂ = {:?}", strings(&classical)))
        };
        rep.record("bracket/classical", "input", verdict);
        result["classical"] = json!(strings(&classical));
    }
    let config = json!({
        "command": "bracket",
        "u": u_path.display().to_string(),
        "v": v_path.display().to_string(),
        "oracle": oracle.map(value_name),
    });
    Ok(Outcome { config, result, report: rep })
}

fn cmd_pushforward(_g: &Global, path: &Path, k: usize, mutate: Option<&str>) -> Result<Outcome> {
    let model = PolyModel::new();
    let u = read_field(path)?;
    let writer = writer_monad(model, k, mutate.map(suites::parse_writer_mutation).transpose()?);
    let pushed = vf_pushforward(&writer.carrier, &u)?;
    let mut rep = Report::new();
    rep.record("pushforward/section", "input", pushed.validate(&model));
    let config = json!({
        "command": "pushforward",
        "field": path.display().to_string(),
        "monoid-dim": k,
        "mutate": mutate,
    });
    let result = json!({ "pushforward": strings(pushed.section.components()), "field": pushed });
    Ok(Outcome { config, result, report: rep })
}

fn cmd_monad(g: &Global, mutate: Option<&str>) -> Result<Outcome> {
    let n = g.samples(10);
    let mut rep = suites::monad_suite(g.seed, n, mutate.map(suites::parse_writer_mutation).transpose()?);
    rep.extend(suites::vf_monad_suite(g.seed, n));
    let config = json!({"command": "monad", "samples": n, "mutate": mutate});
    Ok(Outcome::new(config, rep.sorted()))
}

fn cmd_pie(g: &Global, paths: &[PathBuf]) -> Result<Outcome> {
    let mut rep = Report::new();
    let mut table = serde_json::Map::new();
    for p in paths {
        let (name, c) = load_category(p, &g.bounds)?;
        let pv = vf_via_pie(&c, &g.bounds)?;
        let rows: Vec<Value> = pv
            .equifier
            .objects
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let (m, tau) = pv.inserter.objects[o];
                json!({"equifier-object": i, "base": m, "field": tau})
            })
            .collect();
        table.insert(name.clone(), json!({"size": rows.len(), "direct": pv.direct_objects.len(), "objects": rows}));
        rep.extend(pv.report.scoped(&name));
    }
    let config = json!({
        "command": "pie",
        "categories": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "bounds": {"objects": g.bounds.objects, "morphisms": g.bounds.morphisms, "probe": g.bounds.probe},
    });
    Ok(Outcome { config, result: json!({ "isomorphism": table }), report: rep.sorted() })
}

fn cmd_restriction(g: &Global, input: Option<&Path>) -> Result<Outcome> {
    let Some(path) = input else {
        let n = g.samples(30);
        let config = json!({"command": "restriction", "samples": n});
        return Ok(Outcome::new(config, suites::restriction_suite(g.seed, n)));
    };
    let f: RationalMap = read_json(path)?;
    let rep = check_restriction_laws(&[(f.clone(), f.clone(), RationalMap::identity(f.target_dim()))]);
    let mut result = json!({
        "map": f.to_string(),
        "restriction": f.restriction().to_string(),
        "tangent": f.tangent_map().to_string(),
        "total": f.is_total(),
    });
    if f.target_dim() == 2 * f.source_dim() {
        let ext = extended_vf(&RationalModel);
        result["extended-field"] = match ext.field(f.source_dim(), f.clone()) {
            Ok(_) => json!("admitted"),
            Err(e) => json!(format!("rejected: {e}")),
        };
    }
    let config = json!({"command": "restriction", "input": path.display().to_string()});
    Ok(Outcome { config, result, report: rep.sorted() })
}
