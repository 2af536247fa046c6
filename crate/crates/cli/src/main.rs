mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use grade3::catalog::{self, CatalogBundle, CatalogEntry};
use grade3::liealg::{grade_by, GroupElement, LieAlgebra, LieAlgebraJson};
use grade3::modular::{self, ModularPair, StandardSubspace, StandardSubspaceJson};
use grade3::numkit::{ComplexMatrix, MatrixJson, RealMatrix, RealVector};
use grade3::roots;
use grade3::semigroup::{self, FactorOrder};
use grade3::{sampling, verify, Error, Tolerance};

/// Computations with 3-graded Lie algebras, invariant cones, compression
/// semigroups and modular pairs. Every verb prints one JSON document.
#[derive(Debug, Parser)]
#[command(name = "grade3", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Uniform absolute and relative tolerance (overrides GRADE3_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for `verify`, trial count for `monotone`.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Print the `verify` report as JSON instead of one line per check.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Args)]
struct Source {
    /// A catalog entry by name.
    #[arg(long, conflicts_with_all = ["file", "input"])]
    demo: Option<String>,
    /// Path to a JSON document.
    #[arg(long, conflicts_with = "input")]
    file: Option<std::path::PathBuf>,
    /// The JSON document inline.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Debug, Args)]
struct WithElement {
    #[command(flatten)]
    source: Source,
    /// Group element as nested rows `[[a, b], [c, d]]` or a matrix object.
    #[arg(long)]
    g: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    PlusFirst,
    MinusFirst,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Detect the 3-grading of `ad h`.
    Grade(Source),
    /// Decide `g ∈ S(h, C)`.
    Member(WithElement),
    /// Triangular factorization through the open cell.
    Factor {
        #[command(flatten)]
        element: WithElement,
        #[arg(long, value_enum, default_value = "plus-first")]
        order: Order,
    },
    /// Polar factorization `s = g₀ exp(x)`.
    Polar(WithElement),
    /// Modular pair of a standard subspace.
    Modular(Source),
    /// Check `log A ⪯ log B` for `A ⪯ B`.
    Monotone(Source),
    /// Root decomposition for a compactly embedded Cartan subalgebra.
    Roots(Source),
    /// Print a catalog entry as a JSON bundle (or list the names).
    Demo { name: Option<String> },
    /// Run an invariant suite.
    Verify { suite: String },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    name: String,
    detail: String,
}

impl Failure {
    fn usage(detail: impl Into<String>) -> Self {
        Failure { code: 2, name: "UsageError".into(), detail: detail.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::NonFinite(_) | Error::AmbientMismatch { .. } | Error::UnknownSuite(_) => 2,
            _ => 1,
        };
        Failure { code, name: e.name().into(), detail: e.to_string() }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            output::emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            output::emit(&format!("{}\n", output::render(&json!({"error": "UsageError", "detail": e.kind().to_string()}))));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((value, passed)) => {
            match (&cli.verb, cli.json) {
                (Verb::Verify { .. }, false) => output::emit(&verify_table(&value)),
                _ => output::emit(&format!("{}\n", output::render(&value))),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            output::emit(&format!("{}\n", output::render(&json!({"error": f.name, "detail": f.detail}))));
            ExitCode::from(f.code)
        }
    }
}

fn tolerance(cli: &Cli) -> Result<Tolerance, Failure> {
    let value = match (cli.tol, std::env::var("GRADE3_TOL")) {
        (Some(t), _) => t,
        (None, Ok(text)) => text
            .trim()
            .parse::<f64>()
            .map_err(|_| Failure::usage(format!("GRADE3_TOL is not a number: {text:?}")))?,
        (None, Err(_)) => return Ok(Tolerance::default()),
    };
    Ok(Tolerance::uniform(value)?)
}

fn run(cli: &Cli) -> Outcome {
    let tol = tolerance(cli)?;
    let done = |v: Value| Ok((v, true));
    match &cli.verb {
        Verb::Grade(source) => {
            let entry = load_entry(source)?;
            let grading = grade_by(&entry.algebra, &entry.h, tol)?;
            done(to_value(&grading.to_json()))
        }
        Verb::Member(w) => {
            let (entry, g) = load_element(w)?;
            let member = semigroup::member_shc(&g, &entry.grading, &entry.cone, tol)?;
            done(json!({ "member": member }))
        }
        Verb::Factor { element, order } => {
            let (entry, g) = load_element(element)?;
            let order = match order {
                Order::PlusFirst => FactorOrder::PlusZeroMinus,
                Order::MinusFirst => FactorOrder::MinusZeroPlus,
            };
            let f = semigroup::triangular_factor_ordered(&g, &entry.grading, order, tol)?;
            done(to_value(&f.to_json()))
        }
        Verb::Polar(w) => {
            let (entry, s) = load_element(w)?;
            let p = semigroup::polar_factor(&s, &entry.grading, tol)?;
            done(to_value(&p.to_json()))
        }
        Verb::Modular(source) => {
            let doc: StandardSubspaceJson = parse(&read_document(source)?)?;
            let v = StandardSubspace::from_json(&doc)?;
            let pair: ModularPair = modular::modular_pair(&v, tol)?;
            let mut out = to_value(&pair.to_json());
            out["modular_relation_residual"] = json!(pair.modular_relation_residual());
            done(out)
        }
        Verb::Monotone(source) => {
            let doc: MonotoneInput = parse(&read_document(source)?)?;
            let (a, b) = (doc.a.to_complex()?, doc.b.to_complex()?);
            let trials = cli.samples.unwrap_or(100);
            let report = modular::log_monotone_check(&a, &b, trials, tol, &mut sampling::seeded(cli.seed))?;
            let passed = report.passed;
            Ok((to_value(&report), passed))
        }
        Verb::Roots(source) => roots_verb(source, tol, cli.seed),
        Verb::Demo { name } => match name {
            None => done(json!({ "demos": catalog::DEMO_NAMES })),
            Some(name) => {
                let entry = catalog::by_name(name)
                    .ok_or_else(|| Failure::usage(format!("unknown demo {name:?}; try one of {:?}", catalog::DEMO_NAMES)))?;
                done(to_value(&entry.to_bundle()))
            }
        },
        Verb::Verify { suite } => {
            let report = verify::run(suite, cli.seed, cli.samples.unwrap_or(1000))?;
            let passed = report.passed;
            Ok((to_value(&report), passed))
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("outputs are plain data")
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure { code: 2, name: "MalformedJson".into(), detail: e.to_string() })
}

fn read_document(source: &Source) -> Result<String, Failure> {
    match (&source.file, &source.input) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display()))),
        (None, Some(text)) => Ok(text.clone()),
        (None, None) => Err(Failure::usage("this verb needs --file or --input")),
    }
}

fn load_entry(source: &Source) -> Result<CatalogEntry, Failure> {
    if let Some(name) = &source.demo {
        return catalog::by_name(name)
            .ok_or_else(|| Failure::usage(format!("unknown demo {name:?}; try one of {:?}", catalog::DEMO_NAMES)));
    }
    let bundle: CatalogBundle = parse(&read_document(source)?)?;
    Ok(CatalogEntry::from_bundle(&bundle)?)
}

/// Matrices are accepted as nested real rows or as the matrix object
/// `{"rows", "cols", "re", "im"}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Rows(Vec<Vec<f64>>),
    Object(MatrixJson),
}

impl MatrixInput {
    fn to_complex(&self) -> Result<ComplexMatrix, Failure> {
        match self {
            MatrixInput::Rows(rows) => {
                let cols = rows.first().map_or(0, Vec::len);
                if cols == 0 || rows.iter().any(|r| r.len() != cols) {
                    return Err(Failure::usage("matrix rows must be nonempty and of equal length"));
                }
                let m = RealMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
                Ok(MatrixJson::from_real(&m).to_complex()?)
            }
            MatrixInput::Object(m) => Ok(m.to_complex()?),
        }
    }
}

fn load_element(w: &WithElement) -> Result<(CatalogEntry, GroupElement), Failure> {
    let entry = load_entry(&w.source)?;
    let m: MatrixInput = parse(&w.g)?;
    let g = GroupElement::new(&entry.algebra, m.to_complex()?)?;
    Ok((entry, g))
}

#[derive(Debug, Deserialize)]
struct MonotoneInput {
    a: MatrixInput,
    b: MatrixInput,
}

/// `{"algebra": name or algebra object, "cartan": [columns], "x0": [...]}`;
/// with `--demo` the entry's own Cartan subalgebra is used.
#[derive(Debug, Deserialize)]
struct RootsInput {
    algebra: AlgebraInput,
    cartan: Vec<Vec<f64>>,
    #[serde(default)]
    x0: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AlgebraInput {
    Named(String),
    Explicit(LieAlgebraJson),
}

fn named_algebra(name: &str) -> Result<LieAlgebra, Failure> {
    match name {
        "sl2" => Ok(catalog::sl2_algebra()),
        "su2" => Ok(catalog::su2_algebra()),
        "su2+sl2" => Ok(catalog::su2_plus_sl2_algebra()),
        _ => Err(Failure::usage(format!("unknown algebra {name:?}; try sl2, su2 or su2+sl2"))),
    }
}

fn roots_verb(source: &Source, tol: Tolerance, seed: u64) -> Outcome {
    let (algebra, cartan, x0) = if let Some(name) = &source.demo {
        let entry = load_entry(source)?;
        let cartan = entry
            .cartan
            .clone()
            .ok_or_else(|| Failure::usage(format!("demo {name:?} ships no Cartan subalgebra")))?;
        ((*entry.algebra).clone(), cartan, None)
    } else {
        let doc: RootsInput = parse(&read_document(source)?)?;
        let algebra = match &doc.algebra {
            AlgebraInput::Named(name) => named_algebra(name)?,
            AlgebraInput::Explicit(j) => LieAlgebra::from_json(j)?,
        };
        let n = algebra.dim();
        if doc.cartan.is_empty() || doc.cartan.iter().any(|c| c.len() != n) {
            return Err(Failure::usage(format!("cartan must be a nonempty list of vectors of length {n}")));
        }
        let cartan = RealMatrix::from_fn(n, doc.cartan.len(), |i, j| doc.cartan[j][i]);
        (algebra, cartan, doc.x0.map(RealVector::from_vec))
    };
    let datum = roots::root_decomposition(&algebra, &cartan, tol)?;
    let mut out = to_value(&datum.to_json());
    let x0 = match x0 {
        Some(x0) => Some(x0),
        None => match roots::find_adapted_x0(&datum, 1000, tol, &mut sampling::seeded(seed)) {
            Ok(x0) => Some(x0),
            Err(Error::NotAdapted) => None,
            Err(e) => return Err(e.into()),
        },
    };
    if let Some(x0) = x0 {
        let positive = roots::positive_system(&datum, &x0, tol)?;
        let cone = roots::c_max(&datum, &x0, tol)?;
        out["x0"] = json!(x0.as_slice());
        out["positive"] = json!(positive);
        out["c_max"] = to_value(&cone.to_spec());
    }
    Ok((out, true))
}

fn verify_table(report: &Value) -> String {
    let mut text = String::new();
    for check in report["checks"].as_array().into_iter().flatten() {
        let status = if check["passed"] == Value::Bool(true) { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{status} {:<44} max {:>12} threshold {}\n",
            check["name"].as_str().unwrap_or("?"),
            fmt_num(&check["max_violation"]),
            fmt_num(&check["threshold"]),
        ));
    }
    let passed = report["passed"] == Value::Bool(true);
    text.push_str(&format!(
        "{} suite {} seed {} samples {}\n",
        if passed { "PASSED" } else { "FAILED" },
        report["suite"].as_str().unwrap_or("?"),
        report["seed"],
        report["samples"],
    ));
    text
}

fn fmt_num(v: &Value) -> String {
    v.as_f64().map_or_else(|| "inf".to_string(), |x| format!("{x:.3e}"))
}
