//! `albertine`: validate model files, compute Albert polynomials and
//! dynamical degrees, and run the verification suite.
//!
//! Exit status is 0 when everything passes, 1 when a model violates the type
//! restrictions or a check fails, and 2 for unreadable or malformed input.

mod json;
mod tol;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use albertine::albert::{albert_poly_with, AlbertOptions, CaseRecord};
use albertine::dynamics::{
    degree_report, dinh_check, sv_limit, ConvergenceTrace, DegreeEntry, Tolerances,
};
use albertine::io::{parse_matrix_file, parse_model_file, ModelFile};
use albertine::model::{degree, Characteristic, Endomorphism, Violation};
use albertine::verify::{random_isogeny, verify_pair, VerifyReport};
use albertine::Error;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "albertine", version, about = "Albert polynomials and dynamical degrees of abelian variety endomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file against the type restrictions.
    Validate { file: PathBuf },
    /// Characteristic and Albert polynomials of the file's endomorphism.
    Albert { file: PathBuf },
    /// Cohomological and numerical degrees, with intersection-growth traces.
    Degrees {
        file: PathBuf,
        /// Largest iterate used for the intersection-growth estimates.
        #[arg(long, default_value_t = 20)]
        m_max: u32,
        /// Write one CSV trace per k into this directory.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
    /// Run every check on a model file or on seeded random pairs.
    Verify(VerifyArgs),
    /// Growth of the singular values of powers of a complex matrix.
    SvLimit {
        #[arg(long)]
        matrix: PathBuf,
        /// Largest power; powers 1, 2, 4, ... up to this bound are used.
        #[arg(long, default_value_t = 256)]
        m_max: u32,
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyArgs {
    file: Option<PathBuf>,
    /// Verify COUNT random pairs starting at SEED.
    #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
    random: Option<Vec<u64>>,
}

/// Largest dimension drawn by `verify --random`.
const RANDOM_MAX_G: usize = 4;
/// Entry bound for random endomorphisms.
const RANDOM_BOUND: i64 = 3;

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Overflow(_) | Error::Shape(_) | Error::OutOfRange { .. } | Error::NotSquare { .. } | Error::DimensionMismatch(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ModelFile, Failure> {
    Ok(parse_model_file(&read(path)?)?)
}

fn load_pair(path: &Path) -> Result<(ModelFile, Endomorphism), Failure> {
    let file = load(path)?;
    let alpha = file
        .endomorphism
        .clone()
        .ok_or_else(|| Failure::Input(format!("{}: no endomorphism given", path.display())))?;
    file.model.validate()?;
    Ok((file, alpha))
}

/// A closed stdout (for example `| head`) is not an error worth reporting.
fn emit<T: Serialize>(report: &T) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{}", json::to_string(report));
}

/// Integers that fit in `i64` as JSON numbers, larger ones as strings.
fn int_value(x: &BigInt) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

fn ints(xs: &[BigInt]) -> Vec<Value> {
    xs.iter().map(int_value).collect()
}

fn write_csv(dir: &Path, prefix: &str, traces: &[ConvergenceTrace]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    for t in traces {
        let path = dir.join(format!("{prefix}_{}.csv", t.index));
        fs::write(&path, t.to_csv()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    schema_version: u32,
    command: &'static str,
    valid: bool,
    dimension: usize,
    characteristic: Option<Characteristic>,
    multiplicities: Option<Vec<usize>>,
    violations: &'a [Violation],
}

fn cmd_validate(path: &Path) -> Outcome {
    let file = load(path)?;
    let violations = file.model.violations();
    let valid = violations.is_empty();
    emit(&ValidateReport {
        schema_version: json::SCHEMA_VERSION,
        command: "validate",
        valid,
        dimension: file.model.dimension(),
        characteristic: file.model.characteristic(),
        multiplicities: if valid { file.model.multiplicities().ok() } else { None },
        violations: &violations,
    });
    for v in &violations {
        eprintln!("{v}");
    }
    Ok(valid)
}

#[derive(Serialize)]
struct AlbertReport {
    schema_version: u32,
    command: &'static str,
    g: usize,
    label: Option<String>,
    degree: Value,
    /// Ascending coefficients.
    char_poly: Vec<Value>,
    /// Ascending coefficients as `[re, im]`.
    albert_poly: Vec<[f64; 2]>,
    albert_poly_exact: Option<Vec<Value>>,
    case_trace: Vec<CaseRecord>,
    exact: bool,
    residual: f64,
}

fn cmd_albert(path: &Path, tol: &Tolerances) -> Outcome {
    let (file, alpha) = load_pair(path)?;
    let opts = AlbertOptions {
        tol: tol.pairing,
        ..AlbertOptions::default()
    };
    let f = albert_poly_with(&file.model, &alpha, opts)?;
    emit(&AlbertReport {
        schema_version: json::SCHEMA_VERSION,
        command: "albert",
        g: file.model.dimension(),
        label: alpha.label.clone(),
        degree: int_value(&degree(&file.model, &alpha)?),
        char_poly: ints(f.char_poly.coeffs()),
        albert_poly: f.p_albert.coeffs().iter().map(|z| [z.re, z.im]).collect(),
        albert_poly_exact: f.p_albert_exact.as_ref().map(|p| ints(p.coeffs())),
        case_trace: f.case_trace,
        exact: f.exact,
        residual: f.residual,
    });
    Ok(true)
}

#[derive(Serialize)]
struct TraceSummary {
    k: usize,
    m: u32,
    value: f64,
    target: f64,
}

#[derive(Serialize)]
struct DegreesReport {
    schema_version: u32,
    command: &'static str,
    g: usize,
    label: Option<String>,
    tolerances: Tolerances,
    entries: Vec<DegreeEntry>,
    /// `[i, χ_i]` for odd `i`.
    odd: Vec<(usize, f64)>,
    chi_lambda: bool,
    dinh: bool,
    log_concave: bool,
    traces: Vec<TraceSummary>,
}

fn cmd_degrees(path: &Path, m_max: u32, csv_dir: Option<&Path>, tol: &Tolerances) -> Outcome {
    let (file, alpha) = load_pair(path)?;
    let r = degree_report(&file.model, &alpha, Some(m_max), tol)?;
    let dinh = dinh_check(&file.model, &alpha, tol.dinh)?;
    if let Some(dir) = csv_dir {
        write_csv(dir, "lambda", &r.traces)?;
    }
    let traces = r
        .traces
        .iter()
        .filter_map(|t| {
            t.last().map(|(m, value)| TraceSummary {
                k: t.index,
                m,
                value,
                target: t.target,
            })
        })
        .collect();
    let pass = r.chi_lambda && dinh.pass;
    emit(&DegreesReport {
        schema_version: json::SCHEMA_VERSION,
        command: "degrees",
        g: r.g,
        label: alpha.label.clone(),
        tolerances: *tol,
        entries: r.entries,
        odd: r.odd,
        chi_lambda: r.chi_lambda,
        dinh: dinh.pass,
        log_concave: r.log_concave,
        traces,
    });
    Ok(pass)
}

#[derive(Serialize)]
struct FileVerifyReport {
    schema_version: u32,
    command: &'static str,
    tolerances: Tolerances,
    #[serde(flatten)]
    report: VerifyReport,
}

#[derive(Serialize)]
struct RandomCase {
    index: u64,
    seed: u64,
    g: usize,
    types: Vec<String>,
    degree: String,
    pass: bool,
    failed_checks: Vec<String>,
}

#[derive(Serialize)]
struct RandomVerifyReport {
    schema_version: u32,
    command: &'static str,
    tolerances: Tolerances,
    seed: u64,
    count: u64,
    max_g: usize,
    entry_bound: i64,
    passed: u64,
    cases: Vec<RandomCase>,
}

fn cmd_verify(args: &VerifyArgs, tol: &Tolerances) -> Outcome {
    if let Some(path) = &args.file {
        let (file, alpha) = load_pair(path)?;
        let report = verify_pair(&file.model, &alpha, tol)?;
        let pass = report.pass;
        emit(&FileVerifyReport {
            schema_version: json::SCHEMA_VERSION,
            command: "verify",
            tolerances: *tol,
            report,
        });
        return Ok(pass);
    }
    let (seed, count) = match args.random.as_deref() {
        Some(&[seed, count]) => (seed, count),
        _ => return Err(Failure::Input("--random takes SEED and COUNT".into())),
    };
    let mut cases = Vec::with_capacity(count as usize);
    for index in 0..count {
        let s = seed.wrapping_add(index);
        let ch = if index % 2 == 0 { Characteristic::Zero } else { Characteristic::Positive };
        let (model, alpha) = random_isogeny(s, RANDOM_MAX_G, ch, RANDOM_BOUND)?;
        let r = verify_pair(&model, &alpha, tol)?;
        cases.push(RandomCase {
            index,
            seed: s,
            g: r.g,
            types: model.factors.iter().map(|f| f.albert_type.to_string()).collect(),
            degree: r.degree.clone(),
            pass: r.pass,
            failed_checks: r
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect(),
        });
    }
    let passed = cases.iter().filter(|c| c.pass).count() as u64;
    emit(&RandomVerifyReport {
        schema_version: json::SCHEMA_VERSION,
        command: "verify",
        tolerances: *tol,
        seed,
        count,
        max_g: RANDOM_MAX_G,
        entry_bound: RANDOM_BOUND,
        passed,
        cases,
    });
    eprintln!("{passed}/{count} passed");
    Ok(passed == count)
}

#[derive(Serialize)]
struct SvReport {
    schema_version: u32,
    command: &'static str,
    n: usize,
    m_max: u32,
    traces: Vec<SvTrace>,
}

#[derive(Serialize)]
struct SvTrace {
    i: usize,
    m: u32,
    value: f64,
    target: f64,
    error: f64,
}

fn cmd_sv_limit(path: &Path, m_max: u32, csv_dir: Option<&Path>) -> Outcome {
    let a = parse_matrix_file(&read(path)?)?;
    let traces = sv_limit(&a, m_max)?;
    if let Some(dir) = csv_dir {
        write_csv(dir, "sigma", &traces)?;
    }
    emit(&SvReport {
        schema_version: json::SCHEMA_VERSION,
        command: "sv-limit",
        n: a.rows(),
        m_max,
        traces: traces
            .iter()
            .filter_map(|t| {
                t.last().map(|(m, value)| SvTrace {
                    i: t.index,
                    m,
                    value,
                    target: t.target,
                    error: (value - t.target).abs(),
                })
            })
            .collect(),
    });
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    let tol = tol::from_env().map_err(Failure::Input)?;
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Albert { file } => cmd_albert(file, &tol),
        Command::Degrees { file, m_max, csv_dir } => cmd_degrees(file, *m_max, csv_dir.as_deref(), &tol),
        Command::Verify(args) => cmd_verify(args, &tol),
        Command::SvLimit { matrix, m_max, csv_dir } => cmd_sv_limit(matrix, *m_max, csv_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
