//! `ginv` command line.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or IO
//! error (including malformed JSON), 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use ginv_core::cline::{self, ClineQuadruple, ConditionFamily};
use ginv_core::gen::{self, GenSpec};
use ginv_core::matrix::product;
use ginv_core::{drazin, spectral, Backend, Error, Matrix, Scalar, Tolerance};
use serde_json::{json, Value};

use crate::json::{self, AnyQuadruple, FormatError};
use crate::suite::{self, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ginv", version, about = "Drazin inverses and generalized Cline transfer checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Arithmetic backend (default: exact, except f64 for `spectrum` and
    /// the input's own backend for drazin/group/index).
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,

    /// Equality tolerance for the f64 backend.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Relative pivot tolerance for f64 rank decisions.
    #[arg(long = "rank-tol", global = true)]
    pub rank_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    F64,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::F64 => Backend::F64,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Drazin inverse and index of a matrix.
    Drazin {
        #[arg(long)]
        input: PathBuf,
    },
    /// Group inverse (fails with exit 1 when the index exceeds 1).
    Group {
        #[arg(long)]
        input: PathBuf,
    },
    /// Drazin index of a matrix.
    Index {
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluates a family's equations on a quadruple.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Family to check (default: the quadruple's declared family).
        #[arg(long)]
        family: Option<String>,
    },
    /// Transfers (ac)^D to bd and verifies the result.
    Transfer {
        #[arg(long)]
        input: PathBuf,
    },
    /// Explicit inverse of I - bd.
    Jacobson {
        #[arg(long)]
        input: PathBuf,
    },
    /// Invertibility transfer at sampled lambda and nonzero spectra of ac, bd.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        /// Seed for the lambda samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generates a quadruple of the given family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs a built-in example (`example-3-7`).
    Demo { name: String },
    /// Runs every property over seeded corpora.
    Suite {
        /// Number of seeds; seeds 0..N are used.
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Format(FormatError),
    Core(Error),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Exit code for a library error: mathematical "no" answers are verdicts,
/// solver breakdowns are numerical failures, the rest are bad input.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolated { .. }
        | Error::NoGroupInverse { .. }
        | Error::SingularAC
        | Error::FormulaMismatch(_) => EXIT_VERDICT_FALSE,
        Error::NoConvergence(_) | Error::Singular | Error::GenerationFailed { .. } => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// A finished report plus whether its verdict is true.
struct Outcome {
    value: Value,
    verdict: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, verdict: true }
    }
}

/// Parses `args` (program name first), runs the verb and writes the report.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let result = tolerance(&cli).and_then(|tol| dispatch(&cli, &tol));
    match result {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.value).expect("serializable") + "\n";
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            if outcome.verdict {
                EXIT_OK
            } else {
                EXIT_VERDICT_FALSE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Format(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let code = exit_code_for(&e);
            if code == EXIT_VERDICT_FALSE {
                let text = serde_json::to_string_pretty(&json!({"verdict": false, "error": e.to_string()}))
                    .expect("serializable");
                let _ = writeln!(stdout, "{text}");
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}

fn tolerance(cli: &Cli) -> Result<Tolerance, Failure> {
    let default = Tolerance::default();
    let tol = Tolerance::new(cli.tol.unwrap_or(default.eq_tol), cli.rank_tol.unwrap_or(default.rank_tol));
    if tol.is_valid() {
        Ok(tol)
    } else {
        Err(Failure::Usage("tolerances must be positive and finite".into()))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn family_arg(name: &str) -> Result<ConditionFamily, Failure> {
    ConditionFamily::from_str(name).map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli, tol: &Tolerance) -> Result<Outcome, Failure> {
    let chosen = cli.backend.map(Backend::from);
    match &cli.command {
        Command::Drazin { input } | Command::Group { input } | Command::Index { input } => {
            let m = json::parse_matrix(&read(input)?)?;
            let backend = chosen.unwrap_or(m.backend());
            match backend {
                Backend::Exact => matrix_verb(&cli.command, &m.to_exact()?, tol),
                Backend::F64 => matrix_verb(&cli.command, &m.to_float(), tol),
            }
        }
        Command::Check { input, family } => {
            let q = json::parse_quadruple(&read(input)?)?;
            let family = family.as_deref().map(family_arg).transpose()?;
            with_quadruple(
                &q,
                chosen.unwrap_or(Backend::Exact),
                |q| Ok(check_verb(q, family, tol)),
                |q| Ok(check_verb(q, family, tol)),
            )
        }
        Command::Transfer { input } => {
            let q = json::parse_quadruple(&read(input)?)?;
            with_quadruple(&q, chosen.unwrap_or(Backend::Exact), |q| transfer_verb(q, tol), |q| transfer_verb(q, tol))
        }
        Command::Jacobson { input } => {
            let q = json::parse_quadruple(&read(input)?)?;
            with_quadruple(&q, chosen.unwrap_or(Backend::Exact), |q| jacobson_verb(q, tol), |q| jacobson_verb(q, tol))
        }
        Command::Spectrum { input, seed } => {
            let q = json::parse_quadruple(&read(input)?)?;
            with_quadruple(
                &q,
                chosen.unwrap_or(Backend::F64),
                |q| spectrum_verb(q, *seed, tol),
                |q| spectrum_verb(q, *seed, tol),
            )
        }
        Command::Gen { family, dim, seed } => {
            let spec = GenSpec::new(family_arg(family)?, *dim, *seed);
            let g = gen::generate(&spec)?;
            Ok(Outcome::ok(json::quadruple_value(&g.quadruple)))
        }
        Command::Demo { name } => match name.as_str() {
            "example-3-7" => Ok(demo_example_3_7(tol)?),
            other => Err(Failure::Usage(format!("unknown demo {other:?} (available: example-3-7)"))),
        },
        Command::Suite { seeds, dims } => {
            if *seeds == 0 || dims.is_empty() || dims.contains(&0) {
                return Err(Failure::Usage("--seeds must be positive and --dims a list of positive sizes".into()));
            }
            let mut config = SuiteConfig::new(*seeds, dims.clone());
            config.backend = chosen.unwrap_or(Backend::Exact);
            config.tol = *tol;
            let report = suite::run(&config);
            Ok(Outcome { verdict: report.all_pass(), value: report.to_json() })
        }
    }
}

fn with_quadruple(
    q: &AnyQuadruple,
    backend: Backend,
    exact: impl FnOnce(&ClineQuadruple<ginv_core::GaussianRational>) -> Result<Outcome, Failure>,
    float: impl FnOnce(&ClineQuadruple<ginv_core::Complex64>) -> Result<Outcome, Failure>,
) -> Result<Outcome, Failure> {
    match backend {
        Backend::Exact => exact(&q.to_exact()?),
        Backend::F64 => float(&q.to_float()),
    }
}

fn matrix_verb<S: Scalar>(verb: &Command, m: &Matrix<S>, tol: &Tolerance) -> Result<Outcome, Failure> {
    match verb {
        Command::Drazin { .. } => Ok(Outcome::ok(json::drazin_value(&drazin::drazin(m, tol)?))),
        Command::Group { .. } => {
            let g = drazin::group(m, tol)?;
            let mut v = json::any_matrix_value(&g.inverse);
            v["index"] = json!(drazin::index(m, tol)?);
            Ok(Outcome::ok(v))
        }
        _ => Ok(Outcome::ok(json!({"index": drazin::index(m, tol)?}))),
    }
}

fn check_verb<S: Scalar>(q: &ClineQuadruple<S>, family: Option<ConditionFamily>, tol: &Tolerance) -> Outcome {
    let q = match family {
        Some(f) => q.with_family(f),
        None => q.clone(),
    };
    let check = cline::check_conditions(&q, tol);
    Outcome { verdict: check.report.overall, value: json::check_value(&check) }
}

fn exact_or_within<S: Scalar>(r: &ginv_core::HypothesisReport) -> bool {
    match S::BACKEND {
        Backend::Exact => r.overall && r.all_exact_zero(),
        Backend::F64 => r.overall,
    }
}

fn transfer_verb<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<Outcome, Failure> {
    let bd = q.bd();
    let acd = drazin::drazin(&q.ac(), tol)?;
    let (e, bound_holds) = cline::transfer_drazin_with_bound(q, &acd, tol)?;
    let axioms = drazin::verify_drazin_axioms(&bd, &e.inverse, e.index, tol)?;
    let direct = drazin::drazin(&bd, tol)?;
    let squares = cline::transfer_via_squares(q, &acd, tol)?;
    let squares_axioms = drazin::verify_drazin_axioms(&bd, &squares.inverse, squares.index, tol)?;
    let verdict = exact_or_within::<S>(&axioms) && bound_holds;
    Ok(Outcome {
        verdict,
        value: json!({
            "family": q.family.as_str(),
            "ac": json::drazin_value(&acd),
            "bd": json::drazin_value(&e),
            "axioms": json::report_value(&axioms),
            "index_bound_holds": bound_holds,
            "bd_direct": json::drazin_value(&direct),
            "matches_direct": e.inverse.approx_eq(&direct.inverse, tol),
            "via_squares": {
                "inverse": json::any_matrix_value(&squares.inverse),
                "axioms": json::report_value(&squares_axioms),
            },
        }),
    })
}

fn jacobson_verb<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<Outcome, Failure> {
    let x = cline::jacobson_inverse(q, tol)?;
    Ok(Outcome::ok(json!({"inverse": json::any_matrix_value(&x)})))
}

fn spectrum_verb<S: Scalar>(q: &ClineQuadruple<S>, seed: u64, tol: &Tolerance) -> Result<Outcome, Failure> {
    let ac = spectral::nonzero_eigenvalues(&q.ac(), tol)?;
    let lambdas = spectral::lambda_samples(&ac.values, seed, spectral::DEFAULT_LAMBDA_SAMPLES);
    let report = spectral::spectral_report(q, &lambdas, tol)?;
    Ok(Outcome { verdict: report.all_hold(), value: json::spectral_value(&report) })
}

fn demo_example_3_7(tol: &Tolerance) -> Result<Outcome, Failure> {
    let q = gen::example_3_7();
    let check = cline::check_conditions(&q, tol);
    let ring_four = cline::family_report(&q, ConditionFamily::RingFour, tol);
    let acd_m = product(&[&q.a, &q.c, &q.d]);
    let dbd_m = product(&[&q.d, &q.b, &q.d]);
    let ac_d = drazin::drazin(&q.ac(), tol)?;
    let transferred = cline::transfer_gdrazin(&q, &ac_d, tol)?;
    let direct = drazin::drazin(&q.bd(), tol)?;
    let verdict = check.report.overall
        && check.report.all_exact_zero()
        && acd_m != dbd_m
        && transferred.inverse.is_zero()
        && direct.inverse.is_zero()
        && transferred.index == 2
        && ac_d.index == 2;
    Ok(Outcome {
        verdict,
        value: json!({
            "quadruple": json::quadruple_value(&q),
            "conditions": json::check_value(&check),
            "ring_four": json::report_value(&ring_four),
            "acd": json::any_matrix_value(&acd_m),
            "dbd": json::any_matrix_value(&dbd_m),
            "acd_equals_dbd": acd_m == dbd_m,
            "ac": json::drazin_value(&ac_d),
            "bd_transferred": json::drazin_value(&transferred),
            "bd_direct": json::drazin_value(&direct),
            "bd_index": transferred.index,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ginv").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn demo_passes() {
        let (code, out, _) = run_args(&["demo", "example-3-7"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["acd_equals_dbd"], json!(false));
        assert_eq!(v["bd_index"], json!(2));
        assert_eq!(v["conditions"]["overall"], json!(true));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["demo", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["gen", "--family", "nope", "--dim", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["demo", "example-3-7", "--tol", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["drazin", "--input", "/nonexistent/m.json"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn exit_code_classes() {
        assert_eq!(exit_code_for(&Error::SingularAC), EXIT_VERDICT_FALSE);
        assert_eq!(exit_code_for(&Error::NoConvergence("x")), EXIT_NUMERICAL);
        assert_eq!(exit_code_for(&Error::EmptyMatrix), EXIT_USAGE);
    }
}
