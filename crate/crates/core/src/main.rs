//! Command-line front end: load a JSON document of named algebras, homs,
//! maps, fields, and points, run individual computations, or execute the
//! full law suite with a machine-readable report.
//!
//! Exit codes: 0 all checks passed, 1 at least one law entry failed,
//! 2 input error (unreadable file, malformed document, unknown name).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use weilform::sample::sub_rng;
use weilform::scalar::render_rational;
use weilform::{
    classical_d, classical_derivative_check, exterior_derivative, from_classical, integrate,
    random_microcube, validate_form, AlgebraCtx, Document, FormError, Rational, Report,
};

#[derive(Parser)]
#[command(name = "weilform", version, about = "Exact nilpotent prolongation and differential forms")]
struct Cli {
    /// JSON document of named algebras, homs, maps, fields, and points.
    /// Defaults to the built-in document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for every randomized law check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random instances per law.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect algebras declared in the document.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Validate homs declared in the document.
    Hom {
        #[command(subcommand)]
        action: HomAction,
    },
    /// Prolong points along maps from the document.
    Prolong {
        #[command(subcommand)]
        action: ProlongAction,
    },
    /// Validate or differentiate fields from the document.
    Form {
        #[command(subcommand)]
        action: FormAction,
    },
    /// Run law suites over the document.
    Check {
        #[command(subcommand)]
        action: CheckAction,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Print the basis and dimension of a named algebra.
    Show { name: String },
}

#[derive(Subcommand)]
enum HomAction {
    /// Check that every declared hom kills its source relations.
    Check,
}

#[derive(Subcommand)]
enum ProlongAction {
    /// Apply a named map to a named point inside the point's algebra.
    Eval { map: String, point: String },
}

#[derive(Subcommand)]
enum FormAction {
    /// Run the homogeneity and alternation laws on a named field.
    Validate { name: String },
    /// Differentiate a named field along both routes and compare.
    D { name: String },
}

#[derive(Subcommand)]
enum CheckAction {
    /// Run every law cluster and merge the entries into one sorted report.
    All,
}

/// Anything that should surface as exit code 2 rather than a law failure.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, InputError> {
    let doc = load_document(&cli.input)?;
    match &cli.command {
        Command::Algebra {
            action: AlgebraAction::Show { name },
        } => algebra_show(&doc, name, cli.json),
        Command::Hom { action: HomAction::Check } => {
            Ok(emit(&weilform::hom_check(&doc, cli.seed), cli.json))
        }
        Command::Prolong {
            action: ProlongAction::Eval { map, point },
        } => prolong_eval(&doc, map, point, cli.json),
        Command::Form {
            action: FormAction::Validate { name },
        } => form_validate(&doc, name, cli.samples, cli.seed, cli.json),
        Command::Form {
            action: FormAction::D { name },
        } => form_d(&doc, name, cli.samples, cli.seed, cli.json),
        Command::Check { action: CheckAction::All } => {
            Ok(emit(&weilform::run_suite(&doc, cli.seed, cli.samples), cli.json))
        }
    }
}

fn load_document(input: &Option<PathBuf>) -> Result<Document, InputError> {
    match input {
        None => Ok(Document::builtin()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(Document::from_json(&text)?)
        }
    }
}

/// Print a report as text or JSON; the exit code reflects its failures.
fn emit(report: &Report, as_json: bool) -> ExitCode {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn algebra_show(doc: &Document, name: &str, as_json: bool) -> Result<ExitCode, InputError> {
    let algebra = doc
        .algebras
        .get(name)
        .ok_or_else(|| InputError(format!("no algebra named {name} in the document")))?;
    let ctx = AlgebraCtx::rational(algebra.clone());
    match algebra.weil_basis() {
        Ok(basis) => {
            let rendered: Vec<String> = basis
                .iter()
                .map(|m| ctx.monomial_elem(m.clone()).to_string())
                .collect();
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "name": name,
                        "algebra": algebra.to_string(),
                        "dimension": basis.len(),
                        "basis": rendered,
                    }))
                    .expect("plain object serializes")
                );
            } else {
                println!("{name} = {algebra}");
                println!("dim {}: {}", basis.len(), rendered.join(", "));
            }
        }
        Err(e) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "name": name,
                        "algebra": algebra.to_string(),
                        "generators": algebra.generator_names(),
                        "notice": e.to_string(),
                    }))
                    .expect("plain object serializes")
                );
            } else {
                println!("{name} = {algebra}");
                println!("not finite-dimensional: {e}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn prolong_eval(
    doc: &Document,
    map_name: &str,
    point_name: &str,
    as_json: bool,
) -> Result<ExitCode, InputError> {
    let map = doc
        .smooth_maps
        .get(map_name)
        .ok_or_else(|| InputError(format!("no map named {map_name} in the document")))?;
    let point = doc
        .points
        .get(point_name)
        .ok_or_else(|| InputError(format!("no point named {point_name} in the document")))?;
    let result = weilform::prolong_rational(map, point)?;
    if as_json {
        let coords: Vec<String> = result.coords().iter().map(|c| c.to_string()).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "map": map_name,
                "point": point_name,
                "algebra": result.algebra().to_string(),
                "coords": coords,
            }))
            .expect("plain object serializes")
        );
    } else {
        println!("{point_name} = {point}  over {}", point.algebra());
        println!("T({map_name})({point_name}) = {result}");
    }
    Ok(ExitCode::SUCCESS)
}

/// A field that fails its own construction-time validation is a law failure
/// (exit 1, report printed); malformed shapes stay input errors (exit 2).
fn form_from_field(
    doc: &Document,
    name: &str,
    as_json: bool,
) -> Result<Result<weilform::DifferentialForm, ExitCode>, InputError> {
    let field = doc
        .fields
        .get(name)
        .ok_or_else(|| InputError(format!("no field named {name} in the document")))?;
    match from_classical(field) {
        Ok(form) => Ok(Ok(form)),
        Err(FormError::Invalid(report)) => Ok(Err(emit(&report, as_json))),
        Err(e) => Err(e.into()),
    }
}

fn form_validate(
    doc: &Document,
    name: &str,
    samples: usize,
    seed: u64,
    as_json: bool,
) -> Result<ExitCode, InputError> {
    let form = match form_from_field(doc, name, as_json)? {
        Ok(form) => form,
        Err(code) => return Ok(code),
    };
    let report = validate_form(&form, samples, seed);
    if !as_json {
        println!(
            "{name}: degree {} form on R^{}, values in R^{}",
            form.n(),
            form.m(),
            form.e()
        );
    }
    Ok(emit(&report, as_json))
}

fn form_d(
    doc: &Document,
    name: &str,
    samples: usize,
    seed: u64,
    as_json: bool,
) -> Result<ExitCode, InputError> {
    let field = doc
        .fields
        .get(name)
        .ok_or_else(|| InputError(format!("no field named {name} in the document")))?;
    let report = match classical_derivative_check(field, samples, seed) {
        Ok(report) => report,
        Err(FormError::Invalid(inner)) => return Ok(emit(&inner, as_json)),
        Err(e) => return Err(e.into()),
    };

    if !as_json {
        // Demonstrate both routes on one sample microcube before the report.
        let form = match form_from_field(doc, name, as_json)? {
            Ok(form) => form,
            Err(code) => return Ok(code),
        };
        let boundary_route = exterior_derivative(&form, samples, seed)?;
        let symbolic_route = from_classical(&classical_d(field))?;
        let mut rng = sub_rng(seed, &format!("form_d.demo.{name}"));
        let cube = random_microcube(&mut rng, form.n() + 1, form.m());
        let via_boundary = integrate(&cube, &boundary_route)?;
        let via_symbolic = integrate(&cube, &symbolic_route)?;
        println!(
            "{name}: d takes degree {} to degree {} on R^{}",
            form.n(),
            form.n() + 1,
            form.m()
        );
        println!("sample microcube: boundary route dω(γ) = {}", render_values(&via_boundary));
        println!("                  symbolic route (dA)(γ) = {}", render_values(&via_symbolic));
    }
    Ok(emit(&report, as_json))
}

fn render_values(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(render_rational).collect();
    format!("({})", parts.join(", "))
}
