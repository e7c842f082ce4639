//! Subcommands. Each one parses its input, calls the library and serializes the result.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use polya_core::diagnostics::polya_check_q;
use polya_core::{
    determinize, disambiguate, extract_ap_form, extract_formula, hadamard_subinverse, linear_hull, minimal_rep, state_elimination,
    univariate_polya_pipeline, variation_report, ExprError, HullConfig, HullError, TransformError, UnionOfSubspaces, UnivariateError,
    Word,
};

use crate::error::ParseError;
use crate::expr_format::{parse_expr, write_expr};
use crate::formats::{parse_source, write_rep, write_wfa, Source};
use crate::ratfun::parse_ratfun;

#[derive(Debug, Parser)]
#[command(name = "polya", version, about = "Exact weighted automata and rational series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Longest word enumerated by `coeffs` and `check`.
    #[arg(long, global = true, default_value_t = 10)]
    pub maxlen: usize,
    /// Largest number of vectors any enumeration may hold.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: usize,
    /// Distance bound for `check variation`.
    #[arg(long, global = true, default_value_t = 2)]
    pub c: usize,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient of one word (`_` is the empty word).
    Eval { file: PathBuf, word: String },
    /// All coefficients up to `--maxlen`.
    Coeffs { file: PathBuf },
    /// Minimal linear representation.
    Minimize { file: PathBuf },
    /// Linear hull of the representation as given.
    Hull { file: PathBuf },
    /// Deterministic automaton, or the hull showing none exists.
    Determinize { file: PathBuf },
    /// Unambiguous automaton, or the failed cover condition.
    Disambiguate { file: PathBuf },
    /// Unambiguous rational expression of an unambiguous automaton.
    ToExpr { file: PathBuf },
    /// Exponent formula of an unambiguous expression over Q.
    ExtractFormula { file: PathBuf },
    /// Automaton for the sum of inverted coefficients.
    HadamardInverse { file: PathBuf },
    /// Arithmetic-progression form of a one-letter series.
    Apform {
        #[arg(required_unless_present = "ratfun", conflicts_with = "ratfun")]
        file: Option<PathBuf>,
        /// A literal `P/Q` in `x` instead of a file.
        #[arg(long)]
        ratfun: Option<String>,
    },
    /// Property checks and diagnostics.
    Check { property: Property, file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Deterministic,
    Unambiguous,
    Polya,
    Variation,
}

/// Output text and exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { code: 0, text }
    }

    /// A structured analysis failure; `text` is the evidence.
    fn failed(text: String) -> Outcome {
        Outcome { code: 2, text }
    }
}

/// Parse and IO problems, reported with exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<ParseError> for UsageError {
    fn from(e: ParseError) -> UsageError {
        UsageError(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {}", path.display(), e)))
}

fn source(path: &PathBuf) -> Result<Source, UsageError> {
    parse_source(&read(path)?).map_err(|e| UsageError(format!("{}: {}", path.display(), e)))
}

/// `hull dim <d> components <k>` followed by each component's echelon basis.
pub fn hull_report(y: &UnionOfSubspaces) -> String {
    let mut out = format!("hull dim {} components {}\n", y.dimension().unwrap_or(0), y.components().len());
    for (i, c) in y.components().iter().enumerate() {
        let _ = writeln!(out, "component {} dim {}", i + 1, c.dim());
        for row in c.basis() {
            let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "basis {}", entries.join(" "));
        }
    }
    out
}

fn budget_line(e: &HullError) -> String {
    match e {
        HullError::BudgetExceeded { needed, budget } => format!("budget-exceeded needed {} budget {}\n", needed, budget),
        other => format!("failure {}\n", other),
    }
}

fn transform_failure(e: TransformError) -> Outcome {
    Outcome::failed(match e {
        TransformError::HullDimensionExceeded(y) => hull_report(&y),
        TransformError::CoverConditionViolated(v) => format!("{}\n", v),
        TransformError::Hull(h) => budget_line(&h),
        other => format!("failure {}\n", other),
    })
}

fn expr_failure(e: ExprError) -> Outcome {
    Outcome::failed(match e {
        ExprError::AmbiguousInput(w) => format!("ambiguous witness {}\n", w),
        other => format!("failure {}\n", other),
    })
}

fn univariate_failure(e: UnivariateError) -> Outcome {
    match e {
        UnivariateError::Transform(t) => transform_failure(t),
        UnivariateError::AmbiguousInput(w) => Outcome::failed(format!("ambiguous witness {}\n", w)),
        other => Outcome::failed(format!("failure {}\n", other)),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    let config = HullConfig::with_budget(cli.budget);
    Ok(match &cli.command {
        Command::Eval { file, word } => {
            let r = source(file)?.rep();
            let w = Word::parse(word);
            let value = r.eval(&w).map_err(|e| UsageError(e.to_string()))?;
            Outcome::ok(format!("{}\n", value))
        }
        Command::Coeffs { file } => {
            let r = source(file)?.rep();
            let mut out = String::new();
            for (w, c) in r.coefficients(cli.maxlen) {
                let _ = writeln!(out, "{} {}", w, c);
            }
            Outcome::ok(out)
        }
        Command::Minimize { file } => Outcome::ok(write_rep(&minimal_rep(&source(file)?.rep()).0)),
        Command::Hull { file } => match linear_hull(&source(file)?.rep(), &config) {
            Ok((y, _)) => Outcome::ok(hull_report(&y)),
            Err(e) => Outcome::failed(budget_line(&e)),
        },
        Command::Determinize { file } => match determinize(&source(file)?.rep(), &config) {
            Ok(w) => Outcome::ok(write_wfa(&w)),
            Err(e) => transform_failure(e),
        },
        Command::Disambiguate { file } => match disambiguate(&source(file)?.rep(), &config) {
            Ok(w) => Outcome::ok(write_wfa(&w)),
            Err(e) => transform_failure(e),
        },
        Command::ToExpr { file } => match state_elimination(&source(file)?.wfa()) {
            Ok(e) => Outcome::ok(write_expr(&e)),
            Err(e) => expr_failure(e),
        },
        Command::ExtractFormula { file } => {
            let text = read(file)?;
            let e = parse_expr(&text).map_err(|e| UsageError(format!("{}: {}", file.display(), e)))?;
            match extract_formula(&e) {
                Ok(fm) => {
                    let lambdas: Vec<String> = fm.lambdas.iter().map(ToString::to_string).collect();
                    let mut out = format!("formula lambdas {}\nbound {}\n", lambdas.join(" "), fm.bound);
                    for (i, a) in fm.exponents.iter().enumerate() {
                        let _ = writeln!(out, "exponent {}", i + 1);
                        out.push_str(&write_rep(a));
                    }
                    Outcome::ok(out)
                }
                Err(e) => expr_failure(e),
            }
        }
        Command::HadamardInverse { file } => match hadamard_subinverse(&source(file)?.wfa()) {
            Ok(w) => Outcome::ok(write_wfa(&w)),
            Err(e) => expr_failure(e),
        },
        Command::Apform { file, ratfun } => {
            let result = match (file, ratfun) {
                (_, Some(lit)) => univariate_polya_pipeline(&parse_ratfun(lit)?, &config),
                (Some(path), None) => match source(path)? {
                    Source::Wfa(w) if w.is_unambiguous() => extract_ap_form(&w),
                    s => disambiguate(&s.rep(), &config).map_err(UnivariateError::from).and_then(|w| extract_ap_form(&w)),
                },
                (None, None) => return Err(UsageError("apform needs a file or --ratfun".into())),
            };
            match result {
                Ok(ap) => Outcome::ok(ap.to_string()),
                Err(e) => univariate_failure(e),
            }
        }
        Command::Check { property, file } => {
            let s = source(file)?;
            match property {
                Property::Deterministic => {
                    if s.wfa().is_deterministic() {
                        Outcome::ok("deterministic yes\n".into())
                    } else {
                        Outcome::failed("deterministic no\n".into())
                    }
                }
                Property::Unambiguous => match s.wfa().ambiguity_witness() {
                    None => Outcome::ok("unambiguous yes\n".into()),
                    Some(w) => Outcome::failed(format!("unambiguous no witness {}\n", w)),
                },
                Property::Polya => match polya_check_q(&s.rep(), cli.maxlen) {
                    Ok(p) => Outcome::ok(format!("{}\n", p)),
                    Err(e) => Outcome::failed(format!("failure {}\n", e)),
                },
                Property::Variation => match variation_report(&s.rep(), cli.c, cli.maxlen) {
                    Ok(r) => Outcome::ok(format!("{}\n", r)),
                    Err(e) => Outcome::failed(format!("failure {}\n", e)),
                },
            }
        }
    })
}
