//! `restrix`: construct, analyze, verify and export finite restriction
//! monoids from the command line.
//!
//! Exit codes: 0 on success, 2 on bad input, 3 when a check that must hold
//! fails.

mod dot;

use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use restrix::algebra::{generating_set, FiniteBiunary, FiniteMonoid, Side};
use restrix::expansions::{
    bounded_enumerate, build_partial_product, prefix_expand_group, PresentedExpansion, RelationTag,
};
use restrix::freerestr::compute_d;
use restrix::munn::{tree_of_word, Word};
use restrix::premorph::FinitePremorphism;
use restrix::verify::{run_suite, SuiteOptions, SuiteSummary};
use restrix::Error;

#[derive(Parser)]
#[command(name = "restrix", version, about = "Two-sided restriction monoids and their expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the restriction monoid axioms of an algebra.
    Check {
        /// Path, `-` for stdin, or inline JSON.
        input: String,
    },
    /// Projections, natural order, σ and structural predicates.
    Analyze { input: String },
    /// The prefix expansion of a finite group.
    PrefixExpand {
        #[arg(long)]
        group: String,
    },
    /// The partial action product of a premorphism bundle.
    Product { input: String },
    /// Bounded enumeration of `FR_R(M)` or, with `--inverse`, `FI_R(M)`.
    Enumerate {
        /// A monoid, or a full presented expansion.
        input: String,
        #[arg(long)]
        relations: Option<RelationTag>,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        max_elements: Option<usize>,
        #[arg(long)]
        inverse: bool,
    },
    /// The Munn tree of a signed word such as `a b a'`.
    Munn {
        #[arg(long)]
        expr: String,
    },
    /// The projection `D_u` of a signed word, as a pair `(E, m)`.
    Du {
        #[arg(long)]
        word: String,
    },
    /// Run a verification suite; one JSON report per line.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Default)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bound: Option<usize>,
        /// Samples per lemma in the `D_u` suite.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Include wall times; output is then no longer reproducible.
        #[arg(long)]
        timings: bool,
    },
    /// Graphviz rendering of the natural order or a Cayley graph.
    ExportDot {
        input: String,
        #[arg(long, value_enum)]
        what: DotKind,
        /// Comma-separated generator indices for the Cayley graph.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Default,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Order,
    Cayley,
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation { .. } => Failure::Violation(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(format!("malformed JSON: {e}"))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_input(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

/// A restriction-signature algebra, or a plain monoid read as reduced.
fn read_algebra(arg: &str) -> CliResult<FiniteBiunary> {
    let v: Value = serde_json::from_str(&read_input(arg)?)?;
    if v.get("star").is_some() || v.get("plus").is_some() {
        Ok(serde_json::from_value(v)?)
    } else {
        let m: FiniteMonoid = serde_json::from_value(v)?;
        Ok(FiniteBiunary::reduced(&m))
    }
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn emit(text: &str) -> CliResult {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

/// One compact JSON document per line.
fn print_json<T: Serialize>(value: &T) -> CliResult {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    emit(&s)
}

#[derive(Serialize)]
struct Analysis {
    size: usize,
    restriction: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<restrix::algebra::AxiomViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<Structure>,
}

#[derive(Serialize)]
struct Structure {
    projections: Vec<usize>,
    order_covers: Vec<(usize, usize)>,
    sigma: Vec<Vec<usize>>,
    proper: bool,
    f_restriction: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    maxima: Option<Vec<usize>>,
    left_ample: bool,
    right_ample: bool,
    inverse: bool,
}

fn analyze(s: &FiniteBiunary) -> CliResult<Analysis> {
    let report = s.check_restriction_axioms()?;
    if !report.is_empty() {
        return Ok(Analysis {
            size: s.size(),
            restriction: false,
            violations: report.violations,
            structure: None,
        });
    }
    let maxima = s.f_restriction_maxima()?;
    Ok(Analysis {
        size: s.size(),
        restriction: true,
        violations: Vec::new(),
        structure: Some(Structure {
            projections: s.projection_set(),
            order_covers: s.natural_order()?.covers(),
            sigma: s.sigma()?.classes(),
            proper: s.is_proper()?,
            f_restriction: maxima.is_some(),
            maxima,
            left_ample: s.is_ample(Side::Left)?,
            right_ample: s.is_ample(Side::Right)?,
            inverse: s.inv().is_some(),
        }),
    })
}

fn enumerate(
    input: &str,
    relations: Option<RelationTag>,
    bound: Option<usize>,
    max_elements: Option<usize>,
    inverse: bool,
) -> CliResult {
    let v: Value = serde_json::from_str(&read_input(input)?)?;
    let mut p = if v.get("monoid").is_some() {
        let mut v = v;
        if let (Some(tag), Some(obj)) = (relations, v.as_object_mut()) {
            obj.insert("relations".into(), serde_json::to_value(tag)?);
        }
        serde_json::from_value::<PresentedExpansion>(v)?
    } else {
        let m: FiniteMonoid = serde_json::from_value(v)?;
        let tag = relations.ok_or_else(|| Failure::Input("--relations is required when the input is a monoid".into()))?;
        PresentedExpansion::new(m, tag)
    };
    if let Some(b) = bound {
        p = p.with_bound(b);
    }
    if let Some(cap) = max_elements {
        p.max_elements = cap;
    }
    if inverse {
        p = p.inverse();
    }
    print_json(&bounded_enumerate(&p)?)
}

fn verify(opts: &SuiteOptions, timings: bool) -> CliResult<bool> {
    let mut failed = false;
    let mut write_err = None;
    let reports = run_suite(opts, &mut |r| {
        let r = if timings { r.clone() } else { r.clone().without_timing() };
        failed |= r.is_failure();
        if write_err.is_none() {
            write_err = print_json(&r).err();
        }
    });
    if let Some(e) = write_err {
        return Err(e);
    }
    let summary = SuiteSummary::of(&reports);
    eprintln!(
        "{} pass, {} fail, {} skipped, {} inconclusive",
        summary.pass, summary.fail, summary.skipped, summary.inconclusive
    );
    Ok(!failed)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Check { input } => {
            let s = read_algebra(&input)?;
            print_json(&s.check_restriction_axioms()?)?;
        }
        Command::Analyze { input } => {
            let s = read_algebra(&input)?;
            print_json(&analyze(&s)?)?;
        }
        Command::PrefixExpand { group } => {
            let g: FiniteMonoid = serde_json::from_str(&read_input(&group)?)?;
            print_json(&prefix_expand_group(&g)?.algebra)?;
        }
        Command::Product { input } => {
            let phi: FinitePremorphism = serde_json::from_str(&read_input(&input)?)?;
            print_json(&build_partial_product(&phi)?)?;
        }
        Command::Enumerate {
            input,
            relations,
            bound,
            max_elements,
            inverse,
        } => enumerate(&input, relations, bound, max_elements, inverse)?,
        Command::Munn { expr } => {
            let w = Word::parse(&expr)?;
            print_json(&tree_of_word(&w))?;
        }
        Command::Du { word } => {
            let w = Word::parse(&word)?;
            print_json(&compute_d(&w))?;
        }
        Command::Verify {
            suite: Suite::Default,
            seed,
            bound,
            samples,
            timings,
        } => {
            let mut opts = SuiteOptions {
                seed,
                samples,
                ..SuiteOptions::default()
            };
            if let Some(b) = bound {
                opts.bound = b;
            }
            return verify(&opts, timings);
        }
        Command::ExportDot { input, what, generators } => {
            let s = read_algebra(&input)?;
            let text = match what {
                DotKind::Order => dot::order(&s)?,
                DotKind::Cayley => {
                    let gens = generators.unwrap_or_else(|| generating_set(&s));
                    dot::cayley(&s, &gens)?
                }
            };
            emit(&text)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure::Input(msg)) => {
            eprintln!("restrix: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("restrix: {msg}");
            ExitCode::from(3)
        }
    }
}
