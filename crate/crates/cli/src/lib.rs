//! Command-line front end: argument parsing and dispatch.
//!
//! [`run`] never exits the process; it returns the exit code so that tests
//! can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 internal error.

use std::fmt::Write as _;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dyckpath::bijection::{pi, pi_inverse, pi_inverse_traced, pi_traced, BijectionError, PhiStep};
use dyckpath::dyck::{distribution, EnumerationCap, Statistic};
use dyckpath::omega::{
    classify_fjk, decompose_standard, omega, omega_form, psi, FjkClass, OmegaError, StandardForm,
};
use dyckpath::series::{cf_series, sary_series, BivariateSeries, SeriesError, Which};
use dyckpath::verify::{run_check, Check, VerifyError, VerifyParams};
use dyckpath::{DyckError, DyckPath, OrderedTree, ResidueSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dyckpath",
    version,
    about = "Dyck path statistics, bijections and generating functions"
)]
struct Cli {
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Lift the enumeration caps (n <= 14 for Dyck paths, n <= 8 for s-ary paths).
    #[arg(long, global = true)]
    unsafe_cap: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distribution of a statistic over all paths of semilength n.
    Table(TableArgs),
    /// Apply a bijection or involution to a path.
    Map(MapArgs),
    /// Print the ordered tree of a path as an outline.
    Tree(PathArgs),
    /// Print the cut-line standard form of a path as JSON.
    Decompose(DecomposeArgs),
    /// Print a generating function as a coefficient triangle.
    Series(SeriesArgs),
    /// Run an exhaustive check and report pass/fail.
    Verify(VerifyArgs),
    /// Draw a path as an ASCII staircase.
    Render(PathArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatName {
    ExteriorPairs,
    PyramidWeight,
    UpResidue,
    Height,
    SaryPyramidWeight,
    SaryExteriorDown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BijectionName {
    Pi,
    PiInverse,
    Omega,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    stat: StatName,
    /// Modulus for up-residue.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated residues for up-residue.
    #[arg(long, value_delimiter = ',')]
    residues: Vec<usize>,
    /// Arity for the s-ary statistics.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PathArgs {
    /// Path word over U and D.
    #[arg(long)]
    path: String,
    /// Accept and print '(' and ')' for U and D.
    #[arg(long)]
    paren: bool,
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long, value_enum)]
    bijection: BijectionName,
    /// Modulus for omega and psi.
    #[arg(long)]
    m: Option<usize>,
    #[command(flatten)]
    path: PathArgs,
    /// Also print case labels (pi) or standard forms (omega, psi).
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    m: usize,
    #[command(flatten)]
    path: PathArgs,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Modulus for the height-residue series.
    #[arg(long, conflicts_with_all = ["sary", "which"], requires = "residues")]
    m: Option<usize>,
    /// Comma-separated residues.
    #[arg(long, value_delimiter = ',')]
    residues: Vec<usize>,
    /// Arity for the s-ary series.
    #[arg(long, requires = "which")]
    sary: Option<usize>,
    #[arg(long, value_enum)]
    which: Option<WhichArg>,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_check)]
    check: Check,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse::<Check>().map_err(|e| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

/// How a command failed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<DyckError> for Failure {
    fn from(e: DyckError) -> Self {
        match e {
            DyckError::Overflow => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<OmegaError> for Failure {
    fn from(e: OmegaError) -> Self {
        match e {
            OmegaError::NotReflectable(_) => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<BijectionError> for Failure {
    fn from(e: BijectionError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Dyck(d) => d.into(),
            SeriesError::InvalidArity
            | SeriesError::InvalidM { .. }
            | SeriesError::InvalidPart(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownCheck(_) => Failure::Usage(e.to_string()),
            VerifyError::Dyck(d) => d.into(),
            VerifyError::Series(s) => s.into(),
            VerifyError::Bijection(b) => b.into(),
            VerifyError::Omega(o) => o.into(),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli)));
    let (text, failure) = match outcome {
        Ok(Ok(text)) => (text, None),
        Ok(Err((text, failure))) => (text, Some(failure)),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".to_string());
            (String::new(), Some(Failure::Internal(msg)))
        }
    };

    if !text.is_empty() {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, &text),
            None => out.write_all(text.as_bytes()),
        };
        if let Err(e) = written {
            let _ = writeln!(err, "error: cannot write output: {e}");
            return EXIT_USAGE;
        }
    }

    match failure {
        None => EXIT_OK,
        Some(Failure::Verification) => EXIT_VERIFY_FAILED,
        Some(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Some(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

/// Output text, or partial output plus the failure.
type Outcome = Result<String, (String, Failure)>;

fn dispatch(cli: &Cli) -> Outcome {
    let cap = if cli.unsafe_cap {
        EnumerationCap::unlimited()
    } else {
        EnumerationCap::default()
    };
    let plain = |r: Result<String, Failure>| r.map_err(|f| (String::new(), f));
    match &cli.command {
        Command::Table(a) => plain(table(a, cap)),
        Command::Map(a) => plain(map(a)),
        Command::Tree(a) => plain(read_path(a).map(|p| OrderedTree::from_path(&p).outline())),
        Command::Decompose(a) => plain(decompose(a)),
        Command::Series(a) => plain(series(a)),
        Command::Verify(a) => verify(a, cap),
        Command::Render(a) => plain(read_path(a).map(|p| staircase(&p, a.paren))),
    }
}

fn read_path(a: &PathArgs) -> Result<DyckPath, Failure> {
    if !a.paren {
        if let Some(pos) = a.path.find(['(', ')']) {
            return Err(Failure::Usage(format!(
                "parenthesis at position {pos}; pass --paren to use ( and ) for U and D"
            )));
        }
    }
    Ok(DyckPath::parse(&a.path)?)
}

fn show(p: &DyckPath, paren: bool) -> String {
    let word = p.render();
    if paren {
        word.chars()
            .map(|c| if c == 'U' { '(' } else { ')' })
            .collect()
    } else {
        word
    }
}

fn residue_set(m: Option<usize>, residues: &[usize]) -> Result<ResidueSet, Failure> {
    let m = m.ok_or_else(|| Failure::Usage("--m is required".into()))?;
    if residues.is_empty() {
        return Err(Failure::Usage("--residues is required".into()));
    }
    Ok(ResidueSet::new(m, residues)?)
}

fn table(a: &TableArgs, cap: EnumerationCap) -> Result<String, Failure> {
    let arity = || {
        a.s.ok_or_else(|| Failure::Usage("--s is required for s-ary statistics".into()))
    };
    let statistic = match a.stat {
        StatName::ExteriorPairs => Statistic::ExteriorPairs,
        StatName::PyramidWeight => Statistic::PyramidWeight,
        StatName::Height => Statistic::Height,
        StatName::UpResidue => Statistic::UpResidue(residue_set(a.m, &a.residues)?),
        StatName::SaryPyramidWeight => Statistic::SAryPyramidWeight { s: arity()? },
        StatName::SaryExteriorDown => Statistic::SAryExteriorDownSteps { s: arity()? },
    };
    let t = distribution(a.n, statistic, cap)?;
    Ok(match a.format {
        Format::Text => format!("{}\n", t.to_text()),
        Format::Csv => t.to_csv(),
        Format::Json => format!("{}\n", t.to_json()),
    })
}

fn require_m(m: Option<usize>) -> Result<usize, Failure> {
    m.ok_or_else(|| Failure::Usage("--m is required for omega and psi".into()))
}

fn write_phi_trace(text: &mut String, traces: &[Vec<PhiStep>], paren: bool) {
    for (i, log) in traces.iter().enumerate() {
        writeln!(text, "component {}:", i + 1).unwrap();
        for step in log {
            writeln!(
                text,
                "  {}{} {} -> {}",
                "  ".repeat(step.depth),
                step.case,
                show(&step.input, paren),
                show(&step.output, paren)
            )
            .unwrap();
        }
    }
}

fn write_form(text: &mut String, label: &str, form: &StandardForm<'_>) {
    writeln!(text, "{label}:").unwrap();
    for seg in &form.segments {
        let word: String = seg.steps.iter().map(|s| s.as_char()).collect();
        match seg.line {
            Some(i) => writeln!(text, "  {} on L{i}: {word}", seg.kind).unwrap(),
            None => writeln!(text, "  {}: {word}", seg.kind).unwrap(),
        }
    }
}

fn map(a: &MapArgs) -> Result<String, Failure> {
    let p = read_path(&a.path)?;
    let paren = a.path.paren;
    let mut text = String::new();
    let image = match a.bijection {
        BijectionName::Pi | BijectionName::PiInverse => {
            if a.trace {
                let (image, traces) = if a.bijection == BijectionName::Pi {
                    pi_traced(&p)?
                } else {
                    pi_inverse_traced(&p)?
                };
                write_phi_trace(&mut text, &traces, paren);
                image
            } else if a.bijection == BijectionName::Pi {
                pi(&p)?
            } else {
                pi_inverse(&p)?
            }
        }
        BijectionName::Omega | BijectionName::Psi => {
            let m = require_m(a.m)?;
            let image = if a.bijection == BijectionName::Omega {
                omega(&p, m)?
            } else {
                psi(&p, m)?
            };
            if a.trace {
                match decompose_standard(&p, m) {
                    Ok(form) => {
                        write_form(&mut text, "standard form", &form);
                        let fixed = FjkClass { j: 1, k: 0 };
                        if a.bijection == BijectionName::Psi && classify_fjk(&p, m)? == fixed {
                            writeln!(text, "class (1,0): fixed").unwrap();
                        } else {
                            write_form(&mut text, "reflected", &omega_form(&form));
                        }
                    }
                    Err(OmegaError::HeightTooLow { .. }) => {
                        writeln!(text, "height below m-1: fixed").unwrap()
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            image
        }
    };
    writeln!(text, "{}", show(&image, paren)).unwrap();
    Ok(text)
}

fn decompose(a: &DecomposeArgs) -> Result<String, Failure> {
    let p = read_path(&a.path)?;
    let form = decompose_standard(&p, a.m)?;
    Ok(format!("{}\n", form.to_json()))
}

fn series_csv(s: &BivariateSeries) -> String {
    let mut out = String::from("n,k,coeff\n");
    for (n, k, c) in s.nonzero() {
        writeln!(out, "{n},{k},{c}").unwrap();
    }
    out
}

fn series(a: &SeriesArgs) -> Result<String, Failure> {
    let s = match (a.m, a.sary, a.which) {
        (Some(m), None, None) => cf_series(&residue_set(Some(m), &a.residues)?, a.order)?,
        (None, Some(s), Some(which)) => {
            let which = match which {
                WhichArg::P => Which::P,
                WhichArg::E => Which::E,
            };
            sary_series(s, which, a.order)?
        }
        _ => {
            return Err(Failure::Usage(
                "give either --m and --residues, or --sary and --which".into(),
            ))
        }
    };
    Ok(match a.format {
        Format::Text => s.to_triangle(),
        Format::Csv => series_csv(&s),
        Format::Json => format!("{}\n", s.to_json()),
    })
}

fn verify(a: &VerifyArgs, cap: EnumerationCap) -> Outcome {
    let params = VerifyParams {
        m: a.m,
        max_n: a.max_n,
        cap,
    };
    let report = run_check(a.check, &params).map_err(|e| (String::new(), e.into()))?;
    let text = report.to_string();
    if report.passed {
        Ok(text)
    } else {
        Err((text, Failure::Verification))
    }
}

/// Rows from the top altitude down; `/` for up steps, `\` for down steps.
fn staircase(p: &DyckPath, paren: bool) -> String {
    let height = p.height();
    let width = p.steps().len();
    let mut grid = vec![vec![' '; width]; height];
    let mut alt = 0usize;
    for (i, st) in p.steps().iter().enumerate() {
        match st {
            dyckpath::Step::Up => {
                grid[height - 1 - alt][i] = '/';
                alt += 1;
            }
            dyckpath::Step::Down => {
                alt -= 1;
                grid[height - 1 - alt][i] = '\\';
            }
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    writeln!(out, "{}", show(p, paren)).unwrap();
    out
}
