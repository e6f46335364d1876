//! Command-line driver: file loading, subcommands and report emission.

pub mod builtins;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::fincat::{parse_category, parse_functor, FinCategory, FullSubcategory, Functor, Mor, ParseError};
use crate::homology::HomologyError;
use crate::present::{PresentError, DEFAULT_BOUND};
use crate::pushout::PushoutError;
use crate::scat::ScatError;
use crate::sset::{nerve, parse_sset, SSetError, TruncatedSSet, DEFAULT_DIM};

pub use builtins::{builtin, list_builtins, run_spec, Builtin, ExperimentSpec};
pub use commands::{Bounds, Method};
pub use report::{Report, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn refuted(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        CliError::usage(format!("{}:{e}", path.display()))
    }
}

impl From<PresentError> for CliError {
    fn from(e: PresentError) -> Self {
        match e {
            PresentError::ResourceGuard { .. } => CliError::guard(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<SSetError> for CliError {
    fn from(e: SSetError) -> Self {
        match e {
            SSetError::TooLarge { .. } => CliError::guard(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<PushoutError> for CliError {
    fn from(e: PushoutError) -> Self {
        match e {
            PushoutError::Present(p) => p.into(),
            PushoutError::NotDwyer(_) | PushoutError::InvalidWitness(_) => CliError::refuted(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ScatError> for CliError {
    fn from(e: ScatError) -> Self {
        match e {
            ScatError::Inconclusive { .. } | ScatError::Present { error: PresentError::ResourceGuard { .. }, .. } => {
                CliError::guard(e.to_string())
            }
            ScatError::Pushout { error: PushoutError::Present(PresentError::ResourceGuard { .. }), .. } => {
                CliError::guard(e.to_string())
            }
            _ => CliError::usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dwyerkit", version, about = "Finite categories, Dwyer maps, pushouts, nerves and homology")]
pub struct Cli {
    /// Emit the machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BoundArgs {
    /// Truncation dimension of nerves and simplicial categories.
    #[arg(long, default_value_t = DEFAULT_DIM)]
    pub truncate: usize,
    /// Highest homology degree reported.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Word-length bound for saturating presentations.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
}

impl From<BoundArgs> for Bounds {
    fn from(b: BoundArgs) -> Self {
        Bounds { truncate: b.truncate, degree: b.degree, bound: b.bound }
    }
}

/// A span `B <-I- A -F-> C` given by three category files and two functor files.
#[derive(Debug, Clone, Args)]
pub struct SpanArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    pub c: PathBuf,
    /// Functor `A -> B`.
    pub i: PathBuf,
    /// Functor `A -> C`.
    pub f: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a functor, or a full subcategory inclusion, is a Dwyer map.
    CheckDwyer {
        /// The ambient category `B`.
        b: PathBuf,
        /// Comma-separated object labels spanning a full subcategory.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["from", "functor"])]
        objects: Vec<String>,
        /// Domain category `A` of an explicit functor.
        #[arg(long, requires = "functor")]
        from: Option<PathBuf>,
        /// Functor file `A -> B`.
        #[arg(long, requires = "from")]
        functor: Option<PathBuf>,
    },
    /// Pushout of a span, explicitly, by presentation or both.
    Pushout {
        #[command(flatten)]
        span: SpanArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Invert morphisms of a category.
    Localize {
        c: PathBuf,
        /// Comma-separated morphism labels, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        morphisms: Vec<String>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Simplex counts of a truncated nerve.
    Nerve {
        c: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Compare the simplicial pushout of nerves with the nerve of the pushout.
    ComparePushouts {
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Integral homology of a simplicial set file, or of the nerve of a category file.
    Homology {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Search for inner-horn attachments from the comparison image to the nerve of the pushout.
    AnodyneSearch {
        #[command(flatten)]
        span: SpanArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Push `disc(M): disc(C1) -> disc(C2)` out along `I` under `disc(F1)` and check the induced map.
    FlatCheck {
        a: PathBuf,
        b: PathBuf,
        /// Functor `A -> B`.
        i: PathBuf,
        c1: PathBuf,
        /// Functor `A -> C1`.
        f1: PathBuf,
        c2: PathBuf,
        /// Functor `C1 -> C2`.
        m: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run a builtin experiment or a JSON experiment spec.
    Run {
        /// Builtin name or path to a spec file.
        target: String,
        /// Number of seeds for property runs.
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// List builtin experiments.
    ListBuiltins,
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn load_category(path: &Path) -> Result<Arc<FinCategory>, CliError> {
    parse_category(&read(path)?).map(Arc::new).map_err(|e| CliError::parse(path, e))
}

pub fn load_functor(path: &Path, dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Result<Functor, CliError> {
    parse_functor(&read(path)?, dom.clone(), cod.clone()).map_err(|e| CliError::parse(path, e))
}

/// `(I, F)` from span files.
pub fn load_span(s: &SpanArgs) -> Result<(Functor, Functor), CliError> {
    let (a, b, c) = (load_category(&s.a)?, load_category(&s.b)?, load_category(&s.c)?);
    Ok((load_functor(&s.i, &a, &b)?, load_functor(&s.f, &a, &c)?))
}

/// A simplicial set file starts with `dimension`; anything else is read as a
/// category and replaced by its nerve.
pub fn load_simplicial(path: &Path, truncate: usize) -> Result<TruncatedSSet, CliError> {
    let text = read(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.starts_with("dimension") {
        parse_sset(&text).map_err(|e| CliError::parse(path, e))
    } else {
        let c = parse_category(&text).map_err(|e| CliError::parse(path, e))?;
        Ok((*nerve(&c, truncate)?.sset).clone())
    }
}

fn resolve_morphisms(c: &FinCategory, names: &[String]) -> Result<Vec<Mor>, CliError> {
    if names.len() == 1 && names[0] == "all" {
        return Ok(c.morphisms().collect());
    }
    names
        .iter()
        .map(|n| c.find_morphism(n).ok_or_else(|| CliError::usage(format!("unknown morphism `{n}`"))))
        .collect()
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::CheckDwyer { b, objects, from, functor } => {
            let bc = load_category(&b)?;
            let i = match (from, functor) {
                (Some(a), Some(i)) => load_functor(&i, &load_category(&a)?, &bc)?,
                _ => {
                    let objs = objects
                        .iter()
                        .map(|o| bc.find_object(o).ok_or_else(|| CliError::usage(format!("unknown object `{o}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    FullSubcategory::new(bc, objs).inclusion()
                }
            };
            Ok(commands::check_dwyer(&i))
        }
        Command::Pushout { span, method, bounds } => {
            let (i, f) = load_span(&span)?;
            commands::pushout(&i, &f, method, &bounds.into())
        }
        Command::Localize { c, morphisms, bounds } => {
            let c = load_category(&c)?;
            let sigma = resolve_morphisms(&c, &morphisms)?;
            commands::localize(&c, &sigma, &bounds.into())
        }
        Command::Nerve { c, bounds } => commands::nerve_counts(&*load_category(&c)?, &bounds.into()),
        Command::ComparePushouts { span, bounds } => {
            let (i, f) = load_span(&span)?;
            commands::compare_pushouts(&i, &f, &bounds.into())
        }
        Command::Homology { file, bounds } => {
            let x = load_simplicial(&file, bounds.truncate)?;
            commands::homology_of(&x, &bounds.into())
        }
        Command::AnodyneSearch { span, bounds } => {
            let (i, f) = load_span(&span)?;
            commands::anodyne(&i, &f, &bounds.into())
        }
        Command::FlatCheck { a, b, i, c1, f1, c2, m, bounds } => {
            let (a, b, c1, c2) = (load_category(&a)?, load_category(&b)?, load_category(&c1)?, load_category(&c2)?);
            let i = load_functor(&i, &a, &b)?;
            let f1 = load_functor(&f1, &a, &c1)?;
            let m = load_functor(&m, &c1, &c2)?;
            commands::flat_check(&i, &f1, &m, &bounds.into())
        }
        Command::Run { target, seeds, truncate, degree, bound } => {
            let overrides = builtins::Overrides { seeds, truncate, degree, bound };
            if let Some(b) = builtin(&target) {
                (b.run)(&overrides.apply(b.defaults), overrides.seeds.unwrap_or(b.seeds))
            } else if Path::new(&target).exists() {
                run_spec(Path::new(&target), &overrides)
            } else {
                Err(CliError::usage(format!("`{target}` is neither a builtin nor a spec file")))
            }
        }
        Command::ListBuiltins => Ok(list_builtins()),
    }
}

/// Parse `args` and run; never exits the process.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution { code, stdout: text, stderr: String::new() }
            } else {
                Execution { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (json, out) = (cli.json, cli.out.clone());
    match dispatch(cli.command) {
        Ok(report) => {
            let body = if json { report.render_json() } else { report.render_text() };
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &body) {
                    return Execution { code: 1, stdout: body, stderr: format!("{}: {e}\n", path.display()) };
                }
            }
            Execution { code: report.status.code(), stdout: body, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if json {
                let v = serde_json::json!({ "error": e.message, "exit_code": e.code });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                String::new()
            };
            Execution { code: e.code, stdout, stderr: format!("error: {}\n", e.message) }
        }
    }
}

/// Entry point for the binary: print and return the exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let ex = execute(args);
    print!("{}", ex.stdout);
    eprint!("{}", ex.stderr);
    ex.code
}
