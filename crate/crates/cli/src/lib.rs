//! `gaplab`: one entry point for every experiment in `gaplab-core`.
//!
//! Exit codes: 0 success, 2 domain or usage error, 3 constraint violation,
//! 1 anything else (I/O, resource limits, numerical conditioning).

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaplab_core::LabError;

use crate::config::RunConfig;
use crate::report::Format;

/// Environment variable naming the default report directory.
pub const OUT_DIR_ENV: &str = "GAPLAB_OUT_DIR";

#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Lab(LabError),
    Io(std::io::Error),
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        CliError::Lab(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Lab(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lab(LabError::Domain { .. } | LabError::Parse(_) | LabError::Undefined(_)) => 2,
            CliError::Lab(LabError::Constraint { .. }) => 3,
            CliError::Lab(LabError::Conditioning { .. } | LabError::Resource(_)) => 1,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gaplab", version, about = "Explicit constants and desk-scale experiments for large prime gaps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Flat `key = value` file of parameters; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report path; defaults to $GAPLAB_OUT_DIR/<subcommand>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// json or csv
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Worker threads for data-parallel steps (0 = all cores).
    #[arg(long, global = true)]
    pub threads: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derive c_LG and every intermediate constant with interval enclosures.
    Derive(DeriveArgs),
    /// Re-derive C_PAP, D_PAP and C_UB from the zero-region chain.
    ZeroConstants(ZeroArgs),
    /// Maximize J_r/I_r over symmetric polynomials.
    Maynard(MaynardArgs),
    /// G_k(X) and its record table.
    Gaps(GapsArgs),
    /// Mertens products against e^gamma log x.
    Mertens(MertensArgs),
    /// Brun-Titchmarsh counts.
    BtCheck(BtArgs),
    /// Prime pair counts along P z + a, P z + b against the upper-bound sieve.
    UbPairs(UbArgs),
    /// Residue-class construction simulator.
    Construct(ConstructArgs),
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    #[arg(long)]
    pub k: Option<String>,
    /// log log x of the pipeline scale (default 10^6 k).
    #[arg(long = "log2-x")]
    pub log2_x: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long = "c-ij")]
    pub c_ij: Option<String>,
    #[arg(long = "c-pap")]
    pub c_pap: Option<String>,
    #[arg(long = "d-pap")]
    pub d_pap: Option<String>,
    #[arg(long = "c-ub")]
    pub c_ub: Option<String>,
    #[arg(long = "d-ub")]
    pub d_ub: Option<String>,
}

#[derive(Args, Debug)]
pub struct ZeroArgs {
    /// Single-zero constant R.
    #[arg(long = "r-literal")]
    pub r: Option<String>,
    #[arg(long = "c-zfr")]
    pub c_zfr: Option<String>,
    #[arg(long = "jutila-exp")]
    pub jutila_exp: Option<String>,
    #[arg(long = "trivial-exp")]
    pub trivial_exp: Option<String>,
    /// Limit of the finite Mertens ratio.
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Args, Debug)]
pub struct MaynardArgs {
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub degree: Option<String>,
    #[arg(long = "c-ij")]
    pub c_ij: Option<String>,
    /// Include both Gram matrices.
    #[arg(long)]
    pub gram: Option<String>,
}

#[derive(Args, Debug)]
pub struct GapsArgs {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub records: Option<String>,
}

#[derive(Args, Debug)]
pub struct MertensArgs {
    /// Comma-separated limits.
    #[arg(long)]
    pub xs: Option<String>,
}

#[derive(Args, Debug)]
pub struct BtArgs {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long = "q-max")]
    pub q_max: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Args, Debug)]
pub struct UbArgs {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub b0: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    /// Number of seeded random pairs when a and b are not given.
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub b0: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long = "smin")]
    pub s_min: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    /// uniform, zero or greedy
    #[arg(long)]
    pub strategy: Option<String>,
    /// Comma-separated alpha:beta pairs.
    #[arg(long)]
    pub bands: Option<String>,
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// Path for the newline-delimited survivor list.
    #[arg(long)]
    pub members: Option<String>,
    /// Report the parameter system only.
    #[arg(long = "evaluate-only")]
    pub evaluate_only: Option<String>,
}

type Flags = Vec<(&'static str, Option<String>)>;

impl Command {
    fn split(self) -> (&'static str, Flags) {
        match self {
            Command::Derive(a) => (
                "derive",
                vec![
                    ("k", a.k),
                    ("log2_x", a.log2_x),
                    ("theta", a.theta),
                    ("c_IJ", a.c_ij),
                    ("C_PAP", a.c_pap),
                    ("D_PAP", a.d_pap),
                    ("C_UB", a.c_ub),
                    ("D_UB", a.d_ub),
                ],
            ),
            Command::ZeroConstants(a) => (
                "zero-constants",
                vec![
                    ("R", a.r),
                    ("c_ZFR", a.c_zfr),
                    ("jutila_exp", a.jutila_exp),
                    ("trivial_exp", a.trivial_exp),
                    ("x", a.x),
                ],
            ),
            Command::Maynard(a) => {
                ("maynard", vec![("r", a.r), ("degree", a.degree), ("c_IJ", a.c_ij), ("gram", a.gram)])
            }
            Command::Gaps(a) => ("gaps", vec![("x", a.x), ("k", a.k), ("records", a.records)]),
            Command::Mertens(a) => ("mertens", vec![("xs", a.xs)]),
            Command::BtCheck(a) => ("bt-check", vec![("x", a.x), ("q_max", a.q_max), ("q", a.q), ("a", a.a)]),
            Command::UbPairs(a) => (
                "ub-pairs",
                vec![("x", a.x), ("b0", a.b0), ("z", a.z), ("pairs", a.pairs), ("a", a.a), ("b", a.b)],
            ),
            Command::Construct(a) => (
                "construct",
                vec![
                    ("x", a.x),
                    ("b0", a.b0),
                    ("c", a.c),
                    ("s_min", a.s_min),
                    ("y", a.y),
                    ("z", a.z),
                    ("strategy", a.strategy),
                    ("bands", a.bands),
                    ("A", a.a),
                    ("eps", a.eps),
                    ("members", a.members),
                    ("evaluate_only", a.evaluate_only),
                ],
            ),
        }
    }
}

/// A rendered report and where it goes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub config: RunConfig,
    pub format: Format,
    pub report: String,
    pub destination: Option<PathBuf>,
    /// Survivor list and its path, when requested.
    pub members: Option<(PathBuf, String)>,
}

/// Parses `argv` and computes the report without writing anything.
pub fn execute<I, T>(argv: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Usage)?;
    let (sub, mut flags) = cli.command.split();
    flags.extend([("format", cli.format), ("seed", cli.seed), ("threads", cli.threads)]);
    let cfg = RunConfig::resolve(sub, cli.config.as_deref(), flags)?;
    let format = Format::parse(cfg.raw("format"))?;
    let threads = cfg.usize("threads")?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Lab(LabError::Resource(format!("thread pool: {e}"))))?;
    let out = pool.install(|| commands::dispatch(&cfg))?;
    let report = out.render(&cfg, format);
    let destination = cli
        .output
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| Path::new(&d).join(format!("{sub}.{}", format.extension()))));
    Ok(Outcome { config: cfg, format, report, destination, members: out.members })
}

/// Writes `contents` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: &Outcome) -> Result<(), CliError> {
    if let Some((path, text)) = &out.members {
        write_atomic(path, text)?;
    }
    match &out.destination {
        Some(path) => write_atomic(path, &out.report)?,
        None => std::io::stdout().write_all(out.report.as_bytes())?,
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = execute(argv).and_then(|o| emit(&o));
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(e)) if !e.use_stderr() => {
            let _ = e.print();
            0
        }
        Err(e) => {
            eprintln!("gaplab: {e}");
            e.exit_code()
        }
    }
}
