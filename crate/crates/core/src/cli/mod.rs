//! Batch front end: instance files, built-in fixtures, experiment
//! commands and their JSON/CSV reports.

mod commands;
pub mod fixtures;
mod instance;

use std::path::PathBuf;

use clap::Parser;

pub use commands::{run, Command, Outcome};
pub use instance::{
    emit_instance, parse_instance, Family, IdealSpec, Instance, InstanceSpec, ModuleSpec, Params, RingSpec,
};

use crate::artin_rees::ArtinReesError;
use crate::asymptotics::AsymptoticsError;
use crate::blowup::BlowupError;
use crate::resolve::ResolveError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid instance: {0}")]
    Semantic(String),
    #[error("{0}")]
    InconclusiveFit(String),
    #[error("{0}")]
    Genericity(String),
    #[error("{0}")]
    Compute(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for malformed input, 3 for inconclusive fits, 4 for genericity
    /// failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Semantic(_) | CliError::UnknownFixture(_) => 2,
            CliError::InconclusiveFit(_) => 3,
            CliError::Genericity(_) => 4,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

/// Exit code for alarms raised by a failed theorem check.
pub const VIOLATION_EXIT: i32 = 5;

impl From<ResolveError> for CliError {
    fn from(e: ResolveError) -> Self {
        match e {
            ResolveError::Genericity { .. } => CliError::Genericity(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Fit { .. } => CliError::InconclusiveFit(e.to_string()),
            AsymptoticsError::Resolve(r) => r.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        match e {
            BlowupError::Genericity { .. } => CliError::Genericity(e.to_string()),
            BlowupError::Asymptotics(a) => a.into(),
            BlowupError::Resolve(r) => r.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<ArtinReesError> for CliError {
    fn from(e: ArtinReesError) -> Self {
        match e {
            ArtinReesError::Blowup(b) => b.into(),
            ArtinReesError::Resolve(r) => r.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cicalc", version, about = "Asymptotic Ext invariants over graded complete intersections")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file (TOML).
    #[arg(long, conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Built-in fixture name (a file stem under `fixtures/`).
    #[arg(long)]
    pub fixture: Option<String>,
    /// Output directory for the JSON report and CSV tables.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for random choices; falls back to `params.seed`, then CICALC_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub imax: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
}

impl Args {
    fn load(&self) -> Result<InstanceSpec, CliError> {
        let text = match (&self.input, &self.fixture) {
            (Some(path), _) => std::fs::read_to_string(path)?,
            (None, Some(name)) => fixtures::text(name).ok_or_else(|| CliError::UnknownFixture(name.clone()))?.to_string(),
            (None, None) => return Err(CliError::Semantic("give --input FILE or --fixture NAME".into())),
        };
        let mut spec = parse_instance(&text)?;
        let p = &mut spec.params;
        if let Some(v) = self.imax {
            p.i_max = v;
        }
        if let Some(v) = self.nmax {
            p.n_max = v;
        }
        if let Some(v) = self.cutoff {
            p.cutoff = v;
        }
        Ok(spec)
    }

    fn seed(&self, spec: &InstanceSpec) -> Result<u64, CliError> {
        if let Some(s) = self.seed.or(spec.params.seed) {
            return Ok(s);
        }
        match std::env::var("CICALC_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Semantic(format!("CICALC_SEED '{}' is not an integer", v))),
            Err(_) => Ok(0),
        }
    }
}

fn execute(args: &Args) -> Result<Outcome, CliError> {
    let spec = args.load()?;
    let seed = args.seed(&spec)?;
    let go = || run(args.command, &spec, seed);
    let outcome = match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Compute(e.to_string()))?
            .install(go)?,
        None => go()?,
    };
    match &args.out {
        Some(dir) => outcome.write_to(dir)?,
        None => print!("{}", outcome.json_text()),
    }
    Ok(outcome)
}

/// Parses process arguments, runs one experiment and returns the exit
/// code.
pub fn main() -> i32 {
    let args = Args::parse();
    match execute(&args) {
        Ok(outcome) => {
            for alarm in &outcome.alarms {
                eprintln!("alarm: {}", alarm);
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}
