//! Run configuration, input parsing and the error type that maps to exit codes.

use std::path::PathBuf;

use fq_algebra::{arith, parse_poly, Fq, PolyA};
use thiserror::Error;

/// Version tag stamped on every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

/// Errors surfaced by the driver.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("cache entry {0} is corrupt: checksum mismatch")]
    CacheCorrupt(PathBuf),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// The exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Hypothesis(_) => exit::CHECK_FAILED,
            CliError::CacheCorrupt(_) | CliError::Io(_) | CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Internal(e.to_string())
            }
        }
    )*};
}

internal_from!(
    fq_algebra::AlgebraError,
    bruhat_tits::TreeError,
    cochain_forms::FormsError,
    eisenstein_delta::EisError,
    lfunction::LError,
    cusp_units::UnitsError,
    special_fibre::FibreError,
    serde_json::Error
);

/// Output encodings.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

/// Parsed global options shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: &'static Fq,
    pub level: PolyA,
    pub depth: Option<usize>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub verbose: bool,
}

impl RunConfig {
    /// Validates q and I.
    pub fn new(
        q: &str,
        level: &str,
        depth: Option<usize>,
        format: Format,
        cache_dir: Option<PathBuf>,
        verbose: bool,
    ) -> Result<Self, CliError> {
        let field = Fq::new(parse_q(q)?).map_err(|e| CliError::Usage(e.to_string()))?;
        let level = parse_poly(field, level).map_err(|e| CliError::Usage(e.to_string()))?;
        if level.is_zero() || !level.is_monic() {
            return Err(CliError::Usage(format!("level {level} must be monic and nonzero")));
        }
        if !arith::is_squarefree(&level) {
            return Err(CliError::Usage(format!("level {level} is not square-free")));
        }
        Ok(RunConfig { field, level, depth, format, cache_dir, verbose })
    }
}

/// Reads q as an integer or as a literal `p^n`.
pub fn parse_q(s: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("cannot read q from {s:?}"));
    match s.split_once('^') {
        Some((p, n)) => {
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            p.checked_pow(n).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}
