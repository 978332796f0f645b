//! `dmf`: command-line driver for quotient graphs, eigenforms, Rankin-Selberg functions,
//! modular units and the regulator pairing.

mod cache;
mod commands;
mod config;
mod forms;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cache::{Cache, Entry};
use commands::{Identity, Outcome};
use config::{exit, CliError, Format, RunConfig, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "dmf", version, about = "Drinfeld modular forms toolkit")]
struct Cli {
    /// Field size, as an integer or p^n.
    #[arg(long, global = true, default_value = "2")]
    q: String,
    /// Level I, e.g. "T^2+T+1" or "T*(T+1)".
    #[arg(long = "I", global = true, default_value = "1")]
    level: String,
    /// Depth of the stored quotient graph.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Directory for checksummed cached outputs.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Print timings and progress to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The quotient graph of the tree by Γ₀(I).
    Graph,
    /// Hecke eigenforms at level I.
    Eigenforms {
        /// Largest prime degree in the eigenvalue table.
        #[arg(long, default_value_t = 2)]
        max_prime_deg: usize,
        /// Instead, search levels up to this degree for an admissible coprime split.
        #[arg(long)]
        search: Option<usize>,
    },
    /// The completed Rankin-Selberg function of a pair of forms.
    Lfunction {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        all_pairs: bool,
    },
    /// The table of log|Δ_I| on the finite part.
    Delta,
    /// Factorization of Δ_I^κ, the Manin-Drinfeld certificate and the motivic element.
    Units,
    /// Compares Φ(0) with the analytic sum and the regulator pairing.
    Verify {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        all_pairs: bool,
        /// Constant added to the diagonal log table.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        anchor: i64,
        #[arg(long, value_enum, default_value = "stated")]
        identity: Identity,
    },
    /// Runs the invariant suite at level I.
    Selftest,
}

fn dispatch(cfg: &RunConfig, command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Graph => commands::graph(cfg),
        Command::Eigenforms { max_prime_deg, search } => commands::eigenforms(cfg, *max_prime_deg, *search),
        Command::Lfunction { f, g, all_pairs } => commands::lfunction(cfg, f.as_deref(), g.as_deref(), *all_pairs),
        Command::Delta => commands::delta(cfg),
        Command::Units => commands::units(cfg),
        Command::Verify { f, g, all_pairs, anchor, identity } => {
            commands::verify(cfg, f.as_deref(), g.as_deref(), *all_pairs, *anchor, *identity)
        }
        Command::Selftest => selftest::selftest(cfg),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::new(&cli.q, &cli.level, cli.depth, cli.format, cli.cache_dir.clone(), cli.verbose)?;
    let Some(dir) = &cfg.cache_dir else {
        return dispatch(&cfg, &cli.command);
    };
    let cache = Cache::open(dir)?;
    let key = format!(
        "{SCHEMA_VERSION}|{}|{}|{:?}|{:?}|{:?}",
        cfg.field.q(),
        cfg.level,
        cfg.depth,
        cfg.format,
        cli.command
    );
    if let Some(hit) = cache.get(&key)? {
        if cfg.verbose {
            eprintln!("cache hit {}", cache.path(&key).display());
        }
        return Ok(Outcome { output: hit.output, passed: hit.passed });
    }
    let out = dispatch(&cfg, &cli.command)?;
    cache.put(&key, &Entry { output: out.output.clone(), passed: out.passed })?;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.output.as_bytes()).is_err() {
                exit::INTERNAL
            } else if out.passed {
                exit::PASS
            } else {
                exit::CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("dmf: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
