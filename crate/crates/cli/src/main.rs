use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cantor_cli::{cmd_check, cmd_construct, cmd_falsify, cmd_image, cmd_verify, emit, CliError, Format, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations on the Cantor-set space X and its projection.
///
/// Exit codes: 0 success, 1 verification or suite failure, 2 usage error,
/// 3 budget exhausted. Every flag can also be set through the environment
/// variable shown; the flag wins.
#[derive(Parser)]
#[command(name = "cantor", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct ConfigArgs {
    /// Trace depth for reports and the oracle suite.
    #[arg(long, global = true, env = "CANTOR_DEPTH", default_value_t = 6)]
    depth: usize,
    /// Dense pairs in the exported window.
    #[arg(long, global = true, env = "CANTOR_N_MAX", default_value_t = 50)]
    n_max: usize,
    /// Approximants per dense pair in the exported window.
    #[arg(long, global = true, env = "CANTOR_I_MAX", default_value_t = 20)]
    i_max: usize,
    /// Removed fibers kept in the truncated space.
    #[arg(long, global = true, env = "CANTOR_TRUNCATION", default_value_t = 20)]
    truncation: usize,
    /// Dense pairs scanned before a witness search gives up.
    #[arg(long, global = true, env = "CANTOR_BUDGET", default_value_t = 10_000)]
    budget: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, env = "CANTOR_SEED", default_value_t = 0)]
    seed: u64,
    /// Samples K demanded of a witness.
    #[arg(long, global = true, env = "CANTOR_SAMPLES", default_value_t = 20)]
    samples: usize,
    /// Random images in the check suites.
    #[arg(long, global = true, env = "CANTOR_INSTANCES", default_value_t = 1000)]
    instances: usize,
    /// Random probe points per image.
    #[arg(long, global = true, env = "CANTOR_PROBES", default_value_t = 500)]
    probes: usize,
    /// Write the machine-readable output here and print a summary instead.
    #[arg(long, global = true, env = "CANTOR_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "CANTOR_FORMAT", value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Export the dense family, approximants and base enumeration.
    Construct,
    /// Project a rectangle union and certify its S ∪ D and LC₂ decompositions.
    Image {
        /// Rectangles `W×V` joined by `;`, e.g. `0×0;2,00×ε`.
        union: String,
    },
    /// Find a non-openness witness for π on the piece `X \ complement`.
    Falsify {
        /// Rectangle union removed from X to form the piece; `∅` for X itself.
        #[arg(long, default_value = "∅")]
        complement: String,
        /// Rectangle `W×V` inside the piece.
        #[arg(default_value = "ε×ε")]
        rect: String,
        /// Only verify an existing certificate file.
        #[arg(long, value_name = "FILE")]
        verify_only: Option<PathBuf>,
    },
    /// Verify a witness certificate file.
    Verify { file: PathBuf },
    /// Run every invariant suite.
    Check {
        /// Corrupt one approximant so the roundtrip suite must fail.
        #[arg(long, hide = true, env = "CANTOR_INJECT_FAULT")]
        inject_fault: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError {
        code: cantor_cli::EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let c = cli.config;
    let mut cfg = RunConfig {
        depth: c.depth,
        n_max: c.n_max,
        i_max: c.i_max,
        truncation: c.truncation,
        budget: c.budget,
        seed: c.seed,
        samples: c.samples,
        instances: c.instances,
        probes: c.probes,
        out: c.out,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        inject_fault: false,
    };
    let report = match cli.command {
        Command::Construct => cmd_construct(&cfg)?,
        Command::Image { union } => cmd_image(&cfg, &union)?,
        Command::Falsify {
            verify_only: Some(path),
            ..
        } => cmd_verify(&cfg, &read(&path)?)?,
        Command::Falsify { complement, rect, .. } => cmd_falsify(&cfg, &complement, &rect)?,
        Command::Verify { file } => cmd_verify(&cfg, &read(&file)?)?,
        Command::Check { inject_fault } => {
            cfg.inject_fault = inject_fault;
            cmd_check(&cfg)?
        }
    };
    let text = emit(&cfg, &report)?;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    if report.code != 0 && cfg.out.is_none() && cfg.format == Format::Json {
        eprintln!("{}", report.summary);
    }
    Ok(report.code)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code as u8)
}
