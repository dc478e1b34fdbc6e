use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dframe_cli::{
    cmd_check, cmd_classify, cmd_dsub, cmd_gen, cmd_hat, cmd_mine, cmd_props, CliResult, Options,
    Report,
};

/// Finite d-frames: validation, sub-d-locales, pseudocomplements and the
/// smallest dense sub-d-locale.
///
/// INPUT is a JSON document path or a generator spec such as `sym:chain:3`,
/// `sym:bool:2` or `min:chain:3:chain:3`.
#[derive(Parser)]
#[command(name = "dframe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Validate con/tot exactly as written instead of closing generators.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest frame whose sublocales are enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    max_frame: usize,
    /// Largest number of sublocale pairs tried when enumerating dS.
    #[arg(long, global = true, default_value_t = 400)]
    max_pairs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the d-frame axioms.
    Check { input: String },
    /// Print the document for a generator spec.
    Gen { spec: String },
    /// Enumerate the lattice of sub-d-locales.
    Dsub {
        input: String,
        /// Write the Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the smallest dense sub-d-locale.
    Hat { input: String },
    /// Run the property suites on `corpus:standard`, `corpus:random:N` or an input.
    Props { target: String },
    /// Double negation, excluded middle, subfitness and corrigibility.
    Classify { input: String },
    /// Search all d-frames on frames up to SIZE elements.
    Mine {
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

fn run(cli: Cli) -> CliResult<Option<Report>> {
    let c = &cli.common;
    let opts = Options {
        strict: c.strict,
        seed: c.seed,
        max_frame: c.max_frame,
        max_pairs: c.max_pairs,
    };
    Ok(Some(match &cli.command {
        Command::Check { input } => cmd_check(input, &opts)?,
        Command::Gen { spec } => {
            print!("{}", cmd_gen(spec)?.to_json());
            return Ok(None);
        }
        Command::Dsub { input, dot } => cmd_dsub(input, &opts, dot.as_deref())?,
        Command::Hat { input } => cmd_hat(input, &opts)?,
        Command::Props { target } => cmd_props(target, &opts)?,
        Command::Classify { input } => cmd_classify(input, &opts)?,
        Command::Mine { size } => cmd_mine(*size, &opts)?,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.common.json;
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
