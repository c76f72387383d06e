use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polaris::cli::{check, run_source, Format, Options};

#[derive(Parser)]
#[command(name = "polaris", version, about = "Run polar homology sessions")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output style.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Style,
    /// Seed for `property` commands.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute every statement of a session.
    Run { file: PathBuf },
    /// Parse the session and build its definitions without running commands.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Text,
    Machine,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        format: match args.format {
            Style::Text => Format::Text,
            Style::Machine => Format::Machine,
        },
        seed: args.seed,
    };
    let file = match &args.cmd {
        Cmd::Run { file } | Cmd::Check { file } => file,
    };
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("polaris: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let t = match args.cmd {
        Cmd::Run { .. } => run_source(&src, &opts),
        Cmd::Check { .. } => check(&src, &opts),
    };
    print!("{}", t.text());
    if t.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
