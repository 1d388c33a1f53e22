use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagpieces::weyl::DEFAULT_MAX_ELEMENTS;
use flagpieces_cli::{run, Command, Format, JobConfig};

/// Pieces of partial flag varieties over finite fields, combinatorially.
#[derive(Parser)]
#[command(name = "flagpieces", version)]
struct Cli {
    /// Cartan type, e.g. A3, B2, D4, G2.
    #[arg(long, global = true, default_value = "A2")]
    cartan: String,
    /// Diagram automorphism: id, flip, tri, tri2, or 1-based images like "3,2,1".
    #[arg(long, global = true, default_value = "id")]
    delta: String,
    /// Subset J as 1-based indices, e.g. "1,3"; "" is the empty set.
    #[arg(long, global = true)]
    j: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads for verify.
    #[arg(long, global = true, default_value_t = 1)]
    parallelism: usize,
    /// Refuse groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// One record per piece of the partial flag variety of type J.
    Pieces,
    /// Closure order on the pieces.
    Poset,
    /// Twisted W_J-orbits on W.
    Orbits,
    /// The stabilizing sequence of an element of W^J.
    Sequence {
        #[arg(long)]
        w: String,
    },
    /// Pieces in the closure of the piece of an element of W.
    Closure {
        #[arg(long)]
        w: String,
    },
    /// Run every oracle agreement check.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, w) = match cli.command {
        Cmd::Pieces => (Command::Pieces, None),
        Cmd::Poset => (Command::Poset, None),
        Cmd::Orbits => (Command::Orbits, None),
        Cmd::Sequence { w } => (Command::Sequence, Some(w)),
        Cmd::Closure { w } => (Command::Closure, Some(w)),
        Cmd::Verify => (Command::Verify, None),
    };
    let cfg = JobConfig {
        cartan: cli.cartan,
        delta: cli.delta,
        j: cli.j,
        command,
        w,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
            FormatArg::Text => Format::Text,
        },
        parallelism: cli.parallelism,
        max_elements: cli.max_elements,
    };
    match run(&cfg) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.output.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("flagpieces: {e}");
            ExitCode::from(2)
        }
    }
}
