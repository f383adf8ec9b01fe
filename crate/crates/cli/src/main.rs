use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Simulate and verify the triangular-lattice network code.
#[derive(Parser, Debug)]
#[command(name = "hexnc", version, about)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TopologyArg {
    Hex,
    Line,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bit,
    Symbolic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every emission and decoded symbol of the code against the closed form
    Verify {
        #[arg(long)]
        k: u32,
        /// Horizon in slots (default 3K)
        #[arg(long)]
        t: Option<i64>,
    },
    /// Run one simulation and write its trace and energy report
    Simulate {
        #[arg(long, value_enum, default_value_t = TopologyArg::Hex)]
        topology: TopologyArg,
        /// Triangle edge length, or node count for a line
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 16)]
        slots: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Bit)]
        mode: Mode,
    },
    /// Routing vs. coding energy for a range of K
    Sweep {
        #[arg(long)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Two-way exchange on a line of N nodes
    Line {
        #[arg(long)]
        n: u32,
    },
}

/// Outcome of a command: rendered output and whether all checks held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { k, t } => commands::verify(k, t, cli.format),
        Command::Simulate {
            topology,
            k,
            slots,
            seed,
            mode,
        } => commands::simulate(topology, k, slots, seed, mode, cli.format),
        Command::Sweep { k_min, k_max, step } => commands::sweep(k_min, k_max, step, cli.format),
        Command::Line { n } => commands::line(n, cli.format),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e
                .downcast_ref::<hexnc::Error>()
                .is_some_and(|e| matches!(e, hexnc::Error::InvalidParameter(_)));
            return ExitCode::from(if usage { 2 } else { 1 });
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.text),
        None => io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
