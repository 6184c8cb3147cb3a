use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kch::commands::{self, Input};
use kch::config::{Format, Mode, RunConfig};
use kch::error::CliError;

/// Exact Kirchhoff index and resistance tooling for polygonal chains.
///
/// SPEC and FAMILIES arguments take a file path or inline JSON.
#[derive(Debug, Parser)]
#[command(name = "kch", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Arithmetic: exact rationals or f64.
    #[arg(long, global = true, env = "KCH_MODE", value_enum, default_value = "exact")]
    mode: Mode,
    /// Relative tie tolerance in float mode.
    #[arg(long, global = true, env = "KCH_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Largest family enumerate and verify will evaluate.
    #[arg(long, global = true, env = "KCH_CAP", default_value_t = kch_core::extremal::DEFAULT_CAP)]
    cap: usize,
    /// Output format.
    #[arg(long, global = true, env = "KCH_FORMAT", value_enum, default_value = "text")]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "KCH_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "KCH_OUT")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Source {
    /// Chain spec, e.g. '{"sizes":[6,5,6],"w":[1]}'.
    source: String,
    /// Read SOURCE as a resistor list `[[u, v, num, den], ...]` instead.
    #[arg(long)]
    network: bool,
}

impl Source {
    fn input(self) -> Input {
        if self.network {
            Input::Network(self.source)
        } else {
            Input::Spec(self.source)
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kirchhoff index.
    Kf(Source),
    /// Effective resistance between two labelled vertices.
    Resistance {
        #[command(flatten)]
        source: Source,
        u: String,
        v: String,
        /// Also emit the series/parallel/Δ-Y reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Every encoding of a size vector, with extremes and structural verdicts.
    Enumerate {
        /// Polygon sizes, e.g. 6,6,6.
        sizes: String,
    },
    /// Certify the extremal structure of a list or sweep of families.
    Verify {
        /// '{"families":[{"sizes":[..],"expect":{"argmin":[[..]]}}],"sweep":{"n":[1,4],"k":[4,6]}}'.
        families: String,
    },
    /// Graph export: DOT (default), JSON resistor list, or CSV resistance table.
    Export(Source),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let cfg = RunConfig { mode: g.mode, tol: g.tol, cap: g.cap, format: g.format, workers: g.workers, out: g.out }
        .validate()?;
    let (text, failure) = match cli.command {
        Command::Kf(src) => (commands::kf(&src.input(), &cfg)?, None),
        Command::Resistance { source, u, v, trace } => (commands::resistance(&source.input(), &u, &v, trace, &cfg)?, None),
        Command::Enumerate { sizes } => (commands::enumerate_family(&commands::parse_sizes(&sizes)?, &cfg)?, None),
        Command::Verify { families } => commands::verify(&families, &cfg)?,
        Command::Export(src) => (commands::export(&src.input(), &cfg)?, None),
    };
    match &cfg.out {
        Some(path) => fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    match failure {
        Some(msg) => Err(CliError::CertificationFailed(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kch: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
