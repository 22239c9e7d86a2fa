//! `upq`: nonvanishing checks and packets for good-parity unipotent parameters.

mod commands;
mod input;
mod render;

use std::io::{self, Read as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use upq_core::ErrorClass;

use input::Overrides;

#[derive(Parser)]
#[command(name = "upq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the parameter is nonzero. Exits 1 on a zero verdict.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Engine::Full)]
        engine: Engine,
    },
    /// Build the signed tableau and reduce it to an antitableau.
    Tableau(Common),
    /// The extended multi-segment, its sign and the p-adic criterion.
    Padic(Common),
    /// Admissible arrangements and their range labels.
    Arrangements(Common),
    /// Move `p` to another admissible arrangement.
    Transition {
        #[command(flatten)]
        common: Common,
        /// Target arrangement, 1-based, e.g. "2,1,3".
        #[arg(long, value_delimiter = ',', required = true)]
        to: Vec<usize>,
    },
    /// All nonzero parameters of a given rank.
    Packet(Common),
    /// Packets of every rank, with the p-adic fiber audit.
    Av(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Full,
    Simplified,
    Tableau,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Full => "full",
            Engine::Simplified => "simplified",
            Engine::Tableau => "tableau",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Input document; stdin when omitted or "-".
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Require each `a_i + m_i` to have the parity of `n`.
    #[arg(long)]
    strict_parity: bool,
    /// Cross-check every verdict against the other engines.
    #[arg(long)]
    verify: bool,
    /// Arrangement `p` is given on, 1-based, e.g. "2,1,3".
    #[arg(long, value_delimiter = ',')]
    sigma: Option<Vec<usize>>,
    #[arg(long)]
    max_r: Option<usize>,
    /// Rank for `packet`.
    #[arg(long)]
    rank: Option<i64>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (common, name) = match &cli.command {
        Command::Check { common, .. } => (common, "check"),
        Command::Tableau(c) => (c, "tableau"),
        Command::Padic(c) => (c, "padic"),
        Command::Arrangements(c) => (c, "arrangements"),
        Command::Transition { common, .. } => (common, "transition"),
        Command::Packet(c) => (c, "packet"),
        Command::Av(c) => (c, "av"),
    };
    let text = read_input(&common.input)?;
    let ctx = input::parse(
        &text,
        Overrides {
            strict_parity: common.strict_parity,
            verify: common.verify,
            max_r: common.max_r,
            sigma: common.sigma.clone(),
            p_rank: common.rank,
        },
    )?;
    let outcome = match &cli.command {
        Command::Check { engine, .. } => commands::check(&ctx, engine.name())?,
        Command::Tableau(_) => commands::tableau(&ctx)?,
        Command::Padic(_) => commands::padic(&ctx)?,
        Command::Arrangements(_) => commands::arrangements(&ctx)?,
        Command::Transition { to, .. } => commands::transition(&ctx, to)?,
        Command::Packet(_) => commands::packet(&ctx)?,
        Command::Av(_) => commands::av(&ctx)?,
    };
    match common.format {
        Format::Json => {
            let mut doc = serde_json::to_value(&ctx.echo)?;
            doc["command"] = json!(name);
            doc["result"] = outcome.result;
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => println!("{}", outcome.text),
    }
    Ok(!outcome.zero)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let class = err
        .chain()
        .find_map(|e| e.downcast_ref::<upq_core::Error>())
        .map(upq_core::Error::class);
    match class {
        Some(ErrorClass::ResourceLimit) => 3,
        Some(ErrorClass::Invariant) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
