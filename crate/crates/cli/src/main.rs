//! `homweight`: exact homogeneous weights, partitions and duals from the command line.

mod commands;
mod expr;
mod report;
mod suites;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use commands::{CharChoice, Ctx, PartitionKind, SideArg};
use expr::RingExpr;
use homweight::ring::Limits;
use report::{CliError, Output};
use suites::{ExampleId, Suite};

#[derive(Debug, Parser)]
#[command(name = "homweight", version, about = "Exact homogeneous weights on finite Frobenius rings")]
struct Cli {
    /// Ring expression, e.g. `Z4`, `GF(9)`, `M(2,GF(3)) x GF(3)`, `ex5_5`, `table:ring.json`.
    #[arg(long, global = true)]
    ring: Option<RingExpr>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Which side(s) of the character pairing to use for duals and Krawtchouk tables.
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Generating character: `canonical` or `index:<k>`.
    #[arg(long = "char", global = true, default_value = "canonical")]
    character: CharChoice,
    /// Largest ring (in elements) that may be constructed.
    #[arg(long, global = true, default_value_t = Limits::default().max_size)]
    max_size: usize,
    /// Leave the timestamp (and per-check runtimes) out of the report.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, radical, socle and Frobenius data of the ring.
    Info,
    /// Homogeneous weight of every element.
    Weights,
    /// A named partition of the ring.
    Partition {
        #[arg(value_enum)]
        kind: PartitionKind,
    },
    /// Left and/or right dual of a partition.
    Dual {
        #[arg(long, value_enum, default_value_t = PartitionKind::Hom)]
        partition: PartitionKind,
    },
    /// Krawtchouk coefficients of a partition.
    Krawtchouk {
        #[arg(long, value_enum, default_value_t = PartitionKind::Hom)]
        partition: PartitionKind,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Recompute a worked example and compare it with the expected structure.
    Reproduce {
        #[arg(value_enum)]
        id: ExampleId,
    },
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx {
        limits: Limits {
            max_size: cli.max_size,
            ..Limits::default()
        },
        side: cli.side,
        char_choice: cli.character,
    };
    let ring = cli.ring.as_ref();
    match &cli.command {
        Command::Info => commands::info(&ctx, &ctx.target(ring)?),
        Command::Weights => commands::weights(&ctx, &ctx.target(ring)?),
        Command::Partition { kind } => commands::partition(&ctx, &ctx.target(ring)?, *kind),
        Command::Dual { partition } => commands::dual(&ctx, &ctx.target(ring)?, *partition),
        Command::Krawtchouk { partition } => commands::krawtchouk(&ctx, &ctx.target(ring)?, *partition),
        Command::Verify { suite } => Ok(suites::verify(&ctx.limits, *suite, !cli.no_timestamp)),
        Command::Reproduce { id } => suites::reproduce(&ctx.limits, *id),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(mut out) => {
            if cli.json {
                if !cli.no_timestamp {
                    out.report.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
                }
                println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
