use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wittlab::commands::{self, ClassicalArgs, Output, WittOp};
use wittlab::{table, CliError};

#[derive(Parser)]
#[command(name = "wittlab", version, about = "Exact Witt vector and cyclic Mackey functor computations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for sampled property checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic in the p-typical Witt vectors W_k(A).
    Classical {
        #[arg(long)]
        p: u64,
        /// Length of the Witt vectors.
        #[arg(long)]
        k: usize,
        /// Z, Z/m, Fp or Z[x,y,...].
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_enum)]
        op: WittOp,
        /// Comma-separated Witt coordinates.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Number of random triples for `--op props`.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Mackey functors given as JSON.
    Mackey {
        #[command(subcommand)]
        command: MackeyCommand,
    },
    /// Box product of two Mackey functors.
    Box {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The norm N_{C_n}^{C_{p^k n}} of a Tambara functor.
    Norm {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Equivariant Witt vectors of a Tambara functor.
    Eqwitt {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Compare every level with the twisted cyclic nerve.
        #[arg(long)]
        oracle: bool,
    },
    /// Axiom checkers.
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
}

#[derive(clap::Args)]
struct BaseArgs {
    /// Tambara functor as JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Constant functor of Z, Z/m or Fp, or A for the Burnside functor.
    #[arg(long)]
    ring: Option<String>,
    /// Order of the cyclic group for --ring.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Subcommand)]
enum MackeyCommand {
    /// Validate a Mackey functor and print it back.
    Show {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Check truncated equivariant Witt complex data.
    WittComplex {
        #[arg(long)]
        file: PathBuf,
        /// Print the explicit data instead of checking it.
        #[arg(long)]
        dump: bool,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classical { p, k, ring, op, x, y, samples } => commands::classical(ClassicalArgs {
            p: *p,
            k: *k,
            ring,
            op: *op,
            x: x.as_deref(),
            y: y.as_deref(),
            seed: cli.seed,
            samples: *samples,
        }),
        Command::Mackey { command: MackeyCommand::Show { file } } => commands::mackey_show(file),
        Command::Box { a, b } => commands::box_cmd(a, b),
        Command::Norm { base, p, k } => {
            let r = commands::base_functor(base.input.as_deref(), base.ring.as_deref(), base.n)?;
            commands::norm(&r, *p, *k)
        }
        Command::Eqwitt { base, p, k, oracle } => {
            let r = commands::base_functor(base.input.as_deref(), base.ring.as_deref(), base.n)?;
            commands::eqwitt(&r, *p, *k, *oracle)
        }
        Command::Check { command: CheckCommand::WittComplex { file, dump } } => commands::check_witt_complex(file, *dump),
    }
}

fn emit(format: Format, value: &serde_json::Value) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON documents serialise") + "\n",
        Format::Table => table::render(value),
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out.value);
            ExitCode::from(out.code)
        }
        Err(e) => {
            let doc = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string(&doc).expect("JSON documents serialise"));
            ExitCode::from(e.exit_code())
        }
    }
}
