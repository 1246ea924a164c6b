use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilsheet::liealg::Realization;
use nilsheet_cli::checks::Params;
use nilsheet_cli::commands::{self, CommandError};
use nilsheet_cli::{load_natural_levels, parse_realization, Ctx, Mutation, EXIT_USAGE, NATURAL_LEVELS_ENV};

/// Exact computations on nilpotent orbits, sheets, singular vectors and W-algebras.
#[derive(Parser, Debug)]
#[command(name = "nilsheet", version)]
struct Cli {
    /// JSON table of natural levels for the lisse criterion.
    #[arg(long, global = true, env = NATURAL_LEVELS_ENV)]
    natural_levels: Option<PathBuf>,
    /// Base seed for randomized certificates.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest rank exercised by `verify`; also lifts the rank bound of `orbits` and `sheets`.
    #[arg(long, global = true)]
    max_rank: Option<usize>,
    /// Exit with status 3 when any verdict is unknown.
    #[arg(long, global = true)]
    strict: bool,
    /// Flip one structure constant, as TYPE:RANK:I:J.
    #[arg(long, global = true, hide = true)]
    mutate: Option<String>,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CaseArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    case: Option<String>,
}

impl CaseArgs {
    fn params(self) -> Params {
        Params { n: self.n, m: self.m, r: self.r, case: self.case }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List nilpotent orbits with dimensions, weighted Dynkin diagrams and rigidity.
    Orbits {
        #[arg(value_name = "TYPE")]
        ty: String,
        rank: usize,
        /// Comma-separated partition, e.g. 2,2,1,1.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Run a named check, or `all`.
    Verify {
        id: String,
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Solve a generator system on the Cartan subalgebra and classify its components.
    Charvar {
        system: String,
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Central charge of the W-algebra of an orbit (a partition, or `min`) at level k.
    CentralCharge {
        #[arg(value_name = "TYPE")]
        ty: String,
        rank: usize,
        orbit: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
        /// Label I or II of a very even orbit.
        #[arg(long)]
        label: Option<String>,
    },
    /// Enumerate sheets as pairs (Levi, rigid orbit).
    Sheets {
        #[arg(value_name = "TYPE")]
        ty: String,
        rank: usize,
    },
}

fn parse_mutation(s: &str) -> Option<Mutation> {
    let parts: Vec<&str> = s.split(':').collect();
    let [t, rank, i, j] = parts.as_slice() else { return None };
    let realization: Realization = parse_realization(t, rank.parse().ok()?)?;
    Some(Mutation { realization, i: i.parse().ok()?, j: j.parse().ok()? })
}

fn usage_exit(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let natural_levels = match load_natural_levels(cli.natural_levels.clone()) {
        Ok(t) => t,
        Err(e) => return usage_exit(e),
    };
    let mutation = match cli.mutate.as_deref().map(parse_mutation) {
        None => None,
        Some(Some(m)) => Some(m),
        Some(None) => return usage_exit("bad --mutate value"),
    };
    if let Some(m) = mutation {
        let flipped = nilsheet::orbits::build(m.realization).map(|mut g| g.flip_structure_constant(m.i, m.j));
        if !matches!(flipped, Ok(true)) {
            return usage_exit("--mutate names a zero bracket");
        }
    }
    let ctx = Ctx { seed: cli.seed, max_rank: cli.max_rank.unwrap_or(6), natural_levels, mutation };
    let result = match cli.command {
        Command::Orbits { ty, rank, partition } => commands::orbits(&ctx, &ty, rank, partition.as_deref(), cli.max_rank),
        Command::Verify { id, case } => commands::verify(&ctx, &id, &case.params()),
        Command::Charvar { system, case } => commands::charvar(&ctx, &system, &case.params()),
        Command::CentralCharge { ty, rank, orbit, k, label } => {
            commands::central_charge_cmd(&ctx, &ty, rank, &orbit, &k, label.as_deref())
        }
        Command::Sheets { ty, rank } => commands::sheets(&ctx, &ty, rank, cli.max_rank),
    };
    match result {
        Ok(report) => {
            let out = if cli.compact { serde_json::to_string(&report) } else { serde_json::to_string_pretty(&report) };
            println!("{}", out.expect("report serializes"));
            ExitCode::from(report.exit_code(cli.strict) as u8)
        }
        Err(CommandError::Usage(m)) => usage_exit(m),
        Err(CommandError::Domain(e)) => usage_exit(e),
    }
}
