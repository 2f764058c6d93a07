use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lexmax_cli::{cmd_gen, cmd_solve, cmd_sweep, cmd_verify, gen_single, tightness_instance};
use lexmax_cli::{GenArgs, VerifyArgs, EXIT_BAD_INPUT};

/// Exact solvers and verification harness for lexicographically-maximal and
/// maximum-weight matching and matroid intersection.
#[derive(Parser)]
#[command(name = "lexmax", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file and print the solution, weight, and signature.
    Solve {
        /// Instance file (JSON).
        input: PathBuf,
        /// Objective: `max-weight` or `lex-max`.
        #[arg(long, default_value = "lex-max")]
        objective: String,
        /// Write the solution document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the approximation bound / equivalence threshold on an instance.
    Verify {
        /// Instance file (JSON); omit when using --gen or --tightness.
        input: Option<PathBuf>,
        /// Generate the instance instead of reading a file.
        #[arg(long, conflicts_with = "input")]
        gen: bool,
        /// Use the tight three-edge example with the given middle weight
        /// (a rational in (1, 2]).
        #[arg(long, conflicts_with_all = ["input", "gen"])]
        tightness: Option<String>,
        #[command(flatten)]
        gen_args: GenFlags,
        /// Also trace an eligible-improvement chain from the optimum.
        #[arg(long)]
        chain: bool,
        /// Also check that every enumerated optimum is lex-maximal.
        #[arg(long)]
        vice_versa: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write deterministic random instance files.
    Gen {
        #[command(flatten)]
        gen_args: GenFlags,
        /// Number of instances (consecutive seeds).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output directory.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run a batch verification sweep from a config file (bundled default
    /// config when omitted).
    Sweep {
        /// Sweep config (JSON).
        config: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenFlags {
    /// Instance kind: `matching` or `intersection`.
    #[arg(long, default_value = "matching")]
    kind: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of distinct weight levels.
    #[arg(long = "k", default_value_t = 2)]
    weight_levels: usize,
    /// Exact lower bound for the dispersion ratio (rational string).
    #[arg(long, default_value = "1")]
    alpha_min: String,
    /// Exact upper bound for the dispersion ratio (rational string).
    #[arg(long, default_value = "3")]
    alpha_max: String,
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long, default_value_t = 12)]
    max_edges: usize,
    #[arg(long, default_value_t = 9)]
    max_ground: usize,
}

impl GenFlags {
    fn to_args(&self, count: usize) -> GenArgs {
        GenArgs {
            kind: self.kind.clone(),
            seed: self.seed,
            count,
            weight_levels: self.weight_levels,
            alpha_min: self.alpha_min.clone(),
            alpha_max: self.alpha_max.clone(),
            max_vertices: self.max_vertices,
            max_edges: self.max_edges,
            max_ground: self.max_ground,
        }
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Solve { input, objective, output } => cmd_solve(&input, &objective, output.as_deref()),
        Command::Verify { input, gen, tightness, gen_args, chain, vice_versa, output } => {
            let instance = if let Some(x) = tightness {
                match tightness_instance(&x) {
                    Ok(i) => i,
                    Err(code) => return code,
                }
            } else if gen {
                match gen_single(&gen_args.to_args(1)) {
                    Ok(i) => i,
                    Err(code) => return code,
                }
            } else if let Some(path) = input {
                match lexmax_cli::read_instance_file(&path) {
                    Ok(i) => i,
                    Err(code) => return code,
                }
            } else {
                eprintln!("error: provide an instance file, --gen, or --tightness");
                return EXIT_BAD_INPUT;
            };
            cmd_verify(instance, &VerifyArgs { chain, vice_versa, output })
        }
        Command::Gen { gen_args, count, out_dir } => cmd_gen(&gen_args.to_args(count), &out_dir),
        Command::Sweep { config, output } => cmd_sweep(config.as_deref(), output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli) as u8)
}
