use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use evenartin::commands;
use evenartin::{FormatError, Outcome};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "evenartin",
    version,
    about = "Lie rings, Coxeter matrix isomorphism and verification oracles for even Artin groups"
)]
struct Cli {
    /// Emit one JSON document instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a matrix and classify it.
    Validate {
        path: PathBuf,
        /// Family E(c,d) membership query, written c,d. Repeatable.
        #[arg(long, value_parser = parse_pair)]
        family: Vec<(u64, u64)>,
    },
    /// Print the reduced matrix with class sizes and labels.
    Reduce { path: PathBuf },
    /// Decide whether two Coxeter matrices are isomorphic.
    Iso {
        m: PathBuf,
        n: PathBuf,
        /// Cross-check with exhaustive permutation search.
        #[arg(long)]
        brute: bool,
    },
    /// Operations on the Lie ring L[M].
    Lie {
        #[command(subcommand)]
        command: LieCommand,
    },
    /// Check the truncated Magnus ring model and run the seeded suites.
    Magnus {
        path: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive isomorphism search between Lie algebras of right-angled
    /// matrices over F_p.
    BruteLie {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum LieCommand {
    /// Slot table and torsion invariant.
    Info { path: PathBuf },
    /// Decide isomorphism of L[M] and L[N] within a family E(c,d).
    Iso {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        family: (u64, u64),
    },
    /// Check a morphism witness file.
    VerifyMorphism {
        m: PathBuf,
        n: PathBuf,
        morphism: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (c, d) = s
        .split_once(',')
        .ok_or_else(|| format!("expected c,d but got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(c)?, parse(d)?))
}

fn run(command: &Command) -> Result<Outcome, FormatError> {
    match command {
        Command::Validate { path, family } => commands::validate(path, family),
        Command::Reduce { path } => commands::reduce(path),
        Command::Iso { m, n, brute } => commands::iso(m, n, *brute),
        Command::Lie { command } => match command {
            LieCommand::Info { path } => commands::lie_info(path),
            LieCommand::Iso { m, n, family } => commands::lie_iso(m, n, *family),
            LieCommand::VerifyMorphism { m, n, morphism } => {
                commands::lie_verify_morphism(m, n, morphism)
            }
        },
        Command::Magnus { path, trials, seed } => commands::magnus(path, *trials, *seed),
        Command::BruteLie { m, n, prime } => commands::brute_lie(m, n, *prime),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for NON-ISOMORPHIC
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo = std::env::args().collect::<Vec<_>>().join(" ");
    match run(&cli.command) {
        Ok(mut outcome) => {
            outcome.command = echo;
            if cli.json {
                println!("{}", outcome.to_json());
            } else {
                print!("{}", outcome.render());
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "command": echo, "error": e.to_string(), "exit": 1 })
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
