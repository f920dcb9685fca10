use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use cnnc_cli::commands::{self, DeriveInputs, Format, KeygenOptions};
use cnnc_core::{Cells, Variant};

#[derive(Parser)]
#[command(
    name = "cnnc",
    version,
    about = "Clipped-neural-network chaotic cipher and its chosen-plaintext break"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a key file, sampled from a seed and/or given explicitly.
    Keygen {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Tent-map parameter, in [1.9, 2.0).
        #[arg(long)]
        r: Option<f64>,
        /// Tent-map initial condition, in (0, 1).
        #[arg(long)]
        x0: Option<f64>,
        /// Initial cell states as 8 characters of '+' or '-'.
        #[arg(long, allow_hyphen_values = true)]
        cells: Option<Cells>,
    },
    /// Encrypt a raw file or the pixels of a PGM image.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decrypt a ciphertext file back to raw bytes or a PGM image.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the bytewise complement of a file (the second chosen plaintext).
    Complement {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Chosen-plaintext attack.
    #[command(subcommand)]
    Attack(AttackCommand),
    /// Check the identities the attack relies on; exits non-zero on failure.
    Verify {
        /// Also write a JSON summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AttackCommand {
    /// Derive both equivalent keys from a complementary chosen pair.
    Derive {
        #[arg(long)]
        plain1: PathBuf,
        #[arg(long)]
        cipher1: PathBuf,
        #[arg(long)]
        plain2: PathBuf,
        #[arg(long)]
        cipher2: PathBuf,
        /// Keys are written to <OUT>.k1 and <OUT>.k2.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a ciphertext with an equivalent key.
    Decrypt {
        /// Equivalent-key file, or the derive prefix when --variant is given.
        #[arg(long)]
        equiv: PathBuf,
        #[arg(long, value_parser = parse_variant)]
        variant: Option<Variant>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse::<u8>()
        .ok()
        .and_then(Variant::from_u8)
        .ok_or_else(|| format!("variant must be 1 or 2, got {s:?}"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Keygen {
            out,
            seed,
            r,
            x0,
            cells,
        } => {
            let key = commands::keygen(&KeygenOptions { seed, r, x0, cells }, &out)?;
            eprintln!(
                "wrote {} (r={}, x0={}, cells={})",
                out.display(),
                key.r(),
                key.x0(),
                key.cells()
            );
        }
        Command::Encrypt {
            key,
            input,
            out,
            format,
        } => {
            let n = commands::encrypt(&key, &input, &out, format)?;
            eprintln!("encrypted {n} bytes to {}", out.display());
        }
        Command::Decrypt { key, input, out } => {
            let n = commands::decrypt(&key, &input, &out)?;
            eprintln!("decrypted {n} bytes to {}", out.display());
        }
        Command::Complement { input, out, format } => {
            commands::complement(&input, &out, format)?;
        }
        Command::Attack(AttackCommand::Derive {
            plain1,
            cipher1,
            plain2,
            cipher2,
            out,
        }) => {
            let inputs = DeriveInputs {
                plain1: &plain1,
                cipher1: &cipher1,
                plain2: &plain2,
                cipher2: &cipher2,
            };
            let (k1, k2) = commands::attack_derive(&inputs, &out)?;
            print!("{}", commands::equiv_table(&k1, &k2, 10));
            eprintln!(
                "wrote {} and {} ({} records each)",
                commands::equiv_path(&out, Variant::One).display(),
                commands::equiv_path(&out, Variant::Two).display(),
                k1.len()
            );
        }
        Command::Attack(AttackCommand::Decrypt {
            equiv,
            variant,
            input,
            out,
        }) => {
            let n = commands::attack_decrypt(&equiv, variant, &input, &out)?;
            eprintln!("recovered {n} bytes to {}", out.display());
        }
        Command::Verify { summary } => {
            let reports = commands::verify(summary.as_deref())?;
            for r in &reports {
                println!("{r}");
            }
            if !commands::all_passed(&reports) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
