use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use balanced_codes::analytics::{self, TABLE1_KS};
use balanced_codes::stream::{pack_bits, unpack_bits};
use balanced_codes::{deframe_stream, frame_stream, selfcheck, Scheme};
use clap::{Parser, Subcommand, ValueEnum};

/// Balanced packet codec and redundancy tables.
#[derive(Parser)]
#[command(name = "balcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame a file into balanced packets. Use `-` for stdin/stdout.
    Encode {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Information word length in bits (even).
        #[arg(long)]
        k: usize,
        /// Zero-pad the last block instead of requiring a multiple of k bits.
        #[arg(long)]
        pad: bool,
        input: PathBuf,
        output: PathBuf,
    },
    /// Recover the original file from a framed stream.
    Decode { input: PathBuf, output: PathBuf },
    /// Emit CSV tables to stdout.
    Tables {
        #[arg(long, value_enum)]
        what: TableArg,
        #[arg(long = "k-list", value_delimiter = ',', num_args = 1..)]
        k_list: Vec<usize>,
    },
    /// Run the exhaustive invariant sweep.
    Selfcheck {
        #[arg(long = "k-max", default_value_t = 12)]
        k_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Knuth,
    BaselineFl,
    ProposedFl,
    ProposedVl,
    ProposedFull,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Knuth => Scheme::Knuth,
            SchemeArg::BaselineFl => Scheme::BaselineFl,
            SchemeArg::ProposedFl => Scheme::ProposedFl,
            SchemeArg::ProposedVl => Scheme::ProposedVl,
            SchemeArg::ProposedFull => Scheme::ProposedFull,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Table1,
    Nlambda,
    Fig2,
    Fig3,
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        return Ok(buf);
    }
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    if path.as_os_str() == "-" {
        return Ok(io::stdout().write_all(bytes)?);
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode {
            scheme,
            k,
            pad,
            input,
            output,
        } => {
            let bytes = read_input(&input)?;
            let bits = unpack_bits(&bytes, bytes.len() * 8);
            let stream = frame_stream(&bits, k, scheme.into(), pad)?;
            write_output(&output, &stream)
        }
        Command::Decode { input, output } => {
            let stream = read_input(&input)?;
            let bits = deframe_stream(&stream)?;
            if bits.len() % 8 != 0 {
                bail!("decoded {} bits, not a whole number of bytes", bits.len());
            }
            write_output(&output, &pack_bits(&bits))
        }
        Command::Tables { what, k_list } => {
            let ks = if k_list.is_empty() {
                TABLE1_KS.to_vec()
            } else {
                k_list
            };
            let csv = match what {
                TableArg::Table1 => analytics::table1_csv(&ks)?,
                TableArg::Nlambda => analytics::nlambda_csv(&ks)?,
                TableArg::Fig2 => analytics::fig2_csv(&ks)?,
                TableArg::Fig3 => analytics::fig3_csv(&ks)?,
            };
            io::stdout().write_all(csv.as_bytes())?;
            Ok(())
        }
        Command::Selfcheck { k_max } => {
            let report = selfcheck(k_max)?;
            println!("{report}");
            if !report.all_passed() {
                bail!("selfcheck failed");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
