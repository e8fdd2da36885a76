use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use boxmat_cli::config::{self, resolve, FileConfig, FlagOverrides};
use boxmat_cli::{run, CliError, Command, OutputFormat};

#[derive(Debug, Parser)]
#[command(
    name = "boxmat",
    version,
    about = "Truncated momentum matrix experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Triple-product sums -iS_mn against -iR_mn.
    Table1(Common),
    /// Lowest and highest eigenvalues of Q², complete and with trailing rows deleted.
    Table2(Common),
    /// Partial sums of P² entries against mn·δ_mn.
    P2check(Common),
    /// P·P² versus P²·P.
    Assoc(Common),
    /// Divergence of Q⁴ and of the direct PP²P sum.
    Diverge(Common),
    /// Boundary-row tail of the triple sum and its approximations.
    Tails(Common),
    /// ±λ pairing of the eigenvalues of Q and their near-integer structure.
    SpectrumPairs(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Index pairs, e.g. "1,2;2,3".
    #[arg(long)]
    pairs: Option<String>,
    /// Truncation sizes in ascending order, e.g. "99,100".
    #[arg(long)]
    sizes: Option<String>,
    /// Rows/columns deleted from the largest Q² (table2).
    #[arg(long = "delete-tail")]
    delete_tail: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tolerance override, e.g. "grouping=1e-6". Repeatable.
    #[arg(long = "tol", value_parser = config::parse_tolerance)]
    tolerances: Vec<(String, f64)>,
}

impl Common {
    fn into_parts(self) -> Result<(Option<PathBuf>, FlagOverrides), CliError> {
        let pairs = self
            .pairs
            .as_deref()
            .map(config::parse_pairs)
            .transpose()
            .map_err(CliError::Usage)?;
        let sizes = self
            .sizes
            .as_deref()
            .map(config::parse_sizes)
            .transpose()
            .map_err(CliError::Usage)?;
        let flags = FlagOverrides {
            pairs,
            sizes,
            delete_tail: self.delete_tail,
            format: self.format,
            out: self.out,
            tolerances: self.tolerances.into_iter().collect::<BTreeMap<_, _>>(),
        };
        Ok((self.config, flags))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Table1(c) => (Command::Table1, c),
        Sub::Table2(c) => (Command::Table2, c),
        Sub::P2check(c) => (Command::P2check, c),
        Sub::Assoc(c) => (Command::Assoc, c),
        Sub::Diverge(c) => (Command::Diverge, c),
        Sub::Tails(c) => (Command::Tails, c),
        Sub::SpectrumPairs(c) => (Command::SpectrumPairs, c),
    };
    let outcome = common.into_parts().and_then(|(config_path, flags)| {
        let file = config_path.as_deref().map(FileConfig::load).transpose()?;
        run(&resolve(command, file, flags)?)
    });
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("boxmat {command}: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
