//! `symcoset`: group determinants, symmetrized group-coset matrices,
//! eigenforms and boundary-matrix slopes from the command line.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal inconsistency,
//! 3 verification failure.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symcoset::spectral::VerificationMode;
use symcoset::Error;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "symcoset", version, about = "Exact symmetrized group-coset matrix computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for every random choice; echoed in the report.
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Auto,
    Symbolic,
    Sampled,
}

impl From<Mode> for VerificationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Auto => VerificationMode::Auto,
            Mode::Symbolic => VerificationMode::Symbolic,
            Mode::Sampled => VerificationMode::Sampled,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group determinants and the symmetrized group-coset matrix.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Rational-linear eigenvalue forms.
    #[command(subcommand)]
    Eig(EigCommand),
    /// The eigenvalue λ of M^sym(PSL(2,Z_p), H) for unipotent H.
    #[command(subcommand)]
    Psl2(Psl2Command),
    /// Slopes and filling ranks of a specialized boundary matrix.
    Fillrank {
        /// FillingSpec JSON, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Constant-slope analysis of a half-dimensional subspace.
    #[command(subcommand)]
    Slope(SlopeCommand),
    /// Consistency checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// det(G), or det^sym(G) with --sym.
    Det {
        /// GroupSpec JSON, inline or a file path.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        sym: bool,
    },
    /// M^sym(G, H) with its variable legend.
    CosetMatrix {
        #[arg(long)]
        spec: String,
        /// SubgroupSpec JSON; the trivial subgroup by default.
        #[arg(long)]
        subgroup: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EigCommand {
    /// Linear eigenforms of M^sym(G, H) with generic multiplicities.
    Linear {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Also expand the determinant left after removing the linear factors.
        #[arg(long)]
        residual: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Psl2Command {
    Lambda {
        #[arg(long)]
        p: u64,
        /// Number of seeded specializations checking the eigenspace size.
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SlopeCommand {
    /// p(x, y) and the slopes with positive constant-slope dimension.
    Poly {
        /// {"a": [[..]], "b": [[..]]}, inline or a file path.
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Left invariance, symmetry and inversion of a boundary matrix.
    Identities {
        /// {"group": .., "subgroup": .., "matrix": [[..]]}, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Reference determinants and the λ table.
    PaperExamples {
        /// Include p = 17 and 19.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn run(cli: &Cli) -> symcoset::Result<Report> {
    let seed = cli.common.seed;
    match &cli.command {
        Command::Group(GroupCommand::Det { spec, sym }) => commands::group_det(spec, *sym, seed),
        Command::Group(GroupCommand::CosetMatrix { spec, subgroup }) => {
            commands::coset_matrix(spec, subgroup.as_deref(), seed)
        }
        Command::Eig(EigCommand::Linear {
            spec,
            subgroup,
            mode,
            residual,
        }) => commands::eig_linear(spec, subgroup.as_deref(), (*mode).into(), *residual, seed),
        Command::Psl2(Psl2Command::Lambda { p, points }) => commands::psl2(*p, *points, seed),
        Command::Fillrank { input } => commands::fillrank(input, seed),
        Command::Slope(SlopeCommand::Poly { input }) => commands::slope_poly(input, seed),
        Command::Verify(VerifyCommand::Identities { input }) => commands::verify_identities(input, seed),
        Command::Verify(VerifyCommand::PaperExamples { extended, points }) => {
            commands::paper_examples(*extended, *points, seed)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistency(_) => 2,
        Error::Verification(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match cli.common.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    match &report.failed {
        Some(reason) => {
            eprintln!("verification failed: {reason}");
            ExitCode::from(3)
        }
        None => ExitCode::SUCCESS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symcoset::DEFAULT_SEED;

    #[test]
    fn seeds_parse_in_decimal_and_hex() {
        assert_eq!(parse_seed("0xC0FFEE").unwrap(), DEFAULT_SEED);
        assert_eq!(parse_seed("12648430").unwrap(), DEFAULT_SEED);
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn command_line_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn error_families_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 1);
        assert_eq!(exit_code(&Error::MissingClassValue("b".into())), 1);
        assert_eq!(exit_code(&Error::Inconsistency("x".into())), 2);
        assert_eq!(exit_code(&Error::Verification("x".into())), 3);
    }
}
