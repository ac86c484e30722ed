use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use abmod::algebra::{parse_rational, OrderKind};
use abmod::brieskorn::Operator;
use abmod::cli::{self, CliError, FamilySpec};

#[derive(Parser)]
#[command(
    name = "abmod",
    version,
    about = "Exact (a,b)-module computations for families of isolated singularities"
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Truncation order N (classes are computed modulo b^N).
    #[arg(long, global = true)]
    b_order: Option<usize>,

    /// Monomial order for the staircase.
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,

    /// Parameter values for the mu-constancy probe, e.g. `0,1,-1/2`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    samples: Option<Vec<String>>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: staircase, matrices, P, G, criteria and self-checks.
    Analyze { file: PathBuf },
    /// Staircase, Milnor number and bad parameter values.
    Basis { file: PathBuf },
    /// Matrix of a or nabla on the truncated module, by b-blocks.
    Matrix {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
    },
    /// The lattices P and G.
    LatticeG { file: PathBuf },
    /// Test m^k df/dt in m^(k+1) J and stability of M^k.
    CheckCriterion {
        file: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Re-derive the worked examples; exit code 4 on any failure.
    VerifyPaperExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Grlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    A,
    Nabla,
}

fn load(path: &Path, args: &Args) -> Result<FamilySpec, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut spec = cli::parse_family(&bytes)?;
    if let Some(n) = args.b_order {
        spec.b_order = n;
    }
    if let Some(o) = args.order {
        spec.order = match o {
            OrderArg::Grevlex => OrderKind::GRevLex,
            OrderArg::Grlex => OrderKind::GrLex,
        };
    }
    if let Some(s) = &args.samples {
        spec.samples = s
            .iter()
            .map(|v| parse_rational(v).ok_or_else(|| CliError::Usage(format!("bad sample value '{v}'"))))
            .collect::<Result<_, _>>()?;
    }
    spec.validate()?;
    Ok(spec)
}

fn run(args: &Args) -> Result<(String, Option<CliError>), CliError> {
    Ok(match &args.command {
        Command::Analyze { file } => {
            let rep = cli::analyze(&load(file, args)?)?;
            let failed = rep.fixtures.iter().filter(|r| !r.pass).count();
            let err = (failed > 0).then_some(CliError::FixtureFailure { failed });
            (rep.to_json(), err)
        }
        Command::Basis { file } => (cli::to_json(&cli::basis(&load(file, args)?)?), None),
        Command::Matrix { file, op } => {
            let op = match op {
                OpArg::A => Operator::A,
                OpArg::Nabla => Operator::Nabla,
            };
            (cli::to_json(&cli::matrix(&load(file, args)?, op)?), None)
        }
        Command::LatticeG { file } => (cli::to_json(&cli::lattice_g(&load(file, args)?)?), None),
        Command::CheckCriterion { file, k } => (cli::to_json(&cli::check_criterion(&load(file, args)?, *k)?), None),
        Command::VerifyPaperExamples => {
            let table = cli::verify_paper_examples();
            let err = (!table.all_pass()).then_some(CliError::FixtureFailure { failed: table.failed });
            (cli::to_json(&table), err)
        }
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (json, late) = match run(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{json}"),
    }
    match late {
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
