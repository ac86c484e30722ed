//! Family files, the analysis pipeline, JSON reports and the worked-example
//! fixtures behind the `abmod` binary.

mod analyze;
mod family;
mod fixtures;
mod parser;
mod report;

pub use analyze::{analyze, basis, check_criterion, context, lattice_g, matrix, BasisReport, LatticeGReport};
pub use family::{parse_family, CheckSpec, FamilyError, FamilySpec};
pub use fixtures::{verify_paper_examples, FixtureTable};
pub use parser::{parse_polynomial, ParseError};
pub use report::{
    to_json, Block, CheckRow, CriterionJson, FamilyEcho, FixtureRow, GReport, LatticeReport, Line, Matrices,
    OperatorMatrix, Report, Term,
};

use thiserror::Error;

use crate::brieskorn::BrieskornError;
use crate::criteria::CriteriaError;
use crate::lattice::LatticeError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("internal cap exceeded: {0}")]
    Cap(String),
    #[error("{failed} fixture(s) failed")]
    FixtureFailure { failed: usize },
}

impl CliError {
    /// 0 success, 1 usage or parse error, 2 unsupported family, 3 internal
    /// cap, 4 fixture failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Family(_) => 1,
            CliError::Unsupported(_) => 2,
            CliError::Cap(_) => 3,
            CliError::FixtureFailure { .. } => 4,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Family(FamilyError::Syntax(e))
    }
}

impl From<BrieskornError> for CliError {
    fn from(e: BrieskornError) -> Self {
        match e {
            BrieskornError::Budget { .. } => CliError::Cap(e.to_string()),
            BrieskornError::BadOrder => CliError::Usage(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::NoStabilization { .. } => CliError::Cap(e.to_string()),
            LatticeError::ContextMismatch(m) => CliError::Unsupported(m),
            LatticeError::Module(b) => b.into(),
        }
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Module(b) => b.into(),
            CriteriaError::Lattice(l) => l.into(),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}
