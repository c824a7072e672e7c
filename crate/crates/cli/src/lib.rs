//! Command-line front end: canonical instance and solution documents,
//! solve/validate/check/oracle plumbing, seeded instance generation, SVG
//! rendering, and a directory benchmark.

use thiserror::Error;

pub mod bench;
pub mod formats;
pub mod generate;
pub mod render;

/// Process exit codes: 0 success, 1 infeasible instance, 2 malformed
/// input, 3 oracle budget exceeded.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("instance is infeasible: no embedding satisfies the limits")]
    InfeasibleInstance,
    #[error("{0}")]
    OracleBudget(String),
    #[error("solution does not check out: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InfeasibleInstance => 1,
            CliError::Parse(_) | CliError::Invalid(_) | CliError::Mismatch(_) | CliError::Io(_) => 2,
            CliError::OracleBudget(_) => 3,
        }
    }

    pub fn from_solve(err: steiner_embed::model::ModelError) -> CliError {
        match err {
            steiner_embed::model::ModelError::Infeasible => CliError::InfeasibleInstance,
            other => CliError::Invalid(other.to_string()),
        }
    }

    pub fn from_oracle(err: steiner_embed::oracle::OracleError) -> CliError {
        match err {
            steiner_embed::oracle::OracleError::Infeasible => CliError::InfeasibleInstance,
            steiner_embed::oracle::OracleError::BudgetExceeded { .. } => {
                CliError::OracleBudget(err.to_string())
            }
            steiner_embed::oracle::OracleError::Invalid(e) => CliError::Invalid(e.to_string()),
        }
    }
}
