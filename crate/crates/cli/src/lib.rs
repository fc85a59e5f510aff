//! Command-line front end of the three-balls verification suite.
//!
//! Every command reads a [`config::RunConfig`], runs its checks and reports
//! one [`report::ReportRow`] per inequality. Exit codes: 0 all mandatory
//! checks pass, 1 a check failed, 2 configuration error, 3 numerical
//! non-convergence.

// `!(x > 0.0)` is used throughout so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailed = 1,
    Config = 2,
    NonConvergence = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// The more severe of two outcomes (configuration problems dominate).
    pub fn worst(self, other: Self) -> Self {
        let rank = |s: Self| match s {
            ExitStatus::Pass => 0,
            ExitStatus::CheckFailed => 1,
            ExitStatus::NonConvergence => 2,
            ExitStatus::Config => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] threeballs_core::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        use threeballs_core::Error as E;
        match self {
            CliError::Config(_) => ExitStatus::Config,
            CliError::Core(E::Convergence(_) | E::Numeric(_)) => ExitStatus::NonConvergence,
            CliError::Core(_) => ExitStatus::Config,
        }
    }
}
