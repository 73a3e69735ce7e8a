//! Command-line front end for `monogamy-core`.
//!
//! Everything that touches files, formatting or threads lives here:
//!
//! - [`statefile`] reads JSON amplitude files;
//! - [`csv`] fixes the number format shared by every table we emit;
//! - [`figures`] regenerates the four worked examples as α sweeps;
//! - [`campaign`] runs seeded Haar-random soundness campaigns;
//! - [`state_report`] evaluates the bounds on a user-supplied state.

pub mod campaign;
pub mod csv;
pub mod error;
pub mod figures;
pub mod state_report;
pub mod statefile;

pub use error::{CliError, CliResult};

use monogamy_core::MeasureKind;

/// Parses `concurrence`, `eof`, `cren` or `tsallis`; `q` is used for Tsallis only.
pub fn parse_measure(name: &str, q: f64) -> CliResult<MeasureKind> {
    match name.trim().to_ascii_lowercase().as_str() {
        "concurrence" | "c" => Ok(MeasureKind::Concurrence),
        "eof" | "e" => Ok(MeasureKind::Eof),
        "cren" | "nc" => Ok(MeasureKind::Cren),
        "tsallis" | "t" => Ok(MeasureKind::tsallis(q)?),
        other => Err(CliError::Usage(format!(
            "unknown measure {other:?} (expected concurrence, eof, cren or tsallis)"
        ))),
    }
}

/// Outcome class of a command, mapped to the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Everything asserted held.
    Clean,
    /// Some asserted inequality was violated beyond tolerance.
    Violation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Clean => 0,
            Outcome::Violation => 1,
        }
    }
}
