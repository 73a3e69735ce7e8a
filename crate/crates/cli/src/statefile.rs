//! JSON amplitude files: `{"n_qubits": n, "amplitudes": [[re, im], ...]}`.
//!
//! Amplitudes are listed in big-endian basis order (qubit 0 is the most
//! significant bit). A vector whose norm is within [`NORM_SLACK`] of 1 is
//! renormalized; anything further off is rejected.

use std::path::Path;

use monogamy_core::Ket;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Largest accepted deviation of the amplitude norm from 1.
pub const NORM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_ket(psi: &Ket) -> Self {
        Self {
            n_qubits: psi.n_qubits(),
            amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain numeric data always serializes")
    }
}

/// 1-based line and column of the first occurrence of `needle`, or (1, 1).
fn locate(text: &str, needle: &str) -> (usize, usize) {
    match text.find(needle) {
        Some(offset) => {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

/// Parses file contents; `path` is only used in diagnostics.
pub fn parse_state(text: &str, path: &Path) -> CliResult<Ket> {
    let err_at = |(line, column): (usize, usize), message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let file: StateFile = serde_json::from_str(text)
        .map_err(|e| err_at((e.line(), e.column()), e.to_string()))?;

    let amps_at = locate(text, "\"amplitudes\"");
    if !(1..=monogamy_core::qstate::MAX_QUBITS).contains(&file.n_qubits) {
        return Err(err_at(
            locate(text, "\"n_qubits\""),
            format!(
                "n_qubits = {} outside 1..={}",
                file.n_qubits,
                monogamy_core::qstate::MAX_QUBITS
            ),
        ));
    }
    let expected = 1usize << file.n_qubits;
    if file.amplitudes.len() != expected {
        return Err(err_at(
            amps_at,
            format!(
                "expected {expected} amplitudes for {} qubits, found {}",
                file.n_qubits,
                file.amplitudes.len()
            ),
        ));
    }
    if file.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
        return Err(err_at(amps_at, "amplitudes must be finite".into()));
    }
    let amps: Vec<Complex64> = file
        .amplitudes
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_SLACK {
        return Err(err_at(
            amps_at,
            format!("amplitude norm {norm} differs from 1 by more than {NORM_SLACK}"),
        ));
    }
    Ok(Ket::normalizing(amps, NORM_SLACK)?)
}

pub fn load_state(path: &Path) -> CliResult<Ket> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text, path)
}
