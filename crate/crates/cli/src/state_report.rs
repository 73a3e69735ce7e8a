//! Bound report for a single user-supplied state.

use std::fmt::Write;
use std::path::Path;
use std::str::FromStr;

use monogamy_core::bounds::{natural_order, prepare_split, report_for_split, select_split, BoundReport};
use monogamy_core::{Ket, MeasureKind};

use crate::csv::{format_indices, format_number, Table};
use crate::error::{CliError, CliResult};
use crate::statefile::load_state;
use crate::Outcome;

pub const STATE_HEADER: [&str; 11] = [
    "measure",
    "alpha",
    "m",
    "order",
    "asserted",
    "lhs",
    "new_bound",
    "baseline_weighted",
    "baseline_sum",
    "residual_new",
    "residual_gap",
];

/// Split index: explicit, or chosen by the default selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitSpec {
    Auto,
    Index(usize),
}

impl FromStr for SplitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(SplitSpec::Auto);
        }
        s.parse::<usize>()
            .map(SplitSpec::Index)
            .map_err(|_| format!("expected a positive integer or \"auto\", got {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateRequest {
    pub focus: usize,
    /// Defaults to the remaining qubits in ascending order.
    pub order: Option<Vec<usize>>,
    pub measure: MeasureKind,
    pub alpha: f64,
    pub m: SplitSpec,
}

pub fn evaluate(psi: &Ket, req: &StateRequest) -> CliResult<BoundReport> {
    let n = psi.n_qubits();
    if req.focus >= n {
        return Err(CliError::Usage(format!(
            "focus qubit {} out of range for {n} qubits",
            req.focus
        )));
    }
    let order = req.order.clone().unwrap_or_else(|| natural_order(n, req.focus));
    let split = match req.m {
        SplitSpec::Auto => select_split(psi, req.focus, &order)?,
        SplitSpec::Index(m) => prepare_split(psi, req.focus, &order, m)?,
    };
    Ok(report_for_split(psi, &split, req.measure, req.alpha)?)
}

pub fn cmd_state(path: &Path, req: &StateRequest) -> CliResult<BoundReport> {
    evaluate(&load_state(path)?, req)
}

/// Header plus one row.
pub fn report_csv(report: &BoundReport) -> String {
    let mut table = Table::new(&STATE_HEADER);
    table.push_cells(&[
        report.measure.to_string(),
        format_number(report.alpha),
        report.m.to_string(),
        format_indices(&report.order),
        u8::from(report.asserted()).to_string(),
        format_number(report.lhs),
        format_number(report.new_bound),
        format_number(report.baseline_weighted),
        format_number(report.baseline_sum),
        format_number(report.residual_new),
        format_number(report.residual_gap),
    ]);
    table.into_string()
}

pub fn report_text(report: &BoundReport) -> String {
    let p = &report.preconditions;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "measure            {}", report.measure).unwrap();
    writeln!(w, "alpha              {}", format_number(report.alpha)).unwrap();
    writeln!(w, "focus              {}", report.focus).unwrap();
    writeln!(w, "order              {}", format_indices(&report.order)).unwrap();
    writeln!(w, "split m            {}", report.m).unwrap();
    writeln!(w, "lhs                {}", format_number(report.lhs)).unwrap();
    for (b, v) in report.order.iter().zip(&report.pair_values) {
        let label = format!("pair ({}, {})", report.focus, b);
        writeln!(w, "{label:<19}{}", format_number(*v)).unwrap();
    }
    for (i, (verdict, bracket)) in p.verdicts.iter().zip(&p.brackets).enumerate() {
        writeln!(
            w,
            "{:<19}C_pair={} cut in [{}, {}] -> {:?}",
            format!("ordering {}", i + 1),
            format_number(p.pair_concurrences[i]),
            format_number(bracket.lower),
            format_number(bracket.upper),
            verdict
        )
        .unwrap();
    }
    writeln!(w, "asserted           {}", report.asserted()).unwrap();
    writeln!(w, "new_bound          {}", format_number(report.new_bound)).unwrap();
    writeln!(w, "baseline_weighted  {}", format_number(report.baseline_weighted)).unwrap();
    writeln!(w, "baseline_sum       {}", format_number(report.baseline_sum)).unwrap();
    writeln!(w, "residual_new       {}", format_number(report.residual_new)).unwrap();
    writeln!(w, "residual_gap       {}", format_number(report.residual_gap)).unwrap();
    out
}

/// Violation only when the bound is asserted and undershoots by more than `tolerance`.
pub fn report_outcome(report: &BoundReport, tolerance: f64) -> Outcome {
    if report.asserted() && report.residual_new < -tolerance {
        Outcome::Violation
    } else {
        Outcome::Clean
    }
}
