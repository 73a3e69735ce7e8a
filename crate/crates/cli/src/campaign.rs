//! Seeded soundness campaigns over Haar-random pure states.
//!
//! State `i` is drawn with seed `derive_seed(seed, i)`, so the sample set
//! does not depend on how the work is split across threads. Each state gets
//! one split choice (focus qubit 0, natural order, default selection), and
//! that choice is reused for every measure and power.

use monogamy_core::bounds::{natural_order, report_for_split, select_split, Verdict};
use monogamy_core::states::{derive_seed, haar_random};
use monogamy_core::MeasureKind;
use rayon::prelude::*;

use crate::csv::{format_number, Table};
use crate::error::{CliError, CliResult};
use crate::Outcome;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const SUMMARY_HEADER: [&str; 8] = [
    "measure",
    "alpha",
    "tested",
    "asserted",
    "undetermined",
    "violations",
    "min_residual_new",
    "min_residual_gap",
];

/// A power, either explicit or the floor of whichever measure it is paired with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaChoice {
    Floor,
    Value(f64),
}

impl AlphaChoice {
    pub fn resolve(self, measure: MeasureKind) -> f64 {
        match self {
            AlphaChoice::Floor => measure.alpha_floor(),
            AlphaChoice::Value(a) => a,
        }
    }

    /// Parses a number or the word `floor`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("floor") {
            return Ok(AlphaChoice::Floor);
        }
        t.parse::<f64>()
            .ok()
            .filter(|a| a.is_finite())
            .map(AlphaChoice::Value)
            .ok_or_else(|| CliError::Usage(format!("invalid alpha {t:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub n_qubits: usize,
    pub samples: usize,
    pub seed: u64,
    pub measures: Vec<MeasureKind>,
    pub alphas: Vec<AlphaChoice>,
    pub tolerance: f64,
}

impl CampaignConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(3..=monogamy_core::qstate::MAX_QUBITS).contains(&self.n_qubits) {
            return Err(CliError::Usage(format!(
                "campaigns need 3..={} qubits, got {}",
                monogamy_core::qstate::MAX_QUBITS,
                self.n_qubits
            )));
        }
        if self.measures.is_empty() || self.alphas.is_empty() {
            return Err(CliError::Usage("campaign needs at least one measure and one alpha".into()));
        }
        if !(self.tolerance >= 0.0) || !self.tolerance.is_finite() {
            return Err(CliError::Usage(format!(
                "tolerance must be finite and nonnegative, got {}",
                self.tolerance
            )));
        }
        for m in &self.measures {
            m.validate()?;
            for a in &self.alphas {
                let alpha = a.resolve(*m);
                if alpha < m.alpha_floor() - 1e-12 {
                    return Err(CliError::Usage(format!(
                        "alpha {alpha} is below the floor {} of {m}",
                        m.alpha_floor()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Distinct `(measure, α)` cells in output order.
    fn cells(&self) -> Vec<(MeasureKind, f64)> {
        let mut cells: Vec<(MeasureKind, f64)> = Vec::new();
        for m in &self.measures {
            for a in &self.alphas {
                let cell = (*m, a.resolve(*m));
                if !cells.contains(&cell) {
                    cells.push(cell);
                }
            }
        }
        cells
    }
}

/// Aggregate for one `(measure, α)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub measure: MeasureKind,
    pub alpha: f64,
    pub tested: usize,
    /// States whose split hypotheses are all certified.
    pub asserted: usize,
    /// States not asserted because some comparison could not be decided.
    pub undetermined: usize,
    pub violations: usize,
    /// Over asserted states; NaN when there are none.
    pub min_residual_new: f64,
    /// Over asserted states; NaN when there are none.
    pub min_residual_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub cells: Vec<CellSummary>,
}

impl CampaignSummary {
    pub fn outcome(&self) -> Outcome {
        if self.cells.iter().any(|c| c.violations > 0) {
            Outcome::Violation
        } else {
            Outcome::Clean
        }
    }

    pub fn to_csv(&self) -> String {
        let mut table = Table::new(&SUMMARY_HEADER);
        for c in &self.cells {
            table.push_cells(&[
                c.measure.to_string(),
                format_number(c.alpha),
                c.tested.to_string(),
                c.asserted.to_string(),
                c.undetermined.to_string(),
                c.violations.to_string(),
                format_number(c.min_residual_new),
                format_number(c.min_residual_gap),
            ]);
        }
        table.into_string()
    }

    pub fn to_text(&self) -> String {
        let cfg = &self.config;
        let mut out = format!(
            "campaign: {} qubits, {} samples, seed {}, tolerance {:e}\n",
            cfg.n_qubits, cfg.samples, cfg.seed, cfg.tolerance
        );
        for c in &self.cells {
            let undetermined_pct = if c.tested == 0 {
                0.0
            } else {
                100.0 * c.undetermined as f64 / c.tested as f64
            };
            out.push_str(&format!(
                "{:<16} alpha={:<8} tested={:<6} asserted={:<6} undetermined={:<6} ({:.1}%) violations={:<4} min_residual_new={} min_residual_gap={}\n",
                c.measure.to_string(),
                format_number(c.alpha),
                c.tested,
                c.asserted,
                c.undetermined,
                undetermined_pct,
                c.violations,
                format_number(c.min_residual_new),
                format_number(c.min_residual_gap),
            ));
        }
        out.push_str(match self.outcome() {
            Outcome::Clean => "result: no violations\n",
            Outcome::Violation => "result: VIOLATION\n",
        });
        out
    }
}

/// Per-state results for every cell, in cell order.
struct StateOutcome {
    asserted: bool,
    undetermined: bool,
    residuals: Vec<(f64, f64)>,
}

fn evaluate_state(cfg: &CampaignConfig, cells: &[(MeasureKind, f64)], index: u64) -> CliResult<StateOutcome> {
    let psi = haar_random(cfg.n_qubits, derive_seed(cfg.seed, index))?;
    let order = natural_order(cfg.n_qubits, 0);
    let split = select_split(&psi, 0, &order)?;
    let asserted = split.admitted();
    let p = &split.preconditions;
    let undetermined = !asserted
        && ((1..=split.m).any(|i| p.verdict(i) == Verdict::Undetermined)
            || (split.m + 1..=p.brackets.len()).any(|j| p.reverse_verdict(j) == Verdict::Undetermined));
    let residuals = cells
        .iter()
        .map(|&(measure, alpha)| {
            let r = report_for_split(&psi, &split, measure, alpha)?;
            Ok((r.residual_new, r.residual_gap))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(StateOutcome {
        asserted,
        undetermined,
        residuals,
    })
}

/// Runs the campaign on the global rayon pool.
pub fn cmd_verify(cfg: &CampaignConfig) -> CliResult<CampaignSummary> {
    cfg.validate()?;
    let cells = cfg.cells();
    let outcomes: Vec<StateOutcome> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| evaluate_state(cfg, &cells, i))
        .collect::<CliResult<Vec<_>>>()?;

    let summaries = if cfg.samples == 0 {
        Vec::new()
    } else {
        cells
            .iter()
            .enumerate()
            .map(|(k, &(measure, alpha))| {
                let mut s = CellSummary {
                    measure,
                    alpha,
                    tested: outcomes.len(),
                    asserted: 0,
                    undetermined: 0,
                    violations: 0,
                    min_residual_new: f64::NAN,
                    min_residual_gap: f64::NAN,
                };
                for o in &outcomes {
                    s.undetermined += usize::from(o.undetermined);
                    if !o.asserted {
                        continue;
                    }
                    let (new, gap) = o.residuals[k];
                    s.asserted += 1;
                    s.violations += usize::from(new < -cfg.tolerance);
                    s.min_residual_new = s.min_residual_new.min(new);
                    s.min_residual_gap = s.min_residual_gap.min(gap);
                }
                s
            })
            .collect()
    };
    Ok(CampaignSummary {
        config: cfg.clone(),
        cells: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(samples: usize) -> CampaignConfig {
        CampaignConfig {
            n_qubits: 3,
            samples,
            seed: 11,
            measures: vec![MeasureKind::Concurrence, MeasureKind::Eof],
            alphas: vec![AlphaChoice::Floor, AlphaChoice::Value(3.0)],
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    #[test]
    fn empty_campaign() {
        let s = cmd_verify(&config(0)).unwrap();
        assert!(s.cells.is_empty());
        assert_eq!(s.outcome(), Outcome::Clean);
        assert_eq!(s.to_csv().lines().count(), 1);
    }

    #[test]
    fn small_campaign_is_clean() {
        let s = cmd_verify(&config(20)).unwrap();
        assert_eq!(s.cells.len(), 4);
        for c in &s.cells {
            assert_eq!((c.tested, c.asserted), (20, 20));
            assert!(c.min_residual_new >= -1e-9);
        }
        assert_eq!(s.cells[2].alpha, std::f64::consts::SQRT_2);
    }

    #[test]
    fn config_checks() {
        let mut c = config(1);
        c.alphas = vec![AlphaChoice::Value(1.5)];
        assert!(cmd_verify(&c).is_err());
        let mut c = config(1);
        c.n_qubits = 2;
        assert!(cmd_verify(&c).is_err());
        assert_eq!(AlphaChoice::parse("floor").unwrap(), AlphaChoice::Floor);
        assert_eq!(AlphaChoice::parse(" 2.5").unwrap(), AlphaChoice::Value(2.5));
        assert!(AlphaChoice::parse("two").is_err());
    }
}
