//! The four worked examples, swept over a grid of powers `α`.
//!
//! | k | state                                        | measure       | floor |
//! |---|----------------------------------------------|---------------|-------|
//! | 1 | Schmidt form, λ = (1/2, 1/2, √6/6, √6/6, √6/6) | concurrence   | 2     |
//! | 2 | W state on three qubits                      | EOF           | √2    |
//! | 3 | Schmidt form, all λ = √5/5                   | CREN          | 2     |
//! | 4 | Schmidt form, all λ = √5/5                   | Tsallis-q     | 1     |
//!
//! Every example uses focus qubit 0, pair order `B_1 = 1, B_2 = 2` and split
//! index `m = 1`.

use monogamy_core::bounds::{alpha_sweep, BoundReport};
use monogamy_core::states::{gsd3, w_state, SchmidtParams};
use monogamy_core::{Ket, MeasureKind};

use crate::csv::Table;
use crate::error::{CliError, CliResult};

pub const EXAMPLE_HEADER: [&str; 5] = ["alpha", "lhs", "new_bound", "baseline_weighted", "baseline_sum"];
pub const DEFAULT_STEP: f64 = 0.05;
pub const DEFAULT_ALPHA_MAX: f64 = 5.0;
/// Tsallis index used by example 4 unless overridden.
pub const DEFAULT_Q: f64 = 2.0;
const MAX_GRID_POINTS: usize = 1_000_000;

/// Evenly spaced powers `min, min + step, …` not exceeding `max`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid {
    values: Vec<f64>,
}

impl AlphaGrid {
    pub fn new(min: f64, max: f64, step: f64) -> CliResult<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(CliError::Usage("alpha grid bounds must be finite".into()));
        }
        if !(step > 0.0) {
            return Err(CliError::Usage(format!("alpha step must be positive, got {step}")));
        }
        if max < min {
            return Err(CliError::Usage(format!(
                "alpha-max {max} is below alpha-min {min}"
            )));
        }
        let intervals = ((max - min) / step + 1e-9).floor();
        if intervals >= MAX_GRID_POINTS as f64 {
            return Err(CliError::Usage(format!(
                "alpha grid would have more than {MAX_GRID_POINTS} points"
            )));
        }
        let values = (0..=intervals as usize)
            .map(|i| (min + i as f64 * step).min(max))
            .collect();
        Ok(Self { values })
    }

    pub fn from_values(values: Vec<f64>) -> CliResult<Self> {
        if values.is_empty() || values.iter().any(|a| !a.is_finite()) {
            return Err(CliError::Usage("alpha list must be nonempty and finite".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// State, measure and default grid for example `k`.
#[derive(Debug, Clone)]
pub struct Example {
    pub k: u8,
    pub state: Ket,
    pub measure: MeasureKind,
}

impl Example {
    pub fn new(k: u8, q: f64) -> CliResult<Self> {
        let equal = || {
            let l = 5f64.sqrt() / 5.0;
            gsd3(&SchmidtParams::new([l; 5], 0.0).expect("valid"))
        };
        let (state, measure) = match k {
            1 => {
                let l = 6f64.sqrt() / 6.0;
                let params = SchmidtParams::new([0.5, 0.5, l, l, l], 0.0).expect("valid");
                (gsd3(&params), MeasureKind::Concurrence)
            }
            2 => (w_state(3)?, MeasureKind::Eof),
            3 => (equal(), MeasureKind::Cren),
            4 => (equal(), MeasureKind::tsallis(q)?),
            _ => {
                return Err(CliError::Usage(format!(
                    "example must be 1, 2, 3 or 4, got {k}"
                )))
            }
        };
        Ok(Self { k, state, measure })
    }

    /// `[floor, 5]` with step 0.05.
    pub fn default_grid(&self) -> AlphaGrid {
        AlphaGrid::new(self.measure.alpha_floor(), DEFAULT_ALPHA_MAX, DEFAULT_STEP)
            .expect("default grid is valid")
    }

    pub fn sweep(&self, grid: &AlphaGrid) -> CliResult<Vec<BoundReport>> {
        Ok(alpha_sweep(&self.state, 0, &[1, 2], self.measure, grid.values(), 1)?)
    }
}

pub fn example_table(reports: &[BoundReport]) -> String {
    let mut table = Table::new(&EXAMPLE_HEADER);
    for r in reports {
        table.push(&[r.alpha, r.lhs, r.new_bound, r.baseline_weighted, r.baseline_sum]);
    }
    table.into_string()
}

/// CSV sweep of example `k` over `grid`.
pub fn cmd_example(k: u8, q: f64, grid: &AlphaGrid) -> CliResult<String> {
    let example = Example::new(k, q)?;
    Ok(example_table(&example.sweep(grid)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        assert_eq!(AlphaGrid::new(2.0, 5.0, 0.1).unwrap().values().len(), 31);
        assert_eq!(AlphaGrid::new(2.0, 5.0, 0.05).unwrap().values().len(), 61);
        let eof = AlphaGrid::new(2f64.sqrt(), 5.0, 0.05).unwrap();
        assert_eq!(eof.values().len(), 72);
        assert!(*eof.values().last().unwrap() <= 5.0);
        assert_eq!(AlphaGrid::new(3.0, 3.0, 0.5).unwrap().values(), &[3.0]);
        assert!(AlphaGrid::new(3.0, 2.0, 0.5).is_err());
        assert!(AlphaGrid::new(2.0, 3.0, 0.0).is_err());
        assert!(AlphaGrid::new(2.0, f64::NAN, 0.1).is_err());
    }

    #[test]
    fn example_bounds() {
        assert!(Example::new(0, 2.0).is_err());
        assert!(Example::new(5, 2.0).is_err());
        assert!(Example::new(4, 1.5).is_err());
        let below = AlphaGrid::new(1.0, 2.0, 0.5).unwrap();
        assert!(cmd_example(1, 2.0, &below).is_err());
    }

    #[test]
    fn example1_floor_row() {
        let grid = AlphaGrid::from_values(vec![2.0]).unwrap();
        let csv = cmd_example(1, DEFAULT_Q, &grid).unwrap();
        assert_eq!(
            csv,
            "alpha,lhs,new_bound,baseline_weighted,baseline_sum\n\
             2.00000000000,0.500000000000,0.333333333333,0.333333333333,0.333333333333\n"
        );
    }
}
