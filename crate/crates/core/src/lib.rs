//! Entanglement measures for multiqubit states and the tightened, weighted
//! monogamy lower bounds built on them.
//!
//! The crate is `no_std` (it needs `alloc`) and does no I/O. Modules:
//!
//! - [`linalg`]: dense complex square matrices and a Jacobi Hermitian eigensolver.
//! - [`qstate`]: kets, density matrices, partial trace / transpose, trace norm.
//! - [`measures`]: concurrence, entanglement of formation, CREN and Tsallis-q entanglement.
//! - [`bounds`]: weight ladders, precondition certification and bound reports.
//! - [`states`]: deterministic state families and seeded Haar-random kets.
//!
//! Qubit 0 is the most significant bit of a computational-basis index.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod qstate;
pub mod states;

pub use bounds::{
    alpha_sweep, power_split_margin, monogamy_report, natural_order, precondition_check, prepare_split,
    prior_factor, report_for_split, select_split, step_factor, BoundReport, CutBracket, LadderKind,
    PreconditionVerdict, SplitChoice, Verdict, WeightLadder,
};
pub use error::{Error, Result};
pub use linalg::{CMatrix, HermitianEigen};
pub use measures::MeasureKind;
pub use qstate::{DensityMatrix, Ket, PartitionSpec};
pub use states::SchmidtParams;
