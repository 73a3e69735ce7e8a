//! Concurrence, entanglement of formation, convex-roof extended negativity
//! (CREN) and Tsallis-q entanglement.
//!
//! Each measure is exact on the two state classes the monogamy bounds
//! evaluate: pure states under any bipartition, and two-qubit mixed states
//! (through the spin-flip concurrence). Mixed states of any other shape are
//! rejected with [`Error::Unsupported`].
//!
//! Entropies use base-2 logarithms.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{self, clip_eigenvalue, DensityMatrix, Ket, PartitionSpec};

/// Values in `[-MEASURE_CLAMP, 0)` are treated as exactly zero.
pub const MEASURE_CLAMP: f64 = 1e-10;
const ARG_TOL: f64 = 1e-12;

/// Which entanglement measure a bound is stated for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureKind {
    Concurrence,
    Eof,
    Cren,
    /// Tsallis-q entanglement with `2 <= q <= 3`.
    Tsallis { q: f64 },
}

impl MeasureKind {
    pub fn tsallis(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self::Tsallis { q })
    }

    /// Smallest power `α` for which the monogamy relations are proven.
    pub fn alpha_floor(&self) -> f64 {
        match self {
            Self::Concurrence | Self::Cren => 2.0,
            Self::Eof => core::f64::consts::SQRT_2,
            Self::Tsallis { .. } => 1.0,
        }
    }

    /// Short lowercase name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Concurrence => "concurrence",
            Self::Eof => "eof",
            Self::Cren => "cren",
            Self::Tsallis { .. } => "tsallis",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Tsallis { q } => check_q(*q),
            _ => Ok(()),
        }
    }

    /// Value on a pure state across `cut`.
    pub fn pure(&self, psi: &Ket, cut: &PartitionSpec) -> Result<f64> {
        self.validate()?;
        match *self {
            Self::Concurrence => concurrence_pure(psi, cut),
            Self::Eof => eof_pure(psi, cut),
            Self::Cren => cren_pure(psi, cut),
            Self::Tsallis { q } => tsallis_pure(psi, q, cut),
        }
    }

    /// Value on a two-qubit (generally mixed) state.
    pub fn two_qubit(&self, rho: &DensityMatrix) -> Result<f64> {
        self.validate()?;
        match *self {
            Self::Concurrence => concurrence_two_qubit(rho),
            Self::Eof => eof_two_qubit(rho),
            Self::Cren => cren_two_qubit(rho),
            Self::Tsallis { q } => tsallis_two_qubit(q, rho),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Tsallis { q } => write!(f, "tsallis(q={q})"),
            other => f.write_str(other.name()),
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(2.0..=3.0).contains(&q) {
        return Err(domain("q", q, "[2, 3]"));
    }
    Ok(())
}

fn check_unit(what: &'static str, x: f64) -> Result<f64> {
    if !(x >= -ARG_TOL && x <= 1.0 + ARG_TOL) {
        return Err(domain(what, x, "[0, 1]"));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Clamps rounding noise below zero; values further below are left alone so
/// that callers notice them.
pub fn clamp_measure(v: f64) -> f64 {
    if v < 0.0 && v >= -MEASURE_CLAMP {
        0.0
    } else {
        v
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = check_unit("x", x)?;
    Ok((-xlog2x(x) - xlog2x(1.0 - x)).clamp(0.0, 1.0))
}

/// `f(x) = H((1 + sqrt(1 - x)) / 2)`, the map from squared concurrence to EOF.
pub fn eof_f(x: f64) -> Result<f64> {
    let x = check_unit("x", x)?;
    binary_entropy((1.0 + (1.0 - x).sqrt()) / 2.0)
}

/// `g_q(x) = [1 - ((1+√(1-x))/2)^q - ((1-√(1-x))/2)^q] / (q-1)`, the map from
/// squared concurrence to Tsallis-q entanglement.
pub fn tsallis_g(q: f64, x: f64) -> Result<f64> {
    check_q(q)?;
    let x = check_unit("x", x)?;
    let r = (1.0 - x).sqrt();
    let v = (1.0 - ((1.0 + r) / 2.0).powf(q) - ((1.0 - r) / 2.0).powf(q)) / (q - 1.0);
    Ok(v.max(0.0))
}

fn reduced_spectrum(psi: &Ket, cut: &PartitionSpec) -> Result<Vec<f64>> {
    check_cut(psi, cut)?;
    // Both marginals share their nonzero spectrum; diagonalise the smaller one.
    let side = if cut.side_a().len() <= cut.side_b().len() {
        cut.side_a()
    } else {
        cut.side_b()
    };
    Ok(psi.reduced(side)?.spectrum())
}

fn check_cut(psi: &Ket, cut: &PartitionSpec) -> Result<()> {
    if cut.n_qubits() != psi.n_qubits() {
        return Err(Error::Contract(format!(
            "cut covers {} qubits but the state has {}",
            cut.n_qubits(),
            psi.n_qubits()
        )));
    }
    Ok(())
}

/// `C(|ψ>) = sqrt(2 (1 - Tr ρ_A²))`.
pub fn concurrence_pure(psi: &Ket, cut: &PartitionSpec) -> Result<f64> {
    check_cut(psi, cut)?;
    let rho_a = psi.reduced(cut.side_a())?;
    Ok((2.0 * (1.0 - qstate::purity(&rho_a))).max(0.0).sqrt())
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_two_qubit() {
        return Err(Error::Contract(format!(
            "expected a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Spin-flip concurrence `max(0, μ1 - μ2 - μ3 - μ4)`.
///
/// The `μ_i` are the square roots of the eigenvalues of `ρ ρ̃`, with
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`. Writing `ρ = W W†` with `W = V √Λ`, they are
/// the singular values of the complex-symmetric `Wᵀ (σy⊗σy) W`, which is how
/// they are computed here.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let eig = linalg::hermitian_eigen(rho.matrix())?;
    let w = CMatrix::from_fn(4, |i, k| {
        eig.vectors[(i, k)] * clip_eigenvalue(eig.values[k]).sqrt()
    });
    // σy⊗σy is real and anti-diagonal with signs (-1, +1, +1, -1).
    let flip = |i: usize| if i == 0 || i == 3 { -1.0 } else { 1.0 };
    let t = CMatrix::from_fn(4, |a, b| {
        (0..4)
            .map(|i| w[(i, a)] * flip(i) * w[(3 - i, b)])
            .sum::<Complex64>()
    });
    let mu = linalg::singular_values(&t);
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Von Neumann entropy of the side-A marginal, in bits.
pub fn eof_pure(psi: &Ket, cut: &PartitionSpec) -> Result<f64> {
    let s: f64 = reduced_spectrum(psi, cut)?
        .iter()
        .map(|&l| -xlog2x(l))
        .sum();
    Ok(s.max(0.0))
}

/// `E(ρ) = f(C²(ρ))` for two-qubit states.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence_two_qubit(rho)?;
    eof_f((c * c).min(1.0))
}

/// Pure-state CREN `(Tr √ρ_A)² - 1`, equal to the negativity `||ρ^{T_A}|| - 1`.
pub fn cren_pure(psi: &Ket, cut: &PartitionSpec) -> Result<f64> {
    let s: f64 = reduced_spectrum(psi, cut)?.iter().map(|l| l.sqrt()).sum();
    Ok(clamp_measure(s * s - 1.0).max(0.0))
}

/// CREN of a two-qubit state; identical to its concurrence.
pub fn cren_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    concurrence_two_qubit(rho)
}

/// `N(ρ) = ||ρ^{T_s}|| - 1` (no factor 1/2).
pub fn negativity(rho: &DensityMatrix, subsystem: usize) -> Result<f64> {
    let pt = qstate::partial_transpose(rho, subsystem)?;
    Ok(clamp_measure(qstate::trace_norm(&pt) - 1.0).max(0.0))
}

/// `T_q(|ψ>) = (1 - Σ λ^q) / (q - 1)` over the spectrum of `ρ_A`.
pub fn tsallis_pure(psi: &Ket, q: f64, cut: &PartitionSpec) -> Result<f64> {
    check_q(q)?;
    let s: f64 = reduced_spectrum(psi, cut)?.iter().map(|l| l.powf(q)).sum();
    Ok(((1.0 - s) / (q - 1.0)).max(0.0))
}

/// `T_q(ρ) = g_q(C²(ρ))` for two-qubit states.
pub fn tsallis_two_qubit(q: f64, rho: &DensityMatrix) -> Result<f64> {
    check_q(q)?;
    let c = concurrence_two_qubit(rho)?;
    tsallis_g(q, (c * c).min(1.0))
}

/// A state argument that is either pure or mixed.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a Ket),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a Ket> for StateRef<'a> {
    fn from(k: &'a Ket) -> Self {
        Self::Pure(k)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(r: &'a DensityMatrix) -> Self {
        Self::Mixed(r)
    }
}

fn mixed_branch(rho: &DensityMatrix, cut: &PartitionSpec) -> Result<()> {
    if !rho.is_two_qubit() {
        return Err(Error::Unsupported(format!(
            "mixed-state convex roof for dims {:?}",
            rho.dims()
        )));
    }
    if cut.n_qubits() != 2 {
        return Err(Error::Contract("two-qubit state needs a two-qubit cut".into()));
    }
    Ok(())
}

/// Entanglement of formation of a pure state (any cut) or a two-qubit state.
pub fn eof<'a>(state: impl Into<StateRef<'a>>, cut: &PartitionSpec) -> Result<f64> {
    match state.into() {
        StateRef::Pure(psi) => eof_pure(psi, cut),
        StateRef::Mixed(rho) => {
            mixed_branch(rho, cut)?;
            eof_two_qubit(rho)
        }
    }
}

/// Tsallis-q entanglement of a pure state (any cut) or a two-qubit state.
pub fn tsallis<'a>(state: impl Into<StateRef<'a>>, q: f64, cut: &PartitionSpec) -> Result<f64> {
    match state.into() {
        StateRef::Pure(psi) => tsallis_pure(psi, q, cut),
        StateRef::Mixed(rho) => {
            mixed_branch(rho, cut)?;
            tsallis_two_qubit(q, rho)
        }
    }
}
