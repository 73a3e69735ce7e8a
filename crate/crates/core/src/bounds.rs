//! Tightened monogamy lower bounds, the earlier bounds they improve on, and
//! the ordering hypotheses that make them valid.
//!
//! For a pure `N`-qubit state with focus qubit `A` and the remaining qubits
//! in order `B_1 … B_{N-1}`, a bound has the form
//!
//! ```text
//! E(A | B_1 … B_{N-1})^α  >=  Σ_i w_i · E(A B_i)^α
//! ```
//!
//! where the weights `w_i` form a [`WeightLadder`] built from a per-measure
//! step factor `h`. The split pattern with index `m` uses `h^0 … h^{m-1}`
//! for the first `m` pairs, `h^{m+1}` for pairs `m+1 … N-2` and `h^m` for
//! the last pair; `m = N-2` gives the all-ascending ladder `h^0 … h^{N-2}`.
//!
//! The split pattern is only proven when `C(A B_i) >= C(A | B_{i+1} …)` for
//! `i <= m` and the reverse inequality holds for `m < j <= N-2`. The mixed
//! cut concurrences on the right are not computable in closed form, so
//! [`precondition_check`] brackets each of them by certified bounds and
//! returns three-valued verdicts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{domain, Error, Result};
use crate::linalg::CMatrix;
use crate::measures::{self, clamp_measure, MeasureKind};
use crate::qstate::{purity, Ket, PartitionSpec};

/// Slack used when comparing a pair concurrence with a cut bracket.
pub const PRECONDITION_TOL: f64 = 1e-12;
const ALPHA_TOL: f64 = 1e-12;

fn check_alpha(measure: MeasureKind, alpha: f64) -> Result<()> {
    measure.validate()?;
    let floor = measure.alpha_floor();
    if !(alpha >= floor - ALPHA_TOL) || !alpha.is_finite() {
        return Err(domain("alpha", alpha, match measure {
            MeasureKind::Concurrence | MeasureKind::Cren => "[2, inf)",
            MeasureKind::Eof => "[sqrt(2), inf)",
            MeasureKind::Tsallis { .. } => "[1, inf)",
        }));
    }
    Ok(())
}

/// Per-step ladder factor of the tightened bounds: `2^{α/2}-1` for
/// concurrence and CREN, `2^{α/√2}-1` for EOF, `2^α-1` for Tsallis-q.
pub fn step_factor(measure: MeasureKind, alpha: f64) -> Result<f64> {
    check_alpha(measure, alpha)?;
    let exponent = match measure {
        MeasureKind::Concurrence | MeasureKind::Cren => alpha / 2.0,
        MeasureKind::Eof => alpha / core::f64::consts::SQRT_2,
        MeasureKind::Tsallis { .. } => alpha,
    };
    Ok(exponent.exp2() - 1.0)
}

/// Per-step factor of the earlier weighted bounds: `α/2`, `α/√2`, or 1.
pub fn prior_factor(measure: MeasureKind, alpha: f64) -> Result<f64> {
    check_alpha(measure, alpha)?;
    Ok(match measure {
        MeasureKind::Concurrence | MeasureKind::Cren => alpha / 2.0,
        MeasureKind::Eof => alpha / core::f64::consts::SQRT_2,
        MeasureKind::Tsallis { .. } => 1.0,
    })
}

/// `(1+t)^x - 1 - (2^x - 1) t^x`, nonnegative for `t ∈ [0,1]`, `x >= 1`.
pub fn power_split_margin(t: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain("t", t, "[0, 1]"));
    }
    if !(x >= 1.0) || !x.is_finite() {
        return Err(domain("x", x, "[1, inf)"));
    }
    Ok((1.0 + t).powf(x) - 1.0 - (x.exp2() - 1.0) * t.powf(x))
}

/// Which family a [`WeightLadder`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    /// All weights 1.
    UnweightedSum,
    /// Split pattern with the earlier per-step factor.
    PriorWeighted,
    /// Split pattern with the tightened step factor, `1 <= m <= count-2`.
    TightenedSplit,
    /// All-ascending pattern with the tightened step factor (`m = count-1`).
    TightenedAscending,
}

/// Coefficients multiplying the pairwise terms of a monogamy bound.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightLadder {
    kind: LadderKind,
    base: f64,
    m: usize,
    count: usize,
}

impl WeightLadder {
    pub fn new(kind: LadderKind, base: f64, m: usize, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Contract(format!(
                "a ladder needs at least two pair terms, got {count}"
            )));
        }
        if !(base > 0.0) || !base.is_finite() {
            return Err(domain("ladder base", base, "(0, inf)"));
        }
        let m_ok = match kind {
            LadderKind::UnweightedSum => base == 1.0,
            LadderKind::PriorWeighted => (1..count).contains(&m),
            LadderKind::TightenedSplit => (1..count - 1).contains(&m),
            LadderKind::TightenedAscending => m == count - 1,
        };
        if !m_ok {
            return Err(Error::Contract(format!(
                "invalid ladder {kind:?} with base {base}, m = {m}, count = {count}"
            )));
        }
        Ok(Self {
            kind,
            base,
            m,
            count,
        })
    }

    pub fn unweighted(count: usize) -> Result<Self> {
        Self::new(LadderKind::UnweightedSum, 1.0, count.saturating_sub(1), count)
    }

    /// Tightened ladder: split pattern for `m < count-1`, ascending for `m = count-1`.
    pub fn tightened(measure: MeasureKind, alpha: f64, m: usize, count: usize) -> Result<Self> {
        let kind = if m + 1 == count {
            LadderKind::TightenedAscending
        } else {
            LadderKind::TightenedSplit
        };
        Self::new(kind, step_factor(measure, alpha)?, m, count)
    }

    pub fn prior(measure: MeasureKind, alpha: f64, m: usize, count: usize) -> Result<Self> {
        Self::new(LadderKind::PriorWeighted, prior_factor(measure, alpha)?, m, count)
    }

    pub fn kind(&self) -> LadderKind {
        self.kind
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Exponent of `base` for pair `i` (1-based).
    fn exponent(&self, i: usize) -> i32 {
        if self.kind == LadderKind::UnweightedSum {
            return 0;
        }
        let m = self.m as i32;
        if i <= self.m {
            i as i32 - 1
        } else if i < self.count {
            m + 1
        } else {
            m
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (1..=self.count)
            .map(|i| self.base.powi(self.exponent(i)))
            .collect()
    }

    /// `Σ w_i v_i^α`.
    pub fn apply(&self, values: &[f64], alpha: f64) -> f64 {
        debug_assert_eq!(values.len(), self.count);
        self.weights()
            .iter()
            .zip(values)
            .map(|(w, v)| w * power(*v, alpha))
            .sum()
    }
}

/// `v^α` with `v` clamped at zero first, so `0^α` is exactly 0.
fn power(v: f64, alpha: f64) -> f64 {
    let v = clamp_measure(v).max(0.0);
    if v == 0.0 {
        0.0
    } else {
        v.powf(alpha)
    }
}

/// Outcome of one ordering comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined,
}

/// Certified interval containing a mixed cut concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutBracket {
    pub lower: f64,
    pub upper: f64,
}

impl CutBracket {
    pub fn exact(value: f64) -> Self {
        Self {
            lower: value,
            upper: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Ordering hypotheses of the split-pattern bounds for one qubit ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct PreconditionVerdict {
    pub focus: usize,
    /// Qubits `B_1 … B_{N-1}`.
    pub order: Vec<usize>,
    /// `C(A B_i)` for `i = 1 … N-1`.
    pub pair_concurrences: Vec<f64>,
    /// Entry `i-1` brackets `C(A | B_{i+1} … B_{N-1})` for `i = 1 … N-2`.
    pub brackets: Vec<CutBracket>,
    /// Entry `i-1` decides `C(A B_i) >= C(A | B_{i+1} … B_{N-1})`.
    pub verdicts: Vec<Verdict>,
}

impl PreconditionVerdict {
    /// Verdict on `C(A B_i) >= C(A | B_{i+1} …)`, `i` 1-based.
    pub fn verdict(&self, i: usize) -> Verdict {
        self.verdicts[i - 1]
    }

    /// Verdict on the reverse comparison `C(A B_j) <= C(A | B_{j+1} …)`.
    pub fn reverse_verdict(&self, j: usize) -> Verdict {
        let c = self.pair_concurrences[j - 1];
        let b = self.brackets[j - 1];
        if c <= b.lower + PRECONDITION_TOL {
            Verdict::Holds
        } else if c > b.upper + PRECONDITION_TOL {
            Verdict::Fails
        } else {
            Verdict::Undetermined
        }
    }

    /// Whether every hypothesis of the split pattern with index `m` is certified.
    pub fn admits(&self, m: usize) -> bool {
        let last = self.brackets.len();
        if m == 0 || m > last {
            return false;
        }
        (1..=m).all(|i| self.verdict(i) == Verdict::Holds)
            && (m + 1..=last).all(|j| self.reverse_verdict(j) == Verdict::Holds)
    }

    pub fn certified_lower(&self, i: usize) -> f64 {
        self.brackets[i - 1].lower
    }

    pub fn certified_upper(&self, i: usize) -> f64 {
        self.brackets[i - 1].upper
    }

    pub fn has_undetermined(&self) -> bool {
        self.verdicts.contains(&Verdict::Undetermined)
    }
}

fn check_ordering(psi: &Ket, focus: usize, order: &[usize]) -> Result<usize> {
    let n = psi.n_qubits();
    if n < 3 {
        return Err(Error::Contract(format!(
            "monogamy bounds need at least 3 qubits, got {n}"
        )));
    }
    if focus >= n {
        return Err(Error::Contract(format!("focus qubit {focus} out of range")));
    }
    let mut seen = vec![false; n];
    seen[focus] = true;
    for &q in order {
        if q >= n || seen[q] {
            return Err(Error::Contract(format!(
                "order {order:?} is not a permutation of the qubits other than {focus}"
            )));
        }
        seen[q] = true;
    }
    if order.len() != n - 1 {
        return Err(Error::Contract(format!(
            "order {order:?} must list all {} non-focus qubits",
            n - 1
        )));
    }
    Ok(n)
}

/// The natural order: every qubit except `focus`, ascending.
pub fn natural_order(n_qubits: usize, focus: usize) -> Vec<usize> {
    (0..n_qubits).filter(|&q| q != focus).collect()
}

fn pair_concurrences(psi: &Ket, focus: usize, order: &[usize]) -> Result<Vec<f64>> {
    order
        .iter()
        .map(|&b| measures::concurrence_two_qubit(&psi.reduced(&[focus, b])?))
        .collect()
}

/// Evaluates the ordering hypotheses for `psi` with focus qubit `focus` and
/// the other qubits in `order`.
///
/// Pair concurrences are exact. The cut `A | B_{i+1} … B_{N-1}` is a genuine
/// two-qubit marginal for `i = N-2` and is then computed exactly. Otherwise
/// its convex-roof concurrence is bracketed:
///
/// - lower: the larger of `sqrt(Σ_{j>i} C²(A B_j))` and the negativity
///   `||ρ^{T_A}|| - 1` of the cut state (for a qubit `A` every pure state has
///   negativity equal to concurrence, so the convex negativity is a lower
///   bound on the convex roof);
/// - upper: the smaller of `sqrt(2 (1 - Tr ρ_A²))` and the best average
///   concurrence found over pure-state decompositions of the cut state
///   (each decomposition is induced by a measurement basis on the traced
///   qubits `B_1 … B_i`).
pub fn precondition_check(psi: &Ket, focus: usize, order: &[usize]) -> Result<PreconditionVerdict> {
    let n = check_ordering(psi, focus, order)?;
    let pairs = pair_concurrences(psi, focus, order)?;
    let rho_a = psi.reduced(&[focus])?;
    let concavity_upper = (2.0 * (1.0 - purity(&rho_a))).max(0.0).sqrt();

    let mut brackets = Vec::with_capacity(n - 2);
    let mut verdicts = Vec::with_capacity(n - 2);
    for i in 1..=n - 2 {
        let remaining = &order[i..];
        let bracket = if remaining.len() == 1 {
            CutBracket::exact(pairs[n - 2])
        } else {
            let mut kept = vec![focus];
            kept.extend_from_slice(remaining);
            let ckw = pairs[i..].iter().map(|c| c * c).sum::<f64>().sqrt();
            let neg = measures::negativity(&psi.reduced(&kept)?, 0)?;
            let lower = ckw.max(neg);
            let searched = decomposition_upper(psi, &kept, &order[..i], i as u64);
            let upper = concavity_upper.min(searched).max(lower);
            CutBracket { lower, upper }
        };
        let c = pairs[i - 1];
        let verdict = if c >= bracket.upper - PRECONDITION_TOL {
            Verdict::Holds
        } else if c < bracket.lower - PRECONDITION_TOL {
            Verdict::Fails
        } else {
            Verdict::Undetermined
        };
        brackets.push(bracket);
        verdicts.push(verdict);
    }
    Ok(PreconditionVerdict {
        focus,
        order: order.to_vec(),
        pair_concurrences: pairs,
        brackets,
        verdicts,
    })
}

const SEARCH_RANDOM_BASES: usize = 48;
const SEARCH_REFINE_STEPS: usize = 160;

/// Smallest average concurrence `Σ_b p_b C(φ_b)` (qubit `kept[0]` against the
/// rest of `kept`) over decompositions induced by orthonormal bases on the
/// `traced` qubits. Every such value bounds the convex roof from above.
fn decomposition_upper(psi: &Ket, kept: &[usize], traced: &[usize], salt: u64) -> f64 {
    let n = psi.n_qubits();
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let half = dk / 2;
    // amplitude[t][k]: traced digits t, kept digits k (focus is the top kept bit).
    let position = |q: usize| n - 1 - q;
    let mut block = vec![Complex64::new(0.0, 0.0); dt * dk];
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        let bits = |qs: &[usize]| {
            qs.iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((idx >> position(q)) & 1))
        };
        block[bits(traced) * dk + bits(kept)] = *amp;
    }

    // p_b C(φ_b / |φ_b|) = 2 sqrt(det ρ'_b) with ρ'_b the unnormalized 2×2 marginal.
    let cost = |basis: &CMatrix| -> f64 {
        let mut total = 0.0;
        let mut phi = vec![Complex64::new(0.0, 0.0); dk];
        for b in 0..dt {
            phi.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            for t in 0..dt {
                let u = basis[(t, b)].conj();
                if u == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..dk {
                    phi[k] += u * block[t * dk + k];
                }
            }
            let (lo, hi) = phi.split_at(half);
            let a: f64 = lo.iter().map(|z| z.norm_sqr()).sum();
            let d: f64 = hi.iter().map(|z| z.norm_sqr()).sum();
            let off: Complex64 = lo.iter().zip(hi).map(|(x, y)| x * y.conj()).sum();
            total += 2.0 * (a * d - off.norm_sqr()).max(0.0).sqrt();
        }
        total
    };

    let mut rng = ChaCha20Rng::seed_from_u64(0x5EED_0000_0000_0000 ^ salt);
    let mut best_basis = CMatrix::identity(dt);
    let mut best = cost(&best_basis);
    for _ in 0..SEARCH_RANDOM_BASES {
        let u = random_unitary(dt, &mut rng, None, 1.0);
        let v = cost(&u);
        if v < best {
            best = v;
            best_basis = u;
        }
    }
    let mut step = 0.3;
    for _ in 0..SEARCH_REFINE_STEPS {
        let u = random_unitary(dt, &mut rng, Some(&best_basis), step);
        let v = cost(&u);
        if v < best {
            best = v;
            best_basis = u;
        } else {
            step = (step * 0.97).max(1e-4);
        }
    }
    best
}

fn gaussian(rng: &mut ChaCha20Rng) -> f64 {
    let u1 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
}

/// Gram–Schmidt on `center + spread·G` (or on `G` alone), G complex Gaussian.
fn random_unitary(
    d: usize,
    rng: &mut ChaCha20Rng,
    center: Option<&CMatrix>,
    spread: f64,
) -> CMatrix {
    let mut m = CMatrix::from_fn(d, |_, _| Complex64::new(gaussian(rng), gaussian(rng)) * spread);
    if let Some(c) = center {
        m = m.add(c);
    }
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| m[(i, k)].conj() * m[(i, j)]).sum();
            for i in 0..d {
                let v = m[(i, k)];
                m[(i, j)] -= proj * v;
            }
        }
        let norm = (0..d).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            m[(i, j)] /= norm;
        }
    }
    m
}

/// A split index together with the ordering and certified hypotheses it uses.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitChoice {
    pub m: usize,
    pub order: Vec<usize>,
    pub preconditions: PreconditionVerdict,
}

impl SplitChoice {
    pub fn admitted(&self) -> bool {
        self.preconditions.admits(self.m)
    }
}

/// `order` stably sorted by descending pair concurrence.
fn sorted_by_pairs(psi: &Ket, focus: usize, order: &[usize]) -> Result<Vec<usize>> {
    let pairs = pair_concurrences(psi, focus, order)?;
    let mut idx: Vec<usize> = (0..order.len()).collect();
    idx.sort_by(|&a, &b| pairs[b].total_cmp(&pairs[a]));
    Ok(idx.into_iter().map(|k| order[k]).collect())
}

/// Prepares the ordering and hypotheses for an explicit split index.
///
/// `m = N-2` selects the ascending ladder and reorders the pairs by
/// descending concurrence (ties keep their position in `order`); smaller
/// `m` keep `order` as given.
pub fn prepare_split(psi: &Ket, focus: usize, order: &[usize], m: usize) -> Result<SplitChoice> {
    let n = check_ordering(psi, focus, order)?;
    if !(1..=n - 2).contains(&m) {
        return Err(Error::Contract(format!(
            "split index m = {m} outside 1..={}",
            n - 2
        )));
    }
    let order = if m == n - 2 {
        sorted_by_pairs(psi, focus, order)?
    } else {
        order.to_vec()
    };
    let preconditions = precondition_check(psi, focus, &order)?;
    Ok(SplitChoice {
        m,
        order,
        preconditions,
    })
}

/// Default split selection.
///
/// Tries the ascending ladder on the concurrence-sorted order first, then
/// scans `m` from `N-3` down to 1 on `order` and takes the largest `m`
/// whose hypotheses are all certified. When nothing is certified the
/// ascending choice is returned with [`SplitChoice::admitted`] false.
pub fn select_split(psi: &Ket, focus: usize, order: &[usize]) -> Result<SplitChoice> {
    let n = check_ordering(psi, focus, order)?;
    let ascending = prepare_split(psi, focus, order, n - 2)?;
    if ascending.admitted() || n == 3 {
        return Ok(ascending);
    }
    let given = precondition_check(psi, focus, order)?;
    for m in (1..=n - 3).rev() {
        if given.admits(m) {
            return Ok(SplitChoice {
                m,
                order: order.to_vec(),
                preconditions: given,
            });
        }
    }
    Ok(ascending)
}

/// Left-hand side, pair values, new and earlier bounds, and residuals for one
/// measure and power.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub measure: MeasureKind,
    pub alpha: f64,
    pub m: usize,
    pub focus: usize,
    pub order: Vec<usize>,
    /// `E(A | rest)^α`.
    pub lhs: f64,
    /// `E(A B_i)` in `order`.
    pub pair_values: Vec<f64>,
    pub new_bound: f64,
    pub baseline_sum: f64,
    pub baseline_weighted: f64,
    /// `lhs - new_bound`.
    pub residual_new: f64,
    /// `new_bound - max(baseline_sum, baseline_weighted)`.
    pub residual_gap: f64,
    pub preconditions: PreconditionVerdict,
}

impl BoundReport {
    /// Whether the bound is proven for this state (all hypotheses certified).
    pub fn asserted(&self) -> bool {
        self.preconditions.admits(self.m)
    }
}

/// Builds the report for a prepared split.
pub fn report_for_split(
    psi: &Ket,
    split: &SplitChoice,
    measure: MeasureKind,
    alpha: f64,
) -> Result<BoundReport> {
    check_alpha(measure, alpha)?;
    let focus = split.preconditions.focus;
    let n = check_ordering(psi, focus, &split.order)?;
    let cut = PartitionSpec::single(n, focus)?;
    let lhs = power(measure.pure(psi, &cut)?, alpha);
    let pair_values = split
        .order
        .iter()
        .map(|&b| measure.two_qubit(&psi.reduced(&[focus, b])?))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .map(|v| clamp_measure(v).max(0.0))
        .collect::<Vec<_>>();
    let count = n - 1;
    let new_bound = WeightLadder::tightened(measure, alpha, split.m, count)?.apply(&pair_values, alpha);
    let baseline_sum = WeightLadder::unweighted(count)?.apply(&pair_values, alpha);
    let baseline_weighted =
        WeightLadder::prior(measure, alpha, split.m, count)?.apply(&pair_values, alpha);
    Ok(BoundReport {
        measure,
        alpha,
        m: split.m,
        focus,
        order: split.order.clone(),
        lhs,
        residual_new: lhs - new_bound,
        residual_gap: new_bound - baseline_sum.max(baseline_weighted),
        pair_values,
        new_bound,
        baseline_sum,
        baseline_weighted,
        preconditions: split.preconditions.clone(),
    })
}

/// Full bound report for `psi` with split index `m` (`1 <= m <= N-2`).
pub fn monogamy_report(
    psi: &Ket,
    focus: usize,
    order: &[usize],
    measure: MeasureKind,
    alpha: f64,
    m: usize,
) -> Result<BoundReport> {
    check_alpha(measure, alpha)?;
    let split = prepare_split(psi, focus, order, m)?;
    report_for_split(psi, &split, measure, alpha)
}

/// One report per grid value, in grid order.
pub fn alpha_sweep(
    psi: &Ket,
    focus: usize,
    order: &[usize],
    measure: MeasureKind,
    alpha_grid: &[f64],
    m: usize,
) -> Result<Vec<BoundReport>> {
    for &a in alpha_grid {
        check_alpha(measure, a)?;
    }
    let split = prepare_split(psi, focus, order, m)?;
    alpha_grid
        .iter()
        .map(|&a| report_for_split(psi, &split, measure, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, gsd3, w_state, SchmidtParams};
    use approx::assert_abs_diff_eq;

    fn example1() -> Ket {
        let l = 6f64.sqrt() / 6.0;
        gsd3(&SchmidtParams::new([0.5, 0.5, l, l, l], 0.0).unwrap())
    }

    #[test]
    fn step_factor_examples() {
        assert_abs_diff_eq!(step_factor(MeasureKind::Concurrence, 2.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            step_factor(MeasureKind::Eof, core::f64::consts::SQRT_2).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(step_factor(MeasureKind::Concurrence, 4.0).unwrap(), 3.0);
        assert_abs_diff_eq!(prior_factor(MeasureKind::Concurrence, 4.0).unwrap(), 2.0);
        assert_abs_diff_eq!(step_factor(MeasureKind::Tsallis { q: 2.0 }, 1.0).unwrap(), 1.0);
        assert!(step_factor(MeasureKind::Concurrence, 1.9).is_err());
        assert!(step_factor(MeasureKind::Eof, 1.4).is_err());
        assert!(step_factor(MeasureKind::Tsallis { q: 2.0 }, 0.5).is_err());
        assert!(step_factor(MeasureKind::Tsallis { q: 1.5 }, 2.0).is_err());
    }

    #[test]
    fn power_split_examples() {
        for x in [1.0, 1.7, 3.0, 6.0] {
            assert_abs_diff_eq!(power_split_margin(1.0, x).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(power_split_margin(0.0, x).unwrap(), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(power_split_margin(0.5, 2.0).unwrap(), 0.5, epsilon = 1e-15);
        assert!(power_split_margin(1.5, 2.0).is_err());
        assert!(power_split_margin(0.5, 0.5).is_err());
    }

    #[test]
    fn ladder_patterns() {
        let h = 3.0;
        // N = 6, count = 5, m = 2: [1, h, h^3, h^3, h^2].
        let l = WeightLadder::new(LadderKind::TightenedSplit, h, 2, 5).unwrap();
        assert_eq!(l.weights(), vec![1.0, 3.0, 27.0, 27.0, 9.0]);
        let asc = WeightLadder::new(LadderKind::TightenedAscending, h, 4, 5).unwrap();
        assert_eq!(asc.weights(), vec![1.0, 3.0, 9.0, 27.0, 81.0]);
        assert_eq!(WeightLadder::unweighted(3).unwrap().weights(), vec![1.0; 3]);
        assert!(WeightLadder::new(LadderKind::TightenedSplit, h, 4, 5).is_err());
        assert!(WeightLadder::new(LadderKind::TightenedAscending, h, 2, 5).is_err());
        assert!(WeightLadder::new(LadderKind::PriorWeighted, -1.0, 2, 5).is_err());
        assert!(WeightLadder::unweighted(1).is_err());
    }

    #[test]
    fn example1_report() {
        let psi = example1();
        let r = monogamy_report(&psi, 0, &[1, 2], MeasureKind::Concurrence, 3.0, 1).unwrap();
        let c = 6f64.sqrt() / 6.0;
        assert_abs_diff_eq!(r.new_bound, 2f64.powf(1.5) * c.powi(3), epsilon = 1e-12);
        assert_abs_diff_eq!(r.lhs, (2f64.sqrt() / 2.0).powi(3), epsilon = 1e-12);
        assert!(r.asserted());
        assert!(r.residual_new >= 0.0 && r.residual_gap > 0.0);
        assert_eq!(r.preconditions.verdicts, vec![Verdict::Holds]);
    }

    #[test]
    fn alpha_two_collapses_to_sum() {
        for psi in [example1(), w_state(3).unwrap(), ghz_state(4).unwrap()] {
            let n = psi.n_qubits();
            let r = monogamy_report(&psi, 0, &natural_order(n, 0), MeasureKind::Concurrence, 2.0, n - 2)
                .unwrap();
            assert_abs_diff_eq!(r.new_bound, r.baseline_sum, epsilon = 1e-12);
        }
    }

    #[test]
    fn ghz_preconditions_hold_trivially() {
        let p = precondition_check(&ghz_state(3).unwrap(), 0, &[1, 2]).unwrap();
        assert_eq!(p.verdicts, vec![Verdict::Holds]);
        assert!(p.pair_concurrences.iter().all(|c| c.abs() < 1e-10));
    }

    #[test]
    fn w4_first_comparison_is_certified_false() {
        let p = precondition_check(&w_state(4).unwrap(), 0, &[1, 2, 3]).unwrap();
        // C(AB1) = 1/2 while C(A|B2B3) >= sqrt(1/4 + 1/4).
        assert_eq!(p.verdict(1), Verdict::Fails);
        assert_eq!(p.reverse_verdict(1), Verdict::Holds);
        assert_eq!(p.verdict(2), Verdict::Holds);
        assert!(p.brackets[1].is_exact());
        assert!(!p.admits(1));
    }

    #[test]
    fn ordering_errors() {
        let psi = w_state(4).unwrap();
        assert!(precondition_check(&psi, 0, &[1, 2]).is_err());
        assert!(precondition_check(&psi, 0, &[1, 1, 2]).is_err());
        assert!(precondition_check(&psi, 4, &[1, 2, 3]).is_err());
        assert!(precondition_check(&w_state(2).unwrap(), 0, &[1]).is_err());
        assert!(monogamy_report(&psi, 0, &[1, 2, 3], MeasureKind::Eof, 2.0, 3).is_err());
        assert!(monogamy_report(&psi, 0, &[1, 2, 3], MeasureKind::Eof, 2.0, 0).is_err());
        assert!(monogamy_report(&psi, 0, &[1, 2, 3], MeasureKind::Eof, 1.0, 1).is_err());
    }

    #[test]
    fn ascending_split_sorts_pairs() {
        // λ3 > λ2 makes C(AB) = 2λ0λ3 exceed C(AC) = 2λ0λ2.
        let psi = gsd3(&SchmidtParams::new([0.6, 0.0, 0.0, 0.8, 0.0], 0.0).unwrap());
        let split = prepare_split(&psi, 0, &[2, 1], 1).unwrap();
        assert_eq!(split.order, vec![1, 2]);
        assert!(split.admitted());
    }

    #[test]
    fn sweep_preserves_grid() {
        let grid = [2.0, 2.5, 3.0];
        let reports = alpha_sweep(&example1(), 0, &[1, 2], MeasureKind::Cren, &grid, 1).unwrap();
        let alphas: Vec<f64> = reports.iter().map(|r| r.alpha).collect();
        assert_eq!(alphas, grid);
        assert!(alpha_sweep(&example1(), 0, &[1, 2], MeasureKind::Cren, &[1.0], 1).is_err());
    }
}
