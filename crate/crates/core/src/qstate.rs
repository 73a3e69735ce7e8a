//! Multiqubit states: kets, density matrices and the subsystem operations
//! the measures need.
//!
//! Factor 0 is the most significant digit of a basis index, so `|100>` has
//! qubit 0 set. Partial traces work on arbitrary, non-contiguous factor
//! subsets through index arithmetic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Tolerance on the squared norm of a [`Ket`].
pub const KET_NORM_TOL: f64 = 1e-12;
/// Entrywise Hermiticity and trace tolerance of a [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a [`DensityMatrix`].
pub const PSD_TOL: f64 = 1e-10;
/// Negative eigenvalues down to `-EIGEN_CLIP` are rounding noise and read as 0.
pub const EIGEN_CLIP: f64 = 1e-10;

/// Largest register this crate handles.
pub const MAX_QUBITS: usize = 8;

/// Normalized pure state of `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Ket {
    /// Wraps amplitudes that are already normalized to within [`KET_NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubit_count(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::InvalidState(format!(
                "squared norm {norm_sqr} differs from 1"
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales to unit norm when the norm is within `tolerance` of 1;
    /// anything further off is rejected.
    pub fn normalizing(amplitudes: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        let n_qubits = qubit_count(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tolerance {
            return Err(Error::InvalidState(format!(
                "norm {norm} deviates from 1 by more than {tolerance}"
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub(crate) fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubit_count(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Ok(Self {
            n_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Computational basis state; `bits[0]` is qubit 0.
    pub fn basis(bits: &[u8]) -> Result<Self> {
        let index = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b != 0));
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << bits.len()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &Ket) -> Result<Ket> {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ket::new(amps)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            dims: vec![2; self.n_qubits],
            matrix: CMatrix::outer(&self.amplitudes),
        }
    }

    /// Reduced state on the qubits in `keep` (order preserved), computed as
    /// `Σ_t ψ[k, t] ψ*[k', t]` without forming the global projector.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = FactorSplit::new(&vec![2; self.n_qubits], keep)?;
        let mut out = CMatrix::zeros(split.kept_dim);
        for t in 0..split.traced_dim {
            for i in 0..split.kept_dim {
                let a = self.amplitudes[split.compose(i, t)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..split.kept_dim {
                    out[(i, j)] += a * self.amplitudes[split.compose(j, t)].conj();
                }
            }
        }
        Ok(DensityMatrix {
            dims: keep_dims(&vec![2; self.n_qubits], keep),
            matrix: out,
        })
    }
}

fn qubit_count(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "{len} amplitudes is not 2^n for n >= 1"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Unsupported(format!(
            "{n} qubits exceeds the {MAX_QUBITS}-qubit limit"
        )));
    }
    Ok(n)
}

fn keep_dims(dims: &[usize], keep: &[usize]) -> Vec<usize> {
    keep.iter().map(|&k| dims[k]).collect()
}

/// Hermitian, unit-trace, positive semidefinite operator on a product of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidState(format!(
                "factor dimensions {dims:?} must all be >= 2"
            )));
        }
        let total: usize = dims.iter().product();
        if total != matrix.order() {
            return Err(Error::InvalidState(format!(
                "dims {dims:?} do not match matrix order {}",
                matrix.order()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = linalg::hermitian_eigenvalues(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min:e} is negative"
            )));
        }
        Ok(Self { dims, matrix })
    }

    /// A density matrix on `n` qubits.
    pub fn qubits(matrix: CMatrix) -> Result<Self> {
        let order = matrix.order();
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "order {order} is not a power of two"
            )));
        }
        Self::new(vec![2; order.trailing_zeros() as usize], matrix)
    }

    /// Mixture `Σ p_i |ψ_i><ψ_i|` of kets on the same register.
    pub fn mixture(terms: &[(f64, &Ket)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut m = CMatrix::zeros(first.1.amplitudes.len());
        for (p, ket) in terms {
            if ket.n_qubits != first.1.n_qubits {
                return Err(Error::InvalidState("mixed register sizes".into()));
            }
            m = m.add(&CMatrix::outer(&ket.amplitudes).scale(Complex64::new(*p, 0.0)));
        }
        Self::qubits(m)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        Self {
            dims,
            matrix: CMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == [2, 2]
    }

    /// Eigenvalues, descending, with rounding noise in `[-EIGEN_CLIP, 0)` set to 0.
    pub fn spectrum(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
            .expect("density matrices are Hermitian")
            .into_iter()
            .map(clip_eigenvalue)
            .collect()
    }
}

pub(crate) fn clip_eigenvalue(x: f64) -> f64 {
    if x < 0.0 && x >= -EIGEN_CLIP {
        0.0
    } else {
        x.max(0.0)
    }
}

/// Split of a register into side A and side B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl PartitionSpec {
    /// Builds the cut `side_a | complement` of an `n_qubits` register.
    pub fn new(n_qubits: usize, side_a: &[usize]) -> Result<Self> {
        let mut a = side_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != side_a.len() || a.iter().any(|&q| q >= n_qubits) {
            return Err(Error::Contract(format!(
                "side A {side_a:?} is not a set of distinct qubits below {n_qubits}"
            )));
        }
        let b: Vec<usize> = (0..n_qubits).filter(|q| !a.contains(q)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::Contract("both sides of a cut must be non-empty".into()));
        }
        Ok(Self {
            side_a: a,
            side_b: b,
        })
    }

    /// The cut `{focus} | rest`.
    pub fn single(n_qubits: usize, focus: usize) -> Result<Self> {
        Self::new(n_qubits, &[focus])
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn n_qubits(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }
}

/// Index bookkeeping for a kept/traced split of the factors.
struct FactorSplit {
    kept_dim: usize,
    traced_dim: usize,
    /// `table[k * traced_dim + t]` is the full index with kept digits `k` and traced digits `t`.
    table: Vec<usize>,
}

impl FactorSplit {
    fn new(dims: &[usize], keep: &[usize]) -> Result<Self> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() || keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::Contract(format!(
                "keep set {keep:?} is not a set of factor indices below {}",
                dims.len()
            )));
        }
        if keep.is_empty() || keep.len() == dims.len() {
            return Err(Error::Contract(
                "keep set must be a non-empty proper subset of the factors".into(),
            ));
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
        let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
        let traced_dim: usize = traced.iter().map(|&t| dims[t]).product();
        // Place value of each factor in the full (big-endian) index.
        let mut stride = vec![1usize; dims.len()];
        for f in (0..dims.len().saturating_sub(1)).rev() {
            stride[f] = stride[f + 1] * dims[f + 1];
        }
        let place = |factors: &[usize], mut idx: usize| -> usize {
            let mut full = 0;
            for &f in factors.iter().rev() {
                full += (idx % dims[f]) * stride[f];
                idx /= dims[f];
            }
            full
        };
        let mut table = Vec::with_capacity(kept_dim * traced_dim);
        for k in 0..kept_dim {
            let base = place(keep, k);
            for t in 0..traced_dim {
                table.push(base + place(&traced, t));
            }
        }
        Ok(Self {
            kept_dim,
            traced_dim,
            table,
        })
    }

    fn compose(&self, kept: usize, traced: usize) -> usize {
        self.table[kept * self.traced_dim + traced]
    }
}

/// Kronecker product; factor dimensions are concatenated.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    DensityMatrix {
        dims,
        matrix: a.matrix.kron(&b.matrix),
    }
}

/// Reduced operator on the factors in `keep`, in the order given.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let split = FactorSplit::new(&rho.dims, keep)?;
    let m = &rho.matrix;
    let mut out = CMatrix::zeros(split.kept_dim);
    for i in 0..split.kept_dim {
        for j in 0..split.kept_dim {
            out[(i, j)] = (0..split.traced_dim)
                .map(|t| m[(split.compose(i, t), split.compose(j, t))])
                .sum();
        }
    }
    Ok(DensityMatrix {
        dims: keep_dims(&rho.dims, keep),
        matrix: out,
    })
}

/// Transposes the indices of one factor.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<CMatrix> {
    let dims = &rho.dims;
    if subsystem >= dims.len() {
        return Err(Error::Contract(format!(
            "subsystem {subsystem} out of range for {} factors",
            dims.len()
        )));
    }
    let stride: usize = dims[subsystem + 1..].iter().product();
    let d = dims[subsystem];
    let digit = |idx: usize| (idx / stride) % d;
    let m = &rho.matrix;
    Ok(CMatrix::from_fn(m.order(), |i, j| {
        let (di, dj) = (digit(i), digit(j));
        let i2 = i - di * stride + dj * stride;
        let j2 = j - dj * stride + di * stride;
        m[(i2, j2)]
    }))
}

pub use linalg::hermitian_eigenvalues;

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    if m.is_hermitian(DENSITY_TOL) {
        linalg::hermitian_eigenvalues(m)
            .expect("checked Hermitian")
            .iter()
            .map(|v| v.abs())
            .sum()
    } else {
        linalg::singular_values(m).iter().sum()
    }
}

/// `Tr ρ²`, clamped to `[0, 1]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
    let p: f64 = rho.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum();
    p.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> Ket {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        Ket::new(vec![c(h), c(0.0), c(0.0), c(h)]).unwrap()
    }

    fn assert_matrix_close(a: &CMatrix, b: &CMatrix, tol: f64) {
        assert_eq!(a.order(), b.order());
        let diff = a.sub(b).frobenius_norm();
        assert!(diff <= tol, "matrices differ by {diff}");
    }

    #[test]
    fn tensor_of_maximally_mixed() {
        let half = DensityMatrix::maximally_mixed(vec![2]);
        let t = tensor(&half, &half);
        assert_eq!(t.dims(), &[2, 2]);
        assert_matrix_close(t.matrix(), &DensityMatrix::maximally_mixed(vec![2, 2]).matrix, 0.0);
    }

    #[test]
    fn tensor_of_basis_projectors() {
        let zero = Ket::basis(&[0]).unwrap().density();
        let one = Ket::basis(&[1]).unwrap().density();
        let t = tensor(&zero, &one);
        assert_eq!(t, Ket::basis(&[0, 1]).unwrap().density());
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let r = partial_trace(&bell().density(), &[0]).unwrap();
        assert_matrix_close(r.matrix(), &DensityMatrix::maximally_mixed(vec![2]).matrix, 1e-15);
        let r2 = bell().reduced(&[1]).unwrap();
        assert_matrix_close(r2.matrix(), r.matrix(), 1e-15);
    }

    #[test]
    fn product_marginal() {
        let ket = Ket::basis(&[0, 1]).unwrap();
        let r = partial_trace(&ket.density(), &[1]).unwrap();
        assert_eq!(r, Ket::basis(&[1]).unwrap().density());
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let rho = bell().density();
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::Contract(_))));
        assert!(matches!(partial_trace(&rho, &[0, 1]), Err(Error::Contract(_))));
        assert!(matches!(partial_trace(&rho, &[2]), Err(Error::Contract(_))));
    }

    #[test]
    fn partial_trace_keeps_requested_order() {
        // |0>|1>|1>: keeping (2, 0) must give |1>|0>.
        let ket = Ket::basis(&[0, 1, 1]).unwrap();
        let r = partial_trace(&ket.density(), &[2, 0]).unwrap();
        assert_eq!(r, Ket::basis(&[1, 0]).unwrap().density());
        assert_eq!(ket.reduced(&[2, 0]).unwrap(), r);
    }

    #[test]
    fn partial_transpose_fixes_diagonal_states() {
        let rho = DensityMatrix::new(
            vec![2, 2],
            CMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]),
        )
        .unwrap();
        assert_eq!(&partial_transpose(&rho, 0).unwrap(), rho.matrix());
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(&bell().density(), 0).unwrap();
        let vals = hermitian_eigenvalues(&pt).unwrap();
        for (v, e) in vals.iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(trace_norm(&pt), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_transpose_index_out_of_range() {
        assert!(partial_transpose(&bell().density(), 2).is_err());
    }

    #[test]
    fn trace_norm_basics() {
        assert_eq!(trace_norm(&CMatrix::zeros(4)), 0.0);
        assert_abs_diff_eq!(trace_norm(bell().density().matrix()), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn purity_examples() {
        assert_abs_diff_eq!(purity(&bell().density()), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(purity(&DensityMatrix::maximally_mixed(vec![2])), 0.5, epsilon = 1e-15);
        let d = DensityMatrix::new(vec![2], CMatrix::from_diagonal(&[2.0 / 3.0, 1.0 / 3.0])).unwrap();
        assert_abs_diff_eq!(purity(&d), 5.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(vec![2], CMatrix::from_diagonal(&[0.6, 0.6])).is_err());
        assert!(DensityMatrix::new(vec![2], CMatrix::from_diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(vec![3], CMatrix::from_diagonal(&[0.5, 0.5])).is_err());
        let mut m = CMatrix::from_diagonal(&[0.5, 0.5]);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(DensityMatrix::new(vec![2], m).is_err());
    }

    #[test]
    fn ket_validation() {
        assert!(Ket::new(vec![c(1.0); 3]).is_err());
        assert!(Ket::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(Ket::normalizing(vec![c(1.0 + 5e-7), c(0.0)], 1e-6).is_ok());
        assert!(Ket::normalizing(vec![c(1.0 + 5e-6), c(0.0)], 1e-6).is_err());
        assert!(matches!(Ket::new(vec![c(1.0); 512]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn partition_validation() {
        let p = PartitionSpec::new(3, &[2, 0]).unwrap();
        assert_eq!(p.side_a(), &[0, 2]);
        assert_eq!(p.side_b(), &[1]);
        assert!(PartitionSpec::new(3, &[]).is_err());
        assert!(PartitionSpec::new(3, &[0, 1, 2]).is_err());
        assert!(PartitionSpec::new(3, &[3]).is_err());
        assert!(PartitionSpec::new(3, &[1, 1]).is_err());
    }
}
