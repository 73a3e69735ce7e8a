//! Dense complex square matrices.
//!
//! Everything here is sized for desk-scale problems (order at most 256), so
//! the algorithms favour accuracy and simplicity over asymptotic speed. The
//! eigensolver is a cyclic complex Jacobi iteration, which delivers
//! eigenvalues with absolute error of order `eps * ||A||_F`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    order: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![ZERO; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let order = (data.len() as f64).sqrt().round() as usize;
        if order * order != data.len() {
            return Err(Error::Contract(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { order, data })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// The projector `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            order: self.order,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            order: self.order,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        Self {
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.order, other.order);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation `|m_ij - conj(m_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.order;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.order + j]
    }
}

/// Eigendecomposition `m = V diag(values) V†` of a Hermitian matrix.
///
/// `values` are sorted descending; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.order).map(|i| self.vectors[(i, k)]).collect()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let n = self.vectors.order;
        CMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

/// Tolerance used to accept a matrix as Hermitian before diagonalising it.
fn hermitian_tolerance(m: &CMatrix) -> f64 {
    1e-10 * m.frobenius_norm().max(1.0)
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    let defect = m.hermiticity_defect();
    if defect > hermitian_tolerance(m) {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    Ok(())
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    Ok(jacobi(m, true))
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    Ok(jacobi(m, false).values)
}

/// Singular values (descending) of an arbitrary square matrix.
///
/// They are read off the Hermitian dilation `[[0, X], [X†, 0]]`, whose
/// spectrum is `±σ_i`; this keeps absolute accuracy for tiny singular values,
/// which squaring into `X†X` would lose.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let n = m.order;
    let dilation = CMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => m[(i, j - n)],
        (false, true) => m[(j, i - n)].conj(),
        _ => ZERO,
    });
    let values = jacobi(&dilation, false).values;
    values[..n].iter().map(|&v| v.max(0.0)).collect()
}

fn jacobi(m: &CMatrix, want_vectors: bool) -> HermitianEigen {
    let n = m.order;
    // Work on the exact Hermitian part.
    let mut a = CMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    if n > 1 && scale > 0.0 {
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-17 * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, want_vectors.then_some(&mut v), p, q, scale);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = if want_vectors {
        CMatrix::from_fn(n, |i, k| v[(i, order[k])])
    } else {
        CMatrix::zeros(0)
    };
    HermitianEigen { values, vectors }
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize, scale: f64) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g <= 1e-300 || g <= f64::EPSILON * 1e-3 * scale {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let n = a.order;
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // U restricted to (p, q): columns (c, -s e^{-iφ}) and (s, c e^{-iφ}).
    let upp = Complex64::new(c, 0.0);
    let uqp = -phase.conj() * s;
    let upq = Complex64::new(s, 0.0);
    let uqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * upp + vkq * uqp;
            v[(k, q)] = vkp * upq + vkq * uqq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pseudo_random_hermitian(n: usize, mut seed: u64) -> CMatrix {
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let raw = CMatrix::from_fn(n, |_, _| c(next(), next()));
        raw.add(&raw.adjoint())
    }

    #[test]
    fn identity_eigenvalues() {
        let vals = hermitian_eigenvalues(&CMatrix::identity(4)).unwrap();
        assert_eq!(vals, vec![1.0; 4]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let vals = hermitian_eigenvalues(&CMatrix::from_diagonal(&[1.0 / 3.0, 2.0 / 3.0])).unwrap();
        assert_abs_diff_eq!(vals[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(vals[1], 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn random_hermitian_trace_and_reconstruction() {
        for seed in 1..20u64 {
            let m = pseudo_random_hermitian(8, seed * 7919);
            let eig = hermitian_eigen(&m).unwrap();
            let sum: f64 = eig.values.iter().sum();
            assert_abs_diff_eq!(sum, m.trace().re, epsilon = 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
            let resid = m.sub(&eig.reconstruct()).frobenius_norm();
            assert!(resid <= 1e-9 * m.frobenius_norm(), "residual {resid}");
            let vvh = eig.vectors.matmul(&eig.vectors.adjoint());
            assert!(vvh.sub(&CMatrix::identity(8)).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::Contract(_))));
    }

    #[test]
    fn singular_values_of_nilpotent() {
        // [[0, 2], [0, 0]] has singular values {2, 0}.
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = c(2.0, 0.0);
        let sv = singular_values(&m);
        assert_abs_diff_eq!(sv[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sv[1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn kron_of_identities() {
        let k = CMatrix::identity(2).kron(&CMatrix::identity(3));
        assert_eq!(k, CMatrix::identity(6));
    }

    #[test]
    fn from_row_major_rejects_non_square() {
        assert!(CMatrix::from_row_major(vec![ZERO; 3]).is_err());
    }
}
