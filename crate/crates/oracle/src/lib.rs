//! Brute-force reference computations for the test suites.
//!
//! Nothing here shares code with `monogamy-core`: states are plain
//! amplitude vectors, reduced states are formed by explicit summation, and
//! convex roofs are estimated by sampling pure-state decompositions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Matrix = Vec<Vec<Complex64>>;

/// Reduced density matrix of qubit subset `keep` by direct summation over
/// all pairs of basis indices that agree on the traced qubits.
pub fn reduce(psi: &[Complex64], n: usize, keep: &[usize]) -> Matrix {
    let dk = 1usize << keep.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dk]; dk];
    let digit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let kept_index = |idx: usize| keep.iter().fold(0, |acc, &q| (acc << 1) | digit(idx, q));
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            let same_traced = (0..n)
                .filter(|q| !keep.contains(q))
                .all(|q| digit(i, q) == digit(j, q));
            if same_traced {
                out[kept_index(i)][kept_index(j)] += psi[i] * psi[j].conj();
            }
        }
    }
    out
}

/// `2 sqrt(det ρ_A)` of an unnormalized vector, the first qubit against the rest:
/// this equals `p · C(φ/|φ|)` with `p = |φ|²`.
pub fn weighted_concurrence(phi: &[Complex64]) -> f64 {
    let half = phi.len() / 2;
    let (lo, hi) = phi.split_at(half);
    let a: f64 = lo.iter().map(|z| z.norm_sqr()).sum();
    let d: f64 = hi.iter().map(|z| z.norm_sqr()).sum();
    let off: Complex64 = lo.iter().zip(hi).map(|(x, y)| x * y.conj()).sum();
    2.0 * (a * d - off.norm_sqr()).max(0.0).sqrt()
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect()
}

/// Orthonormalizes the columns of `m` (modified Gram–Schmidt).
fn orthonormal_columns(mut m: Matrix) -> Matrix {
    let rows = m.len();
    let cols = m[0].len();
    for j in 0..cols {
        for k in 0..j {
            let proj: Complex64 = (0..rows).map(|i| m[i][k].conj() * m[i][j]).sum();
            for i in 0..rows {
                let v = m[i][k];
                m[i][j] -= proj * v;
            }
        }
        let norm = (0..rows).map(|i| m[i][j].norm_sqr()).sum::<f64>().sqrt();
        for row in m.iter_mut() {
            row[j] /= norm;
        }
    }
    m
}

/// Minimum over sampled decompositions of the average concurrence (first
/// qubit against the rest) of a mixed state given as an ensemble of
/// subnormalized vectors `ensemble[k]` with `ρ = Σ_k |e_k><e_k|`.
///
/// Decompositions with `terms` elements are `φ_i = Σ_k U_ik e_k` for a
/// `terms × r` isometry `U`. `samples` Haar isometries are drawn; the best
/// few then seed independent random-perturbation descents of `refine` steps
/// each, with a step size that grows on success and shrinks on failure.
pub fn sampled_min_concurrence(
    ensemble: &[Vec<Complex64>],
    terms: usize,
    samples: usize,
    refine: usize,
    seed: u64,
) -> f64 {
    const CHAINS: usize = 6;
    let r = ensemble.len();
    assert!(terms >= r, "need at least as many terms as ensemble vectors");
    let dim = ensemble[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cost = |u: &Matrix| -> f64 {
        (0..terms)
            .map(|i| {
                let phi: Vec<Complex64> = (0..dim)
                    .map(|x| (0..r).map(|k| u[i][k] * ensemble[k][x]).sum())
                    .collect();
                weighted_concurrence(&phi)
            })
            .sum()
    };
    let mut pool: Vec<(f64, Matrix)> = Vec::with_capacity(samples);
    for _ in 0..samples.max(1) {
        let u = orthonormal_columns(gaussian_matrix(terms, r, &mut rng));
        pool.push((cost(&u), u));
    }
    pool.sort_by(|a, b| a.0.total_cmp(&b.0));
    pool.truncate(CHAINS);

    let mut best = pool[0].0;
    for (mut value, mut u) in pool {
        let mut step = 0.1;
        for _ in 0..refine {
            let g = gaussian_matrix(terms, r, &mut rng);
            let trial: Matrix = u
                .iter()
                .zip(&g)
                .map(|(row, grow)| row.iter().zip(grow).map(|(a, b)| a + b * step).collect())
                .collect();
            let trial = orthonormal_columns(trial);
            let v = cost(&trial);
            if v < value {
                value = v;
                u = trial;
                step = f64::min(step * 1.5, 0.5);
            } else {
                step = f64::max(step * 0.97, 1e-6);
            }
        }
        best = best.min(value);
    }
    best
}

/// Ensemble `{√λ_k v_k}` for the reduced state of `psi` on `keep`, read
/// straight off the Schmidt vectors: the reduced state is `Σ_t |ψ_t><ψ_t|`
/// with `ψ_t` the slice of `psi` at traced configuration `t`.
pub fn marginal_ensemble(psi: &[Complex64], n: usize, keep: &[usize]) -> Vec<Vec<Complex64>> {
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dk]; dt];
    let digit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    for (idx, amp) in psi.iter().enumerate() {
        let k = keep.iter().fold(0, |acc, &q| (acc << 1) | digit(idx, q));
        let t = traced.iter().fold(0, |acc, &q| (acc << 1) | digit(idx, q));
        out[t][k] = *amp;
    }
    out
}

/// Haar-random vector from an independent generator (ChaCha8 + `rand_distr` normals).
pub fn haar_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `Tr ρ²` by direct summation.
pub fn purity(m: &Matrix) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum()
}
