//! Cross-checks against the brute-force reference implementations in
//! `monogamy-oracle`, which share no code with the library.

use approx::assert_abs_diff_eq;
use monogamy_core::bounds::precondition_check;
use monogamy_core::linalg::hermitian_eigen;
use monogamy_core::measures::{concurrence_pure, concurrence_two_qubit};
use monogamy_core::qstate::{partial_trace, purity};
use monogamy_core::states::{derive_seed, ghz_state, gsd3, haar_random, w_state};
use monogamy_core::{CMatrix, DensityMatrix, Ket, PartitionSpec, SchmidtParams};
use monogamy_oracle as oracle;
use num_complex::Complex64;

fn assert_matches_oracle(rho: &DensityMatrix, expected: &oracle::Matrix, tol: f64) {
    let m = rho.matrix();
    assert_eq!(m.order(), expected.len());
    for (i, row) in expected.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            assert!((m[(i, j)] - z).norm() <= tol, "entry ({i},{j}): {} vs {z}", m[(i, j)]);
        }
    }
}

#[test]
fn w3_single_qubit_marginal() {
    let w = w_state(3).unwrap();
    let expected = oracle::reduce(w.amplitudes(), 3, &[0]);
    assert_abs_diff_eq!(expected[0][0].re, 2.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(expected[1][1].re, 1.0 / 3.0, epsilon = 1e-15);
    assert_matches_oracle(&w.reduced(&[0]).unwrap(), &expected, 1e-14);
    assert_matches_oracle(&partial_trace(&w.density(), &[0]).unwrap(), &expected, 1e-14);
}

#[test]
fn reduced_states_of_haar_kets() {
    let subsets: [&[usize]; 6] = [&[0], &[2], &[0, 1], &[1, 3], &[3, 0], &[0, 2, 3]];
    for seed in 0..10 {
        let psi = haar_random(4, seed).unwrap();
        for keep in subsets {
            let expected = oracle::reduce(psi.amplitudes(), 4, keep);
            assert_matches_oracle(&psi.reduced(keep).unwrap(), &expected, 1e-13);
            assert_matches_oracle(&partial_trace(&psi.density(), keep).unwrap(), &expected, 1e-13);
        }
    }
}

#[test]
fn purity_matches_direct_summation() {
    for seed in 0..20 {
        let psi = haar_random(3, derive_seed(99, seed)).unwrap();
        let direct = oracle::purity(&oracle::reduce(psi.amplitudes(), 3, &[1]));
        assert_abs_diff_eq!(purity(&psi.reduced(&[1]).unwrap()), direct, epsilon = 1e-13);
    }
}

#[test]
fn haar_purity_moment_agrees_with_independent_sampler() {
    // Two independent generators should agree on E[Tr ρ_A²] = 4/5 for two qubits.
    let samples = 20_000u64;
    let ours: f64 = (0..samples)
        .map(|i| purity(&haar_random(2, derive_seed(3, i)).unwrap().reduced(&[0]).unwrap()))
        .sum::<f64>()
        / samples as f64;
    let theirs: f64 = (0..samples)
        .map(|i| oracle::purity(&oracle::reduce(&oracle::haar_vector(4, i), 2, &[0])))
        .sum::<f64>()
        / samples as f64;
    assert_abs_diff_eq!(ours, 0.8, epsilon = 0.01);
    assert_abs_diff_eq!(theirs, 0.8, epsilon = 0.01);
    assert_abs_diff_eq!(ours, theirs, epsilon = 0.015);
}

#[test]
fn w3_marginal_concurrence_is_the_convex_roof() {
    let w = w_state(3).unwrap();
    let closed = concurrence_two_qubit(&w.reduced(&[0, 1]).unwrap()).unwrap();
    assert_abs_diff_eq!(closed, 2.0 / 3.0, epsilon = 1e-12);
    let ensemble = oracle::marginal_ensemble(w.amplitudes(), 3, &[0, 1]);
    let sampled = oracle::sampled_min_concurrence(&ensemble, 4, 4000, 3000, 5);
    assert!(closed <= sampled + 1e-6, "closed {closed} above sampled {sampled}");
    assert!(sampled - closed < 5e-3, "closed {closed}, sampled {sampled}");
}

#[test]
fn two_qubit_closed_form_against_sampling() {
    for seed in 0..6 {
        let psi = haar_random(3, derive_seed(0xC0FFEE, seed)).unwrap();
        let closed = concurrence_two_qubit(&psi.reduced(&[0, 2]).unwrap()).unwrap();
        let ensemble = oracle::marginal_ensemble(psi.amplitudes(), 3, &[0, 2]);
        let sampled = oracle::sampled_min_concurrence(&ensemble, 4, 3000, 3000, seed);
        assert!(closed <= sampled + 1e-6, "seed {seed}: {closed} > {sampled}");
        assert!(sampled - closed < 5e-3, "seed {seed}: {closed} vs {sampled}");
    }
}

fn random_params(seed: u64) -> SchmidtParams {
    let v = oracle::haar_vector(3, seed);
    let mut l: Vec<f64> = v.iter().flat_map(|z| [z.re.abs(), z.im.abs()]).take(5).collect();
    let norm = l.iter().map(|x| x * x).sum::<f64>().sqrt();
    l.iter_mut().for_each(|x| *x /= norm);
    let phi = 6.0 * v[2].im.abs();
    SchmidtParams::new([l[0], l[1], l[2], l[3], l[4]], phi).unwrap()
}

#[test]
fn gsd3_closed_form_concurrences() {
    // Qubit 0 is A, qubit 1 is B, qubit 2 is C. With λ2 on |101> and λ3 on
    // |110>, C_AB = 2λ0λ3 and C_AC = 2λ0λ2.
    for seed in 0..100 {
        let params = random_params(seed);
        let [l0, _, l2, l3, l4] = params.lambdas();
        let psi = gsd3(&params);
        let cut = concurrence_pure(&psi, &PartitionSpec::single(3, 0).unwrap()).unwrap();
        let ab = concurrence_two_qubit(&psi.reduced(&[0, 1]).unwrap()).unwrap();
        let ac = concurrence_two_qubit(&psi.reduced(&[0, 2]).unwrap()).unwrap();
        assert_abs_diff_eq!(cut, 2.0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(ab, 2.0 * l0 * l3, epsilon = 1e-12);
        assert_abs_diff_eq!(ac, 2.0 * l0 * l2, epsilon = 1e-12);
    }
}

#[test]
fn w_and_ghz_families() {
    for n in 3..=6 {
        let w = w_state(n).unwrap();
        let ghz = ghz_state(n).unwrap();
        for b in 1..n {
            let cw = concurrence_two_qubit(&w.reduced(&[0, b]).unwrap()).unwrap();
            assert_abs_diff_eq!(cw, 2.0 / n as f64, epsilon = 1e-10);
            let cg = concurrence_two_qubit(&ghz.reduced(&[0, b]).unwrap()).unwrap();
            assert_abs_diff_eq!(cg, 0.0, epsilon = 1e-10);
        }
        let cut = PartitionSpec::single(n, 0).unwrap();
        assert_abs_diff_eq!(concurrence_pure(&ghz, &cut).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn w4_cut_bracket_contains_sampled_roof() {
    // C(A | B2 B3) for W4 is a genuine 2⊗4 convex roof.
    let w = w_state(4).unwrap();
    let p = precondition_check(&w, 0, &[1, 2, 3]).unwrap();
    let bracket = p.brackets[0];
    let ensemble = oracle::marginal_ensemble(w.amplitudes(), 4, &[0, 2, 3]);
    let sampled = oracle::sampled_min_concurrence(&ensemble, 4, 4000, 4000, 17);
    assert!(bracket.lower <= sampled + 1e-6, "{bracket:?} vs {sampled}");
    assert!(bracket.upper + 1e-6 >= bracket.lower);
    assert!((bracket.upper - sampled).abs() < 5e-3, "{bracket:?} vs {sampled}");
    assert!(bracket.lower >= 0.5f64.sqrt() - 1e-12);
}

#[test]
fn eigen_reconstruction_of_random_hermitian() {
    for seed in 0..20 {
        let v = oracle::haar_vector(64, seed);
        let m = CMatrix::from_fn(8, |i, j| {
            let a = v[8 * i + j] + v[8 * j + i].conj();
            if i == j {
                Complex64::new(a.re, 0.0)
            } else if i < j {
                a
            } else {
                (v[8 * j + i] + v[8 * i + j].conj()).conj()
            }
        });
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.reconstruct().sub(&m).frobenius_norm() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let gram = e.vectors.adjoint().matmul(&e.vectors);
        assert!(gram.sub(&CMatrix::identity(8)).frobenius_norm() < 1e-12);
    }
}

#[test]
fn basis_state_has_no_entanglement() {
    let psi = Ket::basis(&[0, 1, 1]).unwrap();
    let cut = PartitionSpec::single(3, 0).unwrap();
    assert_abs_diff_eq!(concurrence_pure(&psi, &cut).unwrap(), 0.0, epsilon = 1e-15);
}
