//! Deterministic state families and seeded Haar-random kets.
//!
//! # Random stream contract
//!
//! [`haar_random`] seeds `ChaCha20Rng` with `SeedableRng::seed_from_u64(seed)`.
//! Each uniform draw is `(next_u64() >> 11) * 2^-53`, and each amplitude
//! takes two draws `u1, u2` in basis-index order. The Box–Muller transform
//! maps them to `r = sqrt(-2 ln(1 - u1))`, `θ = 2π u2`, and the amplitude is
//! `r (cos θ + i sin θ)`. The vector is then normalized. The same seed
//! produces bit-identical output on every platform with IEEE-754 `f64`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::qstate::{Ket, MAX_QUBITS};

/// The five amplitudes and phase of a three-qubit generalized Schmidt form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtParams {
    lambdas: [f64; 5],
    phi: f64,
}

impl SchmidtParams {
    pub fn new(lambdas: [f64; 5], phi: f64) -> Result<Self> {
        if lambdas.iter().any(|&l| !(l >= 0.0)) {
            return Err(Error::InvalidState(format!(
                "Schmidt coefficients {lambdas:?} must be nonnegative"
            )));
        }
        let norm: f64 = lambdas.iter().map(|l| l * l).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "Schmidt coefficients have squared norm {norm}"
            )));
        }
        Ok(Self { lambdas, phi })
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lambdas
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `λ0|000> + λ1 e^{iφ}|100> + λ2|101> + λ3|110> + λ4|111>`.
pub fn gsd3(params: &SchmidtParams) -> Ket {
    let [l0, l1, l2, l3, l4] = params.lambdas;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(l0, 0.0);
    amps[0b100] = Complex64::from_polar(l1, params.phi);
    amps[0b101] = Complex64::new(l2, 0.0);
    amps[0b110] = Complex64::new(l3, 0.0);
    amps[0b111] = Complex64::new(l4, 0.0);
    Ket::new(amps).expect("normalized by construction")
}

fn check_register(n: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::Contract(format!(
            "register size {n} outside 2..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Equal superposition of the `n` weight-one basis states.
pub fn w_state(n: usize) -> Result<Ket> {
    check_register(n)?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for q in 0..n {
        amps[1 << q] = amp;
    }
    Ket::normalizing(amps, 1e-12)
}

/// `(|0…0> + |1…1>) / √2`.
pub fn ghz_state(n: usize) -> Result<Ket> {
    check_register(n)?;
    let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = h;
    amps[(1 << n) - 1] = h;
    Ket::normalizing(amps, 1e-12)
}

fn uniform(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Haar-random pure state on `n` qubits; see the module docs for the stream contract.
pub fn haar_random(n: usize, seed: u64) -> Result<Ket> {
    check_register(n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| {
            let u1 = uniform(&mut rng);
            let u2 = uniform(&mut rng);
            let r = (-2.0 * (1.0 - u1).ln()).sqrt();
            Complex64::from_polar(r, 2.0 * core::f64::consts::PI * u2)
        })
        .collect();
    Ket::from_unnormalized(amps)
}

/// SplitMix64 finalizer applied to `base + index`: the per-sample seed used
/// by campaigns, so sample `i` does not depend on evaluation order.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
