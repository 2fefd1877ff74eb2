//! Fixed instances shared by the benchmarks.

use std::sync::Arc;

use num_bigint::BigInt;
use phasetorus::study;
use phasetorus::{DiscreteState, EnergySpectrum, IntegerAmplitudes, Rational, ReducedSpectrum};

/// The (0, 4, 9) spectrum with uniform amplitudes.
pub fn fig1_state() -> DiscreteState {
    let energies = [0, 4, 9].iter().map(|&e| Rational::from_integer(e.into())).collect();
    let spec = Arc::new(EnergySpectrum::new(energies).unwrap().reduce());
    let amps = IntegerAmplitudes::new(vec![BigInt::from(1); 3]).unwrap();
    DiscreteState::new(amps, spec, BigInt::from(0)).unwrap()
}

/// Seeded random spectrum with levels in `1..=bound`.
pub fn random_spectrum(seed: u64, dim: usize, bound: u64) -> Arc<ReducedSpectrum> {
    let mut rng = study::rng(seed);
    Arc::new(study::random_spectrum(&mut rng, dim, bound).reduce())
}

/// Seeded random state on a random spectrum, full amplitude support.
pub fn random_state(seed: u64, dim: usize, bound: u64) -> DiscreteState {
    let spec = random_spectrum(seed, dim, bound);
    let mut rng = study::rng(seed.wrapping_add(1));
    let amps = IntegerAmplitudes::new(study::random_amplitudes(&mut rng, dim, 9, true)).unwrap();
    DiscreteState::new(amps, spec, BigInt::from(0)).unwrap()
}

/// `10^exp`, a step far outside machine integers.
pub fn huge_step(exp: u32) -> BigInt {
    BigInt::from(10).pow(exp)
}
