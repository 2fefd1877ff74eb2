//! Seeded random instances and the growth study of the lattice modulus.
//!
//! Random spectra are built from an integer level vector and a rational unit,
//! `E_k = offset + eps * p_k`, so they are commensurable by construction.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numkernel::{log10_big, Rational, Unbounded};
use crate::spectrum::EnergySpectrum;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `d - 1` distinct levels drawn uniformly from `1..=bound`, sorted, with `0` in front.
pub fn random_levels<R: Rng>(rng: &mut R, d: usize, bound: u64) -> Vec<u64> {
    assert!(d >= 1 && bound as usize >= d - 1, "need at least d - 1 distinct levels");
    let mut levels = Vec::with_capacity(d);
    while levels.len() < d - 1 {
        let v = rng.gen_range(1..=bound);
        if !levels.contains(&v) {
            levels.push(v);
        }
    }
    levels.sort_unstable();
    levels.insert(0, 0);
    levels
}

/// Commensurable spectrum with the given levels, random offset and unit.
pub fn spectrum_from_levels<R: Rng>(rng: &mut R, levels: &[u64]) -> EnergySpectrum {
    let offset = Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=12).into());
    let eps = Rational::new(rng.gen_range(1i64..=20).into(), rng.gen_range(1i64..=12).into());
    let energies = levels
        .iter()
        .map(|&p| &offset + &eps * Rational::from_integer(p.into()))
        .collect();
    EnergySpectrum::new(energies).expect("distinct increasing levels")
}

pub fn random_spectrum<R: Rng>(rng: &mut R, d: usize, bound: u64) -> EnergySpectrum {
    let levels = random_levels(rng, d, bound);
    spectrum_from_levels(rng, &levels)
}

/// Amplitudes in `-max..=max`; with `full_support` every entry is nonzero.
pub fn random_amplitudes<R: Rng>(rng: &mut R, d: usize, max: i64, full_support: bool) -> Vec<Unbounded> {
    loop {
        let amps: Vec<i64> = (0..d)
            .map(|_| loop {
                let a = rng.gen_range(-max..=max);
                if a != 0 || !full_support {
                    break a;
                }
            })
            .collect();
        if amps.iter().any(|&a| a != 0) {
            return amps.into_iter().map(Unbounded::from).collect();
        }
    }
}

/// Summary of `log10 N` over the trials for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub dimension: usize,
    pub trials: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

/// `log10 N` of the reduced spectra for `trials` random instances.
pub fn log10_moduli<R: Rng>(rng: &mut R, d: usize, bound: u64, trials: usize) -> Vec<f64> {
    (0..trials)
        .map(|_| log10_big(random_spectrum(rng, d, bound).reduce().modulus()))
        .collect()
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Growth of the lattice modulus with dimension. Each dimension draws from its
/// own stream derived from `seed`, so rows do not depend on which other
/// dimensions are requested.
pub fn n_growth(seed: u64, dims: &[usize], bound: u64, trials: usize) -> Vec<GrowthRow> {
    dims.iter()
        .map(|&d| {
            let mut r = rng(seed ^ (d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut values = log10_moduli(&mut r, d, bound, trials);
            let med = median(&mut values);
            GrowthRow {
                dimension: d,
                trials,
                min: values[0],
                median: med,
                max: values[values.len() - 1],
            }
        })
        .collect()
}
