//! Floating-point reference for ordinary continuous Schrödinger evolution.
//!
//! Time is measured in units of the recurrence time `T = 2 pi / eps`: at time
//! `tau` level `k` carries the phase `exp(-2 pi i p_k tau)`. Lattice time `n`
//! is `tau = n / N`. Phases are reduced modulo one turn before any
//! trigonometric call; `2 pi` only appears in [`turn_phase`].

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::numkernel::{Rational, Unbounded};
use crate::quantumstate::{DiscreteState, IntegerAmplitudes};
use crate::spectrum::ReducedSpectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContinuumError {
    #[error("time is not finite")]
    NonFiniteTime,
    #[error("dimension mismatch: {discrete} discrete vs {continuous} continuous components")]
    DimensionMismatch { discrete: usize, continuous: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousState {
    pub components: Vec<Complex64>,
    /// Time as a fraction of the recurrence time.
    pub time_turns: f64,
}

impl ContinuousState {
    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(Complex64::norm_sqr).sum()
    }
}

/// `exp(-2 pi i t)` for a phase `t` in turns already reduced into `[0, 1)`.
fn turn_phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -std::f64::consts::TAU * t)
}

fn amplitude_f64(a: &Unbounded) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}

/// Continuous evolution at time `time_turns` (in recurrence periods).
pub fn continuous_at(
    amps: &IntegerAmplitudes,
    spec: &ReducedSpectrum,
    time_turns: f64,
) -> Result<ContinuousState, ContinuumError> {
    if !time_turns.is_finite() {
        return Err(ContinuumError::NonFiniteTime);
    }
    let components = amps
        .amps()
        .iter()
        .zip(spec.p())
        .map(|(a, p)| {
            let turns = (amplitude_f64(p) * time_turns).rem_euclid(1.0);
            turn_phase(turns) * amplitude_f64(a)
        })
        .collect();
    Ok(ContinuousState { components, time_turns })
}

/// Continuous evolution at an exact rational time, reducing `p_k tau` modulo
/// one turn in exact arithmetic first so that huge times keep full precision.
pub fn continuous_at_exact(
    amps: &IntegerAmplitudes,
    spec: &ReducedSpectrum,
    time_turns: &Rational,
) -> ContinuousState {
    let components = amps
        .amps()
        .iter()
        .zip(spec.p())
        .map(|(a, p)| {
            let phase = time_turns * Rational::from_integer(p.clone());
            let frac = Rational::new(phase.numer().mod_floor(phase.denom()), phase.denom().clone());
            turn_phase(frac.to_f64().unwrap_or(0.0)) * amplitude_f64(a)
        })
        .collect();
    ContinuousState { components, time_turns: time_turns.to_f64().unwrap_or(f64::NAN) }
}

/// The lattice state as a complex vector, phases `m_k / N` evaluated in floats.
pub fn discrete_components(d: &DiscreteState) -> Vec<Complex64> {
    let n = d.spectrum().modulus();
    d.amplitudes()
        .amps()
        .iter()
        .zip(d.phase_indices())
        .map(|(a, m)| {
            let turns = Rational::new(m.clone(), n.clone()).to_f64().unwrap_or(0.0);
            turn_phase(turns) * amplitude_f64(a)
        })
        .collect()
}

/// `|<c|d>|^2 / (|c|^2 |d|^2)`, clamped into `[0, 1]`.
pub fn fidelity(d: &DiscreteState, c: &ContinuousState) -> Result<f64, ContinuumError> {
    if d.dimension() != c.components.len() {
        return Err(ContinuumError::DimensionMismatch {
            discrete: d.dimension(),
            continuous: c.components.len(),
        });
    }
    let dv = discrete_components(d);
    let overlap: Complex64 = c.components.iter().zip(&dv).map(|(x, y)| x.conj() * y).sum();
    let d_norm: f64 = dv.iter().map(Complex64::norm_sqr).sum();
    Ok((overlap.norm_sqr() / (c.norm_sq() * d_norm)).clamp(0.0, 1.0))
}

/// Worst `1 - fidelity` between lattice states and continuous evolution at
/// lattice times `tau = n / N`, over the sampled steps.
pub fn max_lattice_deviation(
    amps: &IntegerAmplitudes,
    spec: &std::sync::Arc<ReducedSpectrum>,
    sample: &[Unbounded],
) -> Result<f64, ContinuumError> {
    let base = DiscreteState::new(amps.clone(), spec.clone(), Unbounded::from(0))
        .map_err(|_| ContinuumError::DimensionMismatch {
            discrete: amps.len(),
            continuous: spec.dimension(),
        })?;
    let modulus = spec.modulus();
    let worst = sample
        .par_iter()
        .map(|n| {
            let d = base.state_at(n);
            let tau = Rational::new(n.clone(), modulus.clone());
            let c = continuous_at_exact(amps, spec, &tau);
            fidelity(&d, &c).map(|f| 1.0 - f)
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(worst.into_iter().fold(0.0, f64::max))
}
