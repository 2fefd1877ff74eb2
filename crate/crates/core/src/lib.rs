//! Exact simulation of finite quantum systems whose energy spectrum is
//! commensurable, so that Schrödinger evolution can be replaced by a discrete
//! walk on a phase lattice that recurs after `N` steps.
//!
//! The pipeline: parse an [`EnergySpectrum`], [`reduce`](EnergySpectrum::reduce)
//! it to a [`ReducedSpectrum`] (`E_k = E_0 + eps p_k`, `N = lcm p_k`), bind
//! integer amplitudes into a [`DiscreteState`], then step, count, compare and
//! measure it exactly. [`continuum`] holds the floating-point reference for
//! ordinary continuous evolution.

pub mod continuum;
pub mod evolution;
pub mod export;
pub mod io;
pub mod numkernel;
pub mod quantumstate;
pub mod spectrum;
pub mod study;

pub use evolution::{
    distinct_states, minimal_period, trajectory, verify_recurrence, Equality, EvolutionError,
    TorusPoint, Trajectory, DEFAULT_CAP,
};
pub use numkernel::{NumError, Rational, Unbounded};
pub use quantumstate::{
    embed, ComplexBall, DiscreteState, GroupRingElement, IntegerAmplitudes, ProbabilityInterval,
    StateError,
};
pub use spectrum::{reduce_floats, Commensurability, EnergySpectrum, ReducedSpectrum, SpectrumError};
