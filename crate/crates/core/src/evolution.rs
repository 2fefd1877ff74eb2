//! Discrete time evolution on the phase torus.
//!
//! One timestep advances phase index `m_k` by `p_k` modulo `N`. The map from
//! step counts to phase vectors is a group homomorphism `Z -> Z_N^D`, so the
//! orbit of a state is a cyclic subgroup and its period is the order of the
//! supported components.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::numkernel::{Rational, Unbounded};
use crate::quantumstate::{lattice_phases, DiscreteState};

/// Default bound on enumerations and brute-force scans.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvolutionError {
    #[error("period {period} exceeds the enumeration cap {cap} (return at the period holds: {recurs})")]
    CapExceeded { period: Unbounded, cap: Unbounded, recurs: bool },
    #[error("trajectory needs at least one point")]
    EmptyRange,
}

/// Equality used when counting distinct states along an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equality {
    /// Literal vectors.
    Strict,
    /// Vectors up to a global phase and positive rescaling.
    Ray,
}

impl DiscreteState {
    /// Advance by `count` steps (negative runs backwards), updating phases incrementally.
    pub fn step_by(&self, count: &Unbounded) -> Self {
        let n = self.spectrum().modulus();
        let phases = self
            .phase_indices()
            .iter()
            .zip(self.spectrum().p())
            .map(|(m, p)| (m + count * p).mod_floor(n))
            .collect();
        self.with_phases(self.step() + count, phases)
    }

    /// One timestep.
    pub fn stepped(&self) -> Self {
        let n = self.spectrum().modulus();
        let phases = self
            .phase_indices()
            .iter()
            .zip(self.spectrum().p())
            .map(|(m, p)| {
                let next = m + p;
                if &next >= n {
                    next.mod_floor(n)
                } else {
                    next
                }
            })
            .collect();
        self.with_phases(self.step() + 1u32, phases)
    }

    /// The same amplitudes at absolute step `n`, computed without iteration.
    pub fn state_at(&self, n: &Unbounded) -> Self {
        self.with_phases(n.clone(), lattice_phases(self.spectrum(), n))
    }
}

/// Smallest `n > 0` returning the state to itself: the lcm over supported
/// levels of `N / gcd(N, p_k)`, or 1 for a stationary state.
pub fn minimal_period(state: &DiscreteState) -> Unbounded {
    let spec = state.spectrum();
    let n = spec.modulus();
    state
        .amplitudes()
        .support()
        .map(|k| n / n.gcd(&spec.p()[k]))
        .fold(Unbounded::one(), |acc, order| acc.lcm(&order))
}

/// First `n` in `1..=limit` at which the orbit of `state` returns to it, by
/// stepping one timestep at a time.
pub fn first_return_scan(state: &DiscreteState, limit: &Unbounded) -> Option<Unbounded> {
    let spec = state.spectrum();
    let support: Vec<usize> = state.amplitudes().support().collect();
    let n = spec.modulus();
    if let (Some(n64), Some(limit64)) = (n.to_u64().filter(|&v| v < 1 << 62), limit.to_u64()) {
        let incs: Vec<u64> = support
            .iter()
            .map(|&k| (&spec.p()[k] % n).to_u64().expect("reduced below N"))
            .collect();
        let mut phases = vec![0u64; incs.len()];
        for step in 1..=limit64 {
            for (m, inc) in phases.iter_mut().zip(&incs) {
                *m += inc;
                if *m >= n64 {
                    *m -= n64;
                }
            }
            if phases.iter().all(|&m| m == 0) {
                return Some(step.into());
            }
        }
        return None;
    }
    let start = state.clone();
    let mut current = state.stepped();
    let mut step = Unbounded::one();
    while &step <= limit {
        if current.same_vector(&start) {
            return Some(step);
        }
        current = current.stepped();
        step += 1u32;
    }
    None
}

/// Checks that the state returns after `minimal_period` steps and, when that
/// period is within `cap`, that a brute-force scan finds no earlier return.
pub fn verify_recurrence(state: &DiscreteState, cap: &Unbounded) -> Result<bool, EvolutionError> {
    let period = minimal_period(state);
    let later = state.state_at(&(state.step() + &period));
    let recurs = later.same_vector(state);
    if &period > cap {
        return Err(EvolutionError::CapExceeded { period, cap: cap.clone(), recurs });
    }
    let earlier = &period - 1u32;
    let no_early_return = earlier.is_zero() || first_return_scan(state, &earlier).is_none();
    Ok(recurs && no_early_return)
}

/// Number of pairwise-distinct states over one period, by enumeration.
pub fn distinct_states(
    state: &DiscreteState,
    mode: Equality,
    cap: &Unbounded,
) -> Result<Unbounded, EvolutionError> {
    let period = minimal_period(state);
    if &period > cap {
        let recurs = state.state_at(&(state.step() + &period)).same_vector(state);
        return Err(EvolutionError::CapExceeded { period, cap: cap.clone(), recurs });
    }
    let support: Vec<usize> = state.amplitudes().support().collect();
    let n = state.spectrum().modulus().clone();
    let key = |s: &DiscreteState| -> Vec<Unbounded> {
        let m = s.phase_indices();
        match mode {
            Equality::Strict => support.iter().map(|&k| m[k].clone()).collect(),
            // Amplitudes are fixed along an orbit, so a sign-folded global phase
            // differs from the raw one by a constant; offsets from the first
            // supported phase identify rays.
            Equality::Ray => {
                let base = &m[support[0]];
                support.iter().map(|&k| (&m[k] - base).mod_floor(&n)).collect()
            }
        }
    };
    let mut seen = HashSet::new();
    let mut current = state.clone();
    let mut i = Unbounded::zero();
    while i < period {
        seen.insert(key(&current));
        current = current.stepped();
        i += 1u32;
    }
    Ok(Unbounded::from(seen.len()))
}

/// One lattice point of a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    pub step: Unbounded,
    /// Phases `m_k / N` in turns, each in `[0, 1)`.
    pub turns: Vec<Rational>,
}

/// Ordered torus lattice points along an orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub points: Vec<TorusPoint>,
    pub modulus: Unbounded,
    /// When set, `turns[0]` is the phase of level 1 instead of the pinned ground level.
    pub ground_omitted: bool,
}

impl Trajectory {
    /// Number of phase coordinates per point.
    pub fn width(&self) -> usize {
        self.points.first().map_or(0, |p| p.turns.len())
    }
}

/// Torus points for steps `from .. from + count`.
///
/// Points are computed independently by random access, so the work may be
/// split across threads without affecting the output.
pub fn trajectory(
    state: &DiscreteState,
    from: &Unbounded,
    count: usize,
    omit_ground: bool,
) -> Result<Trajectory, EvolutionError> {
    if count == 0 {
        return Err(EvolutionError::EmptyRange);
    }
    let spec = state.spectrum();
    let n = spec.modulus().clone();
    let skip = usize::from(omit_ground);
    let points = (0..count)
        .into_par_iter()
        .map(|i| {
            let step = from + Unbounded::from(i);
            let turns = lattice_phases(spec, &step)
                .into_iter()
                .skip(skip)
                .map(|m| Rational::new(m, n.clone()))
                .collect();
            TorusPoint { step, turns }
        })
        .collect();
    Ok(Trajectory { points, modulus: n, ground_omitted: omit_ground })
}
