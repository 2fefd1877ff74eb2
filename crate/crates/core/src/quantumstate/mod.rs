//! Integer-amplitude states on the phase lattice, exact inner products and
//! Born-rule probabilities.
//!
//! A [`DiscreteState`] at step `n` has component `k` equal to
//! `amps[k] * zeta^(m_k)` with `zeta = exp(-2 pi i / N)` and
//! `m_k = n * p_k mod N`. Inner products of two such states are sums of
//! integer multiples of powers of `zeta`, which [`GroupRingElement`] holds
//! exactly until [`embed`] turns them into numbers.

mod embed;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::numkernel::{Rational, Unbounded};
use crate::spectrum::ReducedSpectrum;

pub use embed::{embed, Ball, ComplexBall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("all amplitudes are zero")]
    AllZeroAmplitudes,
    #[error("state has {found} amplitudes but the spectrum has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("states are bound to different spectra")]
    SpectrumMismatch,
    #[error("sign flip between states cannot be a lattice phase for odd modulus N = {0}")]
    OddModulusSignFlip(Unbounded),
}

/// Integer amplitudes `L * alpha_k` with their exact squared norm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerAmplitudes {
    amps: Vec<Unbounded>,
    norm_sq: Unbounded,
}

impl IntegerAmplitudes {
    pub fn new(amps: Vec<Unbounded>) -> Result<Self, StateError> {
        if amps.iter().all(Zero::is_zero) {
            return Err(StateError::AllZeroAmplitudes);
        }
        let norm_sq = amps.iter().map(|a| a * a).sum();
        Ok(Self { amps, norm_sq })
    }

    /// Multiply rational amplitudes by the lcm of their denominators.
    pub fn integerize(alphas: &[Rational]) -> Result<Self, StateError> {
        let lcd = alphas.iter().fold(Unbounded::one(), |l, a| l.lcm(a.denom()));
        let amps = alphas
            .iter()
            .map(|a| (a * Rational::from_integer(lcd.clone())).to_integer())
            .collect();
        Self::new(amps)
    }

    pub fn amps(&self) -> &[Unbounded] {
        &self.amps
    }

    pub fn norm_sq(&self) -> &Unbounded {
        &self.norm_sq
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Indices with a nonzero amplitude.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.amps.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(k, _)| k)
    }
}

/// Sparse integer combination of `N`-th roots of unity, reduced only by `zeta^N = 1`.
///
/// Logically a coefficient vector of length `N`; only nonzero coefficients are
/// stored so that astronomically large moduli stay representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    coeffs: BTreeMap<Unbounded, Unbounded>,
    modulus: Unbounded,
}

impl GroupRingElement {
    pub fn zero(modulus: Unbounded) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        Self { coeffs: BTreeMap::new(), modulus }
    }

    pub fn from_dense(coeffs: &[Unbounded]) -> Self {
        let mut g = Self::zero(Unbounded::from(coeffs.len()));
        for (j, c) in coeffs.iter().enumerate() {
            g.add_term(&Unbounded::from(j), c);
        }
        g
    }

    /// Adds `c * zeta^j`, reducing `j` into `0..N`.
    pub fn add_term(&mut self, j: &Unbounded, c: &Unbounded) {
        if c.is_zero() {
            return;
        }
        let j = j.mod_floor(&self.modulus);
        let entry = self.coeffs.entry(j.clone()).or_insert_with(Unbounded::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn modulus(&self) -> &Unbounded {
        &self.modulus
    }

    /// Coefficient of `zeta^j`.
    pub fn coefficient(&self, j: &Unbounded) -> Unbounded {
        self.coeffs.get(&j.mod_floor(&self.modulus)).cloned().unwrap_or_else(Unbounded::zero)
    }

    /// Nonzero terms `(j, coeff)` in increasing `j`.
    pub fn terms(&self) -> impl Iterator<Item = (&Unbounded, &Unbounded)> {
        self.coeffs.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.len()
    }

    /// True when every coefficient is zero. This is sufficient, not necessary,
    /// for the represented algebraic number to vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dense coefficient vector, if `N` fits in memory as a `usize`.
    pub fn to_dense(&self) -> Option<Vec<Unbounded>> {
        let n: usize = (&self.modulus).try_into().ok()?;
        let mut out = vec![Unbounded::zero(); n];
        for (j, c) in &self.coeffs {
            let j: usize = j.try_into().ok()?;
            out[j] = c.clone();
        }
        Some(out)
    }
}

/// Closed interval of probabilities with exact rational endpoints inside `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ProbabilityInterval {
    fn exact(value: Rational) -> Self {
        Self { lo: value.clone(), hi: value }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn radius(&self) -> Rational {
        (&self.hi - &self.lo) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Integer amplitudes bound to a reduced spectrum at a given step.
///
/// The phase indices are stored alongside the step counter; stepping updates
/// them incrementally while random access recomputes them directly.
#[derive(Debug, Clone)]
pub struct DiscreteState {
    amplitudes: IntegerAmplitudes,
    spectrum: Arc<ReducedSpectrum>,
    step: Unbounded,
    phases: Vec<Unbounded>,
}

impl DiscreteState {
    pub fn new(
        amplitudes: IntegerAmplitudes,
        spectrum: Arc<ReducedSpectrum>,
        step: Unbounded,
    ) -> Result<Self, StateError> {
        if amplitudes.len() != spectrum.dimension() {
            return Err(StateError::DimensionMismatch {
                expected: spectrum.dimension(),
                found: amplitudes.len(),
            });
        }
        let phases = lattice_phases(&spectrum, &step);
        Ok(Self { amplitudes, spectrum, step, phases })
    }

    pub(crate) fn with_phases(&self, step: Unbounded, phases: Vec<Unbounded>) -> Self {
        Self {
            amplitudes: self.amplitudes.clone(),
            spectrum: Arc::clone(&self.spectrum),
            step,
            phases,
        }
    }

    pub fn amplitudes(&self) -> &IntegerAmplitudes {
        &self.amplitudes
    }

    pub fn spectrum(&self) -> &Arc<ReducedSpectrum> {
        &self.spectrum
    }

    pub fn step(&self) -> &Unbounded {
        &self.step
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    /// Phase indices `m_k = n p_k mod N`, each in `0..N`.
    pub fn phase_indices(&self) -> &[Unbounded] {
        &self.phases
    }

    fn check_same_spectrum(&self, other: &Self) -> Result<(), StateError> {
        if Arc::ptr_eq(&self.spectrum, &other.spectrum) || self.spectrum == other.spectrum {
            Ok(())
        } else {
            Err(StateError::SpectrumMismatch)
        }
    }

    /// Literal vector equality: same amplitudes and the same phase on every
    /// component with a nonzero amplitude.
    pub fn same_vector(&self, other: &Self) -> bool {
        self.amplitudes.amps == other.amplitudes.amps
            && self.spectrum.modulus() == other.spectrum.modulus()
            && self
                .amplitudes
                .support()
                .all(|k| self.phases[k] == other.phases[k])
    }

    /// Born probability of energy eigenstate `k`, `amps[k]^2 / norm_sq`.
    pub fn born_eigen(&self, k: usize) -> Result<Rational, StateError> {
        let a = self.amplitudes.amps.get(k).ok_or(StateError::IndexOutOfRange {
            index: k,
            dimension: self.dimension(),
        })?;
        Ok(Rational::new(a * a, self.amplitudes.norm_sq.clone()))
    }

    /// Exact `<analysis | self>` as a group-ring element: coefficient `j`
    /// collects `a_k * psi_k` over the `k` with `m_k(self) - m_k(analysis) = j`.
    pub fn gr_inner(&self, analysis: &DiscreteState) -> Result<GroupRingElement, StateError> {
        self.check_same_spectrum(analysis)?;
        let mut out = GroupRingElement::zero(self.spectrum.modulus().clone());
        let pairs = self.amplitudes.amps.iter().zip(&analysis.amplitudes.amps);
        for (k, (psi, a)) in pairs.enumerate() {
            if psi.is_zero() || a.is_zero() {
                continue;
            }
            out.add_term(&(&self.phases[k] - &analysis.phases[k]), &(a * psi));
        }
        Ok(out)
    }

    /// `|<analysis|self>|^2 / (norm_sq(self) * norm_sq(analysis))` as an interval.
    ///
    /// Exact when every inner-product term lies on a quarter turn of the
    /// lattice, which covers self-overlaps and moduli 1, 2 and 4.
    pub fn born(
        &self,
        analysis: &DiscreteState,
        precision: u32,
    ) -> Result<ProbabilityInterval, StateError> {
        let g = self.gr_inner(analysis)?;
        let norms = Rational::from_integer(&self.amplitudes.norm_sq * &analysis.amplitudes.norm_sq);
        if let Some((re, im)) = embed::exact_gaussian(&g) {
            return Ok(ProbabilityInterval::exact(
                Rational::from_integer(&re * &re + &im * &im) / norms,
            ));
        }
        let z = embed(&g, precision);
        let (re_lo, re_hi) = square_range(&z.re.lo(), &z.re.hi());
        let (im_lo, im_hi) = square_range(&z.im.lo(), &z.im.hi());
        let one = Rational::one();
        let lo = ((re_lo + im_lo) / &norms).clamp(Rational::zero(), one.clone());
        let hi = ((re_hi + im_hi) / &norms).clamp(Rational::zero(), one);
        Ok(ProbabilityInterval { lo, hi })
    }

    /// Born probabilities against many analysis states, evaluated in parallel.
    pub fn born_batch(
        &self,
        analyses: &[DiscreteState],
        precision: u32,
    ) -> Vec<Result<ProbabilityInterval, StateError>> {
        analyses.par_iter().map(|a| self.born(a, precision)).collect()
    }

    /// Equality as rays: some global lattice phase `zeta^j` and positive scale
    /// `c` map `self` onto `other`. A negative amplitude counts as the phase
    /// `N/2`, which exists only for even `N`.
    pub fn ray_equal(&self, other: &DiscreteState) -> Result<bool, StateError> {
        self.check_same_spectrum(other)?;
        let n = self.spectrum.modulus();
        let a = &self.amplitudes.amps;
        let b = &other.amplitudes.amps;
        if a.iter().zip(b).any(|(x, y)| x.is_zero() != y.is_zero()) {
            return Ok(false);
        }
        let support: Vec<usize> = self.amplitudes.support().collect();
        if !n.is_even() && support.iter().any(|&k| a[k].is_negative() != b[k].is_negative()) {
            return Err(StateError::OddModulusSignFlip(n.clone()));
        }
        let k0 = support[0];
        let (a0, b0) = (a[k0].abs(), b[k0].abs());
        if support.iter().any(|&k| b[k].abs() * &a0 != a[k].abs() * &b0) {
            return Ok(false);
        }
        let half = n / 2u32;
        let effective = |amp: &Unbounded, phase: &Unbounded| {
            if amp.is_negative() {
                (phase + &half).mod_floor(n)
            } else {
                phase.clone()
            }
        };
        let shift = |k: usize| {
            (effective(&b[k], &other.phases[k]) - effective(&a[k], &self.phases[k])).mod_floor(n)
        };
        let j = shift(k0);
        Ok(support.iter().all(|&k| shift(k) == j))
    }
}

/// `n * p_k mod N` for every level.
pub(crate) fn lattice_phases(spectrum: &ReducedSpectrum, step: &Unbounded) -> Vec<Unbounded> {
    let n = spectrum.modulus();
    spectrum.p().iter().map(|p| (step * p).mod_floor(n)).collect()
}

fn square_range(lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let (l2, h2) = (lo * lo, hi * hi);
    let max = if l2 > h2 { l2.clone() } else { h2.clone() };
    if !lo.is_positive() && !hi.is_negative() {
        (Rational::zero(), max)
    } else {
        (if l2 < h2 { l2 } else { h2 }, max)
    }
}
