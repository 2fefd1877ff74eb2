//! Energy spectra and their reduction to lattice data.
//!
//! A commensurable spectrum `E_0 < E_1 < ... < E_{D-1}` is written as
//! `E_k = E_0 + eps * p_k` with integer `p_k`, `p_0 = 0` and the nonzero
//! `p_k` coprime as a set. The lattice modulus `N` is the lcm of the nonzero
//! `p_k`. Times are stored in turns (multiples of 2π), so the recurrence time
//! is the rational `1/eps` and one timestep is `1/(N eps)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numkernel::{self, NumError, Rational, Unbounded};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("spectrum is empty")]
    Empty,
    #[error("degenerate spectrum: eigenvalue {0} appears more than once")]
    DegenerateSpectrum(String),
    #[error("spectrum is not sorted: entry {index} is below its predecessor")]
    UnsortedSpectrum { index: usize },
    #[error("energy {index} is not a finite number")]
    NonFinite { index: usize },
    #[error("tolerance must be finite and > 0, and max_den >= 1")]
    InvalidTolerance,
}

impl From<NumError> for SpectrumError {
    fn from(e: NumError) -> Self {
        match e {
            NumError::InvalidTolerance => SpectrumError::InvalidTolerance,
            // Shifted energies are positive once validated; nothing else can surface.
            other => unreachable!("unexpected kernel error during reduction: {other}"),
        }
    }
}

/// A validated, strictly increasing list of energy eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnergySpectrum {
    energies: Vec<Rational>,
}

impl EnergySpectrum {
    pub fn new(energies: Vec<Rational>) -> Result<Self, SpectrumError> {
        if energies.is_empty() {
            return Err(SpectrumError::Empty);
        }
        let mut sorted = energies.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpectrumError::DegenerateSpectrum(w[0].to_string()));
        }
        if let Some(index) = (1..energies.len()).find(|&i| energies[i] < energies[i - 1]) {
            return Err(SpectrumError::UnsortedSpectrum { index });
        }
        Ok(Self { energies })
    }

    pub fn energies(&self) -> &[Rational] {
        &self.energies
    }

    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    /// Energies measured from the ground level; the first entry is exactly 0.
    pub fn shift(&self) -> Vec<Rational> {
        let ground = &self.energies[0];
        self.energies.iter().map(|e| e - ground).collect()
    }

    /// Every energy offset by `c`.
    pub fn translated(&self, c: &Rational) -> Self {
        Self { energies: self.energies.iter().map(|e| e + c).collect() }
    }

    /// Every energy multiplied by `s > 0`.
    pub fn scaled(&self, s: &Rational) -> Self {
        assert!(s.is_positive(), "scale factor must be positive");
        Self { energies: self.energies.iter().map(|e| e * s).collect() }
    }

    pub fn reduce(&self) -> ReducedSpectrum {
        ReducedSpectrum::from_spectrum(self)
    }
}

/// Discrete data of a commensurable spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedSpectrum {
    offset: Rational,
    unit_eps: Rational,
    p: Vec<Unbounded>,
    modulus: Unbounded,
    recur_turns: Rational,
    step_turns: Rational,
}

impl ReducedSpectrum {
    fn from_spectrum(spec: &EnergySpectrum) -> Self {
        let shifted = spec.shift();
        let offset = spec.energies[0].clone();
        if shifted.len() == 1 {
            // A one-level system is stationary; eps = 1 and N = 1 by convention.
            return Self {
                offset,
                unit_eps: Rational::one(),
                p: vec![Unbounded::zero()],
                modulus: Unbounded::one(),
                recur_turns: Rational::one(),
                step_turns: Rational::one(),
            };
        }
        let unit_eps = numkernel::rational_gcd(&shifted[1..])
            .expect("shifted energies of a validated spectrum are positive");
        let p: Vec<Unbounded> = shifted
            .iter()
            .map(|e| {
                let q = e / &unit_eps;
                debug_assert!(q.is_integer());
                q.to_integer()
            })
            .collect();
        let modulus = numkernel::lcm_many(&p[1..]).expect("nonzero p entries are positive");
        let recur_turns = unit_eps.recip();
        let step_turns = &recur_turns / Rational::from_integer(modulus.clone());
        Self { offset, unit_eps, p, modulus, recur_turns, step_turns }
    }

    /// Ground energy `E_0`.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Energy unit `eps`.
    pub fn unit_eps(&self) -> &Rational {
        &self.unit_eps
    }

    /// Integer levels `p_k`, with `p_0 = 0`.
    pub fn p(&self) -> &[Unbounded] {
        &self.p
    }

    /// Lattice modulus `N`.
    pub fn modulus(&self) -> &Unbounded {
        &self.modulus
    }

    /// Recurrence time in turns, `1/eps`.
    pub fn recur_turns(&self) -> &Rational {
        &self.recur_turns
    }

    /// Fundamental timestep in turns, `1/(N eps)`.
    pub fn step_turns(&self) -> &Rational {
        &self.step_turns
    }

    pub fn dimension(&self) -> usize {
        self.p.len()
    }

    /// `E_0 + eps * p_k`.
    pub fn energy(&self, k: usize) -> Rational {
        &self.offset + &self.unit_eps * Rational::from_integer(self.p[k].clone())
    }

    /// The spectrum this reduction came from.
    pub fn energies(&self) -> Vec<Rational> {
        (0..self.dimension()).map(|k| self.energy(k)).collect()
    }

    /// Checks every structural invariant; used by tests and after deserialization.
    pub fn check_invariants(&self) -> bool {
        let nonzero = &self.p[1..];
        let starts_at_zero = self.p.first().is_some_and(Zero::is_zero);
        let increasing = self.p.windows(2).all(|w| w[0] < w[1]);
        let coprime = nonzero.is_empty()
            || nonzero.iter().fold(Unbounded::zero(), |g, x| g.gcd(x)).is_one();
        let lcm_ok = match numkernel::lcm_many(nonzero) {
            Ok(l) => l == self.modulus,
            Err(_) => self.modulus.is_one(),
        };
        let divides = nonzero.iter().all(|x| self.modulus.is_multiple_of(x));
        let steps = &self.step_turns * Rational::from_integer(self.modulus.clone()) == self.recur_turns;
        starts_at_zero && increasing && coprime && lcm_ok && divides && steps && self.unit_eps.is_positive()
    }
}

/// Outcome of reducing a spectrum given in floating point.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Commensurability {
    Commensurable(ReducedSpectrum),
    /// The shifted energy at `index` has no rational within tolerance.
    Incommensurable { index: usize, shifted: f64 },
}

/// Rationalize each ground-shifted value, then reduce.
pub fn reduce_floats(
    values: &[f64],
    tol: f64,
    max_den: &Unbounded,
) -> Result<Commensurability, SpectrumError> {
    if !(tol.is_finite() && tol > 0.0) || max_den < &Unbounded::one() {
        return Err(SpectrumError::InvalidTolerance);
    }
    let first = *values.first().ok_or(SpectrumError::Empty)?;
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(SpectrumError::NonFinite { index });
    }
    for i in 1..values.len() {
        if values[i] == values[i - 1] {
            return Err(SpectrumError::DegenerateSpectrum(values[i].to_string()));
        }
        if values[i] < values[i - 1] {
            return Err(SpectrumError::UnsortedSpectrum { index: i });
        }
    }
    let mut shifted = Vec::with_capacity(values.len());
    for (index, v) in values.iter().enumerate() {
        let s = v - first;
        match numkernel::rationalize(s, tol, max_den)? {
            Some(r) => shifted.push(r),
            None => return Ok(Commensurability::Incommensurable { index, shifted: s }),
        }
    }
    // Distinct floats can round to the same rational, which makes the result degenerate.
    let spectrum = EnergySpectrum::new(shifted)?;
    // The offset only sets a global phase; fall back to the nearest bounded fraction.
    let offset = match numkernel::rationalize(first, tol, max_den)? {
        Some(c) => c,
        None => numkernel::best_approximation(&Rational::from_float(first).unwrap(), max_den),
    };
    let spectrum = spectrum.translated(&offset);
    Ok(Commensurability::Commensurable(spectrum.reduce()))
}
