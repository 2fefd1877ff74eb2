use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use phasetorus::continuum::max_lattice_deviation;
use phasetorus::export::{trajectory_csv, trajectory_svg};
use phasetorus::io::{parse_spectrum, parse_state, write_spectrum, SpectrumInput};
use phasetorus::numkernel::to_decimal;
use phasetorus::study;
use phasetorus::{
    distinct_states, minimal_period, reduce_floats, trajectory, verify_recurrence, Commensurability,
    DiscreteState, Equality, EvolutionError, IntegerAmplitudes, ReducedSpectrum,
};

use crate::{Cli, Command, Format, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Incommensurable,
    CapExceeded,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Incommensurable => 2,
            Outcome::CapExceeded => 3,
        }
    }
}

enum Loaded {
    Spectrum(Arc<ReducedSpectrum>),
    Incommensurable(String),
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = &cli.config;
    validate(cfg)?;
    let mut out = String::new();
    let outcome = match &cli.command {
        Command::Randspec { dim, bound } => randspec(cfg, *dim, *bound, &mut out)?,
        Command::Stats { dims, bound, trials } => stats(cfg, dims, *bound, *trials, &mut out)?,
        command => match load_spectrum(cfg)? {
            Loaded::Incommensurable(report) => {
                out.push_str(&report);
                Outcome::Incommensurable
            }
            Loaded::Spectrum(spec) => match command {
                Command::Reduce => reduce(&spec, &mut out),
                Command::Evolve { steps } => evolve(&load_state(cfg, &spec)?, steps, &mut out),
                Command::Period => period(cfg, &load_state(cfg, &spec)?, &mut out),
                Command::Born { analysis } => born(cfg, &spec, analysis.as_deref(), &mut out)?,
                Command::Fidelity => fidelity(cfg, &load_state(cfg, &spec)?, &mut out)?,
                Command::Torus => torus(cfg, &load_state(cfg, &spec)?, &mut out)?,
                Command::Randspec { .. } | Command::Stats { .. } => unreachable!(),
            },
        },
    };
    match &cfg.out {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(outcome)
}

fn validate(cfg: &RunConfig) -> Result<()> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        bail!("--tol must be a positive finite number");
    }
    if cfg.precision < 53 {
        bail!("--precision must be at least 53 bits");
    }
    if cfg.cap < BigInt::one() {
        bail!("--cap must be at least 1");
    }
    if cfg.max_den < BigInt::one() {
        bail!("--max-den must be at least 1");
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_spectrum(cfg: &RunConfig) -> Result<Loaded> {
    let path = cfg.spectrum.as_deref().context("--spectrum PATH is required")?;
    let parsed = parse_spectrum(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let reduced = match parsed {
        SpectrumInput::Exact(spec) => spec.reduce(),
        SpectrumInput::Floats(values) => match reduce_floats(&values, cfg.tol, &cfg.max_den)? {
            Commensurability::Commensurable(r) => r,
            Commensurability::Incommensurable { index, shifted } => {
                return Ok(Loaded::Incommensurable(format!(
                    "INCOMMENSURABLE\nshifted energy {index} = {shifted:e} has no rational within tol {:e} with denominator <= {}\n",
                    cfg.tol, cfg.max_den
                )));
            }
        },
    };
    Ok(Loaded::Spectrum(Arc::new(reduced)))
}

fn state_from(path: Option<&Path>, spec: &Arc<ReducedSpectrum>) -> Result<DiscreteState> {
    let (amps, step) = match path {
        Some(path) => {
            let input = parse_state(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            (IntegerAmplitudes::integerize(&input.amps)?, input.step)
        }
        // Without a state file: uniform superposition at step 0.
        None => (IntegerAmplitudes::new(vec![BigInt::one(); spec.dimension()])?, BigInt::zero()),
    };
    Ok(DiscreteState::new(amps, Arc::clone(spec), step)?)
}

fn load_state(cfg: &RunConfig, spec: &Arc<ReducedSpectrum>) -> Result<DiscreteState> {
    state_from(cfg.state.as_deref(), spec)
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn reduce(spec: &ReducedSpectrum, out: &mut String) -> Outcome {
    let _ = writeln!(out, "D = {}", spec.dimension());
    let _ = writeln!(out, "offset = {}", spec.offset());
    let _ = writeln!(out, "eps = {}", spec.unit_eps());
    let _ = writeln!(out, "p = {}", list(spec.p()));
    let _ = writeln!(out, "N = {}", spec.modulus());
    let _ = writeln!(out, "T_recur = {} turns", spec.recur_turns());
    let _ = writeln!(out, "delta_t = {} turns", spec.step_turns());
    Outcome::Success
}

fn phase_lines(state: &DiscreteState, out: &mut String) {
    let n = state.spectrum().modulus();
    for (k, (m, a)) in state.phase_indices().iter().zip(state.amplitudes().amps()).enumerate() {
        let born = state.born_eigen(k).expect("index in range");
        let _ = writeln!(out, "k = {k}: amp = {a}, phase = {m}/{n} turns, P = {born}");
    }
}

fn evolve(state: &DiscreteState, steps: &BigInt, out: &mut String) -> Outcome {
    let next = state.step_by(steps);
    let _ = writeln!(out, "step = {}", next.step());
    let _ = writeln!(out, "norm_sq = {}", next.amplitudes().norm_sq());
    phase_lines(&next, out);
    Outcome::Success
}

fn period(cfg: &RunConfig, state: &DiscreteState, out: &mut String) -> Outcome {
    let _ = writeln!(out, "N = {}", state.spectrum().modulus());
    let _ = writeln!(out, "minimal period = {}", minimal_period(state));
    let mut outcome = Outcome::Success;
    match verify_recurrence(state, &cfg.cap) {
        Ok(ok) => {
            let _ = writeln!(out, "recurrence = {}", if ok { "verified by scan" } else { "FAILED" });
        }
        Err(EvolutionError::CapExceeded { recurs, .. }) => {
            let _ = writeln!(out, "recurrence at period = {recurs}; minimality unverified by scan (cap {})", cfg.cap);
            outcome = Outcome::CapExceeded;
        }
        Err(e) => {
            let _ = writeln!(out, "recurrence error: {e}");
        }
    }
    for (label, mode) in [("strict", Equality::Strict), ("ray", Equality::Ray)] {
        match distinct_states(state, mode, &cfg.cap) {
            Ok(count) => {
                let _ = writeln!(out, "distinct states ({label}) = {count}");
            }
            Err(_) => {
                let _ = writeln!(out, "distinct states ({label}) = not enumerated (cap {})", cfg.cap);
                outcome = Outcome::CapExceeded;
            }
        }
    }
    outcome
}

fn describe_interval(p: &phasetorus::ProbabilityInterval) -> String {
    match p.exact_value() {
        Some(v) => format!("{v} (exact)"),
        None => {
            let radius = p.radius().to_f64().unwrap_or(f64::INFINITY);
            format!("{} ± {:.3e}", to_decimal(&p.midpoint(), 20), radius)
        }
    }
}

fn born(
    cfg: &RunConfig,
    spec: &Arc<ReducedSpectrum>,
    analysis: Option<&Path>,
    out: &mut String,
) -> Result<Outcome> {
    let state = load_state(cfg, spec)?;
    let _ = writeln!(out, "step = {}", state.step());
    match analysis {
        Some(path) => {
            let a = state_from(Some(path), spec)?;
            let p = state.born(&a, cfg.precision)?;
            let _ = writeln!(out, "P = {}", describe_interval(&p));
        }
        None => {
            for k in 0..state.dimension() {
                let _ = writeln!(out, "P({k}) = {}", state.born_eigen(k)?);
            }
        }
    }
    Ok(Outcome::Success)
}

fn default_count(state: &DiscreteState, cfg: &RunConfig) -> usize {
    cfg.count.unwrap_or_else(|| {
        let n = state.spectrum().modulus().min(&cfg.cap).clone();
        n.to_usize().unwrap_or(usize::MAX)
    })
}

fn fidelity(cfg: &RunConfig, state: &DiscreteState, out: &mut String) -> Result<Outcome> {
    let from = cfg.from.clone().unwrap_or_else(|| state.step().clone());
    let count = default_count(state, cfg);
    let sample: Vec<BigInt> = (0..count).map(|i| &from + BigInt::from(i)).collect();
    let dev = max_lattice_deviation(state.amplitudes(), state.spectrum(), &sample)?;
    let _ = writeln!(out, "steps = {from}..{}", &from + BigInt::from(count));
    let _ = writeln!(out, "max (1 - fidelity) = {dev:.3e} (double precision)");
    Ok(Outcome::Success)
}

fn torus(cfg: &RunConfig, state: &DiscreteState, out: &mut String) -> Result<Outcome> {
    let from = cfg.from.clone().unwrap_or_else(BigInt::zero);
    let count = default_count(state, cfg);
    let t = trajectory(state, &from, count, true)?;
    match cfg.format {
        Format::Svg => out.push_str(&trajectory_svg(state.spectrum(), &t)?),
        Format::Csv | Format::Text => out.push_str(&trajectory_csv(&t)),
    }
    Ok(Outcome::Success)
}

fn randspec(cfg: &RunConfig, dim: usize, bound: u64, out: &mut String) -> Result<Outcome> {
    if dim == 0 || (bound as usize) < dim - 1 {
        bail!("--dim must be >= 1 and --bound at least dim - 1");
    }
    let mut rng = study::rng(cfg.seed);
    let spec = study::random_spectrum(&mut rng, dim, bound);
    let comment = format!("random commensurable spectrum: dim {dim}, bound {bound}, seed {}", cfg.seed);
    out.push_str(&write_spectrum(spec.energies(), Some(&comment)));
    Ok(Outcome::Success)
}

fn stats(cfg: &RunConfig, dims: &[usize], bound: u64, trials: usize, out: &mut String) -> Result<Outcome> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    if let Some(&d) = dims.iter().find(|&&d| d == 0 || (bound as usize) < d - 1) {
        bail!("dimension {d} needs between 1 and bound + 1 levels");
    }
    let rows = study::n_growth(cfg.seed, dims, bound, trials);
    let _ = writeln!(out, "# log10 N over {trials} random spectra, p_k uniform on [1, {bound}], seed {}", cfg.seed);
    let _ = writeln!(out, "D,min,median,max");
    for r in rows {
        let _ = writeln!(out, "{},{:.6},{:.6},{:.6}", r.dimension, r.min, r.median, r.max);
    }
    Ok(Outcome::Success)
}
