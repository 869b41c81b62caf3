//! Sweeps over register size: peak-probability statistics, transition
//! location, comparison against the closed forms, and CSV output.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::error_models::{
    derive_stream_index, sample_phase_mismatch, ErrorModel, RngStream,
};
use crate::reduced::{
    initial_state_2d, p_max_asymptotic, p_max_small_angle, step_operator_2d, PhaseAngles,
    ReducedParams,
};
use crate::statevector::{self, HadamardGateSpec, StateVector};
use crate::trajectory::clamp_probability;

/// Which simulator evaluates each sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Exact dynamics on the invariant plane; any register size.
    Reduced,
    /// Dense 2^n-amplitude simulation; capped at
    /// [`statevector::MAX_QUBITS`] qubits. Exists to cross-check the
    /// plane model, not to be fast.
    Full,
}

/// One sweep: an error model evaluated over a set of register sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Error family and parameters.
    pub model: ErrorModel,
    /// Qubit counts to visit, strictly increasing.
    pub n_values: Vec<u32>,
    /// Independent noise realizations per register size.
    pub samples_per_n: u32,
    /// Global seed; sample `k` at size `n` runs on the substream
    /// `derive_stream_index(n, k)` of this seed.
    pub seed: u64,
    /// Simulator backend.
    pub engine: Engine,
    /// The iteration window is this many half-periods of the relevant
    /// oscillation (see [`SweepConfig::iteration_cap`]).
    pub j_cap_multiplier: u32,
    /// Marked basis state; `None` means all-ones at each size. Only
    /// observable through engines and models that see more than the
    /// plane geometry (the full engine, and the mixing-error overlap).
    pub marked: Option<u64>,
}

impl SweepConfig {
    /// A sweep with the conventional defaults: the model's own sampling
    /// budget, seed 42, the plane engine, a three-half-period window,
    /// and the all-ones marked state.
    pub fn new(model: ErrorModel, n_values: Vec<u32>) -> Self {
        Self {
            model,
            samples_per_n: model.default_samples(),
            n_values,
            seed: 42,
            engine: Engine::Reduced,
            j_cap_multiplier: 3,
            marked: None,
        }
    }

    /// Check the whole configuration before any work starts.
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.n_values.is_empty() {
            return Err(Error::InvalidSweep("no register sizes listed".into()));
        }
        if !self.n_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSweep(
                "register sizes must be strictly increasing".into(),
            ));
        }
        if self.samples_per_n == 0 {
            return Err(Error::InvalidSweep("samples_per_n must be at least 1".into()));
        }
        if self.j_cap_multiplier == 0 {
            return Err(Error::InvalidSweep(
                "j_cap_multiplier must be at least 1".into(),
            ));
        }
        for &n in &self.n_values {
            ReducedParams::new(n)?;
            if self.engine == Engine::Full && n > statevector::MAX_QUBITS {
                return Err(Error::EngineBudget {
                    n,
                    max: statevector::MAX_QUBITS,
                });
            }
            if matches!(self.model, ErrorModel::HadamardLeakage { .. }) && n < 2 {
                return Err(Error::InvalidSweep(
                    "leakage model needs at least 4 database entries (n >= 2)".into(),
                ));
            }
            if let Some(marked) = self.marked {
                if marked >> n != 0 {
                    return Err(Error::InvalidSweep(format!(
                        "marked state {marked} does not fit in {n} qubits"
                    )));
                }
            }
        }
        if matches!(self.model, ErrorModel::HadamardLeakage { .. }) && self.engine == Engine::Full
        {
            return Err(Error::InvalidSweep(
                "leakage model has no full-register engine".into(),
            ));
        }
        Ok(())
    }

    /// Iteration window for one register size:
    /// `multiplier * ceil(pi sqrt(N) / 4)`, additionally capped at
    /// `multiplier * ceil(pi / (2 lambda))` for models with a constant
    /// mismatch, whose dynamics repeat with period `pi / lambda`.
    pub fn iteration_cap(&self, n: u32) -> Result<u64> {
        let params = ReducedParams::new(n)?;
        let mult = self.j_cap_multiplier as u64;
        let base = mult * (PI / 4.0 * params.dim().sqrt()).ceil() as u64;
        Ok(match self.model.constant_mismatch() {
            Some(delta) => base.min(mult * (PI / (2.0 * params.lambda(delta))).ceil() as u64),
            None => base,
        })
    }

    fn marked_for(&self, n: u32) -> u64 {
        self.marked.unwrap_or((1u64 << n) - 1)
    }
}

/// Peak-probability statistics at one register size, over
/// `samples_per_n` noise realizations. The spread is the population
/// standard deviation, so a single sample reports exactly 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub n: u32,
    pub dim: u64,
    pub mean_pmax: f64,
    pub std_pmax: f64,
    pub min_pmax: f64,
    pub max_pmax: f64,
    /// Mean over samples of the iteration count at which each
    /// realization peaked (earliest index on ties).
    pub mean_j_opt: f64,
}

/// A completed sweep: the configuration it ran under plus one point per
/// register size, in the configured order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
}

/// Run a sweep. Samples are distributed across threads but folded in
/// sample order, so results (and their CSV bytes) are identical for any
/// thread count. Families with a provably constant mismatch step a
/// precomputed operator; the others draw one mismatch per iteration
/// from the sample's own random substream.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let points = config
        .n_values
        .iter()
        .map(|&n| sweep_point(config, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        config: config.clone(),
        points,
    })
}

fn sweep_point(config: &SweepConfig, n: u32) -> Result<SweepPoint> {
    let j_cap = config.iteration_cap(n)?;
    let samples = (0..config.samples_per_n)
        .into_par_iter()
        .map(|k| run_single(config, n, k, j_cap))
        .collect::<Result<Vec<(f64, u64)>>>()?;
    let count = samples.len() as f64;
    let mean_pmax = samples.iter().map(|(p, _)| p).sum::<f64>() / count;
    let var = samples
        .iter()
        .map(|(p, _)| (p - mean_pmax) * (p - mean_pmax))
        .sum::<f64>()
        / count;
    let min_pmax = samples.iter().map(|(p, _)| *p).fold(f64::INFINITY, f64::min);
    let max_pmax = samples
        .iter()
        .map(|(p, _)| *p)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean_j_opt = samples.iter().map(|(_, j)| *j as f64).sum::<f64>() / count;
    Ok(SweepPoint {
        n,
        dim: 1u64 << n,
        mean_pmax,
        std_pmax: var.sqrt(),
        min_pmax,
        max_pmax,
        mean_j_opt,
    })
}

/// Peak probability and its iteration index for one noise realization.
fn run_single(config: &SweepConfig, n: u32, sample: u32, j_cap: u64) -> Result<(f64, u64)> {
    match config.model {
        ErrorModel::Em1 { .. } | ErrorModel::Em2 { .. } | ErrorModel::Em3 { .. } => {
            match config.engine {
                Engine::Reduced => phase_reduced(config, n, sample, j_cap),
                Engine::Full => phase_full(config, n, sample, j_cap),
            }
        }
        ErrorModel::HadamardSystematic { epsilon } => match config.engine {
            Engine::Reduced => systematic_reduced(config, n, epsilon, j_cap),
            Engine::Full => systematic_full(config, n, epsilon, j_cap),
        },
        ErrorModel::HadamardLeakage { delta1 } => leakage_reduced(n, delta1, j_cap),
    }
}

#[inline]
fn track(best: &mut (f64, u64), p: f64, j: u64) {
    // Strict improvement keeps the earliest peak, matching find_peak.
    if p > best.0 {
        *best = (p, j);
    }
}

fn phase_reduced(config: &SweepConfig, n: u32, sample: u32, j_cap: u64) -> Result<(f64, u64)> {
    let params = ReducedParams::new(n)?;
    let mut v = initial_state_2d(&params);
    let mut best = (clamp_probability(v[1].norm_sqr())?, 0u64);
    if let Some(delta) = config.model.constant_mismatch() {
        let op = step_operator_2d(&PhaseAngles::for_mismatch(delta)?, &params);
        for j in 1..=j_cap {
            v = op.apply(v);
            track(&mut best, clamp_probability(v[1].norm_sqr())?, j);
        }
    } else {
        let mut rng = RngStream::new(config.seed, derive_stream_index(n, sample));
        for j in 1..=j_cap {
            let delta = sample_phase_mismatch(&config.model, &mut rng)?;
            let op = step_operator_2d(&PhaseAngles::for_mismatch(delta)?, &params);
            v = op.apply(v);
            track(&mut best, clamp_probability(v[1].norm_sqr())?, j);
        }
    }
    Ok(best)
}

fn phase_full(config: &SweepConfig, n: u32, sample: u32, j_cap: u64) -> Result<(f64, u64)> {
    let spec = HadamardGateSpec::ideal(n)?;
    let marked = config.marked_for(n);
    let mut state = StateVector::basis_state(n, 0)?;
    state.apply_walsh_hadamard(&spec)?;
    let mut best = (state.success_probability(marked)?, 0u64);
    if let Some(delta) = config.model.constant_mismatch() {
        let angles = PhaseAngles::for_mismatch(delta)?;
        for j in 1..=j_cap {
            state.grover_iteration(marked, &angles, &spec)?;
            track(&mut best, state.success_probability(marked)?, j);
        }
    } else {
        let mut rng = RngStream::new(config.seed, derive_stream_index(n, sample));
        for j in 1..=j_cap {
            let delta = sample_phase_mismatch(&config.model, &mut rng)?;
            let angles = PhaseAngles::for_mismatch(delta)?;
            state.grover_iteration(marked, &angles, &spec)?;
            track(&mut best, state.success_probability(marked)?, j);
        }
    }
    Ok(best)
}

/// Prepared/marked overlap under a uniform mixing-angle offset:
/// `sin(pi/4+eps)` per set bit of the marked state, `cos` per clear bit.
/// Matches [`HadamardGateSpec::overlap`] without the register-width cap.
fn uniform_offset_overlap(n: u32, epsilon: f64, marked: u64) -> f64 {
    let angle = std::f64::consts::FRAC_PI_4 + epsilon;
    let ones = marked.count_ones() as i32;
    angle.sin().powi(ones) * angle.cos().powi(n as i32 - ones)
}

fn systematic_reduced(
    config: &SweepConfig,
    n: u32,
    epsilon: f64,
    j_cap: u64,
) -> Result<(f64, u64)> {
    let u = uniform_offset_overlap(n, epsilon, config.marked_for(n));
    let params = ReducedParams::with_overlap(n, u)?;
    let op = step_operator_2d(&PhaseAngles::ideal(), &params);
    let mut v = initial_state_2d(&params);
    let mut best = (clamp_probability(v[1].norm_sqr())?, 0u64);
    for j in 1..=j_cap {
        v = op.apply(v);
        track(&mut best, clamp_probability(v[1].norm_sqr())?, j);
    }
    Ok(best)
}

fn systematic_full(
    config: &SweepConfig,
    n: u32,
    epsilon: f64,
    j_cap: u64,
) -> Result<(f64, u64)> {
    let spec = HadamardGateSpec::uniform(n, epsilon)?;
    let marked = config.marked_for(n);
    let angles = PhaseAngles::ideal();
    let mut state = StateVector::basis_state(n, 0)?;
    state.apply_walsh_hadamard(&spec)?;
    let mut best = (state.success_probability(marked)?, 0u64);
    for j in 1..=j_cap {
        state.grover_iteration(marked, &angles, &spec)?;
        track(&mut best, state.success_probability(marked)?, j);
    }
    Ok(best)
}

fn leakage_reduced(n: u32, delta1: f64, j_cap: u64) -> Result<(f64, u64)> {
    // Same recurrence as simulate_leakage_trajectory, without storing
    // the trajectory; the two stay bit-identical.
    let n_dim = (1u64 << n) as f64;
    let beta = (2.0 / n_dim.sqrt()).asin();
    if !beta.is_finite() {
        return Err(Error::OutOfRange {
            name: "n_dim",
            value: n_dim,
            range: "large enough for the leakage forms",
        });
    }
    let (s, c) = beta.sin_cos();
    let keep = 1.0 - delta1;
    let (mut v0, mut v1) = (1.0f64, 0.0f64);
    let mut best = (0.0f64, 0u64);
    for j in 1..=j_cap {
        let w0 = c * v0 + s * keep * v1;
        let w1 = -s * v0 + c * keep * v1;
        v0 = w0;
        v1 = w1;
        track(&mut best, clamp_probability(v1 * v1)?, j);
    }
    Ok(best)
}

/// Smallest listed register size whose mean peak probability drops
/// below `threshold`, if any: where the sweep stops beating that odds
/// level.
pub fn transition_point(result: &SweepResult, threshold: f64) -> Option<u32> {
    result
        .points
        .iter()
        .find(|pt| pt.mean_pmax < threshold)
        .map(|pt| pt.n)
}

/// One sweep point next to the two closed-form predictions for a
/// constant mismatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticComparisonRow {
    pub n: u32,
    pub dim: u64,
    pub simulated_pmax: f64,
    /// `beta_prime^2 / (beta_prime^2 + delta^2)`.
    pub small_angle: f64,
    /// `4/(N delta^2)` clamped into [0, 1]; absent at zero mismatch,
    /// where the tail form has no meaning.
    pub asymptotic: Option<f64>,
}

/// Line a sweep up against the closed-form peak predictions. Defined
/// only for models with a constant mismatch (EM1, or EM2/EM3 with zero
/// spread); the formulas say nothing about per-iteration noise.
pub fn compare_analytic(result: &SweepResult) -> Result<Vec<AnalyticComparisonRow>> {
    let delta = result
        .config
        .model
        .constant_mismatch()
        .ok_or(Error::AnalyticComparisonModel {
            model: result.config.model.name(),
        })?;
    result
        .points
        .iter()
        .map(|pt| {
            let n_dim = pt.dim as f64;
            let asymptotic = if delta == 0.0 {
                None
            } else {
                Some(p_max_asymptotic(delta, n_dim)?)
            };
            Ok(AnalyticComparisonRow {
                n: pt.n,
                dim: pt.dim,
                simulated_pmax: pt.mean_pmax,
                small_angle: p_max_small_angle(delta, n_dim),
                asymptotic,
            })
        })
        .collect()
}

/// Render a float with 12 significant digits, then print the shortest
/// decimal that round-trips to the rounded value, so `0.25` stays
/// `0.25` rather than `0.250000000000`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float reparses");
    format!("{rounded}")
}

/// CSV header matching [`emit_csv`] rows.
pub const CSV_HEADER: &str =
    "n,N,model,param1,param2,samples,mean_pmax,std_pmax,min_pmax,max_pmax,mean_j_opt,seed";

/// Serialize a sweep as CSV: the fixed header, one row per register
/// size, LF line endings, floats via [`format_float`]. Identical
/// configurations produce byte-identical output.
pub fn emit_csv<W: Write>(result: &SweepResult, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let (p1, p2) = result.config.model.params();
    for pt in &result.points {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            pt.n,
            pt.dim,
            result.config.model.name(),
            format_float(p1),
            format_float(p2),
            result.config.samples_per_n,
            format_float(pt.mean_pmax),
            format_float(pt.std_pmax),
            format_float(pt.min_pmax),
            format_float(pt.max_pmax),
            format_float(pt.mean_j_opt),
            result.config.seed,
        )?;
    }
    out.flush()
}

/// Write [`emit_csv`] output to a file.
pub fn write_csv_file(result: &SweepResult, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    emit_csv(result, &mut buf).expect("writing to memory cannot fail");
    std::fs::write(path, buf).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
