//! Stochastic and systematic gate-error families, and the deterministic
//! random source that drives them.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix2;
use crate::reduced::PhaseAngles;
use crate::trajectory::{clamp_probability, Trajectory};
use num_complex::Complex64;

/// One family of gate imperfections, with its parameters.
///
/// The first three perturb the inversion phases (the mixing transform
/// stays exact); the last two perturb the mixing transform itself (the
/// phases stay at pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorModel {
    /// The same phase mismatch `delta0` every iteration.
    Em1 { delta0: f64 },
    /// A fresh zero-mean Gaussian mismatch with standard deviation `s`
    /// each iteration.
    Em2 { s: f64 },
    /// A fresh Gaussian mismatch with mean `delta0` and standard
    /// deviation `s` each iteration.
    Em3 { delta0: f64, s: f64 },
    /// Every mixing gate offset from the Hadamard angle by the same
    /// constant `epsilon`.
    HadamardSystematic { epsilon: f64 },
    /// Per-iteration leakage of a `delta1` fraction of amplitude out of
    /// the search plane, the caricature of incoherent mixing errors.
    HadamardLeakage { delta1: f64 },
}

impl ErrorModel {
    /// Check the parameters against each family's domain.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(Error::NonFinite { name, value })
            }
        };
        match *self {
            ErrorModel::Em1 { delta0 } => finite("delta0", delta0),
            ErrorModel::Em2 { s } => {
                finite("s", s)?;
                if s < 0.0 {
                    return Err(Error::OutOfRange {
                        name: "s",
                        value: s,
                        range: "[0, inf)",
                    });
                }
                Ok(())
            }
            ErrorModel::Em3 { delta0, s } => {
                finite("delta0", delta0)?;
                finite("s", s)?;
                if s < 0.0 {
                    return Err(Error::OutOfRange {
                        name: "s",
                        value: s,
                        range: "[0, inf)",
                    });
                }
                Ok(())
            }
            ErrorModel::HadamardSystematic { epsilon } => {
                finite("epsilon", epsilon)?;
                if epsilon.abs() >= FRAC_PI_4 {
                    return Err(Error::OutOfRange {
                        name: "epsilon",
                        value: epsilon,
                        range: "(-pi/4, pi/4)",
                    });
                }
                Ok(())
            }
            ErrorModel::HadamardLeakage { delta1 } => {
                finite("delta1", delta1)?;
                if !(0.0..1.0).contains(&delta1) {
                    return Err(Error::OutOfRange {
                        name: "delta1",
                        value: delta1,
                        range: "[0, 1)",
                    });
                }
                Ok(())
            }
        }
    }

    /// Short tag used in CSV output and messages.
    pub fn name(&self) -> &'static str {
        match self {
            ErrorModel::Em1 { .. } => "EM1",
            ErrorModel::Em2 { .. } => "EM2",
            ErrorModel::Em3 { .. } => "EM3",
            ErrorModel::HadamardSystematic { .. } => "HSYS",
            ErrorModel::HadamardLeakage { .. } => "HLEAK",
        }
    }

    /// The two CSV parameter columns: `(param1, param2)` with unused
    /// slots as 0. EM1 is `(delta0, 0)`, EM2 `(0, s)`, EM3 `(delta0,
    /// s)`, HSYS `(epsilon, 0)`, HLEAK `(delta1, 0)`.
    pub fn params(&self) -> (f64, f64) {
        match *self {
            ErrorModel::Em1 { delta0 } => (delta0, 0.0),
            ErrorModel::Em2 { s } => (0.0, s),
            ErrorModel::Em3 { delta0, s } => (delta0, s),
            ErrorModel::HadamardSystematic { epsilon } => (epsilon, 0.0),
            ErrorModel::HadamardLeakage { delta1 } => (delta1, 0.0),
        }
    }

    /// True for the families that perturb the inversion phases rather
    /// than the mixing transform.
    pub fn is_phase_mismatch(&self) -> bool {
        matches!(
            self,
            ErrorModel::Em1 { .. } | ErrorModel::Em2 { .. } | ErrorModel::Em3 { .. }
        )
    }

    /// The mismatch value when every iteration provably sees the same
    /// one: EM1 always, EM2 and EM3 when their spread is zero. Constant
    /// mismatch makes the dynamics periodic, which lets sweeps cap the
    /// iteration window at a few precession periods and makes the
    /// analytic peak formulas applicable.
    pub fn constant_mismatch(&self) -> Option<f64> {
        match *self {
            ErrorModel::Em1 { delta0 } => Some(delta0),
            ErrorModel::Em2 { s } if s == 0.0 => Some(0.0),
            ErrorModel::Em3 { delta0, s } if s == 0.0 => Some(delta0),
            _ => None,
        }
    }

    /// Sampling budget a sweep uses when the caller does not override
    /// it: 1 for deterministic families, 200 for the stochastic ones.
    pub fn default_samples(&self) -> u32 {
        match self.constant_mismatch() {
            Some(_) => 1,
            None if self.is_phase_mismatch() => 200,
            None => 1,
        }
    }
}

/// Deterministic, splittable random source.
///
/// Every `(seed, stream_index)` pair names an independent substream of a
/// counter-mode generator (ChaCha with 8 rounds), so sample `k` of sweep
/// point `n` sees the same bits no matter how work is scheduled across
/// threads or runs. Gaussians come from the Box-Muller transform, cosine
/// branch: two 64-bit draws `a, b` map to
/// `sqrt(-2 ln u1) cos(2 pi u2)` with `u1 = ((a >> 11) + 1) * 2^-53`
/// in (0, 1] and `u2 = (b >> 11) * 2^-53` in [0, 1).
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Open substream `stream_index` of the generator seeded with
    /// `seed`.
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        Self {
            seed,
            stream_index,
            rng,
        }
    }

    /// The seed this stream was opened with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The substream identifier this stream was opened with.
    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Next raw 64-bit draw.
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        let scale = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * scale
    }

    /// Standard normal draw; always consumes exactly two 64-bit draws.
    pub fn standard_normal(&mut self) -> f64 {
        let scale = 1.0 / (1u64 << 53) as f64;
        let u1 = ((self.next_u64() >> 11) as f64 + 1.0) * scale;
        let u2 = (self.next_u64() >> 11) as f64 * scale;
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }
}

/// Mix a sweep coordinate `(n, sample)` into a stream identifier with a
/// 64-bit finalizer (the SplitMix64 output function), so neighboring
/// coordinates land on unrelated substreams.
pub fn derive_stream_index(n: u32, sample: u32) -> u64 {
    splitmix64(((n as u64) << 32) | sample as u64)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draw one iteration's phase mismatch from a phase-mismatch model.
/// EM1 consumes no randomness; EM2 and EM3 always consume one Gaussian
/// (two 64-bit draws), even when their spread is zero, so a model's
/// draw pattern does not depend on its parameter values.
pub fn sample_phase_mismatch(model: &ErrorModel, rng: &mut RngStream) -> Result<f64> {
    match *model {
        ErrorModel::Em1 { delta0 } => Ok(delta0),
        ErrorModel::Em2 { s } => Ok(s * rng.standard_normal()),
        ErrorModel::Em3 { delta0, s } => Ok(delta0 + s * rng.standard_normal()),
        ref other => Err(Error::WrongModelFamily {
            op: "sample_phase_mismatch",
            model: other.name(),
        }),
    }
}

/// Split a phase mismatch symmetrically across the two inversions:
/// `(pi + delta/2, pi - delta/2)`, so the literal difference
/// `theta - phi` equals `delta`.
///
/// Note this realizes half the dephasing rate of
/// [`PhaseAngles::for_mismatch`] for the same input: sweeps and the
/// closed-form comparisons use `for_mismatch`, which makes the
/// dephasing rate itself equal `delta`.
pub fn split_mismatch_into_angles(delta: f64) -> Result<PhaseAngles> {
    PhaseAngles::new(PI + 0.5 * delta, PI - 0.5 * delta)
}

/// One iteration of the leaky search caricature: an in-plane rotation by
/// `beta` followed by contraction of the marked-axis column to
/// `1 - delta1`:
///
/// ```text
/// [  cos(beta)   sin(beta) (1 - delta1) ]
/// [ -sin(beta)   cos(beta) (1 - delta1) ]
/// ```
///
/// The column norms are exactly `{1, 1 - delta1}`.
pub fn build_leakage_operator(beta: f64, delta1: f64) -> ComplexMatrix2 {
    let (s, c) = beta.sin_cos();
    let keep = 1.0 - delta1;
    ComplexMatrix2::new(
        Complex64::new(c, 0.0),
        Complex64::new(s * keep, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(c * keep, 0.0),
    )
}

/// First-order marked-amplitude magnitude after `j` leaky iterations:
/// `|(1 - (j-1) delta1 / 2) sin(j beta)|`. Accurate while the loss term
/// stays small; the exact iteration in
/// [`simulate_leakage_trajectory`] is the reference.
pub fn leakage_amplitude_first_order(j: u64, beta: f64, delta1: f64) -> f64 {
    ((1.0 - (j as f64 - 1.0) * delta1 / 2.0) * (j as f64 * beta).sin()).abs()
}

fn validate_leakage(n_dim: f64, delta1: f64, min_dim: f64) -> Result<()> {
    if !n_dim.is_finite() {
        return Err(Error::NonFinite {
            name: "n_dim",
            value: n_dim,
        });
    }
    if n_dim < min_dim {
        return Err(Error::OutOfRange {
            name: "n_dim",
            value: n_dim,
            range: "large enough for the leakage forms",
        });
    }
    if !delta1.is_finite() {
        return Err(Error::NonFinite {
            name: "delta1",
            value: delta1,
        });
    }
    if !(0.0..1.0).contains(&delta1) {
        return Err(Error::OutOfRange {
            name: "delta1",
            value: delta1,
            range: "[0, 1)",
        });
    }
    Ok(())
}

/// Linearized success rate at the optimal iteration count under leakage
/// `delta1`: `1 - pi sqrt(N) delta1 / 4`. Only meaningful while the
/// loss term stays below 1.
pub fn leakage_success_rate(n_dim: f64, delta1: f64) -> Result<f64> {
    validate_leakage(n_dim, delta1, 1.0)?;
    let loss = PI * n_dim.sqrt() * delta1 / 4.0;
    if loss >= 1.0 {
        return Err(Error::OutOfRegime {
            what: "pi sqrt(N) delta1 / 4",
            value: loss,
        });
    }
    Ok(1.0 - loss)
}

/// The pre-linearization square form `(1 - pi sqrt(N) delta1 / 8)^2`,
/// which stays closer to the exact iteration deep into the decay.
pub fn leakage_success_rate_squared(n_dim: f64, delta1: f64) -> Result<f64> {
    validate_leakage(n_dim, delta1, 1.0)?;
    let half_loss = PI * n_dim.sqrt() * delta1 / 8.0;
    if half_loss >= 1.0 {
        return Err(Error::OutOfRegime {
            what: "pi sqrt(N) delta1 / 8",
            value: half_loss,
        });
    }
    Ok((1.0 - half_loss) * (1.0 - half_loss))
}

/// Largest database still searchable at better-than-even odds under
/// leakage `delta1`: `4 / (pi^2 delta1^2)` (infinite at zero, returned
/// as `f64::INFINITY`).
pub fn max_database_size_hadamard(delta1: f64) -> f64 {
    4.0 / (PI * PI * delta1 * delta1)
}

/// Iterate the leakage operator exactly, from a state on the unmarked
/// axis, recording the squared marked-axis coordinate at every step
/// (entry 0 is therefore 0: the caricature drops the initial `1/N`).
///
/// The per-iteration angle is `beta = arcsin(2/sqrt(N))`, the rotation
/// whose optimal iteration count matches `ceil(pi sqrt(N)/4)`; at
/// `N = 4` that is `pi/2` and a single iteration lands exactly on the
/// marked axis. Requires `N >= 4` so the arcsine exists.
pub fn simulate_leakage_trajectory(n_dim: f64, delta1: f64, j_max: u64) -> Result<Trajectory> {
    validate_leakage(n_dim, delta1, 4.0)?;
    let beta = (2.0 / n_dim.sqrt()).asin();
    let (s, c) = beta.sin_cos();
    let keep = 1.0 - delta1;
    let (mut v0, mut v1) = (1.0f64, 0.0f64);
    let mut probabilities = Vec::with_capacity(j_max as usize + 1);
    probabilities.push(0.0);
    for _ in 0..j_max {
        let w0 = c * v0 + s * keep * v1;
        let w1 = -s * v0 + c * keep * v1;
        v0 = w0;
        v1 = w1;
        probabilities.push(clamp_probability(v1 * v1)?);
    }
    Trajectory::from_probabilities(probabilities)
}
