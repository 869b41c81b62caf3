//! Grover dynamics restricted to the invariant plane spanned by the
//! marked state and the prepared superposition.
//!
//! With both inversion phases at pi each iteration is a rigid rotation
//! in this plane and the algorithm walks the prepared state onto the
//! marked one. Imperfect phases keep the plane invariant but tilt the
//! rotation axis out of it, which caps the attainable success
//! probability. Everything here is exact in the plane coordinates, at
//! any register size, and the small-angle closed forms predict the cap.
//!
//! Coordinates: state vectors are columns `(c_unmarked, c_marked)` where
//! the second component is the amplitude on the marked state and the
//! first the amplitude on the normalized unmarked rest. The prepared
//! state sits at `(sqrt(1 - u^2), u)` with `u` its overlap with the
//! marked state, `1/sqrt(N)` for a uniform superposition.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix2;
use crate::trajectory::{clamp_probability, Trajectory};

/// Below this precession rate the closed forms switch to their series
/// limit `sin(j * lambda)/lambda -> j` to avoid 0/0.
const SMALL_LAMBDA: f64 = 1e-12;

/// Inversion phases for one Grover iteration.
///
/// `theta` multiplies the prepared state during the inversion about the
/// prepared superposition, `phi` multiplies the marked state during the
/// oracle inversion. The ideal algorithm uses pi for both. `theta0` and
/// `phi0` are the offsets from pi. `delta` caches `theta - phi`, the
/// phase mismatch between the two inversions, recomputed from the stored
/// fields so `angles.delta == angles.theta - angles.phi` holds bit for
/// bit even when the constructor inputs were rounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAngles {
    pub theta: f64,
    pub phi: f64,
    pub theta0: f64,
    pub phi0: f64,
    pub delta: f64,
}

impl PhaseAngles {
    /// Build from the two inversion phases, in radians.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite {
                name: "theta",
                value: theta,
            });
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite {
                name: "phi",
                value: phi,
            });
        }
        Ok(Self {
            theta,
            phi,
            theta0: theta - PI,
            phi0: phi - PI,
            delta: theta - phi,
        })
    }

    /// Both inversions at exactly pi: the noiseless algorithm.
    pub fn ideal() -> Self {
        Self::new(PI, PI).expect("pi is finite")
    }

    /// Angles that realize `delta` as the iteration's effective
    /// dephasing rate: `(pi + delta, pi - delta)`.
    ///
    /// One iteration built from these angles advances the relative phase
    /// of the two plane axes by `2 delta`, i.e. the rotation axis tilts
    /// with ratio `delta : beta_prime`. That is exactly the normalization
    /// assumed by [`closed_form_power`], [`p_max_small_angle`] and
    /// [`p_max_asymptotic`], so trajectories driven by these angles track
    /// those formulas. Note the literal phase difference is
    /// `theta - phi = 2 delta`; the symmetric split that makes the
    /// difference itself equal `delta`
    /// ([`crate::error_models::split_mismatch_into_angles`]) produces
    /// half the dephasing and peaks at `beta_prime^2 / (beta_prime^2 +
    /// delta^2/4)` instead.
    pub fn for_mismatch(delta: f64) -> Result<Self> {
        Self::new(PI + delta, PI - delta)
    }
}

/// Geometry of the invariant plane for an `N = 2^n` entry search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    n: u32,
    dim: f64,
    u_tau_gamma: f64,
    beta: f64,
    beta_arcsin: f64,
    beta_prime: f64,
}

impl ReducedParams {
    /// Supported qubit counts; `2^62` keeps the dimension exactly
    /// representable both as `f64` and as `u64` row data.
    pub const MAX_QUBITS: u32 = 62;

    /// Plane geometry for `n` qubits with the uniform-superposition
    /// overlap `u = 1/sqrt(2^n)`.
    pub fn new(n: u32) -> Result<Self> {
        let dim = match valid_qubits(n) {
            Ok(dim) => dim,
            Err(e) => return Err(e),
        };
        Self::with_overlap_impl(n, dim, 1.0 / dim.sqrt())
    }

    /// Plane geometry for an arbitrary overlap `u` in (0, 1) between the
    /// prepared and marked states, as arises from imperfect mixing gates.
    pub fn with_overlap(n: u32, u: f64) -> Result<Self> {
        let dim = valid_qubits(n)?;
        if !u.is_finite() {
            return Err(Error::NonFinite {
                name: "u_tau_gamma",
                value: u,
            });
        }
        if u <= 0.0 || u >= 1.0 {
            return Err(Error::OutOfRange {
                name: "u_tau_gamma",
                value: u,
                range: "(0, 1)",
            });
        }
        Self::with_overlap_impl(n, dim, u)
    }

    fn with_overlap_impl(n: u32, dim: f64, u: f64) -> Result<Self> {
        let beta = u * (1.0 - u * u).sqrt();
        Ok(Self {
            n,
            dim,
            u_tau_gamma: u,
            beta,
            beta_arcsin: u.asin(),
            beta_prime: 2.0 * beta,
        })
    }

    /// Qubit count.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Database size `N = 2^n` as a float.
    pub fn dim(&self) -> f64 {
        self.dim
    }

    /// Overlap of the prepared state with the marked state.
    pub fn u_tau_gamma(&self) -> f64 {
        self.u_tau_gamma
    }

    /// `u sqrt(1 - u^2)`, which is `sqrt(N-1)/N` at the uniform overlap:
    /// the sine-like coupling between the two plane axes.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `arcsin(u)`: the angle of the prepared state above the unmarked
    /// axis, and the half-rotation per ideal iteration.
    pub fn beta_arcsin(&self) -> f64 {
        self.beta_arcsin
    }

    /// `2 beta`: in-plane rotation rate per iteration in the small-angle
    /// closed forms.
    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }

    /// Precession rate `sqrt(delta^2 + beta_prime^2)` of the tilted
    /// rotation axis for dephasing rate `delta`.
    pub fn lambda(&self, delta: f64) -> f64 {
        delta.hypot(self.beta_prime)
    }

    /// Default simulation window: three half-periods of the precession,
    /// `3 ceil(pi / (2 lambda))`, falling back to `3 ceil(pi sqrt(N)/4)`
    /// when the rate underflows.
    pub fn default_j_max(&self, delta: f64) -> u64 {
        let lambda = self.lambda(delta);
        if lambda > SMALL_LAMBDA {
            3 * (PI / (2.0 * lambda)).ceil() as u64
        } else {
            3 * (PI / 4.0 * self.dim.sqrt()).ceil() as u64
        }
    }
}

fn valid_qubits(n: u32) -> Result<f64> {
    if n == 0 || n > ReducedParams::MAX_QUBITS {
        return Err(Error::QubitCount {
            n,
            max: ReducedParams::MAX_QUBITS,
        });
    }
    Ok((1u64 << n) as f64)
}

/// Exact one-iteration operator on the invariant plane, in the
/// row-vector convention its entries are usually quoted in. With
/// `u` the prepared/marked overlap, `a = sqrt(1 - u^2)` and phases
/// `theta` (prepared-state inversion) and `phi` (marked-state
/// inversion), the rows read
///
/// ```text
/// [ -e^{i theta} - u^2 (1 - e^{i theta}),      (1 - e^{i theta}) u a              ]
/// [ e^{i phi} (1 - e^{i theta}) u a,           -e^{i phi} (1 - (1 - e^{i theta}) u^2) ]
/// ```
///
/// At the ideal angles this is `[[0, 1], [-1, 0]]` for `N = 2` and
/// `[[1/2, sqrt3/2], [-sqrt3/2, 1/2]]` for `N = 4`. To evolve the column
/// vectors used everywhere else in this module, use [`step_operator_2d`],
/// which is the negated transpose of this matrix.
pub fn build_grover_operator_2d(angles: &PhaseAngles, params: &ReducedParams) -> ComplexMatrix2 {
    let u = params.u_tau_gamma;
    let a = (1.0 - u * u).sqrt();
    let e_theta = Complex64::from_polar(1.0, angles.theta);
    let e_phi = Complex64::from_polar(1.0, angles.phi);
    let one = Complex64::new(1.0, 0.0);
    let k = one - e_theta;
    ComplexMatrix2::new(
        -e_theta - k * (u * u),
        k * (u * a),
        e_phi * k * (u * a),
        -e_phi * (one - k * (u * u)),
    )
}

/// One-iteration operator acting on column vectors `(c_unmarked,
/// c_marked)`, the form consumed by [`simulate_reduced`].
///
/// This is `-transpose` of [`build_grover_operator_2d`]: that matrix
/// multiplies row vectors from the right, so columns take its transpose,
/// and the global sign (which never affects probabilities) is dropped.
/// The orientation is pinned by two cross-checks in the test suites: the
/// ideal trajectory from the prepared state comes out as
/// `P_j = sin^2((2j+1) arcsin(u))`, and the full-register simulator
/// reproduces the column evolution entrywise.
pub fn step_operator_2d(angles: &PhaseAngles, params: &ReducedParams) -> ComplexMatrix2 {
    let u = params.u_tau_gamma;
    let a = (1.0 - u * u).sqrt();
    let e_theta = Complex64::from_polar(1.0, angles.theta);
    let e_phi = Complex64::from_polar(1.0, angles.phi);
    let one = Complex64::new(1.0, 0.0);
    let k = one - e_theta;
    ComplexMatrix2::new(
        e_theta + k * (u * u),
        -e_phi * k * (u * a),
        -k * (u * a),
        e_phi * (one - k * (u * u)),
    )
}

/// Plane coordinates of the freshly prepared state:
/// `(sqrt(1 - u^2), u)`.
pub fn initial_state_2d(params: &ReducedParams) -> [Complex64; 2] {
    let u = params.u_tau_gamma;
    [
        Complex64::new((1.0 - u * u).sqrt(), 0.0),
        Complex64::new(u, 0.0),
    ]
}

/// Per-iteration inversion phases for a simulated run.
#[derive(Debug, Clone, Copy)]
pub enum AngleSchedule<'a> {
    /// The same phases every iteration.
    Constant(PhaseAngles),
    /// Iteration `j` (1-based) uses entry `j - 1`; the slice must cover
    /// the whole run.
    PerStep(&'a [PhaseAngles]),
}

/// Evolve the prepared state through `j_max` iterations of the exact
/// plane dynamics, recording the marked-state probability at every step
/// (entry 0 is the prepared state itself, so the result has
/// `j_max + 1` entries).
pub fn simulate_reduced(
    schedule: &AngleSchedule,
    params: &ReducedParams,
    j_max: u64,
) -> Result<Trajectory> {
    if let AngleSchedule::PerStep(steps) = schedule {
        if (steps.len() as u64) < j_max {
            return Err(Error::ScheduleTooShort {
                need: j_max,
                got: steps.len(),
            });
        }
    }
    let mut v = initial_state_2d(params);
    let mut probabilities = Vec::with_capacity(j_max as usize + 1);
    probabilities.push(clamp_probability(v[1].norm_sqr())?);
    let constant_op = match schedule {
        AngleSchedule::Constant(angles) => Some(step_operator_2d(angles, params)),
        AngleSchedule::PerStep(_) => None,
    };
    for j in 0..j_max {
        let op = match (&constant_op, schedule) {
            (Some(op), _) => *op,
            (None, AngleSchedule::PerStep(steps)) => step_operator_2d(&steps[j as usize], params),
            (None, AngleSchedule::Constant(_)) => unreachable!(),
        };
        v = op.apply(v);
        probabilities.push(clamp_probability(v[1].norm_sqr())?);
    }
    Trajectory::from_probabilities(probabilities)
}

/// Closed-form `j`-th power of the small-angle iteration: the plane
/// dynamics linearize to the generator `G = delta sigma_z + beta_prime
/// sigma_y`, and this returns `exp(i j G)`. With `lambda =
/// sqrt(delta^2 + beta_prime^2)` the entries are
///
/// ```text
/// [ cos(j lam) + i delta sin(j lam)/lam,    beta_prime sin(j lam)/lam ]
/// [ -beta_prime sin(j lam)/lam,             cos(j lam) - i delta sin(j lam)/lam ]
/// ```
///
/// falling back to `sin(j lam)/lam -> j` when `lambda` underflows.
pub fn closed_form_power(delta: f64, beta_prime: f64, j: u64) -> ComplexMatrix2 {
    let lambda = delta.hypot(beta_prime);
    let jf = j as f64;
    let (cos_jl, sinc_jl) = if lambda > SMALL_LAMBDA {
        ((jf * lambda).cos(), (jf * lambda).sin() / lambda)
    } else {
        (1.0, jf)
    };
    ComplexMatrix2::new(
        Complex64::new(cos_jl, delta * sinc_jl),
        Complex64::new(beta_prime * sinc_jl, 0.0),
        Complex64::new(-beta_prime * sinc_jl, 0.0),
        Complex64::new(cos_jl, -delta * sinc_jl),
    )
}

/// Marked-state amplitude magnitude after `j` small-angle iterations
/// from a state on the unmarked axis:
/// `(beta_prime / lambda) |sin(j lambda)|`.
pub fn marked_amplitude_norm(delta: f64, beta_prime: f64, j: u64) -> f64 {
    let lambda = delta.hypot(beta_prime);
    if lambda > SMALL_LAMBDA {
        (beta_prime / lambda) * ((j as f64) * lambda).sin().abs()
    } else {
        beta_prime * j as f64
    }
}

/// Peak success probability under a constant dephasing rate `delta`, in
/// the small-angle regime: `beta_prime^2 / (beta_prime^2 + delta^2)`
/// with `beta_prime = 2 sqrt(N-1)/N` for an `N`-entry database.
pub fn p_max_small_angle(delta: f64, n_dim: f64) -> f64 {
    let beta_prime_sq = 4.0 * (n_dim - 1.0) / (n_dim * n_dim);
    beta_prime_sq / (beta_prime_sq + delta * delta)
}

/// Large-`N` tail of [`p_max_small_angle`]: `4 / (N delta^2)`, clamped
/// into [0, 1]. `delta = 0` is outside this form's domain.
pub fn p_max_asymptotic(delta: f64, n_dim: f64) -> Result<f64> {
    if !delta.is_finite() {
        return Err(Error::NonFinite {
            name: "delta",
            value: delta,
        });
    }
    if delta == 0.0 {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            range: "nonzero",
        });
    }
    if !n_dim.is_finite() || n_dim < 1.0 {
        return Err(Error::OutOfRange {
            name: "n_dim",
            value: n_dim,
            range: "[1, inf)",
        });
    }
    Ok((4.0 / (n_dim * delta * delta)).clamp(0.0, 1.0))
}

/// Largest database still searchable at better-than-even odds under
/// dephasing rate `delta`, per the asymptotic tail: `8 / delta^2`
/// (infinite at `delta = 0`, which is returned as `f64::INFINITY`).
///
/// The two closed forms disagree slightly at this boundary: the tail
/// `4/(N delta^2)` puts even odds at `N = 8/delta^2`, while the
/// unclamped small-angle peak crosses 1/2 already at `N ~ 4/delta^2`
/// and evaluates to 1/3 at this bound. Comparison tooling reports both
/// so the discrepancy stays visible.
pub fn max_database_size_phase(delta: f64) -> f64 {
    8.0 / (delta * delta)
}

/// Database-size bound when a combined phase uncertainty `delta_total`
/// is split across both inversions: `64 / delta_total^2` (infinite at
/// zero, returned as `f64::INFINITY`).
pub fn max_database_size_combined(delta_total: f64) -> f64 {
    64.0 / (delta_total * delta_total)
}

/// In-plane rotation advanced per iteration when both inversions use the
/// same phase `theta`: `2 sin(theta/2) beta`. Maximal at `theta = pi`,
/// which is why matched-but-offset phases only slow the search instead
/// of capping it.
pub fn rotation_angle_per_iteration(theta: f64, beta: f64) -> f64 {
    2.0 * (theta / 2.0).sin() * beta
}
