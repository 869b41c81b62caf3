//! Dense 2^n-amplitude simulator of the noisy search circuit.
//!
//! This is the brute-force reference the plane-restricted model in
//! [`crate::reduced`] is checked against: it applies the actual gates,
//! per-qubit mixing transforms (possibly off the Hadamard angle) and
//! selective phase shifts, to the full state vector, with no knowledge
//! of the invariant plane.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::reduced::PhaseAngles;
use crate::trajectory::{clamp_probability, Trajectory};

/// Largest register the dense simulator will allocate (2^26 amplitudes
/// is a gibibyte of f64 pairs).
pub const MAX_QUBITS: u32 = 26;

fn valid_qubits(n: u32) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// Per-qubit mixing transform with one angle offset per qubit.
///
/// Qubit `k` gets the self-inverse gate
///
/// ```text
/// [ cos(pi/4 + e_k)    sin(pi/4 + e_k) ]
/// [ sin(pi/4 + e_k)   -cos(pi/4 + e_k) ]
/// ```
///
/// which is the Hadamard at `e_k = 0` and squares to the identity for
/// every offset, so the transform as a whole stays an involution even
/// when miscalibrated. Offsets are restricted to `|e_k| < pi/4` to keep
/// every gate mixing both basis states with nonzero weight.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardGateSpec {
    offsets: Vec<f64>,
}

impl HadamardGateSpec {
    /// Exact Hadamard on every qubit.
    pub fn ideal(n: u32) -> Result<Self> {
        valid_qubits(n)?;
        Ok(Self {
            offsets: vec![0.0; n as usize],
        })
    }

    /// The same offset on every qubit, the systematic-miscalibration
    /// model.
    pub fn uniform(n: u32, epsilon: f64) -> Result<Self> {
        valid_qubits(n)?;
        Self::new(vec![epsilon; n as usize])
    }

    /// Arbitrary per-qubit offsets; the length fixes the register width.
    pub fn new(offsets: Vec<f64>) -> Result<Self> {
        valid_qubits(offsets.len() as u32)?;
        for &e in &offsets {
            if !e.is_finite() {
                return Err(Error::NonFinite {
                    name: "offset",
                    value: e,
                });
            }
            if e.abs() >= std::f64::consts::FRAC_PI_4 {
                return Err(Error::OutOfRange {
                    name: "offset",
                    value: e,
                    range: "(-pi/4, pi/4)",
                });
            }
        }
        Ok(Self { offsets })
    }

    /// Register width this spec covers.
    pub fn n(&self) -> u32 {
        self.offsets.len() as u32
    }

    /// The per-qubit offsets, in qubit order.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Overlap of the prepared state with basis state `tau`: the product
    /// over qubits of `cos(pi/4 + e_k)` where `tau` has bit 0 and
    /// `sin(pi/4 + e_k)` where it has bit 1. This is the quantity that
    /// feeds [`crate::reduced::ReducedParams::with_overlap`] when the
    /// plane model absorbs a miscalibrated preparation.
    pub fn overlap(&self, tau: u64) -> Result<f64> {
        if tau >> self.offsets.len() != 0 {
            return Err(Error::IndexOutOfRange {
                index: tau,
                dim: 1u64 << self.offsets.len(),
            });
        }
        let mut u = 1.0;
        for (k, &e) in self.offsets.iter().enumerate() {
            let angle = std::f64::consts::FRAC_PI_4 + e;
            u *= if tau >> k & 1 == 0 {
                angle.cos()
            } else {
                angle.sin()
            };
        }
        Ok(u)
    }
}

/// Dense state of an n-qubit register, little-endian: qubit `k` toggles
/// bit `k` of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: u32,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index>`.
    pub fn basis_state(n: u32, index: u64) -> Result<Self> {
        valid_qubits(n)?;
        let dim = 1u64 << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim as usize];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// Register width.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of amplitudes, `2^n`.
    pub fn dim(&self) -> u64 {
        1u64 << self.n
    }

    /// All amplitudes, indexed by basis state.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of one basis state.
    pub fn amplitude(&self, index: u64) -> Result<Complex64> {
        self.amplitudes
            .get(index as usize)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
    }

    /// Squared norm; 1 up to roundoff after any sequence of gates.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply the per-qubit mixing transform to every qubit, in qubit
    /// order. Cost is `n 2^n` butterfly updates.
    pub fn apply_walsh_hadamard(&mut self, spec: &HadamardGateSpec) -> Result<()> {
        if spec.n() != self.n {
            return Err(Error::SpecLength {
                expected: self.n as usize,
                got: spec.offsets.len(),
            });
        }
        let dim = self.amplitudes.len();
        for (k, &e) in spec.offsets.iter().enumerate() {
            let (s, c) = (std::f64::consts::FRAC_PI_4 + e).sin_cos();
            let mask = 1usize << k;
            let mut base = 0;
            while base < dim {
                for i in base..base + mask {
                    let j = i + mask;
                    let a = self.amplitudes[i];
                    let b = self.amplitudes[j];
                    self.amplitudes[i] = c * a + s * b;
                    self.amplitudes[j] = s * a - c * b;
                }
                base += mask << 1;
            }
        }
        Ok(())
    }

    /// Multiply the amplitude of one basis state by `e^{i angle}`,
    /// leaving the rest untouched.
    pub fn apply_selective_phase(&mut self, index: u64, angle: f64) -> Result<()> {
        if !angle.is_finite() {
            return Err(Error::NonFinite {
                name: "angle",
                value: angle,
            });
        }
        let dim = self.dim();
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        self.amplitudes[index as usize] *= Complex64::from_polar(1.0, angle);
        Ok(())
    }

    /// One noisy search iteration, in the frame where the state has the
    /// preparation transform already applied (the frame measurements
    /// happen in): selective phase `phi` at the marked state, mixing
    /// transform, selective phase `theta` at the all-zeros state, mixing
    /// transform. Composed after the initial transform of
    /// [`run_full_search`] this realizes the oracle inversion followed by
    /// the inversion about the prepared state, up to a global phase.
    pub fn grover_iteration(
        &mut self,
        marked: u64,
        angles: &PhaseAngles,
        spec: &HadamardGateSpec,
    ) -> Result<()> {
        self.apply_selective_phase(marked, angles.phi)?;
        self.apply_walsh_hadamard(spec)?;
        self.apply_selective_phase(0, angles.theta)?;
        self.apply_walsh_hadamard(spec)?;
        Ok(())
    }

    /// Probability of measuring the marked state, clamped for roundoff.
    pub fn success_probability(&self, marked: u64) -> Result<f64> {
        clamp_probability(self.amplitude(marked)?.norm_sqr())
    }
}

/// Prepare `|0...0>`, apply the mixing transform once, then run `j_max`
/// iterations with constant angles, recording the marked-state
/// probability after every step (entry 0 is the prepared state).
pub fn run_full_search(
    n: u32,
    marked: u64,
    angles: &PhaseAngles,
    spec: &HadamardGateSpec,
    j_max: u64,
) -> Result<Trajectory> {
    let mut state = StateVector::basis_state(n, 0)?;
    if marked >= state.dim() {
        return Err(Error::IndexOutOfRange {
            index: marked,
            dim: state.dim(),
        });
    }
    state.apply_walsh_hadamard(spec)?;
    let mut probabilities = Vec::with_capacity(j_max as usize + 1);
    probabilities.push(state.success_probability(marked)?);
    for _ in 0..j_max {
        state.grover_iteration(marked, angles, spec)?;
        probabilities.push(state.success_probability(marked)?);
    }
    Trajectory::from_probabilities(probabilities)
}
