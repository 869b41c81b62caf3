//! Quantitative error analysis for Grover's search algorithm.
//!
//! Grover's algorithm alternates two inversions, one about the marked
//! state and one about the prepared superposition, each built from a
//! conditional phase shift and a mixing transform. When the phase shifts
//! miss pi or the per-qubit mixing gates miss the Hadamard angle, the
//! success probability stops reaching 1 and eventually stops beating a
//! coin flip. This crate measures the damage three ways and checks the
//! answers against each other:
//!
//! * [`reduced`]: the dynamics restricted to the two-dimensional plane
//!   spanned by the prepared and marked states, exact at any register
//!   size, plus small-angle closed forms for the peak probability and
//!   the largest searchable database.
//! * [`statevector`]: a full 2^n-amplitude simulator used as the
//!   brute-force oracle for the plane model.
//! * [`error_models`]: stochastic families of phase mismatch (constant,
//!   zero-mean Gaussian, biased Gaussian), systematic mixing-angle
//!   offsets, and an amplitude-leakage caricature of imperfect mixing,
//!   with a deterministic splittable random source.
//! * [`experiments`]: sweeps over register size that estimate peak
//!   success probability, locate where it crosses 1/2, compare against
//!   the closed forms, and serialize results as CSV.
//!
//! Angles are radians, indexes are little-endian (qubit k toggles bit k),
//! and trajectories index success probability by iteration count, entry 0
//! meaning "prepared but not yet iterated".

pub mod error;
pub mod error_models;
pub mod experiments;
pub mod matrix;
pub mod reduced;
pub mod statevector;
pub mod trajectory;

pub use error::{Error, Result};
pub use error_models::{ErrorModel, RngStream};
pub use experiments::{Engine, SweepConfig, SweepPoint, SweepResult};
pub use matrix::ComplexMatrix2;
pub use reduced::{AngleSchedule, PhaseAngles, ReducedParams};
pub use statevector::{HadamardGateSpec, StateVector};
pub use trajectory::Trajectory;
