//! Error type shared by every module in the crate.

use std::path::PathBuf;

/// Everything that can go wrong constructing parameters, simulating, or
/// writing results.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Qubit count outside the range a component supports.
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: u32, max: u32 },

    /// Basis-state index does not fit the register dimension.
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: u64, dim: u64 },

    /// A per-qubit gate list does not match the register width.
    #[error("gate spec covers {got} qubits, state has {expected}")]
    SpecLength { expected: usize, got: usize },

    /// A parameter that must be finite is NaN or infinite.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// A parameter lies outside its documented domain.
    #[error("{name} = {value} outside valid range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// An operation that needs at least one probability got none.
    #[error("trajectory is empty")]
    EmptyTrajectory,

    /// A per-step angle schedule is shorter than the requested run.
    #[error("angle schedule provides {got} steps, run needs {need}")]
    ScheduleTooShort { need: u64, got: usize },

    /// An operation defined for the phase-mismatch families was handed a
    /// mixing-error model, or vice versa.
    #[error("{op} requires a phase-mismatch model, got {model}")]
    WrongModelFamily { op: &'static str, model: &'static str },

    /// Analytic peak formulas only describe the constant-mismatch model.
    #[error("analytic comparison is defined for EM1 sweeps, got {model}")]
    AnalyticComparisonModel { model: &'static str },

    /// A linearized estimate was evaluated outside its validity regime.
    #[error("estimate valid only while {what} < 1, got {value}")]
    OutOfRegime { what: &'static str, value: f64 },

    /// A sweep configuration is internally inconsistent.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    /// The full-register engine was asked for more qubits than it can
    /// allocate.
    #[error("full engine caps at {max} qubits, sweep asks for {n}")]
    EngineBudget { n: u32, max: u32 },

    /// A computed probability exceeded 1 by more than roundoff allows,
    /// which indicates a simulator bug rather than noise.
    #[error("probability {value} exceeds 1 beyond rounding tolerance")]
    ProbabilityOverflow { value: f64 },

    /// Writing an output file failed.
    #[error("failed writing {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
