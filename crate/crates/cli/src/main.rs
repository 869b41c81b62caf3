//! Command-line front end: run noise sweeps to CSV, regenerate the
//! preset experiment datasets, evaluate database-size bounds, and
//! cross-check the plane model against the full register.
//!
//! Exit codes: 0 success, 1 domain failure (invalid physics parameters,
//! I/O, cross-check disagreement), 2 usage error.

use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use grover_noise::error_models::max_database_size_hadamard;
use grover_noise::experiments::{emit_csv, format_float, run_sweep, write_csv_file};
use grover_noise::reduced::{
    max_database_size_combined, max_database_size_phase, simulate_reduced, AngleSchedule,
};
use grover_noise::statevector::run_full_search;
use grover_noise::{
    Engine, ErrorModel, HadamardGateSpec, PhaseAngles, ReducedParams, RngStream, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "grover-noise",
    version,
    about = "Quantify how faulty phase inversions and mixing gates degrade quantum search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one error model over register sizes and emit CSV.
    Sweep(SweepArgs),
    /// Regenerate a preset dataset (one CSV per parameter setting).
    Figure(FigureArgs),
    /// Print the largest database size a given error level tolerates.
    Bound(BoundArgs),
    /// Cross-check the plane model against the full register on random
    /// configurations; fails if any probability differs by more than 1e-10.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    /// Exact two-component dynamics on the invariant plane.
    Reduced,
    /// Dense 2^n state vector (n <= 26); slow, for cross-checks.
    Full,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Reduced => Engine::Reduced,
            EngineArg::Full => Engine::Full,
        }
    }
}

/// Exactly one model flag must be set.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModelFlags {
    /// Constant phase mismatch delta0 on both inversions.
    #[arg(long)]
    em1: bool,
    /// Fresh zero-mean Gaussian mismatch (spread s) each iteration.
    #[arg(long)]
    em2: bool,
    /// Gaussian mismatch with mean delta0 and spread s each iteration.
    #[arg(long)]
    em3: bool,
    /// Systematic rotation offset epsilon on every mixing-gate axis.
    #[arg(long)]
    hsys: bool,
    /// Norm leakage delta1 in the mixing gate.
    #[arg(long)]
    leak: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelFlags,
    /// Mean mismatch (used by --em1 and --em3).
    #[arg(long, value_name = "RAD")]
    delta0: Option<f64>,
    /// Gaussian spread (used by --em2 and --em3).
    #[arg(long, value_name = "RAD")]
    s: Option<f64>,
    /// Per-axis rotation offset (used by --hsys).
    #[arg(long, value_name = "RAD")]
    epsilon: Option<f64>,
    /// Amplitude leakage per mixing gate (used by --leak).
    #[arg(long, value_name = "FRAC")]
    delta1: Option<f64>,
    /// Register sizes: "A" for one size, "A..B" half-open, "A..=B" inclusive.
    #[arg(long, value_parser = parse_qubit_range, value_name = "RANGE")]
    n: QubitRange,
    /// Noise realizations per size (default: the model's own budget).
    #[arg(long)]
    samples: Option<u32>,
    /// Seed for the reproducible sample streams.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
    engine: EngineArg,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Constant mismatch, delta0 in {1e-2, 1e-3, 1e-4}, n = 4..=34.
    ConstantMismatch,
    /// Zero-mean Gaussian mismatch, s = 1e-2, 200 samples, n = 4..=30.
    RandomMismatch,
    /// Gaussian mismatch around delta0 in {1e-2, 1e-3, 1e-4} with
    /// s = 1e-3, 200 samples, n = 4..=24.
    BiasedMismatch,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(value_enum)]
    preset: Preset,
    /// Directory the CSV files land in (created if missing).
    #[arg(long, default_value = ".", value_name = "DIR")]
    out_dir: PathBuf,
    /// Override the preset's per-size sample count.
    #[arg(long)]
    samples: Option<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
    engine: EngineArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    /// Phase mismatch delta on both inversions: 8 / delta^2.
    Phase,
    /// Mixing-gate leakage delta1: 4 / (pi^2 delta1^2).
    Hadamard,
    /// Total phase uncertainty split across both inversions: 64 / delta^2.
    Combined,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(value_enum)]
    kind: BoundKind,
    /// Error magnitude (radians for phases, amplitude fraction for leakage).
    value: f64,
}

#[derive(Args)]
struct ValidateArgs {
    /// Largest register size to draw (2..=12; the full engine is the
    /// bottleneck).
    #[arg(long, default_value_t = 10)]
    max_n: u32,
    /// Number of random configurations.
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone)]
struct QubitRange(Vec<u32>);

fn parse_qubit_range(s: &str) -> Result<QubitRange, String> {
    let parse_end = |t: &str| -> Result<u32, String> {
        t.parse::<u32>()
            .map_err(|_| format!("'{t}' is not a qubit count"))
    };
    let values: Vec<u32> = if let Some((a, b)) = s.split_once("..=") {
        (parse_end(a)?..=parse_end(b)?).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (parse_end(a)?..parse_end(b)?).collect()
    } else {
        vec![parse_end(s)?]
    };
    if values.is_empty() {
        return Err(format!("'{s}' contains no sizes"));
    }
    Ok(QubitRange(values))
}

/// Abort with a clap-styled usage error (exit code 2).
fn usage_error(message: &str) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, message).exit()
}

fn require(value: Option<f64>, flag: &str, model: &str) -> f64 {
    match value {
        Some(v) => v,
        None => usage_error(&format!("{model} requires {flag}")),
    }
}

fn reject(value: Option<f64>, flag: &str, model: &str) {
    if value.is_some() {
        usage_error(&format!("{flag} does not apply to {model}"));
    }
}

impl SweepArgs {
    fn model(&self) -> ErrorModel {
        let m = &self.model;
        if m.em1 {
            reject(self.s, "--s", "--em1");
            reject(self.epsilon, "--epsilon", "--em1");
            reject(self.delta1, "--delta1", "--em1");
            ErrorModel::Em1 {
                delta0: require(self.delta0, "--delta0", "--em1"),
            }
        } else if m.em2 {
            reject(self.delta0, "--delta0", "--em2");
            reject(self.epsilon, "--epsilon", "--em2");
            reject(self.delta1, "--delta1", "--em2");
            ErrorModel::Em2 {
                s: require(self.s, "--s", "--em2"),
            }
        } else if m.em3 {
            reject(self.epsilon, "--epsilon", "--em3");
            reject(self.delta1, "--delta1", "--em3");
            ErrorModel::Em3 {
                delta0: require(self.delta0, "--delta0", "--em3"),
                s: require(self.s, "--s", "--em3"),
            }
        } else if m.hsys {
            reject(self.delta0, "--delta0", "--hsys");
            reject(self.s, "--s", "--hsys");
            reject(self.delta1, "--delta1", "--hsys");
            ErrorModel::HadamardSystematic {
                epsilon: require(self.epsilon, "--epsilon", "--hsys"),
            }
        } else {
            reject(self.delta0, "--delta0", "--leak");
            reject(self.s, "--s", "--leak");
            reject(self.epsilon, "--epsilon", "--leak");
            ErrorModel::HadamardLeakage {
                delta1: require(self.delta1, "--delta1", "--leak"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(args) => run_sweep_command(&args),
        Command::Figure(args) => run_figure_command(&args),
        Command::Bound(args) => run_bound_command(&args),
        Command::Validate(args) => run_validate_command(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn describe(config: &SweepConfig) {
    let (p1, p2) = config.model.params();
    eprintln!(
        "sweep: model={} param1={} param2={} n={}..={} samples={} seed={} engine={}",
        config.model.name(),
        format_float(p1),
        format_float(p2),
        config.n_values.first().unwrap(),
        config.n_values.last().unwrap(),
        config.samples_per_n,
        config.seed,
        match config.engine {
            Engine::Reduced => "reduced",
            Engine::Full => "full",
        }
    );
}

fn run_sweep_command(args: &SweepArgs) -> grover_noise::Result<()> {
    let mut config = SweepConfig::new(args.model(), args.n.0.clone());
    if let Some(samples) = args.samples {
        config.samples_per_n = samples;
    }
    config.seed = args.seed;
    config.engine = args.engine.into();
    describe(&config);
    let result = run_sweep(&config)?;
    match &args.out {
        Some(path) => {
            write_csv_file(&result, path)?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit_csv(&result, &mut lock).map_err(|source| grover_noise::Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
            lock.flush().map_err(|source| grover_noise::Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    Ok(())
}

/// File stem a model's CSV is stored under; parameters are rendered
/// with the same shortest-round-trip form the CSV uses.
fn model_slug(model: &ErrorModel) -> String {
    match model {
        ErrorModel::Em1 { delta0 } => format!("em1_d0_{}", format_float(*delta0)),
        ErrorModel::Em2 { s } => format!("em2_s_{}", format_float(*s)),
        ErrorModel::Em3 { delta0, s } => {
            format!("em3_d0_{}_s_{}", format_float(*delta0), format_float(*s))
        }
        ErrorModel::HadamardSystematic { epsilon } => {
            format!("hsys_eps_{}", format_float(*epsilon))
        }
        ErrorModel::HadamardLeakage { delta1 } => format!("leak_d1_{}", format_float(*delta1)),
    }
}

fn run_figure_command(args: &FigureArgs) -> grover_noise::Result<()> {
    let presets: Vec<(ErrorModel, Vec<u32>)> = match args.preset {
        Preset::ConstantMismatch => [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&delta0| (ErrorModel::Em1 { delta0 }, (4..=34).collect()))
            .collect(),
        Preset::RandomMismatch => vec![(ErrorModel::Em2 { s: 1e-2 }, (4..=30).collect())],
        Preset::BiasedMismatch => [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&delta0| (ErrorModel::Em3 { delta0, s: 1e-3 }, (4..=24).collect()))
            .collect(),
    };
    std::fs::create_dir_all(&args.out_dir).map_err(|source| grover_noise::Error::Io {
        path: args.out_dir.clone(),
        source,
    })?;
    for (model, n_values) in presets {
        let mut config = SweepConfig::new(model, n_values);
        if let Some(samples) = args.samples {
            config.samples_per_n = samples;
        }
        config.seed = args.seed;
        config.engine = args.engine.into();
        describe(&config);
        let path = args.out_dir.join(format!("{}.csv", model_slug(&model)));
        write_csv_file(&run_sweep(&config)?, &path)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run_bound_command(args: &BoundArgs) -> grover_noise::Result<()> {
    if !(args.value.is_finite() && args.value > 0.0) {
        usage_error("the error magnitude must be a positive finite number");
    }
    let n_max = match args.kind {
        BoundKind::Phase => max_database_size_phase(args.value),
        BoundKind::Hadamard => max_database_size_hadamard(args.value),
        BoundKind::Combined => max_database_size_combined(args.value),
    };
    println!("N_max: {}", format_float(n_max));
    println!("log2(N_max): {}", format_float(n_max.log2()));
    Ok(())
}

fn run_validate_command(args: &ValidateArgs) -> grover_noise::Result<()> {
    if !(2..=12).contains(&args.max_n) {
        usage_error("--max-n must lie in 2..=12");
    }
    if args.trials == 0 {
        usage_error("--trials must be at least 1");
    }
    let mut worst = 0.0f64;
    for trial in 0..args.trials {
        let mut rng = RngStream::new(args.seed, trial as u64);
        let n = 2 + (rng.next_u64() % (args.max_n as u64 - 1)) as u32;
        let dim = 1u64 << n;
        let marked = rng.next_u64() % dim;
        let angles = PhaseAngles::new(rng.uniform() * TAU, rng.uniform() * TAU)?;
        // Offsets well inside (-pi/4, pi/4) keep every axis overlap positive.
        let offsets: Vec<f64> = (0..n).map(|_| (rng.uniform() - 0.5) * 0.4).collect();
        let spec = HadamardGateSpec::new(offsets)?;
        let params = ReducedParams::with_overlap(n, spec.overlap(marked)?)?;
        let j_max = 2 * (PI / 4.0 * (dim as f64).sqrt()).ceil() as u64;
        let full = run_full_search(n, marked, &angles, &spec, j_max)?;
        let reduced = simulate_reduced(&AngleSchedule::Constant(angles), &params, j_max)?;
        for (a, b) in full.probabilities().iter().zip(reduced.probabilities()) {
            worst = worst.max((a - b).abs());
        }
    }
    println!(
        "validated {} random configurations, worst |P_full - P_plane| = {:e}",
        args.trials, worst
    );
    if worst > 1e-10 {
        return Err(grover_noise::Error::InvalidSweep(format!(
            "plane model disagrees with the full register by {worst:e} (tolerance 1e-10)"
        )));
    }
    Ok(())
}
