//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a run misidentifies its input (or on I/O
//! failure), 2 for invalid arguments or labels, 3 when the requested register
//! exceeds the qubit cap. `CGHZ_MAX_QUBITS` overrides the default cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use cghz_core::cavity::CavityParams;
use cghz_core::noise::{analytic_success, NoiseParams};
use cghz_core::protocol::{analyze, AnalysisConfig, ReadoutMode, SignCalibrator};
use cghz_core::qstate::DEFAULT_MAX_QUBITS;
use cghz_core::states::CghzLabel;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::output::{cavity_csv, cavity_sweep, fmt_num, noise_csv, table_csv, NoiseRow};
use crate::parallel;
use crate::report::{summarize, ReportJson};

pub const MAX_QUBITS_ENV: &str = "CGHZ_MAX_QUBITS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cghz_core::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json encoding failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv encoding failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cghz_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::CapExceeded { .. }) => 3,
            CliError::Core(
                E::ParseLabel(_)
                | E::InvalidLabel(_)
                | E::InvalidNoise(_)
                | E::InvalidKappa(_)
                | E::InvalidCavity(_)
                | E::NoTrials,
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cghz",
    version,
    about = "Complete analysis of concatenated GHZ states via low-Q cavity Faraday rotation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one C-GHZ state and print its report.
    Analyze(AnalyzeArgs),
    /// Run every label many times and check that all are identified.
    Verify(VerifyArgs),
    /// Success probability under detector losses, closed form and Monte Carlo.
    Noise(NoiseArgs),
    /// Reflection coefficients over a probe-frequency sweep.
    Cavity(CavityArgs),
    /// Misidentification rate under Faraday-phase detuning.
    SigmaSweep(SigmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cavity,
    Oracle,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Label such as `3-`.
    #[arg(long)]
    pub state: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Cavity)]
    pub mode: Mode,
    /// Flip the row-2 photons onto |L...L> +- |R...R> before the sign step.
    #[arg(long)]
    pub bit_flip_pass: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Seeds per label.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Cavity)]
    pub mode: Mode,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Photon detection efficiencies; a comma-separated list gives a grid.
    #[arg(long, value_delimiter = ',', default_value = "0.9")]
    pub eta_p: Vec<f64>,
    /// Atom detection efficiencies; a comma-separated list gives a grid.
    #[arg(long, value_delimiter = ',', default_value = "0.9")]
    pub eta_a: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub p_error: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CavityArgs {
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Coupling strength; defaults to kappa/2.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub omega_c: f64,
    /// Atomic frequency; defaults to omega_c.
    #[arg(long)]
    pub omega_0: Option<f64>,
    /// Sweep start; defaults to omega_c - 2 kappa.
    #[arg(long)]
    pub omega_p_min: Option<f64>,
    /// Sweep end; defaults to omega_c + 2 kappa.
    #[arg(long)]
    pub omega_p_max: Option<f64>,
    #[arg(long, default_value_t = 81)]
    pub points: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.05,0.1,0.2")]
    pub sigma: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Rendered command output plus its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn max_qubits() -> Result<usize, CliError> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{MAX_QUBITS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn check_shape(n: usize, m: usize) -> Result<(), CliError> {
    if n < 2 || m < 2 {
        return Err(CliError::Config(format!("need n >= 2 and m >= 2, got n = {n}, m = {m}")));
    }
    Ok(())
}

fn check_cap(n: usize, m: usize, cap: usize) -> Result<(), CliError> {
    let requested = n.saturating_mul(m);
    if requested > cap {
        return Err(cghz_core::Error::CapExceeded { requested, max: cap }.into());
    }
    Ok(())
}

fn check_trials(trials: u64) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Config("--trials must be at least 1".into()));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn readout_mode(mode: Mode) -> ReadoutMode {
    match mode {
        Mode::Cavity => ReadoutMode::Cavity,
        Mode::Oracle => ReadoutMode::Oracle,
    }
}

const REPORT_HEADER: [&str; 12] = [
    "n",
    "m",
    "input_label",
    "identified_label",
    "signature_raw",
    "signature_d",
    "reduction_outcomes",
    "step2_readout",
    "sign_flip",
    "seed",
    "correct",
    "norms",
];

fn report_record(r: &ReportJson) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.m.to_string(),
        r.input_label.clone().unwrap_or_default(),
        r.identified_label.clone(),
        r.signature_raw.clone(),
        r.signature_d.clone(),
        r.reduction_outcomes.join(";"),
        r.step2_readout.clone(),
        r.sign_flip.to_string(),
        r.seed.to_string(),
        r.correct.to_string(),
        r.norms.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(";"),
    ]
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Result<Outcome, CliError> {
    check_shape(a.n, a.m)?;
    let label = CghzLabel::parse(&a.state, a.n, a.m)?;
    let cap = max_qubits()?;
    check_cap(a.n, a.m, cap)?;
    let config = AnalysisConfig {
        mode: readout_mode(a.mode),
        bit_flip_pass: a.bit_flip_pass,
        max_qubits: cap,
        ..AnalysisConfig::default()
    };
    let report = analyze(&label, &config, &SignCalibrator::new(), a.seed)?;
    let j = ReportJson::from(&report);
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&j)?,
        Format::Csv => table_csv(&REPORT_HEADER, vec![report_record(&j)])?,
    };
    Ok(Outcome { text, code: if report.correct() { 0 } else { 1 } })
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    check_shape(a.n, a.m)?;
    check_trials(a.trials)?;
    let cap = max_qubits()?;
    check_cap(a.n, a.m, cap)?;
    let config = AnalysisConfig { mode: readout_mode(a.mode), max_qubits: cap, ..AnalysisConfig::default() };
    let runs = parallel::verify(a.n, a.m, a.trials, a.seed, &config)?;
    let summary = summarize(a.n, a.m, a.trials, a.seed, &runs);
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&summary)?,
        Format::Csv => table_csv(
            &["label", "trials", "correct"],
            summary.labels.iter().map(|t| vec![t.label.clone(), t.trials.to_string(), t.correct.to_string()]).collect(),
        )?,
    };
    Ok(Outcome { text, code: if summary.all_correct() { 0 } else { 1 } })
}

pub fn cmd_noise(a: &NoiseArgs) -> Result<Outcome, CliError> {
    check_shape(a.n, a.m)?;
    check_trials(a.trials)?;
    let cap = max_qubits()?;
    check_cap(a.n, a.m, cap)?;
    let mut rows = Vec::new();
    for &eta_p in &a.eta_p {
        for &eta_a in &a.eta_a {
            let p = NoiseParams::new(eta_p, eta_a, a.p_error)?;
            let stats = parallel::mc_success(a.n, a.m, &p, a.trials, a.seed)?;
            rows.push(NoiseRow {
                eta_p,
                eta_a,
                p_error: Some(a.p_error),
                analytic: Some(analytic_success(a.n, a.m, &p)?),
                ..NoiseRow::from_stats(a.n, a.m, &stats)
            });
        }
    }
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows)?,
        Format::Csv => noise_csv(&rows)?,
    };
    Ok(Outcome { text, code: 0 })
}

pub fn cmd_cavity(a: &CavityArgs) -> Result<Outcome, CliError> {
    if a.points == 0 {
        return Err(CliError::Config("--points must be at least 1".into()));
    }
    let base = CavityParams {
        omega_c: a.omega_c,
        omega_0: a.omega_0.unwrap_or(a.omega_c),
        omega_p: a.omega_c,
        kappa: a.kappa,
        gamma: a.gamma,
        lambda: a.lambda.unwrap_or(a.kappa / 2.0),
    };
    base.validate()?;
    let min = a.omega_p_min.unwrap_or(a.omega_c - 2.0 * a.kappa);
    let max = a.omega_p_max.unwrap_or(a.omega_c + 2.0 * a.kappa);
    if !(min.is_finite() && max.is_finite() && min <= max) {
        return Err(CliError::Config(format!("invalid sweep bounds [{min}, {max}]")));
    }
    let rows = cavity_sweep(&base, min, max, a.points)?;
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows)?,
        Format::Csv => cavity_csv(&rows)?,
    };
    Ok(Outcome { text, code: 0 })
}

pub fn cmd_sigma_sweep(a: &SigmaArgs) -> Result<Outcome, CliError> {
    check_shape(a.n, a.m)?;
    check_trials(a.trials)?;
    let cap = max_qubits()?;
    check_cap(a.n, a.m, cap)?;
    let mut rows = Vec::new();
    for &sigma in &a.sigma {
        if !sigma.is_finite() {
            return Err(CliError::Config(format!("sigma must be finite, got {sigma}")));
        }
        let stats = parallel::error_prob_sigma(a.n, a.m, sigma, a.trials, a.seed)?;
        rows.push(NoiseRow { sigma: Some(sigma), ..NoiseRow::from_stats(a.n, a.m, &stats) });
    }
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows)?,
        Format::Csv => noise_csv(&rows)?,
    };
    Ok(Outcome { text, code: 0 })
}

fn output_of(command: &Command) -> &OutputArgs {
    match command {
        Command::Analyze(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Noise(a) => &a.out,
        Command::Cavity(a) => &a.out,
        Command::SigmaSweep(a) => &a.out,
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let outcome = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a)?,
        Command::Verify(a) => cmd_verify(a)?,
        Command::Noise(a) => cmd_noise(a)?,
        Command::Cavity(a) => cmd_cavity(a)?,
        Command::SigmaSweep(a) => cmd_sigma_sweep(a)?,
    };
    match &output_of(&cli.command).output {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome)
}

/// Parse `args`, run the command and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome.code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
