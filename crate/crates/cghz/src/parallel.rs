//! Trial loops spread over the rayon pool. Every trial is keyed by its index,
//! so results match the sequential versions in `cghz_core::noise` exactly.

use cghz_core::noise::{mc_trial, sigma_trial, NoiseParams, TrialStats};
use cghz_core::protocol::{analyze, AnalysisConfig, AnalysisReport, SignCalibrator};
use cghz_core::rng::split;
use cghz_core::states::{enumerate_labels, CghzLabel};
use cghz_core::Result;
use rayon::prelude::*;

fn count(outcomes: Result<Vec<bool>>, trials: u64) -> Result<TrialStats> {
    let hits = outcomes?.into_iter().filter(|&b| b).count() as u64;
    TrialStats::from_counts(trials, hits)
}

pub fn mc_success(n: usize, m: usize, p: &NoiseParams, trials: u64, seed: u64) -> Result<TrialStats> {
    p.validate()?;
    // shape errors surface through the closed form before any trial runs
    cghz_core::noise::analytic_success(n, m, p)?;
    let cal = SignCalibrator::new();
    let outcomes = (0..trials).into_par_iter().map(|i| mc_trial(n, m, p, split(seed, i), &cal)).collect();
    count(outcomes, trials)
}

pub fn error_prob_sigma(n: usize, m: usize, sigma: f64, trials: u64, seed: u64) -> Result<TrialStats> {
    cghz_core::noise::analytic_success(n, m, &NoiseParams::ideal())?;
    let cal = SignCalibrator::new();
    let outcomes = (0..trials).into_par_iter().map(|i| sigma_trial(n, m, sigma, split(seed, i), &cal)).collect();
    count(outcomes, trials)
}

/// Run every (n, m) label `trials` times; trial t uses seed `split(seed, t)`.
/// Output is ordered by label, then trial.
pub fn verify(
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    config: &AnalysisConfig,
) -> Result<Vec<(CghzLabel, Vec<AnalysisReport>)>> {
    let labels = enumerate_labels(n, m)?;
    let cal = SignCalibrator::new();
    let jobs: Vec<(usize, u64)> = (0..labels.len()).flat_map(|l| (0..trials).map(move |t| (l, t))).collect();
    let reports: Vec<AnalysisReport> =
        jobs.par_iter().map(|&(l, t)| analyze(&labels[l], config, &cal, split(seed, t))).collect::<Result<_>>()?;
    let mut reports = reports.into_iter();
    Ok(labels.into_iter().map(|label| (label, reports.by_ref().take(trials as usize).collect())).collect())
}
