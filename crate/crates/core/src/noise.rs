//! Imperfect detectors and detuned cavities.
//!
//! A run needs N(m − 2) photon clicks during the m-reduction and 2N − 1 atom
//! clicks (2N − 2 parity atoms plus the sign readout). With independent
//! efficiencies η_p and η_a and a misidentification probability P_error on
//! completed runs, the success probability is
//! η_p^{N(m−2)} · η_a^{2N−1} · (1 − P_error). The Monte Carlo side draws
//! exactly those clicks, so the closed form is its exact expectation.
//!
//! P_error and a phase detuning σ are separate error channels and are never
//! combined in one run.

use num_traits::Float;
use rand::Rng;

use crate::cavity::detuned_phases;
use crate::protocol::{analyze, run, AnalysisConfig, Detectors, RunOutcome, SignCalibrator};
use crate::rng::{rng_from_seed, split, SimRng};
use crate::states::{CghzLabel, Sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub eta_p: f64,
    pub eta_a: f64,
    pub p_error: f64,
}

impl NoiseParams {
    pub fn new(eta_p: f64, eta_a: f64, p_error: f64) -> Result<Self> {
        let p = Self { eta_p, eta_a, p_error };
        p.validate()?;
        Ok(p)
    }

    pub fn ideal() -> Self {
        Self { eta_p: 1.0, eta_a: 1.0, p_error: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(self.eta_p) {
            return Err(Error::InvalidNoise("eta_p must lie in [0, 1]"));
        }
        if !unit(self.eta_a) {
            return Err(Error::InvalidNoise("eta_a must lie in [0, 1]"));
        }
        if !unit(self.p_error) {
            return Err(Error::InvalidNoise("p_error must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub std_error: f64,
}

impl TrialStats {
    pub fn from_counts(trials: u64, successes: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        let estimate = successes as f64 / trials as f64;
        let std_error = Float::sqrt(estimate * (1.0 - estimate) / trials as f64);
        Ok(Self { trials, successes, estimate, std_error })
    }
}

fn check_shape(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidLabel(alloc::format!("need n >= 2 and m >= 2, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// Closed-form success probability.
pub fn analytic_success(n: usize, m: usize, p: &NoiseParams) -> Result<f64> {
    check_shape(n, m)?;
    p.validate()?;
    let photon_clicks = (n * (m - 2)) as i32;
    let atom_clicks = (2 * n - 1) as i32;
    Ok(Float::powi(p.eta_p, photon_clicks) * Float::powi(p.eta_a, atom_clicks) * (1.0 - p.p_error))
}

/// Uniformly random label of the (n, m) family.
pub fn random_label(n: usize, m: usize, rng: &mut SimRng) -> Result<CghzLabel> {
    let groups = 1usize << (n - 1);
    let k = rng.gen_range(1..=groups);
    let sign = Sign::from_bit(rng.gen::<bool>());
    CghzLabel::from_k(n, m, k, sign)
}

/// One loss-model trial keyed by its own seed. Draws a label, an analysis
/// seed and, for completed runs, the P_error coin, in that order.
pub fn mc_trial(n: usize, m: usize, p: &NoiseParams, trial_seed: u64, calibrator: &SignCalibrator) -> Result<bool> {
    let mut rng = rng_from_seed(trial_seed);
    let label = random_label(n, m, &mut rng)?;
    let analysis_seed = rng.gen::<u64>();
    let config =
        AnalysisConfig { detectors: Some(Detectors { eta_p: p.eta_p, eta_a: p.eta_a }), ..AnalysisConfig::default() };
    match run(&label, &config, calibrator, analysis_seed)? {
        RunOutcome::Lost => Ok(false),
        RunOutcome::Completed(report) => {
            let misidentified = rng.gen::<f64>() < p.p_error;
            Ok(report.correct() && !misidentified)
        }
    }
}

/// Monte Carlo success rate. Trial i uses seed `split(seed, i)`.
pub fn mc_success(n: usize, m: usize, p: &NoiseParams, trials: u64, seed: u64) -> Result<TrialStats> {
    check_shape(n, m)?;
    p.validate()?;
    let calibrator = SignCalibrator::new();
    let mut successes = 0;
    for i in 0..trials {
        successes += u64::from(mc_trial(n, m, p, split(seed, i), &calibrator)?);
    }
    TrialStats::from_counts(trials, successes)
}

/// One detuned trial with perfect detectors; true when misidentified.
pub fn sigma_trial(n: usize, m: usize, sigma: f64, trial_seed: u64, calibrator: &SignCalibrator) -> Result<bool> {
    let mut rng = rng_from_seed(trial_seed);
    let label = random_label(n, m, &mut rng)?;
    let analysis_seed = rng.gen::<u64>();
    let config = AnalysisConfig { phases: detuned_phases(sigma), ..AnalysisConfig::default() };
    let report = analyze(&label, &config, calibrator, analysis_seed)?;
    Ok(!report.correct())
}

/// Misidentification rate under a Faraday-phase detuning σ.
pub fn error_prob_sigma(n: usize, m: usize, sigma: f64, trials: u64, seed: u64) -> Result<TrialStats> {
    check_shape(n, m)?;
    let calibrator = SignCalibrator::new();
    let mut errors = 0;
    for i in 0..trials {
        errors += u64::from(sigma_trial(n, m, sigma, split(seed, i), &calibrator)?);
    }
    TrialStats::from_counts(trials, errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_point() -> NoiseParams {
        NoiseParams::new(0.9, 0.9, 0.05).unwrap()
    }

    #[test]
    fn analytic_values() {
        let p = reference_point();
        // 0.9^5 · 0.95, then extra factors of 0.9^3 and 0.9^6
        let p32 = 0.590_49 * 0.95;
        assert!((analytic_success(3, 2, &p).unwrap() - p32).abs() < 1e-15);
        assert!((analytic_success(3, 2, &p).unwrap() - 0.561).abs() < 1e-3);
        assert!((analytic_success(3, 3, &p).unwrap() - 0.409).abs() < 1e-3);
        assert!((analytic_success(4, 3, &p).unwrap() - 0.298).abs() < 1e-3);
        assert_eq!(analytic_success(4, 3, &NoiseParams::ideal()).unwrap(), 1.0);
    }

    #[test]
    fn analytic_factorizes() {
        let p = NoiseParams::new(0.83, 0.71, 0.1).unwrap();
        for n in 2..6 {
            for m in 2..6 {
                let lhs = analytic_success(n, m, &p).unwrap();
                let rhs = analytic_success(n, 2, &p).unwrap() * p.eta_p.powi((n * (m - 2)) as i32);
                assert!((lhs - rhs).abs() <= 1e-15 * rhs.max(1e-300));
            }
        }
    }

    #[test]
    fn domain_checks() {
        assert!(NoiseParams::new(1.1, 0.9, 0.0).is_err());
        assert!(NoiseParams::new(0.9, -0.1, 0.0).is_err());
        assert!(NoiseParams::new(0.9, 0.9, f64::NAN).is_err());
        assert!(analytic_success(1, 2, &NoiseParams::ideal()).is_err());
        assert_eq!(TrialStats::from_counts(0, 0), Err(Error::NoTrials));
    }

    #[test]
    fn stats_formula() {
        let s = TrialStats::from_counts(400, 100).unwrap();
        assert_eq!(s.estimate, 0.25);
        assert!((s.std_error - (0.25f64 * 0.75 / 400.0).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn lossless_is_certain() {
        let s = mc_success(3, 3, &NoiseParams::ideal(), 200, 9).unwrap();
        assert_eq!(s.successes, 200);
        assert_eq!(s.estimate, 1.0);
    }

    #[test]
    fn blind_detectors_never_succeed() {
        let p = NoiseParams::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(mc_success(2, 3, &p, 50, 1).unwrap().successes, 0);
        // m = 2 needs no photon clicks
        assert_eq!(mc_success(2, 2, &p, 50, 1).unwrap().successes, 50);
    }

    #[test]
    fn mc_is_deterministic() {
        let p = reference_point();
        assert_eq!(mc_success(3, 2, &p, 300, 4).unwrap(), mc_success(3, 2, &p, 300, 4).unwrap());
    }

    #[test]
    fn mc_tracks_analytic() {
        let p = reference_point();
        let s = mc_success(3, 2, &p, 4000, 11).unwrap();
        let a = analytic_success(3, 2, &p).unwrap();
        assert!((s.estimate - a).abs() < 4.0 * s.std_error, "{} vs {a}", s.estimate);
    }

    #[test]
    fn zero_detuning_is_error_free() {
        let s = error_prob_sigma(3, 2, 0.0, 300, 0).unwrap();
        assert_eq!(s.successes, 0);
        assert_eq!(s.estimate, 0.0);
    }

    #[test]
    fn large_detuning_causes_errors() {
        let s = error_prob_sigma(3, 2, 0.6, 400, 0).unwrap();
        assert!(s.successes > 0);
    }
}
