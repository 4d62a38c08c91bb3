//! JSON shapes for analysis and verification results.

use cghz_core::protocol::AnalysisReport;
use cghz_core::states::CghzLabel;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub n: usize,
    pub m: usize,
    pub input_label: Option<String>,
    pub identified_label: String,
    pub signature_raw: String,
    pub signature_d: String,
    pub reduction_outcomes: Vec<String>,
    pub step2_readout: String,
    pub sign_flip: bool,
    pub seed: u64,
    pub correct: bool,
    pub norms: Vec<f64>,
}

impl From<&AnalysisReport> for ReportJson {
    fn from(r: &AnalysisReport) -> Self {
        Self {
            n: r.n,
            m: r.m,
            input_label: r.input_text(),
            identified_label: r.identified.text(),
            signature_raw: r.signature_raw(),
            signature_d: r.signature_d(),
            reduction_outcomes: r.reduction_text(),
            step2_readout: r.readout_text(),
            sign_flip: r.frame.sign_flip,
            seed: r.seed,
            correct: r.correct(),
            norms: r.norms.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelTally {
    pub label: String,
    pub trials: u64,
    pub correct: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub total: u64,
    pub correct: u64,
    pub labels: Vec<LabelTally>,
    /// Transcripts of every misidentified run, by label then seed.
    pub failures: Vec<ReportJson>,
}

impl VerifySummary {
    pub fn all_correct(&self) -> bool {
        self.correct == self.total
    }
}

/// Summary of per-label runs; `runs` holds one report vector per label.
pub fn summarize(
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    runs: &[(CghzLabel, Vec<AnalysisReport>)],
) -> VerifySummary {
    let labels: Vec<LabelTally> = runs
        .iter()
        .map(|(label, reports)| LabelTally {
            label: label.text(),
            trials: reports.len() as u64,
            correct: reports.iter().filter(|r| r.correct()).count() as u64,
        })
        .collect();
    let failures =
        runs.iter().flat_map(|(_, reports)| reports.iter().filter(|r| !r.correct()).map(ReportJson::from)).collect();
    VerifySummary {
        n,
        m,
        trials,
        seed,
        total: labels.iter().map(|t| t.trials).sum(),
        correct: labels.iter().map(|t| t.correct).sum(),
        labels,
        failures,
    }
}
