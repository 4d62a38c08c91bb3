//! CSV tables. Numbers carry 12 significant digits in plain decimal with a
//! '.' separator and no grouping, so files diff cleanly across tools.

use cghz_core::cavity::{empty_reflection, phase_of, reflection, CavityParams};
use cghz_core::noise::TrialStats;
use serde::Serialize;

pub const NOISE_HEADER: [&str; 10] =
    ["n", "m", "eta_p", "eta_a", "p_error", "sigma", "trials", "analytic", "estimate", "std_error"];

pub const CAVITY_HEADER: [&str; 8] = ["omega_p", "re_r", "im_r", "abs_r", "phi", "re_r0", "im_r0", "phi0"];

/// `x` rounded to 12 significant digits, written without an exponent and
/// without trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i64 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let mut digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
    }
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// One noise or detuning result. Unused channels stay empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseRow {
    pub n: usize,
    pub m: usize,
    pub eta_p: f64,
    pub eta_a: f64,
    pub p_error: Option<f64>,
    pub sigma: Option<f64>,
    pub trials: u64,
    pub analytic: Option<f64>,
    pub estimate: f64,
    pub std_error: f64,
}

impl NoiseRow {
    pub fn from_stats(n: usize, m: usize, stats: &TrialStats) -> Self {
        Self {
            n,
            m,
            eta_p: 1.0,
            eta_a: 1.0,
            p_error: None,
            sigma: None,
            trials: stats.trials,
            analytic: None,
            estimate: stats.estimate,
            std_error: stats.std_error,
        }
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            fmt_num(self.eta_p),
            fmt_num(self.eta_a),
            opt_num(self.p_error),
            opt_num(self.sigma),
            self.trials.to_string(),
            opt_num(self.analytic),
            fmt_num(self.estimate),
            fmt_num(self.std_error),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityRow {
    pub omega_p: f64,
    pub re_r: f64,
    pub im_r: f64,
    pub abs_r: f64,
    pub phi: f64,
    pub re_r0: f64,
    pub im_r0: f64,
    pub phi0: f64,
}

impl CavityRow {
    pub fn at(p: &CavityParams) -> cghz_core::Result<Self> {
        let r = reflection(p)?;
        let r0 = empty_reflection(p)?;
        Ok(Self {
            omega_p: p.omega_p,
            re_r: r.re,
            im_r: r.im,
            abs_r: r.norm(),
            phi: phase_of(r),
            re_r0: r0.re,
            im_r0: r0.im,
            phi0: phase_of(r0),
        })
    }

    fn record(&self) -> Vec<String> {
        [self.omega_p, self.re_r, self.im_r, self.abs_r, self.phi, self.re_r0, self.im_r0, self.phi0]
            .into_iter()
            .map(fmt_num)
            .collect()
    }
}

/// Reflection coefficients over `points` evenly spaced probe frequencies.
pub fn cavity_sweep(base: &CavityParams, min: f64, max: f64, points: usize) -> cghz_core::Result<Vec<CavityRow>> {
    (0..points)
        .map(|i| {
            let omega_p = if points == 1 { min } else { min + (max - min) * i as f64 / (points - 1) as f64 };
            CavityRow::at(&CavityParams { omega_p, ..*base })
        })
        .collect()
}

fn write_table<I>(header: &[&str], records: I) -> csv::Result<String>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn noise_csv(rows: &[NoiseRow]) -> csv::Result<String> {
    write_table(&NOISE_HEADER, rows.iter().map(NoiseRow::record))
}

pub fn cavity_csv(rows: &[CavityRow]) -> csv::Result<String> {
    write_table(&CAVITY_HEADER, rows.iter().map(CavityRow::record))
}

/// Any flat table given as header plus string records.
pub fn table_csv(header: &[&str], records: Vec<Vec<String>>) -> csv::Result<String> {
    write_table(header, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cghz_core::cavity::ideal_params;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.561), "0.561");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(-2.5), "-2.5");
        assert_eq!(fmt_num(1e-5), "0.00001");
        assert_eq!(fmt_num(PI), "3.14159265359");
        assert_eq!(fmt_num(123_456_789_012_345.0), "123456789012000");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_num(f64::NAN), "NaN");
    }

    #[test]
    fn noise_table() {
        let row = NoiseRow {
            n: 3,
            m: 2,
            eta_p: 0.9,
            eta_a: 0.9,
            p_error: Some(0.05),
            sigma: None,
            trials: 10,
            analytic: Some(0.5609655),
            estimate: 0.6,
            std_error: 0.154919333848,
        };
        let text = noise_csv(&[row]).unwrap();
        assert_eq!(
            text,
            "n,m,eta_p,eta_a,p_error,sigma,trials,analytic,estimate,std_error\n3,2,0.9,0.9,0.05,,10,0.5609655,0.6,0.154919333848\n"
        );
    }

    #[test]
    fn sweep_hits_the_working_point() {
        let base = ideal_params(1.0).unwrap();
        let rows = cavity_sweep(&base, -2.0, 2.0, 81).unwrap();
        assert_eq!(rows.len(), 81);
        let at = rows.iter().find(|r| r.omega_p == -0.5).unwrap();
        assert!((at.phi - PI).abs() < 1e-9);
        assert!((at.phi0 - FRAC_PI_2).abs() < 1e-12);
        assert!(rows.iter().all(|r| (r.abs_r - 1.0).abs() < 1e-12));
        let text = cavity_csv(&rows).unwrap();
        assert!(text.starts_with("omega_p,re_r,im_r,abs_r,phi,re_r0,im_r0,phi0\n-2,"));
        assert_eq!(text.lines().count(), 82);
    }

    #[test]
    fn uncoupled_sweep_has_equal_phases() {
        let base = CavityParams { lambda: 0.0, ..ideal_params(1.0).unwrap() };
        for r in cavity_sweep(&base, -2.0, 2.0, 41).unwrap() {
            assert_eq!(r.phi, r.phi0);
        }
    }
}
