//! Separation sweep: FD and WKB splittings and rates versus `s`.

use super::wkb::{splitting_to_rate, CalibratedWell};
use super::WellError;
use serde::Serialize;

/// Sweep range limits, A.
pub const SWEEP_S_MIN_A: f64 = 3.84;
pub const SWEEP_S_MAX_A: f64 = 20.0;

/// One row of the separation sweep. Missing values mean that quantity could
/// not be computed at this separation; `status` says why.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub s_angstrom: f64,
    pub splitting_fd_ev: Option<f64>,
    pub splitting_wkb_ev: Option<f64>,
    pub rate_fd_hz: Option<f64>,
    pub rate_wkb_hz: Option<f64>,
    pub status: String,
}

/// Sweep the calibrated symmetric well over `s_values` (sorted ascending in
/// the output). Per-point failures are recorded in-row; the sweep continues.
pub fn sweep_separation(well: &CalibratedWell, s_values: &[f64]) -> Vec<SweepRow> {
    let mut ss: Vec<f64> = s_values.to_vec();
    ss.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ss.iter()
        .map(|&s| {
            if !(SWEEP_S_MIN_A..=SWEEP_S_MAX_A).contains(&s) {
                return SweepRow {
                    s_angstrom: s,
                    splitting_fd_ev: None,
                    splitting_wkb_ev: None,
                    rate_fd_hz: None,
                    rate_wkb_hz: None,
                    status: WellError::SeparationOutOfRange(s).to_string(),
                };
            }
            let mut status = String::from("ok");
            let fd = match well.fd_splitting_at(s) {
                Ok(d) => Some(d),
                Err(e) => {
                    status = format!("fd: {e}");
                    None
                }
            };
            let wkb = match well.wkb_splitting_at(s) {
                Ok(d) => Some(d),
                Err(e) => {
                    if status == "ok" {
                        status = format!("wkb: {e}");
                    } else {
                        status.push_str(&format!("; wkb: {e}"));
                    }
                    None
                }
            };
            SweepRow {
                s_angstrom: s,
                splitting_fd_ev: fd,
                splitting_wkb_ev: wkb,
                rate_fd_hz: fd.map(|d| splitting_to_rate(d).unwrap()),
                rate_wkb_hz: wkb.map(|d| splitting_to_rate(d).unwrap()),
                status,
            }
        })
        .collect()
}

/// Least-squares line through (x, ln y).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fit ln(y) = slope*x + intercept. Returns None with fewer than two points
/// or any non-positive y.
pub fn fit_log_linear(points: &[(f64, f64)]) -> Option<LogLinearFit> {
    if points.len() < 2 || points.iter().any(|&(_, y)| y <= 0.0) {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ls: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let ml = ls.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxl: f64 = xs.iter().zip(&ls).map(|(x, l)| (x - mx) * (l - ml)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxl / sxx;
    let intercept = ml - slope * mx;
    let ss_tot: f64 = ls.iter().map(|l| (l - ml) * (l - ml)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ls)
        .map(|(x, l)| {
            let r = l - (slope * x + intercept);
            r * r
        })
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(LogLinearFit { slope, intercept, r_squared })
}
