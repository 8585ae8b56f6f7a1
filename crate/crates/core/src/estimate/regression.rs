//! Least-squares fits of ζ against λ².

use serde::{Deserialize, Serialize};

use super::sweep::SweepResult;
use crate::error::{Error, Result};

/// A fit is flagged when the increase predicted by the window's initial slope
/// exceeds the observed increase by this factor (saturation).
pub const PLATEAU_RATIO: f64 = 1.25;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    /// Per unit λ².
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub lse: f64,
    /// (start step, number of points).
    pub window: (usize, usize),
    pub plateau: bool,
}

/// Ordinary least squares y = slope·x + intercept. Returns (slope, intercept, SSR).
pub fn ols(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::DegenerateWindow(format!(
            "{} x values and {} y values",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= f64::EPSILON * xs.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateWindow("all x values equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let lse = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok((slope, intercept, lse))
}

fn plateau(xs: &[f64], ys: &[f64]) -> bool {
    let head = (xs.len() / 3).max(2);
    let Ok((s0, _, _)) = ols(&xs[..head], &ys[..head]) else {
        return false;
    };
    let predicted = s0 * (xs[xs.len() - 1] - xs[0]);
    let observed = ys[ys.len() - 1] - ys[0];
    predicted > 0.0 && predicted > PLATEAU_RATIO * observed
}

fn fit_xy(xs: &[f64], ys: &[f64], window: (usize, usize)) -> Result<RegressionFit> {
    let (start, len) = window;
    if len < 3 {
        return Err(Error::DegenerateWindow(format!("window of {len} points")));
    }
    if start + len > xs.len() {
        return Err(Error::DegenerateWindow(format!(
            "window {start}..{} beyond {} rows",
            start + len,
            xs.len()
        )));
    }
    let (x, y) = (&xs[start..start + len], &ys[start..start + len]);
    let (slope, intercept, lse) = ols(x, y)?;
    Ok(RegressionFit {
        slope,
        intercept,
        lse,
        window,
        plateau: plateau(x, y),
    })
}

/// OLS of ζ on λ² over rows `start..start+len`.
pub fn fit_zeta(sweep: &SweepResult, window: (usize, usize)) -> Result<RegressionFit> {
    fit_xy(&sweep.lambda_sq(), &sweep.zeta(), window)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StartSelection {
    pub best: RegressionFit,
    pub candidates: Vec<RegressionFit>,
}

/// Fit every window of `total_steps` points and keep the smallest LSE.
/// Windows flagged as plateaued are only used if every window is flagged.
/// LSE values within 1e-12·Σζ² count as ties, resolved toward the smaller start.
pub fn select_start_step(sweep: &SweepResult, total_steps: usize) -> Result<StartSelection> {
    select_xy(&sweep.lambda_sq(), &sweep.zeta(), total_steps)
}

pub fn select_xy(xs: &[f64], ys: &[f64], total_steps: usize) -> Result<StartSelection> {
    if xs.len() < total_steps {
        return Err(Error::DegenerateWindow(format!(
            "{} rows for a {total_steps}-point window",
            xs.len()
        )));
    }
    let candidates = (0..=xs.len() - total_steps)
        .map(|s| fit_xy(xs, ys, (s, total_steps)))
        .collect::<Result<Vec<_>>>()?;
    let tol = 1e-12 * ys.iter().map(|y| y * y).sum::<f64>();
    let any_clean = candidates.iter().any(|c| !c.plateau);
    let mut best: Option<&RegressionFit> = None;
    for c in &candidates {
        if any_clean && c.plateau {
            continue;
        }
        if best.is_none_or(|b| c.lse < b.lse - tol) {
            best = Some(c);
        }
    }
    Ok(StartSelection {
        best: best.expect("at least one candidate").clone(),
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeSlope {
    /// q-register code x.
    pub outcome: usize,
    /// d(frequency)/d(λ²), an estimate of γ_x².
    pub slope: f64,
    pub intercept: f64,
    pub lse: f64,
    /// √max(slope, 0), an estimate of |γ_x|.
    pub gamma_abs: f64,
    pub plateau: bool,
}

/// Per q-register outcome (q' marginalized), OLS of frequency on λ² over `window`
/// (all rows when `None`).
pub fn estimate_eri_slopes(sweep: &SweepResult, window: Option<(usize, usize)>) -> Result<Vec<OutcomeSlope>> {
    let window = window.unwrap_or((0, sweep.rows.len()));
    let xs = sweep.lambda_sq();
    let weights = sweep
        .rows
        .iter()
        .map(|r| r.outcome_weights())
        .collect::<Result<Vec<_>>>()?;
    let nq = 1usize << sweep.n_q;
    (0..nq)
        .map(|x| {
            let ys: Vec<f64> = weights
                .iter()
                .map(|w| w.iter().enumerate().filter(|(i, _)| i % nq == x).map(|(_, p)| p).sum())
                .collect();
            let f = fit_xy(&xs, &ys, window)?;
            Ok(OutcomeSlope {
                outcome: x,
                slope: f.slope,
                intercept: f.intercept,
                lse: f.lse,
                gamma_abs: f.slope.max(0.0).sqrt(),
                plateau: f.plateau,
            })
        })
        .collect()
}
