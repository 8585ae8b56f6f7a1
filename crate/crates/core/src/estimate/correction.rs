//! Denominator read-out with the lite/all idle-gate correction.
//!
//! For input x on the q register, outcome x means q' = 0 and outcome x + 2^Q
//! means q' = 1. `p` are counts from the full U_E, `P̃` from the lite circuit
//! that keeps only the gates acting on that input:
//!
//! C_e/|Δε_x| ≈ F⁻¹ · p^x_{x+2^Q} / (p^x_x + p^x_{x+2^Q}),
//! F = mean over n ≠ 0 of (P̃ⁿ_n + pⁿ_{n+2^Q}) / (P̃ⁿ_n + P̃ⁿ_{n+2^Q}).

use serde::{Deserialize, Serialize};

use crate::builders::{build_ue_lite, build_ue_with, AngleTable, UeOptions};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::par;
use crate::statevec::{self, CountsTable};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenominatorEstimate {
    pub input: usize,
    /// p^x_{x+2^Q} / (p^x_x + p^x_{x+2^Q}).
    pub raw_ratio: f64,
    /// raw_ratio / F, an estimate of C_e/|Δε_x|.
    pub corrected: f64,
    /// F, shared by all inputs.
    pub factor: f64,
}

fn check_tables(name: &str, t: &[Vec<f64>]) -> Result<usize> {
    let n_in = t.len();
    if n_in < 2 || !n_in.is_power_of_two() {
        return Err(Error::Counts(format!("{name}: {n_in} inputs, expected 2^Q with Q ≥ 1")));
    }
    for (x, row) in t.iter().enumerate() {
        if row.len() != 2 * n_in {
            return Err(Error::Counts(format!(
                "{name}: input {x} has {} outcomes, expected {}",
                row.len(),
                2 * n_in
            )));
        }
    }
    Ok(n_in)
}

/// Apply the correction to dense per-input outcome weights (counts or
/// probabilities; only ratios matter). `all[x][k]` is the weight of outcome k
/// on input x.
pub fn correct_weights(all: &[Vec<f64>], lite: &[Vec<f64>]) -> Result<Vec<DenominatorEstimate>> {
    let n_in = check_tables("all", all)?;
    if check_tables("lite", lite)? != n_in {
        return Err(Error::Counts(format!(
            "all covers {n_in} inputs, lite covers {}",
            lite.len()
        )));
    }
    let pair = |t: &[Vec<f64>], x: usize, name: &str| -> Result<(f64, f64)> {
        let (a, b) = (t[x][x], t[x][x + n_in]);
        if a + b <= 0.0 {
            return Err(Error::ZeroDenominator(format!(
                "{name} input {x} has no counts on outcomes {x} and {}",
                x + n_in
            )));
        }
        Ok((a, b))
    };
    // Input 0 carries the fully controlled gate even in the lite circuit.
    let mut acc = 0.0;
    for n in 1..n_in {
        let (lt0, lt1) = pair(lite, n, "lite")?;
        let p1 = all[n][n + n_in];
        acc += (lt0 + p1) / (lt0 + lt1);
    }
    let factor = acc / (n_in - 1) as f64;
    if !(factor > 0.0) {
        return Err(Error::ZeroDenominator("correction factor is zero".into()));
    }
    (0..n_in)
        .map(|x| {
            let (p0, p1) = pair(all, x, "all")?;
            let raw_ratio = p1 / (p0 + p1);
            Ok(DenominatorEstimate {
                input: x,
                raw_ratio,
                corrected: raw_ratio / factor,
                factor,
            })
        })
        .collect()
}

/// [`correct_weights`] on count tables, one per input in input order.
pub fn correct_denominators(all: &[CountsTable], lite: &[CountsTable]) -> Result<Vec<DenominatorEstimate>> {
    let dense = |ts: &[CountsTable]| -> Result<Vec<Vec<f64>>> {
        ts.iter()
            .map(|t| Ok(t.to_dense()?.into_iter().map(|c| c as f64).collect()))
            .collect()
    };
    correct_weights(&dense(all)?, &dense(lite)?)
}

fn with_input(ue: &Circuit, input: usize, q: usize) -> Circuit {
    let mut c = Circuit::new(q + 1);
    for b in (0..q).filter(|b| input >> b & 1 == 1) {
        c.push(Gate::X(b));
    }
    c.extend(ue);
    c
}

/// Exact outcome probabilities of U_E (full or lite) on every basis input of
/// the q register, in the default layout (controls 0..Q, readout Q).
pub fn simulate_ue_probabilities(angles: &AngleTable, lite: bool) -> Result<Vec<Vec<f64>>> {
    let q = angles.n_control_qubits;
    let opts = UeOptions::default();
    let full = build_ue_with(angles, &opts)?;
    par::try_map_indexed(1 << q, |x| {
        let ue = if lite { build_ue_lite(angles, x, &opts)? } else { full.clone() };
        Ok(statevec::probabilities(&statevec::run(&with_input(&ue, x, q))?))
    })
}

/// Sampled counts of U_E on every basis input; input x draws on stream `stream_base + x`.
pub fn simulate_ue_counts(
    angles: &AngleTable,
    lite: bool,
    shots: u64,
    seed: u64,
    stream_base: u64,
) -> Result<Vec<CountsTable>> {
    let q = angles.n_control_qubits;
    simulate_ue_probabilities(angles, lite)?
        .iter()
        .enumerate()
        .map(|(x, p)| statevec::sample_probabilities(p, q + 1, shots, seed, stream_base + x as u64))
        .collect()
}

/// Apply a diagonal error to ideal per-input probabilities: the amplitude on
/// outcome x is scaled by (1 − δ₀) and on x + 2^Q by (1 − δ₁). The lost weight
/// is spread evenly over the remaining outcomes so each input still sums to one.
pub fn synthetic_diagonal_counts(ideal: &[Vec<f64>], delta0: f64, delta1: f64) -> Result<Vec<Vec<f64>>> {
    let n_in = check_tables("ideal", ideal)?;
    for d in [delta0, delta1] {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::Counts(format!("diagonal error {d} outside [0, 1]")));
        }
    }
    let (k0, k1) = ((1.0 - delta0).powi(2), (1.0 - delta1).powi(2));
    Ok(ideal
        .iter()
        .enumerate()
        .map(|(x, row)| {
            let mut out = row.clone();
            out[x] *= k0;
            out[x + n_in] *= k1;
            let lost = row[x] + row[x + n_in] - out[x] - out[x + n_in];
            let share = lost / (out.len() - 2) as f64;
            for (k, v) in out.iter_mut().enumerate() {
                if k != x && k != x + n_in {
                    *v += share;
                }
            }
            out
        })
        .collect())
}
