//! U_E: loads C_e/|Δε_x| onto a readout qubit, block-diagonally in the q register.

use super::angles::{ratios, solve_angles, target_for, AngleTable, Variant};
use super::{controlled_ry, pattern_controlled_ry, ZERO_TOL};
use crate::circuit::{Circuit, Polarity};
use crate::error::{Error, Result};
use crate::hfdata::EriBlock;

#[derive(Clone, Debug)]
pub struct UeOptions {
    /// Physical index of control qubit i. Defaults to 0..Q.
    pub controls: Option<Vec<usize>>,
    /// Readout qubit q'. Defaults to Q.
    pub readout: Option<usize>,
    /// Register width. Defaults to max index + 1.
    pub n_qubits: Option<usize>,
    /// Skip gates whose |α| ≤ 1e-12.
    pub prune_zero: bool,
}

impl Default for UeOptions {
    fn default() -> Self {
        UeOptions {
            controls: None,
            readout: None,
            n_qubits: None,
            prune_zero: true,
        }
    }
}

impl UeOptions {
    fn resolve(&self, q: usize) -> Result<(Vec<usize>, usize, usize)> {
        let controls = self.controls.clone().unwrap_or_else(|| (0..q).collect());
        if controls.len() != q {
            return Err(Error::Dimension(format!(
                "{} control qubits for a {q}-qubit block",
                controls.len()
            )));
        }
        let readout = self.readout.unwrap_or(q);
        let max = controls.iter().copied().chain([readout]).max().unwrap_or(0);
        let n = self.n_qubits.unwrap_or(max + 1);
        Ok((controls, readout, n))
    }
}

/// U_E with default register layout (controls 0..Q, readout Q).
pub fn build_ue(angles: &AngleTable) -> Result<Circuit> {
    build_ue_with(angles, &UeOptions::default())
}

/// Gates ordered by control count (Ry, then CRy, then C²Ry, …), ascending mask within a count.
pub fn build_ue_with(angles: &AngleTable, opts: &UeOptions) -> Result<Circuit> {
    let q = angles.n_control_qubits;
    let (controls, readout, n) = opts.resolve(q)?;
    let mut c = Circuit::new(n);
    let mut masks: Vec<usize> = (0..angles.angles.len()).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    for m in masks {
        let a = angles.angles[m];
        if opts.prune_zero && a.abs() <= ZERO_TOL {
            continue;
        }
        let ctl: Vec<usize> = (0..q).filter(|b| m >> b & 1 == 1).map(|b| controls[b]).collect();
        c.try_push(controlled_ry(&ctl, readout, a, angles.polarity))?;
    }
    Ok(c)
}

/// The direct construction: one fully controlled Ry per input carrying its
/// whole target rotation (zero targets skipped).
pub fn build_ue_naive(block: &EriBlock, variant: Variant, c_e: f64) -> Result<Circuit> {
    // Validates the block the same way the subset construction does.
    solve_angles(block, variant, c_e)?;
    let q = block.n_qubits();
    let controls: Vec<usize> = (0..q).collect();
    let mut c = Circuit::new(q + 1);
    for (z, r) in ratios(block, c_e)?.into_iter().enumerate() {
        let t = target_for(r, variant);
        if t.abs() <= ZERO_TOL {
            continue;
        }
        for g in pattern_controlled_ry(&controls, z, q, t) {
            c.try_push(g)?;
        }
    }
    Ok(c)
}

/// The gates of [`build_ue_with`] that act on basis input `input`; idle gates are dropped.
pub fn build_ue_lite(angles: &AngleTable, input: usize, opts: &UeOptions) -> Result<Circuit> {
    let q = angles.n_control_qubits;
    if input >> q != 0 {
        return Err(Error::IndexOutOfRange(format!("input {input} for {q} control qubits")));
    }
    let fires = |m: usize| match angles.polarity {
        Polarity::One => m & !input == 0,
        Polarity::Zero => m & input == 0,
    };
    let mut lite = angles.clone();
    for (m, a) in lite.angles.iter_mut().enumerate() {
        if !fires(m) {
            *a = 0.0;
        }
    }
    build_ue_with(&lite, &UeOptions { prune_zero: true, ..opts.clone() })
}
