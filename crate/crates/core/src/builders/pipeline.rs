//! Full pipeline circuits: U_E^sqrt · U_INT(λ) with readout on q'.

use serde::{Deserialize, Serialize};

use super::angles::{default_normalizer, ratios, target_for, AngleTable, Variant};
use super::difference::build_difference;
use super::uint::{build_uint, prepare_amplitudes};
use super::ue::build_ue;
use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::hfdata::EriBlock;
use crate::statevec;

/// One point of a λ sweep. The q register is qubits 0..Q, the readout q' is Q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec {
    pub block: EriBlock,
    pub lambda: f64,
    /// Base state y; defaults to the lowest code with γ_y = 0.
    pub base_state: Option<usize>,
    /// C_e in Hartree; defaults to the smallest |Δε| of the block.
    pub c_e: Option<f64>,
    /// Zero the U_E rotation on y so ζ(0) = 0 and the λ² slope is C_e·ε_part exactly.
    pub mask_base_state: bool,
}

impl PipelineSpec {
    pub fn new(block: EriBlock, lambda: f64) -> Self {
        PipelineSpec {
            block,
            lambda,
            base_state: None,
            c_e: None,
            mask_base_state: true,
        }
    }

    pub fn base_state(&self) -> Result<usize> {
        match self.base_state {
            Some(y) => Ok(y),
            None => self.block.default_base_state(),
        }
    }

    pub fn c_e(&self) -> Result<f64> {
        match self.c_e {
            Some(c) => Ok(c),
            None => default_normalizer(&self.block),
        }
    }

    pub fn readout(&self) -> usize {
        self.block.n_qubits()
    }

    pub fn n_qubits(&self) -> usize {
        self.block.n_qubits() + 1
    }

    pub fn angles(&self) -> Result<AngleTable> {
        pipeline_angles(&self.block, self.c_e()?, self.base_state()?, self.mask_base_state)
    }
}

/// Sqrt-variant angles, optionally with the base-state rotation removed.
pub fn pipeline_angles(block: &EriBlock, c_e: f64, y: usize, mask_base_state: bool) -> Result<AngleTable> {
    let mut targets: Vec<f64> = ratios(block, c_e)?
        .into_iter()
        .map(|r| target_for(r, Variant::Sqrt))
        .collect();
    if mask_base_state {
        *targets
            .get_mut(y)
            .ok_or_else(|| Error::IndexOutOfRange(format!("base state {y}")))? = 0.0;
    }
    AngleTable::from_targets(targets, Variant::Sqrt, c_e, Polarity::Zero)
}

/// U_INT(λ) followed by U_E.
pub fn build_pipeline(spec: &PipelineSpec, angles: &AngleTable) -> Result<Circuit> {
    let q = spec.block.n_qubits();
    if angles.n_control_qubits != q {
        return Err(Error::Dimension(format!(
            "angle table for {} qubits, block has {q}",
            angles.n_control_qubits
        )));
    }
    let mut c = build_uint(&spec.block, spec.lambda, spec.base_state()?)?.widen(q + 1);
    c.extend(&build_ue(angles)?);
    Ok(c)
}

/// ζ = Pr[q' = 1] from exact simulation.
pub fn exact_zeta(spec: &PipelineSpec) -> Result<f64> {
    let c = build_pipeline(spec, &spec.angles()?)?;
    Ok(statevec::run(&c)?.marginal(spec.readout(), 1))
}

/// Antisymmetrized-integral circuit for a square block (q_r = q_s).
///
/// Exact preparation of γ/‖γ‖ on q, then H(q''), controlled SWAP of the r and
/// s sub-registers, H(q''), then U_E^sqrt. Returns (circuit, q', q'').
/// Pr[q''=1 ∧ q'=1] = (C_e / 4‖γ‖²) Σ_x (γ_x − γ_{x̄})² / |Δε_x|, x̄ the r↔s swap of x.
pub fn build_antisym_pipeline(block: &EriBlock, c_e: f64) -> Result<(Circuit, usize, usize)> {
    if block.q_r != block.q_s {
        return Err(Error::Dimension(format!(
            "antisymmetrization needs q_r = q_s, got {} and {}",
            block.q_r, block.q_s
        )));
    }
    let q = block.n_qubits();
    let (readout, anc) = (q, q + 1);
    let mut swap = Circuit::new(q);
    for i in 0..block.q_r {
        swap.push(Gate::Swap(i, block.q_r + i));
    }
    let register: Vec<usize> = (0..q).collect();
    let mut c = prepare_amplitudes(&block.gamma)?.widen(q + 2);
    c.extend(&build_difference(&Circuit::new(q), &swap, &register, anc, q + 2)?);
    let angles = AngleTable::from_targets(
        ratios(block, c_e)?
            .into_iter()
            .map(|r| target_for(r, Variant::Sqrt))
            .collect(),
        Variant::Sqrt,
        c_e,
        Polarity::Zero,
    )?;
    c.extend(&build_ue(&angles)?);
    Ok((c, readout, anc))
}
