//! The whole experiment for one configuration: sweep, select, fit, assemble.

use serde::{Deserialize, Serialize};

use super::assemble::{assemble_energy, Assembly, PartFit, SignRule};
use super::config::SweepConfig;
use super::regression::{select_start_step, RegressionFit, StartSelection};
use super::sweep::{find_block, run_sweep, SweepResult};
use crate::error::{Error, Result};
use crate::hfdata::{partition, HartreeFockData, PartitionScheme};
use crate::mp2::block_energy;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    pub part: String,
    pub sweep: SweepResult,
    pub selection: StartSelection,
    pub fit: RegressionFit,
    /// Hartree.
    pub epsilon: f64,
    /// Direct-summation ε_part, Hartree.
    pub oracle_epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub parts: Vec<PartReport>,
    /// `None` when the requested parts do not cover the sign rule.
    pub assembly: Option<Assembly>,
    /// Direct-summation energy over the same blocks, Hartree.
    pub oracle_e2: f64,
    pub relative_error: Option<f64>,
}

/// Helium-style rule for one occupied orbital and two virtual groups,
/// otherwise per-block denominator signs.
pub fn sign_rule(data: &HartreeFockData) -> Result<SignRule> {
    let blocks = partition(data, &PartitionScheme::standard(data))?;
    let labels: Vec<&str> = blocks.iter().map(|b| b.label.as_str()).collect();
    if data.n_occupied == 1 && labels == ["I", "II", "III", "IV"] && blocks.iter().all(|b| b.is_ground_state()) {
        Ok(SignRule::HeliumGround)
    } else {
        SignRule::from_blocks(&blocks)
    }
}

/// Σ sign·ε over the standard partition, from direct summation.
pub fn oracle_energy(data: &HartreeFockData) -> Result<f64> {
    let blocks = partition(data, &PartitionScheme::standard(data))?;
    let SignRule::Blocks(signs) = SignRule::from_blocks(&blocks)? else {
        unreachable!("from_blocks returns per-block signs")
    };
    let mut e = 0.0;
    for b in &blocks {
        e += signs.get(&b.label).copied().unwrap_or(0.0) * block_energy(b)?;
    }
    Ok(e)
}

pub fn run_part(data: &HartreeFockData, part: &str, config: &SweepConfig) -> Result<PartReport> {
    let sweep = run_sweep(data, part, config)?;
    let selection = select_start_step(&sweep, config.window(part)?)
        .map_err(|e| e.context(format!("part {part}")))?;
    let fit = selection.best.clone();
    let epsilon = PartFit {
        part: part.to_string(),
        slope: fit.slope,
        c_e: sweep.c_e,
    }
    .epsilon()?;
    Ok(PartReport {
        part: part.to_string(),
        oracle_epsilon: block_energy(&find_block(data, part)?)?,
        sweep,
        selection,
        fit,
        epsilon,
    })
}

pub fn run_pipeline(data: &HartreeFockData, config: &SweepConfig) -> Result<PipelineReport> {
    config.validate()?;
    let parts = config
        .parts
        .iter()
        .map(|p| run_part(data, p, config))
        .collect::<Result<Vec<_>>>()?;
    let fits: Vec<PartFit> = parts
        .iter()
        .map(|p| PartFit {
            part: p.part.clone(),
            slope: p.fit.slope,
            c_e: p.sweep.c_e,
        })
        .collect();
    let assembly = match assemble_energy(&fits, &sign_rule(data)?) {
        Ok(a) => Some(a),
        Err(Error::MissingPart(_)) => None,
        Err(e) => return Err(e),
    };
    let oracle_e2 = oracle_energy(data)?;
    let relative_error = assembly
        .as_ref()
        .filter(|_| oracle_e2 != 0.0)
        .map(|a| (a.e2 - oracle_e2) / oracle_e2.abs());
    Ok(PipelineReport {
        parts,
        assembly,
        oracle_e2,
        relative_error,
    })
}
