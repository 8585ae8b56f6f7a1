//! λ sweeps of the pipeline circuit.

use serde::{Deserialize, Serialize};

use super::config::{Mode, SweepConfig};
use crate::builders::{build_pipeline, PipelineSpec};
use crate::error::{Error, Result};
use crate::hfdata::{partition, EriBlock, HartreeFockData, PartitionScheme};
use crate::par;
use crate::statevec::{self, CountsTable};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub step: usize,
    pub lambda: f64,
    pub lambda_sq: f64,
    /// Pr[q' = 1] (exact) or its sampled frequency.
    pub zeta: f64,
    /// Full outcome distribution over q and q' (exact mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsTable>,
}

impl SweepRow {
    /// Per-outcome weights over the full register: probabilities, or count/shots.
    pub fn outcome_weights(&self) -> Result<Vec<f64>> {
        if let Some(p) = &self.probabilities {
            return Ok(p.clone());
        }
        let t = self
            .counts
            .as_ref()
            .ok_or_else(|| Error::Counts(format!("step {} has no outcome data", self.step)))?;
        Ok(t.to_dense()?
            .into_iter()
            .map(|c| c as f64 / t.shots as f64)
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub part: String,
    /// Hartree.
    pub c_e: f64,
    pub base_state: usize,
    /// Width of the q register; the readout is qubit `n_q`.
    pub n_q: usize,
    pub mode: Mode,
    pub shots: u64,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn lambda_sq(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.lambda_sq).collect()
    }

    pub fn zeta(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.zeta).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub mode: Mode,
    pub shots: u64,
    pub seed: u64,
    /// Stream offset for this sweep; step i samples on stream `stream_base + i`.
    pub stream_base: u64,
    pub c_e: Option<f64>,
    pub base_state: Option<usize>,
    pub mask_base_state: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            mode: Mode::Exact,
            shots: 100_000,
            seed: 0,
            stream_base: 0,
            c_e: None,
            base_state: None,
            mask_base_state: true,
        }
    }
}

/// Stable per-label stream offset (FNV-1a, upper 32 bits of the stream id).
pub fn part_stream(label: &str) -> u64 {
    let mut h: u32 = 0x811c_9dc5;
    for b in label.bytes() {
        h ^= b as u32;
        h = h.wrapping_mul(0x0100_0193);
    }
    (h as u64) << 32
}

/// Sweep one block over the λ values in `grid`; steps run in parallel and are
/// merged by index.
pub fn sweep_block(block: &EriBlock, grid: &[f64], opts: &SweepOptions) -> Result<SweepResult> {
    let mut proto = PipelineSpec::new(block.clone(), 0.0);
    proto.c_e = opts.c_e;
    proto.base_state = opts.base_state;
    proto.mask_base_state = opts.mask_base_state;
    let c_e = proto.c_e()?;
    let y = proto.base_state()?;
    proto.c_e = Some(c_e);
    proto.base_state = Some(y);
    let angles = proto.angles()?;
    let readout = proto.readout();
    let n = proto.n_qubits();
    let rows = par::try_map_indexed(grid.len(), |i| -> Result<SweepRow> {
        let lambda = grid[i];
        let spec = PipelineSpec {
            lambda,
            ..proto.clone()
        };
        let circuit = build_pipeline(&spec, &angles)
            .map_err(|e| e.context(format!("part {} step {i}", block.label)))?;
        let state = statevec::run(&circuit)?;
        let mut row = SweepRow {
            step: i,
            lambda,
            lambda_sq: lambda * lambda,
            zeta: 0.0,
            probabilities: None,
            counts: None,
        };
        match opts.mode {
            Mode::Exact => {
                row.zeta = state.marginal(readout, 1);
                row.probabilities = Some(statevec::probabilities(&state));
            }
            Mode::Sampled => {
                let t = statevec::sample_probabilities(
                    &statevec::probabilities(&state),
                    n,
                    opts.shots,
                    opts.seed,
                    opts.stream_base + i as u64,
                )?;
                row.zeta = t.marginal_one(readout);
                row.counts = Some(t);
            }
        }
        Ok(row)
    })?;
    Ok(SweepResult {
        part: block.label.clone(),
        c_e,
        base_state: y,
        n_q: block.n_qubits(),
        mode: opts.mode,
        shots: if opts.mode == Mode::Sampled { opts.shots } else { 1 },
        seed: opts.seed,
        rows,
    })
}

/// Find a block by label in the standard partition.
pub fn find_block(data: &HartreeFockData, part: &str) -> Result<EriBlock> {
    partition(data, &PartitionScheme::standard(data))?
        .into_iter()
        .find(|b| b.label == part)
        .ok_or_else(|| Error::MissingPart(part.to_string()))
}

/// Sweep `part` of `data` on the grid and settings of `config`.
pub fn run_sweep(data: &HartreeFockData, part: &str, config: &SweepConfig) -> Result<SweepResult> {
    let block = find_block(data, part)?;
    let opts = SweepOptions {
        mode: config.mode,
        shots: config.shots,
        seed: config.seed,
        stream_base: part_stream(part),
        c_e: config.c_e.get(part)?,
        base_state: config.base_state(part),
        mask_base_state: config.mask_base_state,
    };
    sweep_block(&block, &config.grid(part)?, &opts)
}
