//! Shared CSV helpers.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use mp2q::statevec::{parse_bitstring, CountsTable};
use serde::{Deserialize, Serialize};

/// Reals are written with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of a per-input counts file.
#[derive(Debug, Serialize, Deserialize)]
pub struct CountRow {
    pub input: usize,
    pub outcome: String,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theory: Option<f64>,
}

/// Per-input count tables, in input order, plus any theory values.
pub struct InputCounts {
    pub tables: Vec<CountsTable>,
    pub theory: BTreeMap<usize, f64>,
}

pub fn read_input_counts(path: &Path) -> anyhow::Result<InputCounts> {
    let mut rdr = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let mut dense: BTreeMap<usize, BTreeMap<String, u64>> = BTreeMap::new();
    let mut theory = BTreeMap::new();
    let mut width = None;
    for row in rdr.deserialize() {
        let row: CountRow = row.with_context(|| format!("parsing {}", path.display()))?;
        parse_bitstring(&row.outcome)?;
        match width {
            None => width = Some(row.outcome.len()),
            Some(w) if w != row.outcome.len() => bail!("{}: mixed outcome widths", path.display()),
            _ => {}
        }
        *dense.entry(row.input).or_default().entry(row.outcome).or_default() += row.count;
        if let Some(t) = row.theory {
            theory.insert(row.input, t);
        }
    }
    let Some(width) = width else {
        bail!("{}: no rows", path.display());
    };
    if width < 2 {
        bail!("{}: outcomes need a readout bit and at least one register bit", path.display());
    }
    let n_inputs = 1usize << (width - 1);
    let mut tables = Vec::with_capacity(n_inputs);
    for x in 0..n_inputs {
        let counts = dense
            .remove(&x)
            .ok_or_else(|| mp2q::Error::Counts(format!("{}: missing input {x}", path.display())))?;
        tables.push(CountsTable {
            n_qubits: width,
            shots: counts.values().sum(),
            seed: 0,
            stream: x as u64,
            counts,
        });
    }
    if let Some(x) = dense.keys().next() {
        bail!("{}: input {x} outside 0..{n_inputs}", path.display());
    }
    Ok(InputCounts { tables, theory })
}
