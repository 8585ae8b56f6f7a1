use std::path::{Path, PathBuf};

use anyhow::anyhow;
use mp2q::circuit::{
    find_parallel_embeddings_multi, lower_with, validate_connectivity, Circuit, CircuitJson,
    CouplingMap, Embedding, LowerOptions, Violation,
};
use serde::Serialize;

use super::emit;
use crate::{CmdResult, Failure, EXIT_VALIDATION};

#[derive(clap::Args)]
pub struct Args {
    /// Circuit JSON ({n_qubits, gates}).
    #[arg(long)]
    circuit: PathBuf,
    /// Coupling-map JSON file or a built-in name (h-shape-7, relay-9, ibm-27-heavy-hex, path-N, grid-RxC, complete-N).
    #[arg(long)]
    coupling: String,
    /// Comma-separated physical qubit for each logical qubit. Defaults to 0..n.
    #[arg(long, value_delimiter = ',')]
    layout: Option<Vec<usize>>,
    /// Place K disjoint copies on h-shape-7 or relay-9 subgraphs of the map.
    #[arg(long)]
    pack: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct LowerReport {
    coupling: String,
    embeddings: Vec<Embedding>,
    circuit: CircuitJson,
    gate_counts: std::collections::BTreeMap<String, usize>,
    two_qubit_gates: usize,
    /// Non-edge CNOTs of a native input circuit under the layout, before routing.
    input_violations: Vec<Violation>,
    violations: Vec<Violation>,
}

fn load_coupling(spec: &str) -> anyhow::Result<CouplingMap> {
    let p = Path::new(spec);
    if p.exists() {
        Ok(CouplingMap::load(p)?)
    } else {
        Ok(CouplingMap::named(spec)?)
    }
}

/// Logical placement inside each packing shape: U_E controls on the outer
/// nodes, readout on the node adjacent to both halves, spare nodes last.
fn shape_layout(shape: &str) -> &'static [usize] {
    match shape {
        "relay-9" => &[0, 2, 3, 5, 7, 1, 4, 6, 8],
        _ => &[0, 2, 4, 6, 3, 1, 5],
    }
}

pub fn run(args: Args) -> CmdResult {
    let json: CircuitJson = serde_json::from_str(&std::fs::read_to_string(&args.circuit)?)?;
    let circuit = Circuit::from_json(&json)?;
    let coupling = load_coupling(&args.coupling)?;
    let n = circuit.n_qubits();

    let (lowered, embeddings) = match args.pack {
        None => {
            let layout = args.layout.clone().unwrap_or_else(|| (0..n).collect());
            (lower_with(&circuit, &coupling, &layout, &LowerOptions::default())?, Vec::new())
        }
        Some(k) => {
            let shapes = [CouplingMap::h_shape(), CouplingMap::relay_shape()];
            let embeddings = find_parallel_embeddings_multi(&coupling, &shapes, k);
            if embeddings.len() < k {
                return Err(anyhow!(
                    "found {} disjoint placements on {}, {k} requested",
                    embeddings.len(),
                    coupling.name
                )
                .into());
            }
            let mut all = Circuit::new(coupling.n_qubits);
            for e in &embeddings {
                let local = shape_layout(&e.shape);
                if n > local.len() {
                    return Err(anyhow!("{n}-qubit circuit does not fit shape {}", e.shape).into());
                }
                let layout: Vec<usize> = local[..n].iter().map(|&i| e.mapping[i]).collect();
                let ancillas = e.mapping.iter().copied().filter(|q| !layout.contains(q)).collect();
                let opts = LowerOptions {
                    ancillas: Some(ancillas),
                };
                all.extend(&lower_with(&circuit, &coupling, &layout, &opts)?);
            }
            (all, embeddings)
        }
    };
    let input_violations = match (&args.layout, args.pack, circuit.is_native()) {
        (layout, None, true) => {
            let layout = layout.clone().unwrap_or_else(|| (0..n).collect());
            validate_connectivity(&circuit.remap(&layout, coupling.n_qubits)?, &coupling)?
        }
        _ => Vec::new(),
    };
    let violations = validate_connectivity(&lowered, &coupling)?;
    let report = LowerReport {
        coupling: coupling.name.clone(),
        embeddings,
        gate_counts: lowered.gate_counts(),
        two_qubit_gates: lowered.two_qubit_count(),
        circuit: lowered.to_json(),
        input_violations,
        violations,
    };
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    for e in &report.embeddings {
        eprintln!("placement {} on {:?}", e.shape, e.mapping);
    }
    let bad = report.input_violations.len() + report.violations.len();
    if bad > 0 {
        return Err(Failure {
            code: EXIT_VALIDATION,
            message: format!(
                "{} connectivity violations in the input, {} after lowering",
                report.input_violations.len(),
                report.violations.len()
            ),
        });
    }
    Ok(())
}
