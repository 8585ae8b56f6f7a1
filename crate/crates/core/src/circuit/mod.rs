//! Circuit intermediate representation shared by builders, lowering and the simulator.

pub mod coupling;
pub mod embed;
pub mod lower;
pub mod pauli;
pub mod toffoli;
pub mod unitary;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coupling::CouplingMap;
pub use embed::{find_parallel_embeddings, find_parallel_embeddings_multi, Embedding};
pub use lower::{lower, lower_with, validate_connectivity, Layout, LowerOptions, Violation};
pub use pauli::{lower_pauli_x_exp, lower_pauli_z_exp, pauli_chain, z_ladder, ParityTree};
pub use toffoli::{simplify_toffoli_pairs, toffoli_native};
pub use unitary::{equal_up_to_phase, max_phase_aligned_diff, restricted_unitary, unitary_of};

/// Whether a control fires on |1⟩ (`One`) or on |0⟩ (`Zero`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Zero,
    One,
}

impl Polarity {
    /// Bit value that activates the control.
    pub fn active_bit(self) -> usize {
        match self {
            Polarity::Zero => 0,
            Polarity::One => 1,
        }
    }
}

/// One gate. Qubit operands are logical indices into the owning circuit.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot {
        control: usize,
        target: usize,
    },
    Swap(usize, usize),
    CRy {
        control: usize,
        target: usize,
        theta: f64,
        polarity: Polarity,
    },
    /// Ry on `target` when every control matches `polarity`.
    McRy {
        controls: Vec<usize>,
        target: usize,
        theta: f64,
        polarity: Polarity,
    },
    /// exp(i·angle·X⊗X⊗…⊗X) over `qubits`.
    PauliXExp {
        qubits: Vec<usize>,
        angle: f64,
    },
    Toffoli {
        c1: usize,
        c2: usize,
        target: usize,
    },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::H(_) => "h",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
            Gate::Cnot { .. } => "cnot",
            Gate::Swap(..) => "swap",
            Gate::CRy { .. } => "cry",
            Gate::McRy { .. } => "mcry",
            Gate::PauliXExp { .. } => "pauli_x_exp",
            Gate::Toffoli { .. } => "toffoli",
        }
    }

    /// Operands in canonical order: controls first, target last.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X(q) | Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => vec![*q],
            Gate::Cnot { control, target } | Gate::CRy { control, target, .. } => {
                vec![*control, *target]
            }
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::McRy {
                controls, target, ..
            } => {
                let mut v = controls.clone();
                v.push(*target);
                v
            }
            Gate::PauliXExp { qubits, .. } => qubits.clone(),
            Gate::Toffoli { c1, c2, target } => vec![*c1, *c2, *target],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx(_, t) | Gate::Ry(_, t) | Gate::Rz(_, t) => Some(*t),
            Gate::CRy { theta, .. } | Gate::McRy { theta, .. } => Some(*theta),
            Gate::PauliXExp { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    pub fn polarity(&self) -> Option<Polarity> {
        match self {
            Gate::CRy { polarity, .. } | Gate::McRy { polarity, .. } => Some(*polarity),
            _ => None,
        }
    }

    /// Member of the native set {Rx, Ry, Rz, X, H, CNOT}.
    pub fn is_native(&self) -> bool {
        matches!(
            self,
            Gate::X(_) | Gate::H(_) | Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..) | Gate::Cnot { .. }
        )
    }

    pub fn arity(&self) -> usize {
        self.qubits().len()
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Rx(q, t) => Gate::Rx(*q, -t),
            Gate::Ry(q, t) => Gate::Ry(*q, -t),
            Gate::Rz(q, t) => Gate::Rz(*q, -t),
            Gate::CRy {
                control,
                target,
                theta,
                polarity,
            } => Gate::CRy {
                control: *control,
                target: *target,
                theta: -theta,
                polarity: *polarity,
            },
            Gate::McRy {
                controls,
                target,
                theta,
                polarity,
            } => Gate::McRy {
                controls: controls.clone(),
                target: *target,
                theta: -theta,
                polarity: *polarity,
            },
            Gate::PauliXExp { qubits, angle } => Gate::PauliXExp {
                qubits: qubits.clone(),
                angle: -angle,
            },
            g => g.clone(),
        }
    }

    /// Rewrite every operand through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::X(q) => Gate::X(f(*q)),
            Gate::H(q) => Gate::H(f(*q)),
            Gate::Rx(q, t) => Gate::Rx(f(*q), *t),
            Gate::Ry(q, t) => Gate::Ry(f(*q), *t),
            Gate::Rz(q, t) => Gate::Rz(f(*q), *t),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(*control),
                target: f(*target),
            },
            Gate::Swap(a, b) => Gate::Swap(f(*a), f(*b)),
            Gate::CRy {
                control,
                target,
                theta,
                polarity,
            } => Gate::CRy {
                control: f(*control),
                target: f(*target),
                theta: *theta,
                polarity: *polarity,
            },
            Gate::McRy {
                controls,
                target,
                theta,
                polarity,
            } => Gate::McRy {
                controls: controls.iter().map(|&c| f(c)).collect(),
                target: f(*target),
                theta: *theta,
                polarity: *polarity,
            },
            Gate::PauliXExp { qubits, angle } => Gate::PauliXExp {
                qubits: qubits.iter().map(|&q| f(q)).collect(),
                angle: *angle,
            },
            Gate::Toffoli { c1, c2, target } => Gate::Toffoli {
                c1: f(*c1),
                c2: f(*c2),
                target: f(*target),
            },
        }
    }

    /// Operands in range and distinct, parameters finite.
    pub fn check(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if qs.is_empty() {
            return Err(Error::InvalidGate(format!("{} has no operands", self.name())));
        }
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidGate(format!(
                    "{} repeats operand {q}",
                    self.name()
                )));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::NonFinite(self.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name(), self.qubits())?;
        if let Some(a) = self.angle() {
            write!(f, "({a})")?;
        }
        if self.polarity() == Some(Polarity::Zero) {
            write!(f, "[0-ctrl]")?;
        }
        Ok(())
    }
}

/// Ordered gate list over `n_qubits`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Circuit { n_qubits, gates };
        c.check()?;
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append a gate. Panics on an invalid operand; builders only push
    /// gates whose operands they computed themselves.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = gate.check(self.n_qubits) {
            panic!("invalid gate {gate}: {e}");
        }
        self.gates.push(gate);
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        gate.check(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) {
        assert!(
            other.n_qubits <= self.n_qubits,
            "cannot append a {}-qubit circuit to a {}-qubit circuit",
            other.n_qubits,
            self.n_qubits
        );
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn check(&self) -> Result<()> {
        for g in &self.gates {
            g.check(self.n_qubits)?;
        }
        Ok(())
    }

    /// Adjoint circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Relabel qubits through `map` into a register of `n_qubits`.
    pub fn remap(&self, map: &[usize], n_qubits: usize) -> Result<Circuit> {
        if map.len() < self.n_qubits {
            return Err(Error::Dimension(format!(
                "qubit map has {} entries for {} qubits",
                map.len(),
                self.n_qubits
            )));
        }
        let gates = self.gates.iter().map(|g| g.map_qubits(|q| map[q])).collect();
        Circuit::from_gates(n_qubits, gates)
    }

    /// Same gates on a wider register.
    pub fn widen(&self, n_qubits: usize) -> Circuit {
        assert!(n_qubits >= self.n_qubits);
        Circuit {
            n_qubits,
            gates: self.gates.clone(),
        }
    }

    pub fn is_native(&self) -> bool {
        self.gates.iter().all(Gate::is_native)
    }

    /// Gate counts keyed by kind name (plus arity for multi-controlled Ry).
    pub fn gate_counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for g in &self.gates {
            let key = match g {
                Gate::McRy { controls, .. } => format!("c{}ry", controls.len()),
                _ => g.name().to_string(),
            };
            *m.entry(key).or_insert(0) += 1;
        }
        m
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.arity() == 2).count()
    }

    pub fn to_records(&self) -> Vec<GateRecord> {
        self.gates.iter().map(GateRecord::from).collect()
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            n_qubits: self.n_qubits,
            gates: self.to_records(),
        }
    }

    pub fn from_json(j: &CircuitJson) -> Result<Circuit> {
        let gates = j
            .gates
            .iter()
            .map(Gate::try_from)
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(j.n_qubits, gates)
    }
}

/// Serialized gate: `{kind, qubits, angle?, polarity?}`. For `mcry` the
/// controls come first and the target last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n_qubits: usize,
    pub gates: Vec<GateRecord>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        GateRecord {
            kind: g.name().to_string(),
            qubits: g.qubits(),
            angle: g.angle(),
            polarity: g.polarity(),
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let q = &r.qubits;
        let want = |n: usize| -> Result<()> {
            if q.len() != n {
                return Err(Error::InvalidGate(format!(
                    "{} expects {n} qubits, got {}",
                    r.kind,
                    q.len()
                )));
            }
            Ok(())
        };
        let angle = || {
            r.angle
                .ok_or_else(|| Error::InvalidGate(format!("{} requires an angle", r.kind)))
        };
        let polarity = r.polarity.unwrap_or(Polarity::One);
        let g = match r.kind.to_ascii_lowercase().as_str() {
            "x" => {
                want(1)?;
                Gate::X(q[0])
            }
            "h" => {
                want(1)?;
                Gate::H(q[0])
            }
            "rx" => {
                want(1)?;
                Gate::Rx(q[0], angle()?)
            }
            "ry" => {
                want(1)?;
                Gate::Ry(q[0], angle()?)
            }
            "rz" => {
                want(1)?;
                Gate::Rz(q[0], angle()?)
            }
            "cnot" | "cx" => {
                want(2)?;
                Gate::Cnot {
                    control: q[0],
                    target: q[1],
                }
            }
            "swap" => {
                want(2)?;
                Gate::Swap(q[0], q[1])
            }
            "cry" => {
                want(2)?;
                Gate::CRy {
                    control: q[0],
                    target: q[1],
                    theta: angle()?,
                    polarity,
                }
            }
            "mcry" => {
                if q.len() < 2 {
                    return Err(Error::InvalidGate("mcry needs a control and a target".into()));
                }
                Gate::McRy {
                    controls: q[..q.len() - 1].to_vec(),
                    target: q[q.len() - 1],
                    theta: angle()?,
                    polarity,
                }
            }
            "pauli_x_exp" => Gate::PauliXExp {
                qubits: q.clone(),
                angle: angle()?,
            },
            "toffoli" | "ccx" => {
                want(3)?;
                Gate::Toffoli {
                    c1: q[0],
                    c2: q[1],
                    target: q[2],
                }
            }
            other => return Err(Error::InvalidGate(format!("unknown gate kind {other:?}"))),
        };
        Ok(g)
    }
}
