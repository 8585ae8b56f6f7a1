//! Controlled versions of circuits, exact including global phase.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::controlled_ry;
use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

/// exp(iφ X^S) controlled on `controls` (all reading `polarity`).
///
/// H on S turns the string into Z^S; a CNOT ladder collects the parity on the
/// last qubit m, where exp(iφZ) = Rz(−2φ) is applied. The controlled Rz uses
/// Rz(θ) = Rx(π/2)·Ry(θ)·Rx(−π/2), so only the Ry needs controls.
pub fn controlled_pauli_x_exp(controls: &[usize], polarity: Polarity, qubits: &[usize], angle: f64) -> Vec<Gate> {
    let Some(&m) = qubits.last() else {
        return Vec::new();
    };
    let ladder: Vec<Gate> = qubits
        .windows(2)
        .map(|w| Gate::Cnot {
            control: w[0],
            target: w[1],
        })
        .collect();
    let mut v: Vec<Gate> = qubits.iter().map(|&q| Gate::H(q)).collect();
    v.extend(ladder.iter().cloned());
    v.push(Gate::Rx(m, -FRAC_PI_2));
    v.push(controlled_ry(controls, m, -2.0 * angle, polarity));
    v.push(Gate::Rx(m, FRAC_PI_2));
    v.extend(ladder.into_iter().rev());
    v.extend(qubits.iter().map(|&q| Gate::H(q)));
    v
}

fn with_flips(flips: &[usize], gates: Vec<Gate>) -> Vec<Gate> {
    let mut v: Vec<Gate> = flips.iter().map(|&q| Gate::X(q)).collect();
    v.extend(gates);
    v.extend(flips.iter().map(|&q| Gate::X(q)));
    v
}

/// One gate controlled on `c` reading |1⟩.
pub fn controlled_gate(g: &Gate, c: usize) -> Result<Vec<Gate>> {
    if g.qubits().contains(&c) {
        return Err(Error::InvalidGate(format!("control {c} overlaps {g}")));
    }
    Ok(match g {
        Gate::X(q) => vec![Gate::Cnot { control: c, target: *q }],
        Gate::Cnot { control, target } => vec![Gate::Toffoli {
            c1: c,
            c2: *control,
            target: *target,
        }],
        Gate::Ry(q, t) => vec![Gate::CRy {
            control: c,
            target: *q,
            theta: *t,
            polarity: Polarity::One,
        }],
        Gate::Rz(q, t) => vec![
            Gate::Rz(*q, t / 2.0),
            Gate::Cnot { control: c, target: *q },
            Gate::Rz(*q, -t / 2.0),
            Gate::Cnot { control: c, target: *q },
        ],
        // Rx(θ) = Rz(−π/2)·Ry(θ)·Rz(π/2)
        Gate::Rx(q, t) => vec![
            Gate::Rz(*q, FRAC_PI_2),
            Gate::CRy {
                control: c,
                target: *q,
                theta: *t,
                polarity: Polarity::One,
            },
            Gate::Rz(*q, -FRAC_PI_2),
        ],
        // H = Ry(π/4)·Z·Ry(−π/4)
        Gate::H(q) => vec![
            Gate::Ry(*q, -FRAC_PI_4),
            Gate::H(*q),
            Gate::Cnot { control: c, target: *q },
            Gate::H(*q),
            Gate::Ry(*q, FRAC_PI_4),
        ],
        Gate::Swap(a, b) => vec![
            Gate::Cnot { control: *b, target: *a },
            Gate::Toffoli {
                c1: c,
                c2: *a,
                target: *b,
            },
            Gate::Cnot { control: *b, target: *a },
        ],
        Gate::CRy {
            control,
            target,
            theta,
            polarity,
        } => {
            let flips = if *polarity == Polarity::Zero { vec![*control] } else { vec![] };
            with_flips(
                &flips,
                vec![Gate::McRy {
                    controls: vec![c, *control],
                    target: *target,
                    theta: *theta,
                    polarity: Polarity::One,
                }],
            )
        }
        Gate::McRy {
            controls,
            target,
            theta,
            polarity,
        } => {
            let flips = if *polarity == Polarity::Zero { controls.clone() } else { vec![] };
            let mut all = vec![c];
            all.extend(controls.iter().copied());
            with_flips(
                &flips,
                vec![Gate::McRy {
                    controls: all,
                    target: *target,
                    theta: *theta,
                    polarity: Polarity::One,
                }],
            )
        }
        Gate::PauliXExp { qubits, angle } => controlled_pauli_x_exp(&[c], Polarity::One, qubits, *angle),
        Gate::Toffoli { .. } => return Err(Error::NotControllable(g.to_string())),
    })
}

/// `circuit` controlled on qubit `c` (which must be inside the register).
pub fn controlled_circuit(circuit: &Circuit, c: usize) -> Result<Circuit> {
    if c >= circuit.n_qubits() {
        return Err(Error::QubitOutOfRange {
            index: c,
            n_qubits: circuit.n_qubits(),
        });
    }
    let mut out = Circuit::new(circuit.n_qubits());
    for g in circuit.gates() {
        for h in controlled_gate(g, c)? {
            out.try_push(h)?;
        }
    }
    Ok(out)
}
