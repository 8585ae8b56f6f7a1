//! Hadamard-test style difference circuit.

use super::controlled::controlled_circuit;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// H(anc) · u0 · controlled(u1·u0†) · H(anc), with `u0`/`u1` placed on
/// `register` (register[i] hosts their qubit i) inside `n_qubits`.
///
/// On input |0⟩_anc|φ⟩, Pr[anc = 1, register = n] = ¼|⟨n|(U0 − U1)|φ⟩|².
pub fn build_difference(
    u0: &Circuit,
    u1: &Circuit,
    register: &[usize],
    ancilla: usize,
    n_qubits: usize,
) -> Result<Circuit> {
    if u0.n_qubits() != u1.n_qubits() {
        return Err(Error::Dimension(format!(
            "difference circuit widths {} and {} differ",
            u0.n_qubits(),
            u1.n_qubits()
        )));
    }
    if register.len() != u0.n_qubits() {
        return Err(Error::Dimension(format!(
            "register of {} qubits for a {}-qubit circuit",
            register.len(),
            u0.n_qubits()
        )));
    }
    if register.contains(&ancilla) {
        return Err(Error::InvalidGate(format!("ancilla {ancilla} is inside the register")));
    }
    let u0p = u0.remap(register, n_qubits)?;
    let mut rel = u0.inverse();
    rel.extend(u1);
    let relp = rel.remap(register, n_qubits)?;
    let mut c = Circuit::new(n_qubits);
    c.try_push(Gate::H(ancilla))?;
    c.extend(&u0p);
    c.extend(&controlled_circuit(&relp, ancilla)?);
    c.try_push(Gate::H(ancilla))?;
    Ok(c)
}
