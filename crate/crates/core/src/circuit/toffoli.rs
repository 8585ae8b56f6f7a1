//! Toffoli decomposition and pair cancellation.
//!
//! A Toffoli factors as D·R, where D = controlled-S between the two controls
//! and R = H·P·H on the target is a relative-phase Toffoli whose CNOTs all run
//! control→target. Between two Toffolis sharing a control pair, with nothing
//! in between touching either control, the D factors cancel:
//! T·G·T = R·G·R⁻¹. That removes every control-control CNOT.

use std::f64::consts::FRAC_PI_4;

use super::{Circuit, Gate};

/// Phase network P on the target: CCZ times a controlled-S† on the controls.
fn phase_network(c1: usize, c2: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::Rz(t, FRAC_PI_4),
        Gate::Cnot { control: c1, target: t },
        Gate::Rz(t, -FRAC_PI_4),
        Gate::Cnot { control: c2, target: t },
        Gate::Rz(t, FRAC_PI_4),
        Gate::Cnot { control: c1, target: t },
        Gate::Rz(t, -FRAC_PI_4),
        Gate::Cnot { control: c2, target: t },
    ]
}

/// Relative-phase Toffoli R (uses only control-target edges).
pub fn relative_toffoli(c1: usize, c2: usize, t: usize) -> Vec<Gate> {
    let mut v = vec![Gate::H(t)];
    v.extend(phase_network(c1, c2, t));
    v.push(Gate::H(t));
    v
}

/// R⁻¹.
pub fn relative_toffoli_inverse(c1: usize, c2: usize, t: usize) -> Vec<Gate> {
    let mut v = vec![Gate::H(t)];
    v.extend(phase_network(c1, c2, t).iter().rev().map(Gate::inverse));
    v.push(Gate::H(t));
    v
}

/// Controlled-S between the controls (needs a c1-c2 edge).
pub fn controlled_s(c1: usize, c2: usize) -> Vec<Gate> {
    vec![
        Gate::Rz(c1, FRAC_PI_4),
        Gate::Rz(c2, FRAC_PI_4),
        Gate::Cnot { control: c1, target: c2 },
        Gate::Rz(c2, -FRAC_PI_4),
        Gate::Cnot { control: c1, target: c2 },
    ]
}

/// Full native Toffoli, equal to CCX up to global phase.
pub fn toffoli_native(c1: usize, c2: usize, t: usize) -> Vec<Gate> {
    let mut v = controlled_s(c1, c2);
    v.extend(relative_toffoli(c1, c2, t));
    v
}

fn same_controls(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (
            Gate::Toffoli { c1, c2, .. },
            Gate::Toffoli {
                c1: d1, c2: d2, ..
            },
        ) => (c1 == d1 && c2 == d2) || (c1 == d2 && c2 == d1),
        _ => false,
    }
}

/// Replace each Toffoli pair that shares a control pair, with no gate in
/// between touching either control, by R … R⁻¹. Unpaired Toffolis are kept.
pub fn simplify_toffoli_pairs(circuit: &Circuit) -> Circuit {
    let gates = circuit.gates();
    let mut partner: Vec<Option<usize>> = vec![None; gates.len()];
    let mut taken = vec![false; gates.len()];
    for i in 0..gates.len() {
        let Gate::Toffoli { c1, c2, .. } = gates[i] else {
            continue;
        };
        if taken[i] {
            continue;
        }
        let next = (i + 1..gates.len()).find(|&j| {
            let q = gates[j].qubits();
            q.contains(&c1) || q.contains(&c2)
        });
        if let Some(j) = next {
            if !taken[j] && same_controls(&gates[i], &gates[j]) {
                partner[i] = Some(j);
                taken[i] = true;
                taken[j] = true;
            }
        }
    }
    let mut out = Circuit::new(circuit.n_qubits());
    let mut is_second = vec![false; gates.len()];
    for &j in partner.iter().flatten() {
        is_second[j] = true;
    }
    for (i, g) in gates.iter().enumerate() {
        match g {
            Gate::Toffoli { c1, c2, target } if partner[i].is_some() => {
                relative_toffoli(*c1, *c2, *target)
                    .into_iter()
                    .for_each(|h| out.push(h));
            }
            Gate::Toffoli { c1, c2, target } if is_second[i] => {
                relative_toffoli_inverse(*c1, *c2, *target)
                    .into_iter()
                    .for_each(|h| out.push(h));
            }
            _ => out.push(g.clone()),
        }
    }
    out
}
