//! Lowering to the native set {Rx, Ry, Rz, X, H, CNOT} under a coupling map.
//!
//! Multi-controlled gates are reduced with an AND tree built on free ancilla
//! qubits: two live control values are ANDed (Toffoli) into a free qubit that
//! neighbors both, or one value is copied (CNOT) a step closer to the target
//! when no AND fits. The tree stops once at most two values remain and all of
//! them neighbor the target; the core rotation then runs and the tree is
//! uncomputed in reverse. Compute/uncompute Toffolis form pairs, so
//! [`simplify_toffoli_pairs`] removes every control-control CNOT from them.

use std::collections::BTreeSet;

use serde::Serialize;

use super::pauli::x_string_network;
use super::toffoli::{simplify_toffoli_pairs, toffoli_native};
use super::{Circuit, CouplingMap, Gate, Polarity};
use crate::error::{Error, Result};

/// Logical → physical qubit assignment.
pub type Layout = Vec<usize>;

#[derive(Clone, Debug, Default)]
pub struct LowerOptions {
    /// Physical qubits usable as ancillas. Defaults to every qubit outside the layout image.
    pub ancillas: Option<Vec<usize>>,
}

/// A two-qubit gate on a pair that is not an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub gate_index: usize,
    pub qubits: (usize, usize),
}

/// List every native two-qubit gate acting on a non-edge.
pub fn validate_connectivity(circuit: &Circuit, coupling: &CouplingMap) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (i, g) in circuit.gates().iter().enumerate() {
        if !g.is_native() {
            return Err(Error::NotNative(g.to_string()));
        }
        if let Gate::Cnot { control, target } = g {
            if !coupling.has_edge(*control, *target) {
                out.push(Violation {
                    gate_index: i,
                    qubits: (*control, *target),
                });
            }
        }
    }
    Ok(out)
}

pub fn lower(circuit: &Circuit, coupling: &CouplingMap, layout: &[usize]) -> Result<Circuit> {
    lower_with(circuit, coupling, layout, &LowerOptions::default())
}

/// Lower `circuit` onto `coupling`. The output acts on `coupling.n_qubits`
/// physical qubits; ancillas start and end in |0⟩.
pub fn lower_with(
    circuit: &Circuit,
    coupling: &CouplingMap,
    layout: &[usize],
    opts: &LowerOptions,
) -> Result<Circuit> {
    circuit.check()?;
    if layout.len() < circuit.n_qubits() {
        return Err(Error::Lowering(format!(
            "layout covers {} of {} logical qubits",
            layout.len(),
            circuit.n_qubits()
        )));
    }
    let layout = &layout[..circuit.n_qubits()];
    let mut image = BTreeSet::new();
    for &p in layout {
        if p >= coupling.n_qubits {
            return Err(Error::Lowering(format!(
                "layout maps to {p}, outside {} ({} qubits)",
                coupling.name, coupling.n_qubits
            )));
        }
        if !image.insert(p) {
            return Err(Error::Lowering(format!("layout maps two qubits to {p}")));
        }
    }
    let ancillas: Vec<usize> = match &opts.ancillas {
        Some(a) => {
            for &q in a {
                if q >= coupling.n_qubits || image.contains(&q) {
                    return Err(Error::Lowering(format!("ancilla {q} is not a free physical qubit")));
                }
            }
            a.clone()
        }
        None => (0..coupling.n_qubits).filter(|q| !image.contains(q)).collect(),
    };
    let lw = Lowerer {
        coupling,
        ancillas: ancillas.into_iter().collect(),
    };

    let mut mid = Circuit::new(coupling.n_qubits);
    for g in circuit.gates() {
        let g = g.map_qubits(|q| layout[q]);
        for h in lw.expand(&g)? {
            mid.push(h);
        }
    }

    let paired = simplify_toffoli_pairs(&mid);
    let mut out = Circuit::new(coupling.n_qubits);
    for g in paired.into_gates() {
        match g {
            Gate::Toffoli { c1, c2, target } => {
                for (a, b) in [(c1, c2), (c1, target), (c2, target)] {
                    if !coupling.has_edge(a, b) {
                        return Err(Error::Lowering(format!(
                            "unpaired Toffoli({c1},{c2},{target}) needs edge ({a},{b})"
                        )));
                    }
                }
                toffoli_native(c1, c2, target)
                    .into_iter()
                    .for_each(|h| out.push(h));
            }
            g => out.push(g),
        }
    }
    let violations = validate_connectivity(&out, coupling)?;
    if let Some(v) = violations.first() {
        return Err(Error::Lowering(format!(
            "gate {} acts on non-edge {:?}",
            v.gate_index, v.qubits
        )));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum Core {
    Ry(f64),
    X,
}

struct Lowerer<'a> {
    coupling: &'a CouplingMap,
    ancillas: BTreeSet<usize>,
}

impl Lowerer<'_> {
    /// Expand one physical gate into native gates plus Toffolis.
    fn expand(&self, g: &Gate) -> Result<Vec<Gate>> {
        let m = self.coupling;
        Ok(match g {
            Gate::X(_) | Gate::H(_) | Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..) => vec![g.clone()],
            Gate::Cnot { control, target } => {
                if m.has_edge(*control, *target) {
                    vec![g.clone()]
                } else {
                    self.controlled(&[*control], Polarity::One, *target, Core::X)?
                }
            }
            Gate::Swap(a, b) => {
                let mut v = Vec::new();
                for (c, t) in [(*a, *b), (*b, *a), (*a, *b)] {
                    v.extend(self.expand(&Gate::Cnot { control: c, target: t })?);
                }
                v
            }
            Gate::CRy {
                control,
                target,
                theta,
                polarity,
            } => self.controlled(&[*control], *polarity, *target, Core::Ry(*theta))?,
            Gate::McRy {
                controls,
                target,
                theta,
                polarity,
            } => self.controlled(controls, *polarity, *target, Core::Ry(*theta))?,
            Gate::Toffoli { c1, c2, target } => {
                if m.has_edge(*c1, *target) && m.has_edge(*c2, *target) {
                    vec![g.clone()]
                } else {
                    self.controlled(&[*c1, *c2], Polarity::One, *target, Core::X)?
                }
            }
            Gate::PauliXExp { qubits, angle } => x_string_network(qubits, *angle, m)?,
        })
    }

    fn controlled(
        &self,
        controls: &[usize],
        polarity: Polarity,
        target: usize,
        core: Core,
    ) -> Result<Vec<Gate>> {
        let m = self.coupling;
        let flip: Vec<Gate> = if polarity == Polarity::Zero {
            controls.iter().map(|&c| Gate::X(c)).collect()
        } else {
            Vec::new()
        };
        let dist = m.distances_from(target);
        let mut free = self.ancillas.clone();
        let mut live: Vec<usize> = controls.to_vec();
        let mut compute: Vec<Gate> = Vec::new();

        let done = |live: &[usize]| -> bool {
            let adjacent = live.iter().all(|&q| m.has_edge(q, target));
            match core {
                Core::Ry(_) => live.len() <= 2 && adjacent,
                Core::X => {
                    adjacent
                        && (live.len() <= 1 || (live.len() == 2 && m.has_edge(live[0], live[1])))
                }
            }
        };

        while !done(&live) {
            // AND two live values into a common free neighbor nearest the target.
            let mut best: Option<(usize, usize, usize, usize)> = None;
            for i in 0..live.len() {
                for j in i + 1..live.len() {
                    for &a in &free {
                        if m.has_edge(live[i], a) && m.has_edge(live[j], a) {
                            let key = (dist[a], a, i, j);
                            if best.is_none_or(|b| key < b) {
                                best = Some(key);
                            }
                        }
                    }
                }
            }
            if let Some((_, a, i, j)) = best {
                compute.push(Gate::Toffoli {
                    c1: live[i],
                    c2: live[j],
                    target: a,
                });
                free.remove(&a);
                live.remove(j);
                live[i] = a;
                continue;
            }
            // Otherwise copy one value a step closer.
            let mut step: Option<(usize, usize, usize)> = None;
            for (i, &u) in live.iter().enumerate() {
                if m.has_edge(u, target) {
                    continue;
                }
                for &a in &free {
                    if m.has_edge(u, a) && dist[a] < dist[u] {
                        let key = (dist[a], a, i);
                        if step.is_none_or(|s| key < s) {
                            step = Some(key);
                        }
                    }
                }
            }
            if let Some((_, a, i)) = step {
                compute.push(Gate::Cnot {
                    control: live[i],
                    target: a,
                });
                free.remove(&a);
                live[i] = a;
                continue;
            }
            if let (Core::X, [c]) = (core, live.as_slice()) {
                // No ancilla route: long-range CNOT through the shortest path.
                let path = shortest_path(m, *c, target).ok_or_else(|| {
                    Error::Lowering(format!("qubits {c} and {target} are not connected"))
                })?;
                let mut v = flip.clone();
                v.extend(compute.iter().cloned());
                v.extend(bridged_cnot(&path));
                v.extend(compute.iter().rev().cloned());
                v.extend(flip);
                return Ok(v);
            }
            return Err(Error::Lowering(format!(
                "no ancilla plan for controls {controls:?} -> target {target} (live {live:?}, free {free:?})"
            )));
        }

        let core_gates: Vec<Gate> = match (core, live.as_slice()) {
            (Core::Ry(t), []) => vec![Gate::Ry(target, t)],
            (Core::Ry(t), [r]) => vec![
                Gate::Ry(target, t / 2.0),
                Gate::Cnot { control: *r, target },
                Gate::Ry(target, -t / 2.0),
                Gate::Cnot { control: *r, target },
            ],
            (Core::Ry(t), [r1, r2]) => vec![
                Gate::Ry(target, t / 2.0),
                Gate::Toffoli { c1: *r1, c2: *r2, target },
                Gate::Ry(target, -t / 2.0),
                Gate::Toffoli { c1: *r1, c2: *r2, target },
            ],
            (Core::X, []) => vec![Gate::X(target)],
            (Core::X, [r]) => vec![Gate::Cnot { control: *r, target }],
            (Core::X, [r1, r2]) => vec![Gate::Toffoli { c1: *r1, c2: *r2, target }],
            _ => unreachable!("termination bounds the live set"),
        };
        let mut v = flip.clone();
        v.extend(compute.iter().cloned());
        v.extend(core_gates);
        v.extend(compute.iter().rev().cloned());
        v.extend(flip);
        Ok(v)
    }
}

fn shortest_path(m: &CouplingMap, from: usize, to: usize) -> Option<Vec<usize>> {
    let d = m.distances_from(to);
    if d[from] == usize::MAX {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = m.neighbors(cur).into_iter().find(|&v| d[v] + 1 == d[cur])?;
        path.push(cur);
    }
    Some(path)
}

/// CNOT from `path[0]` to its last element using only path edges; inner
/// qubits are restored. Uses CX(c,t) = CX(c,m) CX(m,t) CX(c,m) CX(m,t).
fn bridged_cnot(path: &[usize]) -> Vec<Gate> {
    let (c, t) = (path[0], path[path.len() - 1]);
    if path.len() == 2 {
        return vec![Gate::Cnot { control: c, target: t }];
    }
    let mid = path[path.len() - 2];
    let head = bridged_cnot(&path[..path.len() - 1]);
    let tail = Gate::Cnot { control: mid, target: t };
    let mut v = head.clone();
    v.push(tail.clone());
    v.extend(head);
    v.push(tail);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::unitary::{equal_up_to_phase, restricted_unitary, unitary_of};

    #[test]
    fn edge_cnots_unchanged() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::Cnot { control: 0, target: 1 },
                Gate::Cnot { control: 2, target: 1 },
            ],
        )
        .unwrap();
        let out = lower(&c, &CouplingMap::path(3), &[0, 1, 2]).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn non_injective_layout_rejected() {
        let c = Circuit::new(2);
        assert!(lower(&c, &CouplingMap::path(3), &[1, 1]).is_err());
        assert!(lower(&c, &CouplingMap::path(3), &[0, 5]).is_err());
    }

    #[test]
    fn validate_reports_non_edge() {
        let c = Circuit::from_gates(3, vec![Gate::Cnot { control: 0, target: 2 }]).unwrap();
        let v = validate_connectivity(&c, &CouplingMap::path(3)).unwrap();
        assert_eq!(v, vec![Violation { gate_index: 0, qubits: (0, 2) }]);
        assert!(validate_connectivity(&Circuit::new(2), &CouplingMap::path(2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bridged_cnot_without_ancilla() {
        let c = Circuit::from_gates(3, vec![Gate::Cnot { control: 0, target: 2 }]).unwrap();
        let out = lower(&c, &CouplingMap::path(3), &[0, 1, 2]).unwrap();
        let a = unitary_of(&c).unwrap();
        let b = unitary_of(&out).unwrap();
        assert!(equal_up_to_phase(&a, &b, 1e-12));
    }

    #[test]
    fn cry_through_copy_ancilla() {
        let c = Circuit::from_gates(
            2,
            vec![Gate::CRy {
                control: 0,
                target: 1,
                theta: 0.9,
                polarity: Polarity::Zero,
            }],
        )
        .unwrap();
        let out = lower(&c, &CouplingMap::path(3), &[0, 2]).unwrap();
        let (u, leak) = restricted_unitary(&out, &[0, 2]).unwrap();
        assert!(leak < 1e-20);
        assert!(equal_up_to_phase(&unitary_of(&c).unwrap(), &u, 1e-12));
    }
}
