//! Pauli-string exponentials as CNOT parity networks.
//!
//! exp(iφ Z⊗…⊗Z) collects the parity of the string onto one qubit with
//! CNOTs, applies Rz(−2φ) there and uncomputes. X strings are the same network
//! conjugated by H on every string qubit.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Circuit, CouplingMap, Gate};
use crate::error::{Error, Result};

/// A parity-collection tree over physical qubits. `parent[v]` is `None` for the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTree {
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
    pub string: BTreeSet<usize>,
}

impl ParityTree {
    /// Tree for a linear ladder: `order[i]` feeds `order[i+1]`, last holds the parity.
    pub fn chain(order: &[usize]) -> Self {
        let mut parent = BTreeMap::new();
        for w in order.windows(2) {
            parent.insert(w[0], w[1]);
        }
        ParityTree {
            root: *order.last().expect("non-empty chain"),
            parent,
            string: order.iter().copied().collect(),
        }
    }

    fn children(&self, v: usize) -> Vec<usize> {
        self.parent
            .iter()
            .filter(|(_, &p)| p == v)
            .map(|(&c, _)| c)
            .collect()
    }

    /// CNOTs leaving the string parity on `root`; bridge qubits end unchanged.
    pub fn compute(&self) -> Vec<Gate> {
        let mut out = Vec::new();
        self.collect(self.root, &mut out);
        out
    }

    fn collect(&self, v: usize, out: &mut Vec<Gate>) {
        for c in self.children(v) {
            let cx = Gate::Cnot {
                control: c,
                target: v,
            };
            if self.string.contains(&c) {
                self.collect(c, out);
                out.push(cx);
            } else {
                // Bridge qubit: its own value enters twice and cancels.
                out.push(cx.clone());
                self.collect(c, out);
                out.push(cx);
            }
        }
    }

    pub fn cnot_count(&self) -> usize {
        2 * self.compute().len()
    }
}

/// Choose a parity network for `qubits` (physical) on `coupling`.
///
/// Preference: the lexicographically first Hamiltonian chain through the string
/// qubits; then a BFS spanning tree of the subgraph they induce; then a greedy
/// Steiner tree routed through outside qubits, which are restored afterwards.
pub fn pauli_chain(qubits: &[usize], coupling: &CouplingMap) -> Result<ParityTree> {
    let mut sorted: Vec<usize> = qubits.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != qubits.len() {
        return Err(Error::InvalidGate("Pauli string repeats a qubit".into()));
    }
    for &q in &sorted {
        if q >= coupling.n_qubits {
            return Err(Error::Lowering(format!(
                "qubit {q} outside coupling map {}",
                coupling.name
            )));
        }
    }
    if sorted.len() <= 1 {
        return Ok(ParityTree::chain(&sorted));
    }
    if let Some(order) = hamiltonian_chain(&sorted, coupling) {
        return Ok(ParityTree::chain(&order));
    }
    if let Some(t) = induced_tree(&sorted, coupling) {
        return Ok(t);
    }
    steiner_tree(&sorted, coupling).ok_or_else(|| {
        Error::Lowering(format!(
            "qubits {sorted:?} are not connected in {}",
            coupling.name
        ))
    })
}

fn hamiltonian_chain(nodes: &[usize], coupling: &CouplingMap) -> Option<Vec<usize>> {
    fn dfs(path: &mut Vec<usize>, used: &mut [bool], nodes: &[usize], m: &CouplingMap) -> bool {
        if path.len() == nodes.len() {
            return true;
        }
        for i in 0..nodes.len() {
            if used[i] {
                continue;
            }
            if let Some(&last) = path.last() {
                if !m.has_edge(last, nodes[i]) {
                    continue;
                }
            }
            used[i] = true;
            path.push(nodes[i]);
            if dfs(path, used, nodes, m) {
                return true;
            }
            path.pop();
            used[i] = false;
        }
        false
    }
    let mut path = Vec::new();
    let mut used = vec![false; nodes.len()];
    dfs(&mut path, &mut used, nodes, coupling).then_some(path)
}

fn induced_tree(nodes: &[usize], coupling: &CouplingMap) -> Option<ParityTree> {
    let set: BTreeSet<usize> = nodes.iter().copied().collect();
    let root = nodes[0];
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for v in coupling.neighbors(u) {
            if set.contains(&v) && seen.insert(v) {
                parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    (seen.len() == set.len()).then(|| ParityTree {
        root,
        parent,
        string: set,
    })
}

fn steiner_tree(nodes: &[usize], coupling: &CouplingMap) -> Option<ParityTree> {
    let string: BTreeSet<usize> = nodes.iter().copied().collect();
    let root = nodes[0];
    let mut in_tree = BTreeSet::from([root]);
    let mut parent = BTreeMap::new();
    let mut pending: BTreeSet<usize> = string.iter().copied().filter(|&q| q != root).collect();
    while !pending.is_empty() {
        // Multi-source BFS from the current tree; neighbors visited in ascending order.
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seen = in_tree.clone();
        let mut queue: VecDeque<usize> = in_tree.iter().copied().collect();
        let mut hit = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for v in coupling.neighbors(u) {
                if seen.insert(v) {
                    prev.insert(v, u);
                    if pending.contains(&v) {
                        hit = Some(v);
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        let mut v = hit?;
        pending.remove(&v);
        while !in_tree.contains(&v) {
            let u = prev[&v];
            parent.insert(v, u);
            in_tree.insert(v);
            pending.remove(&v);
            v = u;
        }
    }
    Some(ParityTree {
        root,
        parent,
        string,
    })
}

fn check_layout(qubits: &[usize], coupling: &CouplingMap, layout: &[usize]) -> Result<Vec<usize>> {
    qubits
        .iter()
        .map(|&q| {
            let p = *layout
                .get(q)
                .ok_or_else(|| Error::Lowering(format!("logical qubit {q} has no layout entry")))?;
            if p >= coupling.n_qubits {
                return Err(Error::Lowering(format!(
                    "layout maps {q} to {p}, outside {}",
                    coupling.name
                )));
            }
            Ok(p)
        })
        .collect()
}

/// Native network for exp(iφ Z^S) on physical qubits.
pub fn z_string_network(physical: &[usize], angle: f64, coupling: &CouplingMap) -> Result<Vec<Gate>> {
    let tree = pauli_chain(physical, coupling)?;
    let compute = tree.compute();
    let mut out = compute.clone();
    out.push(Gate::Rz(tree.root, -2.0 * angle));
    out.extend(compute.into_iter().rev());
    Ok(out)
}

/// Lower exp(iφ Z^S) for logical `qubits` through `layout` onto `coupling`.
pub fn lower_pauli_z_exp(
    qubits: &[usize],
    angle: f64,
    coupling: &CouplingMap,
    layout: &[usize],
) -> Result<Circuit> {
    let phys = check_layout(qubits, coupling, layout)?;
    Circuit::from_gates(coupling.n_qubits, z_string_network(&phys, angle, coupling)?)
}

/// Lower a `PauliXExp` gate. One qubit gives a single Rx(−2φ); longer strings
/// give H-conjugated CNOT ladders around one Rz(−2φ).
pub fn lower_pauli_x_exp(gate: &Gate, coupling: &CouplingMap, layout: &[usize]) -> Result<Circuit> {
    let Gate::PauliXExp { qubits, angle } = gate else {
        return Err(Error::InvalidGate(format!("{gate} is not a Pauli-X exponential")));
    };
    let phys = check_layout(qubits, coupling, layout)?;
    Circuit::from_gates(coupling.n_qubits, x_string_network(&phys, *angle, coupling)?)
}

pub(crate) fn x_string_network(phys: &[usize], angle: f64, coupling: &CouplingMap) -> Result<Vec<Gate>> {
    if phys.len() == 1 {
        return Ok(vec![Gate::Rx(phys[0], -2.0 * angle)]);
    }
    let mut out: Vec<Gate> = phys.iter().map(|&q| Gate::H(q)).collect();
    out.extend(z_string_network(phys, angle, coupling)?);
    out.extend(phys.iter().map(|&q| Gate::H(q)));
    Ok(out)
}

/// exp(iφ Z^S) as a plain ladder in the given qubit order (no coupling constraint).
pub fn z_ladder(order: &[usize], angle: f64, n_qubits: usize) -> Result<Circuit> {
    let tree = ParityTree::chain(order);
    let compute = tree.compute();
    let mut gates = compute.clone();
    gates.push(Gate::Rz(tree.root, -2.0 * angle));
    gates.extend(compute.into_iter().rev());
    Circuit::from_gates(n_qubits, gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_is_rx() {
        let g = Gate::PauliXExp {
            qubits: vec![0],
            angle: 0.3,
        };
        let c = lower_pauli_x_exp(&g, &CouplingMap::path(2), &[1, 0]).unwrap();
        assert_eq!(c.gates(), &[Gate::Rx(1, -0.6)]);
    }

    #[test]
    fn chain_prefers_lexicographic_order() {
        let t = pauli_chain(&[0, 1, 2], &CouplingMap::complete(3)).unwrap();
        assert_eq!(t, ParityTree::chain(&[0, 1, 2]));
        // Path 0-1-2 with string {0,2}: must bridge through 1.
        let t = pauli_chain(&[0, 2], &CouplingMap::path(3)).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.compute().len(), 3);
    }

    #[test]
    fn disconnected_fails() {
        let m = CouplingMap::new("two", 2, &[]).unwrap();
        assert!(pauli_chain(&[0, 1], &m).is_err());
    }
}
