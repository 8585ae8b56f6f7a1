//! Vertex-disjoint placements of small shape graphs on a coupling map.

use std::collections::BTreeSet;

use serde::Serialize;

use super::CouplingMap;

/// Upper bound on enumerated monomorphisms per shape.
const MAX_CANDIDATES: usize = 20_000;
/// Upper bound on packing-search nodes.
const MAX_SEARCH_NODES: usize = 2_000_000;

/// One placement: `mapping[i]` is the coupling qubit hosting shape node `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub shape: String,
    pub shape_index: usize,
    pub mapping: Vec<usize>,
}

impl Embedding {
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.mapping.iter().copied().collect()
    }
}

/// Subgraph monomorphisms of `shape` into `coupling`, one per distinct vertex
/// set, in lexicographic order of the mapping.
pub fn monomorphisms(coupling: &CouplingMap, shape: &CouplingMap, limit: usize) -> Vec<Vec<usize>> {
    let n = shape.n_qubits;
    if n == 0 || n > coupling.n_qubits {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seen_sets = BTreeSet::new();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; coupling.n_qubits];
    fn rec(
        i: usize,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        coupling: &CouplingMap,
        shape: &CouplingMap,
        out: &mut Vec<Vec<usize>>,
        seen: &mut BTreeSet<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == mapping.len() {
            let mut key = mapping.clone();
            key.sort_unstable();
            if seen.insert(key) {
                out.push(mapping.clone());
            }
            return;
        }
        for p in 0..coupling.n_qubits {
            if used[p] || coupling.degree(p) < shape.degree(i) {
                continue;
            }
            let ok = shape
                .neighbors(i)
                .into_iter()
                .filter(|&j| j < i)
                .all(|j| coupling.has_edge(mapping[j], p));
            if !ok {
                continue;
            }
            mapping[i] = p;
            used[p] = true;
            rec(i + 1, mapping, used, coupling, shape, out, seen, limit);
            used[p] = false;
            mapping[i] = usize::MAX;
        }
    }
    rec(0, &mut mapping, &mut used, coupling, shape, &mut out, &mut seen_sets, limit);
    out
}

/// Up to `k` vertex-disjoint embeddings of `shape`. Greedy first-fit in
/// lexicographic order; if that yields fewer than `k`, a bounded exact packing
/// search tries to reach `k`.
pub fn find_parallel_embeddings(coupling: &CouplingMap, shape: &CouplingMap, k: usize) -> Vec<Embedding> {
    find_parallel_embeddings_multi(coupling, std::slice::from_ref(shape), k)
}

/// As [`find_parallel_embeddings`], drawing each placement from any of `shapes`
/// (earlier shapes preferred).
pub fn find_parallel_embeddings_multi(
    coupling: &CouplingMap,
    shapes: &[CouplingMap],
    k: usize,
) -> Vec<Embedding> {
    if k == 0 {
        return Vec::new();
    }
    let mut cands: Vec<Embedding> = Vec::new();
    for (si, s) in shapes.iter().enumerate() {
        for mapping in monomorphisms(coupling, s, MAX_CANDIDATES) {
            cands.push(Embedding {
                shape: s.name.clone(),
                shape_index: si,
                mapping,
            });
        }
    }
    let sets: Vec<BTreeSet<usize>> = cands.iter().map(Embedding::vertices).collect();

    let mut greedy: Vec<usize> = Vec::new();
    let mut taken = BTreeSet::new();
    for (i, s) in sets.iter().enumerate() {
        if greedy.len() == k {
            break;
        }
        if s.is_disjoint(&taken) {
            taken.extend(s.iter().copied());
            greedy.push(i);
        }
    }
    let mut best = greedy;
    if best.len() < k {
        let mut cur = Vec::new();
        let mut budget = MAX_SEARCH_NODES;
        pack(0, &sets, k, &mut cur, &mut BTreeSet::new(), &mut best, &mut budget);
    }
    best.into_iter().map(|i| cands[i].clone()).collect()
}

fn pack(
    start: usize,
    sets: &[BTreeSet<usize>],
    k: usize,
    cur: &mut Vec<usize>,
    taken: &mut BTreeSet<usize>,
    best: &mut Vec<usize>,
    budget: &mut usize,
) -> bool {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() == k {
        return true;
    }
    for i in start..sets.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if !sets[i].is_disjoint(taken) {
            continue;
        }
        cur.push(i);
        taken.extend(sets[i].iter().copied());
        if pack(i + 1, sets, k, cur, taken, best, budget) {
            return true;
        }
        for v in &sets[i] {
            taken.remove(v);
        }
        cur.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_edges_in_path4() {
        let edge = CouplingMap::path(2);
        let e = find_parallel_embeddings(&CouplingMap::path(4), &edge, 2);
        assert_eq!(e.len(), 2);
        assert!(e[0].vertices().is_disjoint(&e[1].vertices()));
    }

    #[test]
    fn too_small_host() {
        let e = find_parallel_embeddings(&CouplingMap::complete(6), &CouplingMap::h_shape(), 1);
        assert!(e.is_empty());
    }

    #[test]
    fn embeddings_are_monomorphisms() {
        let hh = CouplingMap::heavy_hex_27();
        let shapes = [CouplingMap::h_shape(), CouplingMap::relay_shape()];
        let e = find_parallel_embeddings_multi(&hh, &shapes, 3);
        assert_eq!(e.len(), 3);
        for emb in &e {
            let s = &shapes[emb.shape_index];
            for &[a, b] in &s.edges {
                assert!(hh.has_edge(emb.mapping[a], emb.mapping[b]));
            }
        }
    }
}
