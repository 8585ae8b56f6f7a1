//! Coupling maps: which physical qubit pairs may host a two-qubit gate.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HEAVY_HEX_27: &str = include_str!("../../data/ibm_27_heavy_hex.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CouplingMap {
    pub name: String,
    pub n_qubits: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip)]
    adjacency: Vec<BTreeSet<usize>>,
}

impl CouplingMap {
    pub fn new(name: impl Into<String>, n_qubits: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Coupling(format!("self-loop on qubit {a}")));
            }
            if a >= n_qubits || b >= n_qubits {
                return Err(Error::Coupling(format!(
                    "edge ({a},{b}) outside {n_qubits} qubits"
                )));
            }
            set.insert([a.min(b), a.max(b)]);
        }
        let mut adjacency = vec![BTreeSet::new(); n_qubits];
        for &[a, b] in &set {
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Ok(CouplingMap {
            name: name.into(),
            n_qubits,
            edges: set.into_iter().collect(),
            adjacency,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            n_qubits: usize,
            edges: Vec<[usize; 2]>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(raw.name, raw.n_qubits, &edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"name": self.name, "n_qubits": self.n_qubits, "edges": self.edges})
    }

    /// All-to-all connectivity.
    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Self::new(format!("complete-{n}"), n, &e).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(format!("path-{n}"), n, &e).expect("valid path graph")
    }

    /// Row-major grid; node (r, c) is `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let i = r * cols + c;
                if c + 1 < cols {
                    e.push((i, i + 1));
                }
                if r + 1 < rows {
                    e.push((i, i + cols));
                }
            }
        }
        Self::new(format!("grid-{rows}x{cols}"), rows * cols, &e).expect("valid grid")
    }

    /// Seven-qubit H layout for a C⁴Ry: controls 0,2,4,6; ancillas 1,5; target 3.
    ///
    /// ```text
    /// 0   4
    /// |   |
    /// 1-3-5
    /// |   |
    /// 2   6
    /// ```
    pub fn h_shape() -> Self {
        Self::new(
            "h-shape-7",
            7,
            &[(0, 1), (1, 2), (1, 3), (3, 5), (4, 5), (5, 6)],
        )
        .expect("valid h-shape")
    }

    /// Nine-qubit relay layout: the H shape with each ancilla one hop further
    /// from the target. Controls 0,2,3,5; ancillas 1,4 relay through 6 and 8 to target 7.
    pub fn relay_shape() -> Self {
        Self::new(
            "relay-9",
            9,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (1, 6), (6, 7), (7, 8), (8, 4)],
        )
        .expect("valid relay shape")
    }

    /// 27-qubit heavy-hex device graph (figure-derived edge list).
    pub fn heavy_hex_27() -> Self {
        Self::from_json_str(HEAVY_HEX_27).expect("bundled heavy-hex map parses")
    }

    /// Resolve a built-in name: `complete-N`, `path-N`, `grid-MxN`, `h-shape-7`,
    /// `relay-9`, `ibm-27-heavy-hex`.
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::Coupling(format!("unknown coupling map {name:?}"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match name {
            "h-shape-7" => return Ok(Self::h_shape()),
            "relay-9" => return Ok(Self::relay_shape()),
            "ibm-27-heavy-hex" => return Ok(Self::heavy_hex_27()),
            _ => {}
        }
        if let Some(n) = name.strip_prefix("complete-") {
            return Ok(Self::complete(num(n)?));
        }
        if let Some(n) = name.strip_prefix("path-") {
            return Ok(Self::path(num(n)?));
        }
        if let Some(rest) = name.strip_prefix("grid-") {
            let (r, c) = rest.split_once('x').ok_or_else(bad)?;
            return Ok(Self::grid(num(r)?, num(c)?));
        }
        Err(bad())
    }

    fn adj(&self) -> &[BTreeSet<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n_qubits && b < self.n_qubits && self.adjacency[a].contains(&b)
    }

    /// Neighbors in ascending order.
    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        self.adj()[q].iter().copied().collect()
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adj()[q].len()
    }

    /// Hop distances from `src` (usize::MAX when unreachable).
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let adj = self.adj();
        let mut d = vec![usize::MAX; self.n_qubits];
        let mut queue = VecDeque::new();
        d[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        d
    }
}
