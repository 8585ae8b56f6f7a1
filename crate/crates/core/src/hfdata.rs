//! Hartree-Fock input data, the AO→MO integral transform and block partitioning.
//!
//! Integrals use physicists' notation ⟨ab|rs⟩ = ∫∫ φa(1)φb(2) r12⁻¹ φr(1)φs(2).

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::par;

/// Tolerance for the ⟨ab|rs⟩ = ⟨rs|ab⟩ check at load time.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Dense real 4-index tensor, row-major: element (a,b,r,s) at ((a·N+b)·N+r)·N+s.
#[derive(Clone, Debug, PartialEq)]
pub struct Eri4 {
    n: usize,
    data: Vec<f64>,
}

impl Eri4 {
    pub fn zeros(n: usize) -> Self {
        Eri4 {
            n,
            data: vec![0.0; n.pow(4)],
        }
    }

    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n.pow(4) {
            return Err(Error::Dimension(format!(
                "dense ERI has {} entries, expected {}",
                data.len(),
                n.pow(4)
            )));
        }
        Ok(Eri4 { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Eri4::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        t.set(a, b, r, s, f(a, b, r, s));
                    }
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, r: usize, s: usize) -> usize {
        ((a * self.n + b) * self.n + r) * self.n + s
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, r: usize, s: usize) -> f64 {
        self.data[self.idx(a, b, r, s)]
    }

    pub fn set(&mut self, a: usize, b: usize, r: usize, s: usize, v: f64) {
        let i = self.idx(a, b, r, s);
        self.data[i] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs_diff(&self, other: &Eri4) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// First (a,b,r,s) where |⟨ab|rs⟩ − ⟨rs|ab⟩| > tol.
    pub fn symmetry_violation(&self, tol: f64) -> Option<(usize, usize, usize, usize, f64)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let d = (self.get(a, b, r, s) - self.get(r, s, a, b)).abs();
                        if d > tol {
                            return Some((a, b, r, s, d));
                        }
                    }
                }
            }
        }
        None
    }

    fn to_json(&self, sparse: bool) -> Value {
        if sparse {
            let n = self.n;
            let mut list = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for r in 0..n {
                        for s in 0..n {
                            let v = self.get(a, b, r, s);
                            if v != 0.0 {
                                list.push(serde_json::json!([a, b, r, s, v]));
                            }
                        }
                    }
                }
            }
            serde_json::json!({"format": "sparse", "data": list})
        } else {
            serde_json::json!({"format": "dense", "data": self.data})
        }
    }

    fn from_json(n: usize, v: &Value, what: &str) -> Result<Self> {
        let bad = |m: &str| Error::Schema(format!("{what}: {m}"));
        let format = v
            .get("format")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing \"format\""))?;
        let data = v.get("data").ok_or_else(|| bad("missing \"data\""))?;
        match format {
            "dense" => {
                let vals: Vec<f64> = serde_json::from_value(data.clone())
                    .map_err(|e| bad(&format!("dense data: {e}")))?;
                Eri4::from_vec(n, vals).map_err(|e| bad(&e.to_string()))
            }
            "sparse" => {
                let rows: Vec<(usize, usize, usize, usize, f64)> =
                    serde_json::from_value(data.clone())
                        .map_err(|e| bad(&format!("sparse data: {e}")))?;
                let mut t = Eri4::zeros(n);
                for (a, b, r, s, val) in rows {
                    if a >= n || b >= n || r >= n || s >= n {
                        return Err(bad(&format!("index ({a},{b},{r},{s}) out of range")));
                    }
                    t.set(a, b, r, s, val);
                }
                Ok(t)
            }
            other => Err(bad(&format!("unknown format {other:?}"))),
        }
    }
}

/// Contract the leading index with `c` and move it to the back:
/// out[b,r,s,a'] = Σ_a c[a,a'] t[a,b,r,s].
fn contract_rotate(t: &Eri4, c: &DMatrix<f64>) -> Eri4 {
    let n = t.n;
    let n3 = n * n * n;
    let chunks = par::map_indexed(n, |b| {
        let mut out = vec![0.0; n3];
        for r in 0..n {
            for s in 0..n {
                for a in 0..n {
                    let v = t.get(a, b, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    let base = (r * n + s) * n;
                    for ap in 0..n {
                        out[base + ap] += c[(a, ap)] * v;
                    }
                }
            }
        }
        out
    });
    Eri4 {
        n,
        data: chunks.concat(),
    }
}

/// ⟨ab|rs⟩ = Σ_klmn c_ka c_lb c_mr c_ns ⟨kl|mn⟩ by four one-index contractions.
pub fn ao_to_mo(eri_ao: &Eri4, mo_coefficients: &DMatrix<f64>) -> Result<Eri4> {
    let n = eri_ao.n;
    if mo_coefficients.nrows() != n || mo_coefficients.ncols() != n {
        return Err(Error::Dimension(format!(
            "coefficients {}x{} for {n} orbitals",
            mo_coefficients.nrows(),
            mo_coefficients.ncols()
        )));
    }
    let mut t = eri_ao.clone();
    for _ in 0..4 {
        t = contract_rotate(&t, mo_coefficients);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HartreeFockData {
    pub n_orbitals: usize,
    pub n_occupied: usize,
    /// Hartree.
    pub orbital_energies: Vec<f64>,
    /// c_{ka}: AO row k, MO column a.
    pub mo_coefficients: DMatrix<f64>,
    pub eri_mo: Eri4,
    pub eri_ao: Option<Eri4>,
}

#[derive(Deserialize)]
struct RawHf {
    n_orbitals: usize,
    n_occupied: usize,
    units: String,
    notation: String,
    orbital_energies: Vec<f64>,
    mo_coefficients: Vec<Vec<f64>>,
    eri_mo: Value,
    #[serde(default)]
    eri_ao: Option<Value>,
}

impl HartreeFockData {
    pub fn new(
        n_occupied: usize,
        orbital_energies: Vec<f64>,
        mo_coefficients: DMatrix<f64>,
        eri_mo: Eri4,
        eri_ao: Option<Eri4>,
    ) -> Result<Self> {
        let d = HartreeFockData {
            n_orbitals: orbital_energies.len(),
            n_occupied,
            orbital_energies,
            mo_coefficients,
            eri_mo,
            eri_ao,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_orbitals;
        if !(1 <= self.n_occupied && self.n_occupied < n) {
            return Err(Error::Schema(format!(
                "n_occupied {} must lie in [1, {n})",
                self.n_occupied
            )));
        }
        if self.orbital_energies.len() != n {
            return Err(Error::Schema(format!(
                "{} orbital energies for {n} orbitals",
                self.orbital_energies.len()
            )));
        }
        if self.orbital_energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Schema("non-finite orbital energy".into()));
        }
        if self.mo_coefficients.nrows() != n || self.mo_coefficients.ncols() != n {
            return Err(Error::Schema(format!(
                "mo_coefficients is {}x{}, expected {n}x{n}",
                self.mo_coefficients.nrows(),
                self.mo_coefficients.ncols()
            )));
        }
        if self.eri_mo.n != n {
            return Err(Error::Schema("eri_mo dimension mismatch".into()));
        }
        if let Some(ao) = &self.eri_ao {
            if ao.n != n {
                return Err(Error::Schema("eri_ao dimension mismatch".into()));
            }
        }
        if let Some((a, b, r, s, diff)) = self.eri_mo.symmetry_violation(SYMMETRY_TOL) {
            return Err(Error::Symmetry { a, b, r, s, diff });
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawHf =
            serde_json::from_str(s).map_err(|e| Error::Schema(format!("HF JSON: {e}")))?;
        if raw.units != "hartree" {
            return Err(Error::Schema(format!("units must be \"hartree\", got {:?}", raw.units)));
        }
        if raw.notation != "physicist" {
            return Err(Error::Schema(format!(
                "notation must be \"physicist\", got {:?}",
                raw.notation
            )));
        }
        let n = raw.n_orbitals;
        if raw.mo_coefficients.len() != n || raw.mo_coefficients.iter().any(|r| r.len() != n) {
            return Err(Error::Schema(format!("mo_coefficients must be {n}x{n}")));
        }
        let c = DMatrix::from_fn(n, n, |i, j| raw.mo_coefficients[i][j]);
        let eri_mo = Eri4::from_json(n, &raw.eri_mo, "eri_mo")?;
        let eri_ao = raw
            .eri_ao
            .as_ref()
            .map(|v| Eri4::from_json(n, v, "eri_ao"))
            .transpose()?;
        if raw.orbital_energies.len() != n {
            return Err(Error::Schema(format!(
                "{} orbital energies for n_orbitals {n}",
                raw.orbital_energies.len()
            )));
        }
        Self::new(raw.n_occupied, raw.orbital_energies, c, eri_mo, eri_ao)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(e).context(format!("reading {}", path.display())))?;
        Self::from_json_str(&s).map_err(|e| e.context(format!("loading {}", path.display())))
    }

    pub fn to_json(&self, sparse: bool) -> Value {
        let n = self.n_orbitals;
        let c: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.mo_coefficients[(i, j)]).collect())
            .collect();
        let mut v = serde_json::json!({
            "n_orbitals": n,
            "n_occupied": self.n_occupied,
            "units": "hartree",
            "notation": "physicist",
            "orbital_energies": self.orbital_energies,
            "mo_coefficients": c,
            "eri_mo": self.eri_mo.to_json(sparse),
        });
        if let Some(ao) = &self.eri_ao {
            v["eri_ao"] = ao.to_json(sparse);
        }
        v
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n_orbitals {
            return Err(Error::IndexOutOfRange(format!(
                "orbital {i} of {}",
                self.n_orbitals
            )));
        }
        Ok(())
    }

    /// ε_a + ε_b − ε_r − ε_s.
    pub fn denominator(&self, a: usize, b: usize, r: usize, s: usize) -> f64 {
        let e = &self.orbital_energies;
        e[a] + e[b] - e[r] - e[s]
    }

    pub fn virtuals(&self) -> Vec<usize> {
        (self.n_occupied..self.n_orbitals).collect()
    }
}

/// ⟨ab||rs⟩ = ⟨ab|rs⟩ − ⟨ab|sr⟩.
pub fn antisymmetrized(data: &HartreeFockData, a: usize, b: usize, r: usize, s: usize) -> Result<f64> {
    for i in [a, b, r, s] {
        data.check_index(i)?;
    }
    Ok(data.eri_mo.get(a, b, r, s) - data.eri_mo.get(a, b, s, r))
}

/// A circuit-sized slice of the (r,s) plane for a fixed occupied pair.
///
/// Component `x` has r-local index `x & (2^q_r − 1)` and s-local index `x >> q_r`.
/// Padding slots (`None` orbitals) carry γ = 0 and a −∞ denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EriBlock {
    pub label: String,
    pub occupied: Option<(usize, usize)>,
    pub r_orbitals: Vec<Option<usize>>,
    pub s_orbitals: Vec<Option<usize>>,
    pub q_r: usize,
    pub q_s: usize,
    pub gamma: Vec<f64>,
    /// Hartree; −∞ marks padding.
    #[serde(with = "inf_as_null")]
    pub denominators: Vec<f64>,
}

mod inf_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mapped: Vec<Option<f64>> = v.iter().map(|x| x.is_finite().then_some(*x)).collect();
        serde::Serialize::serialize(&mapped, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let v: Vec<Option<f64>> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.unwrap_or(f64::NEG_INFINITY)).collect())
    }
}

impl EriBlock {
    /// Synthetic block with no orbital provenance; `gamma.len()` must be a power of two.
    pub fn synthetic(label: impl Into<String>, gamma: Vec<f64>, denominators: Vec<f64>) -> Result<Self> {
        let len = gamma.len();
        if len == 0 || !len.is_power_of_two() || denominators.len() != len {
            return Err(Error::Dimension(format!(
                "block needs matching power-of-two lengths, got {} and {}",
                len,
                denominators.len()
            )));
        }
        let q = len.trailing_zeros() as usize;
        let q_r = q.div_ceil(2);
        let q_s = q - q_r;
        Ok(EriBlock {
            label: label.into(),
            occupied: None,
            r_orbitals: vec![None; 1 << q_r],
            s_orbitals: vec![None; 1 << q_s],
            q_r,
            q_s,
            gamma,
            denominators,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.q_r + self.q_s
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn encode(&self, r_local: usize, s_local: usize) -> usize {
        r_local | (s_local << self.q_r)
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x & ((1 << self.q_r) - 1), x >> self.q_r)
    }

    /// (a, b, r, s) for component `x`, when it maps to real orbitals.
    pub fn orbitals(&self, x: usize) -> Option<(usize, usize, usize, usize)> {
        let (a, b) = self.occupied?;
        let (ri, si) = self.decode(x);
        Some((a, b, self.r_orbitals[ri]?, self.s_orbitals[si]?))
    }

    pub fn is_padding(&self, x: usize) -> bool {
        !self.denominators[x].is_finite()
    }

    /// Same block with the r and s roles exchanged.
    pub fn transposed(&self) -> EriBlock {
        let mut t = EriBlock {
            label: format!("{}^T", self.label),
            occupied: self.occupied.map(|(a, b)| (b, a)),
            r_orbitals: self.s_orbitals.clone(),
            s_orbitals: self.r_orbitals.clone(),
            q_r: self.q_s,
            q_s: self.q_r,
            gamma: vec![0.0; self.len()],
            denominators: vec![0.0; self.len()],
        };
        for x in 0..self.len() {
            let (ri, si) = self.decode(x);
            let y = t.encode(si, ri);
            t.gamma[y] = self.gamma[x];
            t.denominators[y] = self.denominators[x];
        }
        t
    }

    /// Component index in [`Self::transposed`] that holds component `x`.
    pub fn transpose_index(&self, x: usize) -> usize {
        let (ri, si) = self.decode(x);
        si | (ri << self.q_s)
    }

    /// Lowest code with γ = 0 (|γ| ≤ 1e-12).
    pub fn default_base_state(&self) -> Result<usize> {
        self.gamma
            .iter()
            .position(|g| g.abs() <= crate::builders::ZERO_TOL)
            .ok_or_else(|| Error::NoBaseState(self.label.clone()))
    }

    /// Every finite denominator strictly negative.
    pub fn is_ground_state(&self) -> bool {
        self.denominators
            .iter()
            .all(|d| !d.is_finite() || *d < 0.0)
    }
}

/// How the (r,s) plane is cut into blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionScheme {
    pub occupied: (usize, usize),
    pub groups: Vec<Vec<usize>>,
}

impl PartitionScheme {
    /// First occupied orbital doubly occupied; virtuals in consecutive groups of ≤ 4.
    pub fn standard(data: &HartreeFockData) -> Self {
        let groups = data.virtuals().chunks(4).map(<[usize]>::to_vec).collect();
        PartitionScheme {
            occupied: (0, 0),
            groups,
        }
    }
}

/// Roman-numeral label for group pair (i, j) when there are two groups:
/// I = (A,A), II = (A,B), III = (B,A), IV = (B,B). Otherwise `r{i}s{j}`.
pub fn block_label(n_groups: usize, i: usize, j: usize) -> String {
    if n_groups == 2 {
        ["I", "II", "III", "IV"][2 * i + j].to_string()
    } else {
        format!("r{i}s{j}")
    }
}

pub fn partition(data: &HartreeFockData, scheme: &PartitionScheme) -> Result<Vec<EriBlock>> {
    let (a, b) = scheme.occupied;
    data.check_index(a)?;
    data.check_index(b)?;
    let mut seen = vec![false; data.n_orbitals];
    for g in &scheme.groups {
        if g.is_empty() {
            return Err(Error::Schema("empty virtual group".into()));
        }
        for &v in g {
            data.check_index(v)?;
            if seen[v] {
                return Err(Error::Schema(format!("orbital {v} in two groups")));
            }
            seen[v] = true;
        }
    }
    let padded = |g: &Vec<usize>| -> (usize, Vec<Option<usize>>) {
        let size = g.len().next_power_of_two();
        let mut v: Vec<Option<usize>> = g.iter().copied().map(Some).collect();
        v.resize(size, None);
        (size.trailing_zeros() as usize, v)
    };
    let ng = scheme.groups.len();
    let mut out = Vec::with_capacity(ng * ng);
    for (i, gr) in scheme.groups.iter().enumerate() {
        for (j, gs) in scheme.groups.iter().enumerate() {
            let (q_r, r_orbitals) = padded(gr);
            let (q_s, s_orbitals) = padded(gs);
            let len = 1 << (q_r + q_s);
            let mut block = EriBlock {
                label: block_label(ng, i, j),
                occupied: Some((a, b)),
                r_orbitals,
                s_orbitals,
                q_r,
                q_s,
                gamma: vec![0.0; len],
                denominators: vec![f64::NEG_INFINITY; len],
            };
            for x in 0..len {
                if let Some((a, b, r, s)) = block.orbitals(x) {
                    block.gamma[x] = data.eri_mo.get(a, b, r, s);
                    block.denominators[x] = data.denominator(a, b, r, s);
                }
            }
            out.push(block);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chemists_notation_rejected() {
        let s = r#"{"n_orbitals":2,"n_occupied":1,"units":"hartree","notation":"chemist",
            "orbital_energies":[-1,1],"mo_coefficients":[[1,0],[0,1]],
            "eri_mo":{"format":"dense","data":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}}"#;
        assert!(matches!(HartreeFockData::from_json_str(s), Err(Error::Schema(_))));
    }

    #[test]
    fn asymmetric_tensor_reported() {
        let s = r#"{"n_orbitals":2,"n_occupied":1,"units":"hartree","notation":"physicist",
            "orbital_energies":[-1,1],"mo_coefficients":[[1,0],[0,1]],
            "eri_mo":{"format":"sparse","data":[[0,0,1,1,0.5]]}}"#;
        assert!(matches!(
            HartreeFockData::from_json_str(s),
            Err(Error::Symmetry { .. })
        ));
    }

    #[test]
    fn padding_group() {
        let n = 4;
        let eri = Eri4::from_fn(n, |a, b, r, s| if (a, b) == (r, s) { 0.1 } else { 0.0 });
        let d = HartreeFockData::new(
            1,
            vec![-1.0, 0.5, 0.6, 0.7],
            DMatrix::identity(n, n),
            eri,
            None,
        )
        .unwrap();
        let blocks = partition(&d, &PartitionScheme::standard(&d)).unwrap();
        assert_eq!(blocks.len(), 1);
        let b = &blocks[0];
        assert_eq!((b.q_r, b.q_s), (2, 2));
        assert!(b.is_padding(3));
        assert!(b.is_padding(12));
        assert_eq!(b.gamma[3], 0.0);
        assert!(b.is_ground_state());
    }

    #[test]
    fn transpose_round_trip() {
        let b = EriBlock::synthetic("t", (0..8).map(|i| i as f64).collect(), vec![-1.0; 8]).unwrap();
        let t = b.transposed();
        for x in 0..8 {
            assert_eq!(t.gamma[b.transpose_index(x)], b.gamma[x]);
        }
        assert_eq!(t.transposed().gamma, b.gamma);
    }
}
