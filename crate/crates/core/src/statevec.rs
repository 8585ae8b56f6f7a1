//! Dense statevector simulation.
//!
//! Qubit `j` is bit `j` of the basis index. Outcome bitstrings are written
//! most significant qubit first, so the string is the binary form of the index.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `n_qubits`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange(format!(
                "basis index {index} for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// Wrap raw amplitudes; the length must be a power of two. No normalization is applied.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "amplitude vector length {dim} is not a power of two"
            )));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n: n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.n_qubits)?;
        match gate {
            Gate::X(q) => self.apply_1q(*q, 0, 0, [[ZERO, ONE], [ONE, ZERO]]),
            Gate::H(q) => {
                let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_1q(*q, 0, 0, [[h, h], [h, -h]])
            }
            Gate::Rx(q, t) => self.apply_1q(*q, 0, 0, rx(*t)),
            Gate::Ry(q, t) => self.apply_1q(*q, 0, 0, ry(*t)),
            Gate::Rz(q, t) => self.apply_1q(*q, 0, 0, rz(*t)),
            Gate::Cnot { control, target } => {
                let m = 1 << control;
                self.apply_1q(*target, m, m, [[ZERO, ONE], [ONE, ZERO]])
            }
            Gate::Toffoli { c1, c2, target } => {
                let m = (1 << c1) | (1 << c2);
                self.apply_1q(*target, m, m, [[ZERO, ONE], [ONE, ZERO]])
            }
            Gate::CRy {
                control,
                target,
                theta,
                polarity,
            } => {
                let m = 1 << control;
                let v = if *polarity == Polarity::One { m } else { 0 };
                self.apply_1q(*target, m, v, ry(*theta))
            }
            Gate::McRy {
                controls,
                target,
                theta,
                polarity,
            } => {
                let m = controls.iter().fold(0, |acc, c| acc | (1 << c));
                let v = if *polarity == Polarity::One { m } else { 0 };
                self.apply_1q(*target, m, v, ry(*theta))
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (1usize << a, 1usize << b);
                for i in 0..self.amplitudes.len() {
                    if i & ma != 0 && i & mb == 0 {
                        self.amplitudes.swap(i, i ^ ma ^ mb);
                    }
                }
            }
            Gate::PauliXExp { qubits, angle } => {
                // exp(iφ X^S) pairs |i⟩ with |i ⊕ S⟩: a_i ← cos φ a_i + i sin φ a_{i⊕S}
                let mask = qubits.iter().fold(0usize, |acc, q| acc | (1 << q));
                let (c, s) = (angle.cos(), angle.sin());
                let is = Complex64::new(0.0, s);
                for i in 0..self.amplitudes.len() {
                    let j = i ^ mask;
                    if i < j {
                        let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
                        self.amplitudes[i] = a * c + b * is;
                        self.amplitudes[j] = b * c + a * is;
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply `m` to `target` on every basis pair whose `ctrl_mask` bits equal `ctrl_val`.
    fn apply_1q(&mut self, target: usize, ctrl_mask: usize, ctrl_val: usize, m: [[Complex64; 2]; 2]) {
        let t = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & t != 0 || i & ctrl_mask != ctrl_val {
                continue;
            }
            let j = i | t;
            let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = m[0][0] * a + m[0][1] * b;
            self.amplitudes[j] = m[1][0] * a + m[1][1] * b;
        }
    }

    /// Marginal probability that `qubit` reads `bit`.
    pub fn marginal(&self, qubit: usize, bit: usize) -> f64 {
        let m = 1usize << qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i & m != 0) as usize) == bit)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

pub(crate) fn rx(t: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn ry(t: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn rz(t: f64) -> [[Complex64; 2]; 2] {
    [
        [Complex64::from_polar(1.0, -t / 2.0), ZERO],
        [ZERO, Complex64::from_polar(1.0, t / 2.0)],
    ]
}

/// Apply `circuit` to `state`, returning the new state.
pub fn apply_circuit(mut state: StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.n_qubits != circuit.n_qubits() {
        return Err(Error::QubitCountMismatch {
            state: state.n_qubits,
            circuit: circuit.n_qubits(),
        });
    }
    for g in circuit.gates() {
        state.apply_gate(g)?;
    }
    Ok(state)
}

/// Run `circuit` on |0…0⟩.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    apply_circuit(StateVector::zero(circuit.n_qubits())?, circuit)
}

pub fn probabilities(state: &StateVector) -> Vec<f64> {
    state.amplitudes.iter().map(|a| a.norm_sqr()).collect()
}

/// Basis index as a big-endian bitstring of width `n_qubits`.
pub fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .rev()
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(s: &str) -> Result<usize> {
    if s.is_empty() || s.len() > 63 {
        return Err(Error::Counts(format!("bad bitstring {s:?}")));
    }
    usize::from_str_radix(s, 2).map_err(|_| Error::Counts(format!("bad bitstring {s:?}")))
}

/// Multinomial outcome counts. Keys are bitstrings (see [`bitstring`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsTable {
    pub n_qubits: usize,
    pub shots: u64,
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
    pub counts: BTreeMap<String, u64>,
}

impl CountsTable {
    pub fn get(&self, index: usize) -> u64 {
        self.counts
            .get(&bitstring(index, self.n_qubits))
            .copied()
            .unwrap_or(0)
    }

    pub fn frequency(&self, index: usize) -> f64 {
        self.get(index) as f64 / self.shots as f64
    }

    /// Build from dense per-index counts; shots is their sum.
    pub fn from_dense(n_qubits: usize, dense: &[u64], seed: u64, stream: u64) -> Self {
        let counts = dense
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (bitstring(i, n_qubits), c))
            .collect();
        CountsTable {
            n_qubits,
            shots: dense.iter().sum(),
            seed,
            stream,
            counts,
        }
    }

    pub fn to_dense(&self) -> Result<Vec<u64>> {
        let mut v = vec![0u64; 1 << self.n_qubits];
        for (k, &c) in &self.counts {
            if k.len() != self.n_qubits {
                return Err(Error::Counts(format!(
                    "outcome {k:?} has wrong width for {} qubits",
                    self.n_qubits
                )));
            }
            v[parse_bitstring(k)?] += c;
        }
        Ok(v)
    }

    /// Frequency with which `qubit` reads 1.
    pub fn marginal_one(&self, qubit: usize) -> f64 {
        let ones: u64 = self
            .counts
            .iter()
            .filter(|(k, _)| parse_bitstring(k).map(|i| i >> qubit & 1 == 1).unwrap_or(false))
            .map(|(_, c)| c)
            .sum();
        ones as f64 / self.shots as f64
    }
}

/// Seeded generator used for every draw: ChaCha8 keyed by `seed`, on stream `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw `shots` outcomes from `probs` by inverse-CDF lookup on uniform doubles.
pub fn sample_probabilities(
    probs: &[f64],
    n_qubits: usize,
    shots: u64,
    seed: u64,
    stream: u64,
) -> Result<CountsTable> {
    if shots == 0 {
        return Err(Error::Counts("shots must be positive".into()));
    }
    if probs.len() != 1 << n_qubits {
        return Err(Error::Dimension(format!(
            "{} probabilities for {n_qubits} qubits",
            probs.len()
        )));
    }
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &p in probs {
        if !(p >= 0.0) {
            return Err(Error::Counts(format!("invalid probability {p}")));
        }
        acc += p;
        cdf.push(acc);
    }
    if acc <= 0.0 {
        return Err(Error::Counts("probabilities sum to zero".into()));
    }
    // The last index that carries weight absorbs rounding in the tail.
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let mut rng = rng_for(seed, stream);
    let mut dense = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * acc;
        let k = cdf.partition_point(|&c| c <= u).min(last);
        dense[k] += 1;
    }
    Ok(CountsTable::from_dense(n_qubits, &dense, seed, stream))
}

/// Multinomial sample of `shots` measurements of `state` in the computational basis.
pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Result<CountsTable> {
    sample_counts_stream(state, shots, seed, 0)
}

pub fn sample_counts_stream(
    state: &StateVector,
    shots: u64,
    seed: u64,
    stream: u64,
) -> Result<CountsTable> {
    sample_probabilities(&probabilities(state), state.n_qubits, shots, seed, stream)
}
