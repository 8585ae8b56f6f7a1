//! Dense unitaries, used as a test oracle and for equivalence checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Circuit;
use crate::error::{Error, Result};
use crate::par;
use crate::statevec::{apply_circuit, StateVector};

pub const MAX_UNITARY_QUBITS: usize = 12;

/// Column j is the circuit applied to |j⟩.
pub fn unitary_of(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1usize << n;
    let cols = par::try_map_indexed(dim, |j| {
        apply_circuit(StateVector::basis(n, j)?, circuit).map(StateVector::into_amplitudes)
    })?;
    Ok(DMatrix::from_fn(dim, dim, |i, j| cols[j][i]))
}

/// Unitary of `circuit` restricted to the subspace where every qubit outside
/// `data` starts and ends in |0⟩. `data[k]` is the physical qubit carrying
/// logical qubit k. Returns the restricted matrix and the largest probability
/// that any input leaves an extra qubit excited.
pub fn restricted_unitary(circuit: &Circuit, data: &[usize]) -> Result<(DMatrix<Complex64>, f64)> {
    let n = circuit.n_qubits();
    for &q in data {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
        }
    }
    let k = data.len();
    let dim = 1usize << k;
    let embed = |x: usize| -> usize {
        data.iter()
            .enumerate()
            .filter(|(b, _)| x >> b & 1 == 1)
            .fold(0, |acc, (_, &p)| acc | (1 << p))
    };
    let data_mask = embed(dim - 1);
    let results = par::try_map_indexed(dim, |j| -> Result<(Vec<Complex64>, f64)> {
        let out = apply_circuit(StateVector::basis(n, embed(j))?, circuit)?;
        let amps = out.amplitudes();
        let col = (0..dim).map(|i| amps[embed(i)]).collect();
        let leak = amps
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx & !data_mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok((col, leak))
    })?;
    let leak = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok((DMatrix::from_fn(dim, dim, |i, j| results[j].0[i]), leak))
}

/// Largest entrywise difference after aligning the global phase of `b` to `a`
/// on the largest-magnitude entry of `a`.
pub fn max_phase_aligned_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let (mut best, mut idx) = (-1.0, 0);
    for (i, z) in a.iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            idx = i;
        }
    }
    let (za, zb) = (a.as_slice()[idx], b.as_slice()[idx]);
    let phase = if zb.norm() > 0.0 && za.norm() > 0.0 {
        let r = za / zb;
        r / r.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y * phase).norm())
        .fold(0.0, f64::max)
}

pub fn equal_up_to_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
    max_phase_aligned_diff(a, b) <= tol
}

/// Max entrywise deviation of U†U from the identity.
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let p = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - Complex64::new(e, 0.0)).norm());
        }
    }
    worst
}
