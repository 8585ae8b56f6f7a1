//! U_INT: loads ERI amplitudes onto the q register.

use super::{pattern_controlled_ry, ZERO_TOL};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::hfdata::EriBlock;

/// X on the bits of `y`, then exp(iλγ_x X^{x⊕y}) for each x ≠ y with γ_x ≠ 0,
/// in ascending x. The generators commute, so this is exactly exp(iλV)·X^y.
pub fn build_uint(block: &EriBlock, lambda: f64, y: usize) -> Result<Circuit> {
    let q = block.n_qubits();
    if y >= block.len() {
        return Err(Error::IndexOutOfRange(format!("base state {y} for {q} qubits")));
    }
    if block.gamma[y].abs() > ZERO_TOL {
        return Err(Error::BaseStateNonzero {
            y,
            gamma: block.gamma[y],
        });
    }
    if !lambda.is_finite() {
        return Err(Error::NonFinite(format!("lambda {lambda}")));
    }
    let mut c = Circuit::new(q);
    for b in 0..q {
        if y >> b & 1 == 1 {
            c.push(Gate::X(b));
        }
    }
    for (x, &g) in block.gamma.iter().enumerate() {
        if x == y || g.abs() <= ZERO_TOL {
            continue;
        }
        let flip = x ^ y;
        let qubits: Vec<usize> = (0..q).filter(|b| flip >> b & 1 == 1).collect();
        c.push(Gate::PauliXExp {
            qubits,
            angle: lambda * g,
        });
    }
    Ok(c)
}

/// Prepares Σ_x γ_x/‖γ‖ |x⟩ from |0⟩ with a binary tree of controlled Ry
/// gates, highest qubit first. Upper levels split norms; the last level uses
/// the signed amplitudes, so negative γ are reproduced. Zero-weight subtrees
/// are skipped.
pub fn build_uint_exact(block: &EriBlock) -> Result<Circuit> {
    prepare_amplitudes(&block.gamma)
}

pub fn prepare_amplitudes(gamma: &[f64]) -> Result<Circuit> {
    let len = gamma.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::Dimension(format!("{len} amplitudes is not a power of two")));
    }
    if gamma.iter().any(|g| !g.is_finite()) {
        return Err(Error::NonFinite("amplitude".into()));
    }
    let norm2: f64 = gamma.iter().map(|g| g * g).sum();
    if norm2.sqrt() <= ZERO_TOL {
        return Err(Error::AllZero);
    }
    let q = len.trailing_zeros() as usize;
    let mut c = Circuit::new(q);
    let weight = |lo: usize, hi: usize| -> f64 { gamma[lo..hi].iter().map(|g| g * g).sum() };
    // Level for qubit b conditions on the prefix of bits b+1..q.
    for b in (0..q).rev() {
        let controls: Vec<usize> = (b + 1..q).collect();
        let block = 1usize << b;
        for prefix in 0..(1usize << (q - 1 - b)) {
            let base = prefix << (b + 1);
            let theta = if b == 0 {
                let (g0, g1) = (gamma[base], gamma[base + 1]);
                if g0.hypot(g1) <= ZERO_TOL {
                    continue;
                }
                2.0 * g1.atan2(g0)
            } else {
                let w0 = weight(base, base + block);
                let w1 = weight(base + block, base + 2 * block);
                if (w0 + w1).sqrt() <= ZERO_TOL {
                    continue;
                }
                2.0 * w1.sqrt().atan2(w0.sqrt())
            };
            if theta.abs() <= ZERO_TOL {
                continue;
            }
            for g in pattern_controlled_ry(&controls, prefix, b, theta) {
                c.push(g);
            }
        }
    }
    Ok(c)
}
