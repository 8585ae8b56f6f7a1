//! U_trans: maps AO-indexed amplitudes onto MO-indexed amplitudes.
//!
//! Each index slot (a, b, r, s ↔ k, l, m, n) owns an AO register and an MO
//! register. Code 0 is reserved as "no orbital" in both, so orbital i of a
//! slot is code i+1 and U_trans|0⟩ = |0⟩. Controlled on AO code j, the MO
//! register receives T_j(λ) = Π_a exp(iλ c_{k_j,a} X^{code(a)}); from |0⟩ this
//! leaves amplitude iλ·c_{k_j,a} on |code(a)⟩ to first order.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::controlled::controlled_pauli_x_exp;
use super::ZERO_TOL;
use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotPlan {
    /// AO indices (rows of c) in code order.
    pub ao_orbitals: Vec<usize>,
    /// MO indices (columns of c) in code order.
    pub mo_orbitals: Vec<usize>,
}

impl SlotPlan {
    pub fn ao_width(&self) -> usize {
        code_width(self.ao_orbitals.len())
    }

    pub fn mo_width(&self) -> usize {
        code_width(self.mo_orbitals.len())
    }
}

/// Bits needed for codes 0..=n.
fn code_width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Qubit layout: all AO registers (slot order), then all MO registers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegisterPlan {
    pub slots: Vec<SlotPlan>,
}

impl RegisterPlan {
    /// Four slots sharing the same AO and MO orbital lists.
    pub fn uniform(ao: Vec<usize>, mo: Vec<usize>) -> Self {
        RegisterPlan {
            slots: vec![
                SlotPlan {
                    ao_orbitals: ao,
                    mo_orbitals: mo,
                };
                4
            ],
        }
    }

    pub fn ao_qubits(&self, slot: usize) -> Vec<usize> {
        let start: usize = self.slots[..slot].iter().map(SlotPlan::ao_width).sum();
        (start..start + self.slots[slot].ao_width()).collect()
    }

    pub fn mo_qubits(&self, slot: usize) -> Vec<usize> {
        let ao_total: usize = self.slots.iter().map(SlotPlan::ao_width).sum();
        let start = ao_total + self.slots[..slot].iter().map(SlotPlan::mo_width).sum::<usize>();
        (start..start + self.slots[slot].mo_width()).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.slots.iter().map(|s| s.ao_width() + s.mo_width()).sum()
    }

    /// Basis index of the AO register for codes (one per slot).
    pub fn ao_index(&self, codes: &[usize]) -> usize {
        self.pack(codes, |s| self.ao_qubits(s))
    }

    pub fn mo_index(&self, codes: &[usize]) -> usize {
        self.pack(codes, |s| self.mo_qubits(s))
    }

    fn pack(&self, codes: &[usize], qubits: impl Fn(usize) -> Vec<usize>) -> usize {
        let mut idx = 0;
        for (s, &code) in codes.iter().enumerate() {
            for (bit, q) in qubits(s).into_iter().enumerate() {
                if code >> bit & 1 == 1 {
                    idx |= 1 << q;
                }
            }
        }
        idx
    }

    /// Per-slot MO codes of basis index `idx`.
    pub fn mo_codes(&self, idx: usize) -> Vec<usize> {
        (0..self.slots.len())
            .map(|s| {
                self.mo_qubits(s)
                    .into_iter()
                    .enumerate()
                    .fold(0, |acc, (bit, q)| acc | ((idx >> q & 1) << bit))
            })
            .collect()
    }

    fn check(&self, c: &DMatrix<f64>) -> Result<()> {
        if self.slots.is_empty() {
            return Err(Error::RegisterPlan("no slots".into()));
        }
        for (i, s) in self.slots.iter().enumerate() {
            if s.ao_orbitals.is_empty() || s.mo_orbitals.is_empty() {
                return Err(Error::RegisterPlan(format!("slot {i} has an empty register")));
            }
            if let Some(&k) = s.ao_orbitals.iter().find(|&&k| k >= c.nrows()) {
                return Err(Error::RegisterPlan(format!("slot {i}: AO {k} beyond {} rows", c.nrows())));
            }
            if let Some(&a) = s.mo_orbitals.iter().find(|&&a| a >= c.ncols()) {
                return Err(Error::RegisterPlan(format!(
                    "slot {i}: MO {a} beyond {} columns",
                    c.ncols()
                )));
            }
        }
        Ok(())
    }
}

/// Build U_trans(λ) for `plan`.
pub fn build_utrans(mo_coefficients: &DMatrix<f64>, lambda: f64, plan: &RegisterPlan) -> Result<Circuit> {
    plan.check(mo_coefficients)?;
    let mut c = Circuit::new(plan.n_qubits());
    for (s, slot) in plan.slots.iter().enumerate() {
        let ao_q = plan.ao_qubits(s);
        let mo_q = plan.mo_qubits(s);
        for (j, &k) in slot.ao_orbitals.iter().enumerate() {
            let code = j + 1;
            let flips: Vec<usize> = ao_q
                .iter()
                .enumerate()
                .filter(|(b, _)| code >> b & 1 == 0)
                .map(|(_, &q)| q)
                .collect();
            let mut body = Vec::new();
            for (i, &a) in slot.mo_orbitals.iter().enumerate() {
                let beta = mo_coefficients[(k, a)];
                if beta.abs() <= ZERO_TOL {
                    continue;
                }
                let target = i + 1;
                let qubits: Vec<usize> = mo_q
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| target >> b & 1 == 1)
                    .map(|(_, &q)| q)
                    .collect();
                body.extend(controlled_pauli_x_exp(&ao_q, Polarity::One, &qubits, lambda * beta));
            }
            if body.is_empty() {
                continue;
            }
            for &q in &flips {
                c.try_push(Gate::X(q))?;
            }
            for g in body {
                c.try_push(g)?;
            }
            for &q in &flips {
                c.try_push(Gate::X(q))?;
            }
        }
    }
    Ok(c)
}
