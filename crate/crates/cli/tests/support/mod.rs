//! Fixtures and independent oracles shared by the CLI test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use mp2q::hfdata::{EriBlock, HartreeFockData};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CMat = DMatrix<Complex64>;

pub fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

pub fn helium_path() -> PathBuf {
    repo_path("crates/core/data/helium_aug_cc_pvdz.json")
}

pub fn helium() -> HartreeFockData {
    HartreeFockData::load(helium_path()).unwrap()
}

pub fn helium_block(part: &str) -> EriBlock {
    mp2q::estimate::sweep::find_block(&helium(), part).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mp2q(args: &[&str]) -> Output {
    mp2q_env(args, &[])
}

pub fn mp2q_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mp2q"));
    cmd.args(args).env_remove("MP2Q_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawning mp2q")
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// X on every qubit in `mask`: |k⟩ ↦ |k ⊕ mask⟩.
pub fn pauli_x_string(n: usize, mask: usize) -> CMat {
    let dim = 1 << n;
    CMat::from_fn(dim, dim, |i, j| if i == j ^ mask { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entrywise difference after aligning global phase on b's largest entry.
pub fn phase_diff(a: &CMat, b: &CMat) -> f64 {
    let (mut k, mut best) = (0, -1.0);
    for (i, v) in b.iter().enumerate() {
        if v.norm() > best {
            best = v.norm();
            k = i;
        }
    }
    let phase = a.as_slice()[k] / b.as_slice()[k];
    let phase = phase / phase.norm();
    a.iter().zip(b.iter()).map(|(x, y)| (x - y * phase).norm()).fold(0.0, f64::max)
}

/// Random block on q qubits: γ in [0, 0.3], |Δε| in [0.5, 5], component `zero` has γ = 0.
pub fn random_block(r: &mut ChaCha8Rng, q: usize, zero: Option<usize>) -> EriBlock {
    let len = 1 << q;
    let mut gamma: Vec<f64> = (0..len).map(|_| r.gen_range(0.0..0.3)).collect();
    if let Some(z) = zero {
        gamma[z] = 0.0;
    }
    let den = (0..len).map(|_| -r.gen_range(0.5..5.0)).collect();
    EriBlock::synthetic("R", gamma, den).unwrap()
}

/// Σ_{x ≠ y} γ_x² / Δε_x summed without any circuit machinery.
pub fn direct_block_energy(b: &EriBlock) -> f64 {
    b.gamma
        .iter()
        .zip(&b.denominators)
        .filter(|(_, d)| d.is_finite())
        .map(|(g, d)| g * g / d.abs())
        .sum()
}
