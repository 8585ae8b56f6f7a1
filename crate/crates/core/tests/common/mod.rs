//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use mp2q::hfdata::{EriBlock, HartreeFockData};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CMat = DMatrix<Complex64>;

pub const HELIUM: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/helium_aug_cc_pvdz.json");
pub const TOY: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy_2orb.json");

pub fn helium() -> HartreeFockData {
    HartreeFockData::load(HELIUM).unwrap()
}

pub fn helium_block(part: &str) -> EriBlock {
    mp2q::estimate::sweep::find_block(&helium(), part).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix of X on every qubit in `mask`: |k⟩ ↦ |k ⊕ mask⟩.
pub fn pauli_x_string(n: usize, mask: usize) -> CMat {
    let dim = 1 << n;
    CMat::from_fn(dim, dim, |i, j| if i == j ^ mask { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Matrix of Z on every qubit in `mask`.
pub fn pauli_z_string(n: usize, mask: usize) -> CMat {
    let dim = 1 << n;
    CMat::from_fn(dim, dim, |i, j| {
        if i != j {
            c(0.0, 0.0)
        } else if (i & mask).count_ones() % 2 == 1 {
            c(-1.0, 0.0)
        } else {
            c(1.0, 0.0)
        }
    })
}

/// exp(i·t·H) by nalgebra's Padé exponential.
pub fn expi(h: &CMat, t: f64) -> CMat {
    (h * c(0.0, t)).exp()
}

/// 2×2 matrix `m` acting on `qubit` of an n-qubit register.
pub fn one_qubit(n: usize, qubit: usize, m: [[Complex64; 2]; 2]) -> CMat {
    let dim = 1 << n;
    CMat::from_fn(dim, dim, |i, j| {
        if (i ^ j) & !(1 << qubit) != 0 {
            return c(0.0, 0.0);
        }
        m[i >> qubit & 1][j >> qubit & 1]
    })
}

pub fn ry_matrix(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

pub fn rx_matrix(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

pub fn rz_matrix(theta: f64) -> [[Complex64; 2]; 2] {
    [[c(0.0, -theta / 2.0).exp(), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, theta / 2.0).exp()]]
}

pub fn h_matrix() -> [[Complex64; 2]; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]]
}

/// `m` on `target` when every control reads its `pattern` bit; identity otherwise.
pub fn controlled(n: usize, controls: &[usize], pattern: usize, target: usize, m: [[Complex64; 2]; 2]) -> CMat {
    let dim = 1 << n;
    let fires = |k: usize| controls.iter().enumerate().all(|(i, &q)| (k >> q & 1) == (pattern >> i & 1));
    CMat::from_fn(dim, dim, |i, j| {
        if (i ^ j) & !(1 << target) != 0 {
            return c(0.0, 0.0);
        }
        if fires(j) {
            m[i >> target & 1][j >> target & 1]
        } else if i == j {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

pub fn cnot(n: usize, control: usize, target: usize) -> CMat {
    let x = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    controlled(n, &[control], 1, target, x)
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
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y * phase).norm())
        .fold(0.0, f64::max)
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Random synthetic 4-qubit block; component `zero` has γ = 0.
pub fn random_block(r: &mut ChaCha8Rng, q: usize, zero: Option<usize>) -> EriBlock {
    let len = 1 << q;
    let mut gamma: Vec<f64> = (0..len).map(|_| r.gen_range(0.0..0.3)).collect();
    if let Some(z) = zero {
        gamma[z] = 0.0;
    }
    let den = (0..len).map(|_| -r.gen_range(0.5..5.0)).collect();
    EriBlock::synthetic("R", gamma, den).unwrap()
}
