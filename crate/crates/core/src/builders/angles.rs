//! Rotation angles for the energy-loading circuit U_E.
//!
//! A gate for control mask x with one-polarity fires on input z iff x ⊆ z, so
//! input z accumulates Σ_{x⊆z} α_x. With zero-polarity it fires iff x ⊆ ¬z.
//! The α are the Möbius inversion of the per-input targets over the subset lattice.

use serde::{Deserialize, Serialize};

use crate::circuit::Polarity;
use crate::error::{Error, Result};
use crate::hfdata::EriBlock;

/// Slack allowed when C_e/|Δε| exceeds 1 through rounding.
const RATIO_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Readout amplitude C_e/|Δε|: target 2·arcsin(C_e/|Δε|).
    Value,
    /// Readout probability C_e/|Δε|: target arccos(1 − 2C_e/|Δε|).
    Sqrt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleTable {
    pub n_control_qubits: usize,
    /// α_x indexed by control bitmask, radians.
    pub angles: Vec<f64>,
    /// Per-input total rotation, radians.
    pub targets: Vec<f64>,
    /// C_e, Hartree.
    pub normalizer: f64,
    pub variant: Variant,
    pub polarity: Polarity,
}

/// In-place zeta transform: f(z) ← Σ_{x⊆z} f(x).
pub fn zeta_transform(v: &mut [f64]) {
    let n = v.len();
    let mut bit = 1;
    while bit < n {
        for z in 0..n {
            if z & bit != 0 {
                v[z] += v[z ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place Möbius transform, the inverse of [`zeta_transform`].
pub fn mobius_transform(v: &mut [f64]) {
    let n = v.len();
    let mut bit = 1;
    while bit < n {
        for z in 0..n {
            if z & bit != 0 {
                v[z] -= v[z ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Total rotation each input receives from `angles` under `polarity`.
pub fn subset_sum(angles: &[f64], polarity: Polarity) -> Vec<f64> {
    let mut v = angles.to_vec();
    zeta_transform(&mut v);
    match polarity {
        Polarity::One => v,
        Polarity::Zero => {
            let mask = v.len() - 1;
            (0..v.len()).map(|z| v[!z & mask]).collect()
        }
    }
}

/// Smallest finite |Δε| of the block.
pub fn default_normalizer(block: &EriBlock) -> Result<f64> {
    let mut best = f64::INFINITY;
    for (x, d) in block.denominators.iter().enumerate() {
        if !d.is_finite() {
            continue;
        }
        if *d == 0.0 {
            return Err(Error::ZeroDenominator(format!("block {} component {x}", block.label)));
        }
        best = best.min(d.abs());
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::ZeroDenominator(format!(
            "block {} has no finite denominators",
            block.label
        )))
    }
}

/// C_e/|Δε_x| per component; padding gives 0.
pub fn ratios(block: &EriBlock, c_e: f64) -> Result<Vec<f64>> {
    if !(c_e > 0.0 && c_e.is_finite()) {
        return Err(Error::Config(format!("C_e must be positive and finite, got {c_e}")));
    }
    block
        .denominators
        .iter()
        .enumerate()
        .map(|(x, &d)| {
            if d == f64::NEG_INFINITY {
                return Ok(0.0);
            }
            if d == 0.0 {
                return Err(Error::ZeroDenominator(format!("block {} component {x}", block.label)));
            }
            if !d.is_finite() {
                return Err(Error::Schema(format!("non-finite denominator at component {x}")));
            }
            let r = c_e / d.abs();
            if r > 1.0 + RATIO_SLACK {
                return Err(Error::AngleRange { mask: x, value: r });
            }
            Ok(r.min(1.0))
        })
        .collect()
}

/// Per-component target rotation.
pub fn target_for(ratio: f64, variant: Variant) -> f64 {
    match variant {
        Variant::Sqrt => (1.0 - 2.0 * ratio).clamp(-1.0, 1.0).acos(),
        Variant::Value => 2.0 * ratio.clamp(-1.0, 1.0).asin(),
    }
}

impl AngleTable {
    /// Invert `targets` (one per input) into subset angles.
    pub fn from_targets(targets: Vec<f64>, variant: Variant, c_e: f64, polarity: Polarity) -> Result<Self> {
        let len = targets.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!("{len} targets is not a power of two")));
        }
        for (x, &t) in targets.iter().enumerate() {
            if !(0.0..=std::f64::consts::PI).contains(&t) {
                return Err(Error::AngleRange { mask: x, value: t });
            }
        }
        let mask = len - 1;
        let mut angles: Vec<f64> = match polarity {
            Polarity::One => targets.clone(),
            Polarity::Zero => (0..len).map(|w| targets[!w & mask]).collect(),
        };
        mobius_transform(&mut angles);
        Ok(AngleTable {
            n_control_qubits: len.trailing_zeros() as usize,
            angles,
            targets,
            normalizer: c_e,
            variant,
            polarity,
        })
    }

    /// Largest |subset_sum(angles) − targets|.
    pub fn round_trip_error(&self) -> f64 {
        subset_sum(&self.angles, self.polarity)
            .iter()
            .zip(&self.targets)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Angles for `block` with zero-polarity controls.
pub fn solve_angles(block: &EriBlock, variant: Variant, c_e: f64) -> Result<AngleTable> {
    solve_angles_with(block, variant, c_e, Polarity::Zero)
}

pub fn solve_angles_with(
    block: &EriBlock,
    variant: Variant,
    c_e: f64,
    polarity: Polarity,
) -> Result<AngleTable> {
    let targets = ratios(block, c_e)?
        .into_iter()
        .map(|r| target_for(r, variant))
        .collect();
    AngleTable::from_targets(targets, variant, c_e, polarity)
}
