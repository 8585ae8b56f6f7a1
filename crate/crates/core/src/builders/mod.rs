//! Circuit families built from Hartree-Fock data.

pub mod angles;
pub mod controlled;
pub mod difference;
pub mod pipeline;
pub mod ue;
pub mod uint;
pub mod utrans;

use crate::circuit::{Gate, Polarity};

pub use angles::{default_normalizer, solve_angles, subset_sum, AngleTable, Variant};
pub use controlled::{controlled_circuit, controlled_pauli_x_exp};
pub use difference::build_difference;
pub use pipeline::{build_antisym_pipeline, build_pipeline, pipeline_angles, PipelineSpec};
pub use ue::{build_ue, build_ue_lite, build_ue_naive, build_ue_with, UeOptions};
pub use uint::{build_uint, build_uint_exact};
pub use utrans::{build_utrans, RegisterPlan, SlotPlan};

/// Magnitudes at or below this are treated as zero (γ entries, angles).
pub const ZERO_TOL: f64 = 1e-12;

/// Ry with any number of same-polarity controls, using the narrowest gate kind.
pub fn controlled_ry(controls: &[usize], target: usize, theta: f64, polarity: Polarity) -> Gate {
    match controls {
        [] => Gate::Ry(target, theta),
        [c] => Gate::CRy {
            control: *c,
            target,
            theta,
            polarity,
        },
        _ => Gate::McRy {
            controls: controls.to_vec(),
            target,
            theta,
            polarity,
        },
    }
}

/// Ry on `target` conditioned on `controls` reading `pattern` (bit i of
/// `pattern` for `controls[i]`), realized by X-conjugating the zero bits.
pub fn pattern_controlled_ry(controls: &[usize], pattern: usize, target: usize, theta: f64) -> Vec<Gate> {
    let flips: Vec<Gate> = controls
        .iter()
        .enumerate()
        .filter(|(i, _)| pattern >> i & 1 == 0)
        .map(|(_, &q)| Gate::X(q))
        .collect();
    let mut v = flips.clone();
    v.push(controlled_ry(controls, target, theta, Polarity::One));
    v.extend(flips);
    v
}
