//! The λ-sweep experiment: sweeps, regression, denominator correction and
//! energy assembly.

pub mod assemble;
pub mod config;
pub mod correction;
pub mod regression;
pub mod run;
pub mod sweep;

pub use assemble::{assemble_energy, Assembly, PartFit, SignRule};
pub use config::{CeSetting, Mode, PerPart, SweepConfig};
pub use correction::{
    correct_denominators, correct_weights, simulate_ue_counts, simulate_ue_probabilities,
    synthetic_diagonal_counts, DenominatorEstimate,
};
pub use regression::{
    estimate_eri_slopes, fit_zeta, ols, select_start_step, select_xy, OutcomeSlope, RegressionFit,
    StartSelection,
};
pub use run::{oracle_energy, run_part, run_pipeline, sign_rule, PartReport, PipelineReport};
pub use sweep::{run_sweep, sweep_block, SweepOptions, SweepResult, SweepRow};
