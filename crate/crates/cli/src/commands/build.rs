use std::path::PathBuf;

use clap::ValueEnum;
use mp2q::builders::{
    build_antisym_pipeline, build_pipeline, build_ue, build_uint, build_uint_exact, PipelineSpec,
};

use super::{emit, load_block};
use crate::CmdResult;

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// U_E with the sweep's angles.
    Ue,
    /// U_INT(λ) from the base state.
    Uint,
    /// Exact state preparation of γ/‖γ‖.
    UintExact,
    /// U_INT(λ) followed by U_E.
    Pipeline,
    /// Antisymmetrized-integral circuit.
    Antisym,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    hf_data: PathBuf,
    #[arg(long)]
    part: String,
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    /// C_e in Hartree; defaults to the smallest |Δε| of the part.
    #[arg(long)]
    c_e: Option<f64>,
    /// Base state code; defaults to the lowest code with γ = 0.
    #[arg(long)]
    base_state: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CmdResult {
    let block = load_block(&args.hf_data, &args.part)?;
    let mut spec = PipelineSpec::new(block.clone(), args.lambda);
    spec.c_e = args.c_e;
    spec.base_state = args.base_state;
    let circuit = match args.kind {
        Kind::Ue => build_ue(&spec.angles()?)?,
        Kind::Uint => build_uint(&block, args.lambda, spec.base_state()?)?,
        Kind::UintExact => build_uint_exact(&block)?,
        Kind::Pipeline => build_pipeline(&spec, &spec.angles()?)?,
        Kind::Antisym => build_antisym_pipeline(&block, spec.c_e()?)?.0,
    };
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&circuit.to_json())? + "\n"))?;
    Ok(())
}
