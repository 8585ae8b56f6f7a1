use std::path::PathBuf;

use mp2q::builders::angles::{ratios, target_for};
use mp2q::builders::{default_normalizer, AngleTable, Variant};
use mp2q::circuit::Polarity;
use mp2q::estimate::simulate_ue_counts;
use mp2q::estimate::sweep::part_stream;

use super::load_block;
use crate::table::CountRow;
use crate::CmdResult;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    hf_data: PathBuf,
    #[arg(long)]
    part: String,
    #[arg(long, default_value_t = 100_000)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only the gates that act on each input.
    #[arg(long)]
    lite: bool,
    /// C_e in Hartree; defaults to the smallest |Δε| of the part.
    #[arg(long)]
    c_e: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CmdResult {
    let block = load_block(&args.hf_data, &args.part)?;
    let c_e = match args.c_e {
        Some(c) => c,
        None => default_normalizer(&block)?,
    };
    let r = ratios(&block, c_e)?;
    let targets = r.iter().map(|&x| target_for(x, Variant::Sqrt)).collect();
    let angles = AngleTable::from_targets(targets, Variant::Sqrt, c_e, Polarity::Zero)?;
    let tables = simulate_ue_counts(&angles, args.lite, args.shots, args.seed, part_stream(&args.part))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for (x, t) in tables.iter().enumerate() {
        for (outcome, &count) in &t.counts {
            w.serialize(CountRow {
                input: x,
                outcome: outcome.clone(),
                count,
                theory: Some(r[x]),
            })?;
        }
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?;
    super::emit(args.out.as_deref(), &text)?;
    Ok(())
}
