use std::path::PathBuf;

use mp2q::mp2::{mp2_energy, Formula};

use super::load_data;
use crate::CmdResult;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    hf_data: PathBuf,
    /// spin-orbital, closed-shell or helium-ground.
    #[arg(long, default_value = "helium-ground")]
    formula: Formula,
}

pub fn run(args: Args) -> CmdResult {
    let data = load_data(&args.hf_data)?;
    let result = mp2_energy(&data, args.formula)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}
