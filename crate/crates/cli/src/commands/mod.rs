pub mod build;
pub mod correct;
pub mod lower;
pub mod oracle;
pub mod pipeline;
pub mod ue_counts;

use std::path::Path;

use mp2q::hfdata::{EriBlock, HartreeFockData};

pub fn load_data(path: &Path) -> anyhow::Result<HartreeFockData> {
    Ok(HartreeFockData::load(path).map_err(|e| e.context(format!("loading {}", path.display())))?)
}

pub fn load_block(path: &Path, part: &str) -> anyhow::Result<EriBlock> {
    Ok(mp2q::estimate::sweep::find_block(&load_data(path)?, part)?)
}

/// Write `text` to `out`, or stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
