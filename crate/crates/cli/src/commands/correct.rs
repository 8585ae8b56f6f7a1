use std::path::PathBuf;

use mp2q::estimate::correct_denominators;

use crate::table::{fmt_f64, read_input_counts};
use crate::CmdResult;

#[derive(clap::Args)]
pub struct Args {
    /// Counts from the full U_E: input,outcome,count[,theory].
    #[arg(long)]
    all: PathBuf,
    /// Counts from the lite U_E, same layout.
    #[arg(long)]
    lite: PathBuf,
    /// C_e in Hartree; adds the inverse denominator column.
    #[arg(long)]
    c_e: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CmdResult {
    let all = read_input_counts(&args.all)?;
    let lite = read_input_counts(&args.lite)?;
    let est = correct_denominators(&all.tables, &lite.tables)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["input", "raw_ratio", "corrected", "factor", "theory", "abs_deviation"];
    if args.c_e.is_some() {
        header.push("inverse_denominator");
    }
    w.write_record(&header)?;
    for e in &est {
        let theory = all.theory.get(&e.input).copied();
        let mut rec = vec![
            e.input.to_string(),
            fmt_f64(e.raw_ratio),
            fmt_f64(e.corrected),
            fmt_f64(e.factor),
            theory.map(fmt_f64).unwrap_or_default(),
            theory.map(|t| fmt_f64((e.corrected - t).abs())).unwrap_or_default(),
        ];
        if let Some(c) = args.c_e {
            rec.push(fmt_f64(e.corrected / c));
        }
        w.write_record(&rec)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?;
    super::emit(args.out.as_deref(), &text)?;
    Ok(())
}
