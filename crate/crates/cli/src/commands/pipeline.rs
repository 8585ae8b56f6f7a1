use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use mp2q::estimate::{run_pipeline, Mode, PipelineReport, SweepConfig};
use mp2q::statevec::bitstring;
use serde::Serialize;

use super::load_data;
use crate::manifest::RunManifest;
use crate::table::fmt_f64;
use crate::CmdResult;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's hf_data.
    #[arg(long)]
    hf_data: Option<PathBuf>,
    /// Comma-separated part labels, e.g. I,III,IV.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<String>>,
    /// exact or sampled.
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value = "mp2q-out")]
    out_dir: PathBuf,
}

#[derive(Serialize)]
struct FitRecord<'a> {
    part: &'a str,
    start_step: usize,
    slope: f64,
    intercept: f64,
    lse: f64,
    epsilon_part_hartree: f64,
    e2_hartree: Option<f64>,
}

fn write_sweep_csv(path: &std::path::Path, report: &PipelineReport) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["part", "step", "lambda", "lambda_sq", "outcome", "count", "shots", "zeta"])?;
    for p in &report.parts {
        let s = &p.sweep;
        let width = s.n_q + 1;
        for row in &s.rows {
            let prefix = [
                p.part.clone(),
                row.step.to_string(),
                fmt_f64(row.lambda),
                fmt_f64(row.lambda_sq),
            ];
            let zeta = fmt_f64(row.zeta);
            let mut emit = |outcome: String, count: String| {
                w.write_record(
                    prefix
                        .iter()
                        .cloned()
                        .chain([outcome, count, s.shots.to_string(), zeta.clone()]),
                )
            };
            if let Some(probs) = &row.probabilities {
                for (k, pr) in probs.iter().enumerate() {
                    emit(bitstring(k, width), fmt_f64(*pr))?;
                }
            } else if let Some(t) = &row.counts {
                for (k, c) in &t.counts {
                    emit(k.clone(), c.to_string())?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: Args) -> CmdResult {
    let mut config = SweepConfig::load(&args.config)?;
    if let Some(h) = args.hf_data {
        config.hf_data = Some(h);
    }
    if let Some(p) = args.parts {
        config.parts = p;
    }
    if let Some(m) = args.mode {
        config.mode = m;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(s) = args.shots {
        config.shots = s;
    }
    config.validate()?;
    let hf_path = config
        .hf_data
        .clone()
        .ok_or_else(|| mp2q::Error::Config("no hf_data in config or on the command line".into()))?;
    let data = load_data(&hf_path)?;
    let report = run_pipeline(&data, &config)?;

    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let sweep_path = args.out_dir.join("sweep.csv");
    write_sweep_csv(&sweep_path, &report)?;
    let e2 = report.assembly.as_ref().map(|a| a.e2);
    let fits: Vec<FitRecord> = report
        .parts
        .iter()
        .map(|p| FitRecord {
            part: &p.part,
            start_step: p.fit.window.0,
            slope: p.fit.slope,
            intercept: p.fit.intercept,
            lse: p.fit.lse,
            epsilon_part_hartree: p.epsilon,
            e2_hartree: e2,
        })
        .collect();
    let fits_path = args.out_dir.join("fits.json");
    fs::write(&fits_path, serde_json::to_string_pretty(&fits)? + "\n")?;

    let mut manifest = RunManifest::new(
        "pipeline",
        Some(&args.config),
        Some(config.seed),
        serde_json::to_value(&config)?,
    );
    manifest.input(&args.config)?;
    manifest.input(&hf_path)?;
    manifest.output(&sweep_path)?;
    manifest.output(&fits_path)?;
    manifest.write(&args.out_dir)?;

    for p in &report.parts {
        println!(
            "part {:<4} start {:>2}  slope {:.6e}  epsilon {:.7} Ha  (direct {:.7})",
            p.part, p.fit.window.0, p.fit.slope, p.epsilon, p.oracle_epsilon
        );
    }
    match (&report.assembly, report.relative_error) {
        (Some(a), Some(r)) => println!(
            "E2 = {:.7} Ha  direct {:.7} Ha  relative error {:+.3}%",
            a.e2,
            report.oracle_e2,
            100.0 * r
        ),
        (Some(a), None) => println!("E2 = {:.7} Ha", a.e2),
        (None, _) => println!("E2 not assembled: requested parts do not cover every block"),
    }
    Ok(())
}
