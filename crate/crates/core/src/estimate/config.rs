//! Sweep configuration, loaded from JSON.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Exact readout probabilities, no shot noise.
    #[serde(rename = "exact", alias = "exact-probabilities")]
    Exact,
    /// Multinomial counts with `shots` per λ.
    #[serde(rename = "sampled")]
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-probabilities" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            _ => Err(Error::Config(format!("unknown mode {s:?} (exact, sampled)"))),
        }
    }
}

/// A value given once for every part or per part label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerPart<T> {
    All(T),
    Map(BTreeMap<String, T>),
}

impl<T: Clone> PerPart<T> {
    pub fn get(&self, part: &str) -> Option<T> {
        match self {
            PerPart::All(v) => Some(v.clone()),
            PerPart::Map(m) => m.get(part).cloned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CeSetting {
    /// `"auto"`: smallest |Δε| of the block.
    Auto(String),
    Values(PerPart<f64>),
}

impl Default for CeSetting {
    fn default() -> Self {
        CeSetting::Auto("auto".into())
    }
}

impl CeSetting {
    pub fn get(&self, part: &str) -> Result<Option<f64>> {
        match self {
            CeSetting::Auto(s) if s == "auto" => Ok(None),
            CeSetting::Auto(s) => Err(Error::Config(format!("c_e must be \"auto\" or numbers, got {s:?}"))),
            CeSetting::Values(v) => Ok(v.get(part)),
        }
    }
}

fn default_shots() -> u64 {
    100_000
}

fn default_max_start() -> usize {
    4
}

fn default_true() -> bool {
    true
}

fn default_parts() -> Vec<String> {
    vec!["I".into(), "III".into(), "IV".into()]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// HF fixture; relative paths resolve against the config file's directory.
    #[serde(default)]
    pub hf_data: Option<PathBuf>,
    #[serde(default = "default_parts")]
    pub parts: Vec<String>,
    pub lambda_step: PerPart<f64>,
    /// Points per regression window.
    pub total_steps: PerPart<usize>,
    /// Largest start step tried; the grid holds total_steps + max_start points.
    #[serde(default = "default_max_start")]
    pub max_start: usize,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    pub mode: Mode,
    #[serde(default)]
    pub c_e: CeSetting,
    #[serde(default)]
    pub base_state: Option<PerPart<usize>>,
    /// Remove the base-state rotation from U_E (see `PipelineSpec`).
    #[serde(default = "default_true")]
    pub mask_base_state: bool,
}

impl SweepConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let c: SweepConfig =
            serde_json::from_str(s).map_err(|e| Error::Config(format!("sweep config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    /// Load and resolve `hf_data` relative to the file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut c = Self::from_json_str(&std::fs::read_to_string(path)?)?;
        if let (Some(hf), Some(dir)) = (&c.hf_data, path.parent()) {
            if hf.is_relative() {
                c.hf_data = Some(dir.join(hf));
            }
        }
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::Config("no parts requested".into()));
        }
        if self.shots == 0 {
            return Err(Error::Config("shots must be positive".into()));
        }
        for p in &self.parts {
            let step = self.step(p)?;
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::Config(format!("lambda_step for {p} must be positive")));
            }
            if self.window(p)? < 3 {
                return Err(Error::Config(format!("total_steps for {p} must be at least 3")));
            }
            self.c_e.get(p)?;
        }
        Ok(())
    }

    pub fn step(&self, part: &str) -> Result<f64> {
        self.lambda_step
            .get(part)
            .ok_or_else(|| Error::Config(format!("no lambda_step for part {part}")))
    }

    pub fn window(&self, part: &str) -> Result<usize> {
        self.total_steps
            .get(part)
            .ok_or_else(|| Error::Config(format!("no total_steps for part {part}")))
    }

    /// λ values for `part`: step index i ↦ i·lambda_step, i = 0..total_steps+max_start.
    pub fn grid(&self, part: &str) -> Result<Vec<f64>> {
        let step = self.step(part)?;
        let n = self.window(part)? + self.max_start;
        Ok((0..n).map(|i| i as f64 * step).collect())
    }

    pub fn base_state(&self, part: &str) -> Option<usize> {
        self.base_state.as_ref().and_then(|b| b.get(part))
    }
}
