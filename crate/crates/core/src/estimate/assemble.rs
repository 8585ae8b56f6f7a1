//! Second-order energy from per-part slopes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hfdata::EriBlock;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartFit {
    pub part: String,
    /// dζ/d(λ²).
    pub slope: f64,
    /// Hartree.
    pub c_e: f64,
}

impl PartFit {
    /// ε_part = slope / C_e, Hartree.
    pub fn epsilon(&self) -> Result<f64> {
        if !(self.c_e > 0.0) {
            return Err(Error::ZeroDenominator(format!("C_e of part {}", self.part)));
        }
        Ok(self.slope / self.c_e)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignRule {
    /// E = −ε_I − ε_II − ε_III − ε_IV; II and III stand in for each other.
    HeliumGround,
    /// E = Σ sign·ε over every listed part.
    Blocks(BTreeMap<String, f64>),
}

impl SignRule {
    /// Signs taken from each block's denominators, which must not mix signs.
    pub fn from_blocks(blocks: &[EriBlock]) -> Result<Self> {
        let mut signs = BTreeMap::new();
        for b in blocks {
            let mut finite = b.denominators.iter().filter(|d| d.is_finite());
            let Some(first) = finite.next() else { continue };
            let sign = first.signum();
            if *first == 0.0 || finite.any(|d| d.signum() != sign || *d == 0.0) {
                return Err(Error::ZeroDenominator(format!(
                    "block {} has zero or mixed-sign denominators",
                    b.label
                )));
            }
            signs.insert(b.label.clone(), sign);
        }
        Ok(SignRule::Blocks(signs))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assembly {
    /// Hartree.
    pub e2: f64,
    /// Part → ε_part as used in the sum, Hartree.
    pub epsilons: BTreeMap<String, f64>,
    /// Parts whose ε was copied from their mirror.
    pub mirrored: Vec<String>,
    pub rule: SignRule,
}

pub fn assemble_energy(fits: &[PartFit], rule: &SignRule) -> Result<Assembly> {
    let mut eps = BTreeMap::new();
    for f in fits {
        eps.insert(f.part.clone(), f.epsilon()?);
    }
    let mut mirrored = Vec::new();
    let e2 = match rule {
        SignRule::HeliumGround => {
            for (missing, source) in [("II", "III"), ("III", "II")] {
                if !eps.contains_key(missing) {
                    if let Some(&v) = eps.get(source) {
                        eps.insert(missing.to_string(), v);
                        mirrored.push(missing.to_string());
                    }
                }
            }
            let mut e = 0.0;
            for p in ["I", "II", "III", "IV"] {
                e -= eps.get(p).ok_or_else(|| Error::MissingPart(p.to_string()))?;
            }
            e
        }
        SignRule::Blocks(signs) => {
            let mut e = 0.0;
            for (p, s) in signs {
                e += s * eps.get(p).ok_or_else(|| Error::MissingPart(p.clone()))?;
            }
            e
        }
    };
    Ok(Assembly {
        e2,
        epsilons: eps,
        mirrored,
        rule: rule.clone(),
    })
}
