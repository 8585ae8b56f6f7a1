//! Direct-summation MP2 reference energies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hfdata::{partition, EriBlock, HartreeFockData, PartitionScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// Σ_{i<j,a<b} |⟨ij||ab⟩|² / (ε_i+ε_j−ε_a−ε_b) over spin orbitals.
    SpinOrbital,
    /// Σ_{ijab} ⟨ij|ab⟩(2⟨ij|ab⟩ − ⟨ij|ba⟩) / Δε over spatial orbitals.
    ClosedShell,
    /// Σ_{rs} ⟨aa|rs⟩⟨rs|aa⟩ / Δε with the single occupied orbital a.
    HeliumGround,
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spin-orbital" => Ok(Formula::SpinOrbital),
            "closed-shell" => Ok(Formula::ClosedShell),
            "helium-ground" => Ok(Formula::HeliumGround),
            _ => Err(Error::Config(format!(
                "unknown formula {s:?} (spin-orbital, closed-shell, helium-ground)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mp2Result {
    /// Hartree.
    pub e2_total: f64,
    /// Block label → ε_part magnitude, Hartree. Filled for single-occupied systems.
    pub per_block: BTreeMap<String, f64>,
    pub formula: Formula,
}

fn checked_div(num: f64, den: f64, at: impl FnOnce() -> String) -> Result<f64> {
    if den == 0.0 {
        return Err(Error::ZeroDenominator(at()));
    }
    Ok(num / den)
}

pub fn mp2_energy(data: &HartreeFockData, formula: Formula) -> Result<Mp2Result> {
    let occ: Vec<usize> = (0..data.n_occupied).collect();
    let vir = data.virtuals();
    let g = |a, b, r, s| data.eri_mo.get(a, b, r, s);
    let mut e2 = 0.0;
    match formula {
        Formula::HeliumGround => {
            if data.n_occupied != 1 {
                return Err(Error::Config(format!(
                    "helium-ground formula needs one occupied orbital, found {}",
                    data.n_occupied
                )));
            }
            for &r in &vir {
                for &s in &vir {
                    let d = data.denominator(0, 0, r, s);
                    e2 += checked_div(g(0, 0, r, s) * g(r, s, 0, 0), d, || format!("(0,0,{r},{s})"))?;
                }
            }
        }
        Formula::ClosedShell => {
            for &i in &occ {
                for &j in &occ {
                    for &a in &vir {
                        for &b in &vir {
                            let d = data.denominator(i, j, a, b);
                            let num = g(i, j, a, b) * (2.0 * g(i, j, a, b) - g(i, j, b, a));
                            e2 += checked_div(num, d, || format!("({i},{j},{a},{b})"))?;
                        }
                    }
                }
            }
        }
        Formula::SpinOrbital => {
            // Spin orbital p: spatial p/2, spin p%2.
            let anti = |p: usize, q: usize, r: usize, s: usize| -> f64 {
                let (sp, sq, sr, ss) = (p % 2, q % 2, r % 2, s % 2);
                let (p, q, r, s) = (p / 2, q / 2, r / 2, s / 2);
                let direct = if sp == sr && sq == ss { g(p, q, r, s) } else { 0.0 };
                let exchange = if sp == ss && sq == sr { g(p, q, s, r) } else { 0.0 };
                direct - exchange
            };
            let n_occ = 2 * data.n_occupied;
            let n = 2 * data.n_orbitals;
            for i in 0..n_occ {
                for j in i + 1..n_occ {
                    for a in n_occ..n {
                        for b in a + 1..n {
                            let v = anti(i, j, a, b);
                            if v == 0.0 {
                                continue;
                            }
                            let d = data.denominator(i / 2, j / 2, a / 2, b / 2);
                            e2 += checked_div(v * v, d, || format!("spin ({i},{j},{a},{b})"))?;
                        }
                    }
                }
            }
        }
    }
    let mut per_block = BTreeMap::new();
    if data.n_occupied == 1 {
        for b in partition(data, &PartitionScheme::standard(data))? {
            per_block.insert(b.label.clone(), block_energy(&b)?);
        }
    }
    Ok(Mp2Result {
        e2_total: e2,
        per_block,
        formula,
    })
}

/// ε_part = Σ_x γ_x² / |Δε_x| over the non-padding components.
pub fn block_energy(block: &EriBlock) -> Result<f64> {
    let mut e = 0.0;
    for (x, (&g, &d)) in block.gamma.iter().zip(&block.denominators).enumerate() {
        if d == f64::NEG_INFINITY {
            continue;
        }
        if d == 0.0 {
            return Err(Error::ZeroDenominator(format!("block {} component {x}", block.label)));
        }
        e += g * g / d.abs();
    }
    Ok(e)
}
