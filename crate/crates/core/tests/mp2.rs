mod common;

use common::{helium, rng};
use mp2q::hfdata::{Eri4, EriBlock, HartreeFockData};
use mp2q::mp2::{block_energy, mp2_energy, Formula};
use nalgebra::DMatrix;
use rand::Rng;

/// Random real tensor with the full eight-fold permutational symmetry.
fn eightfold_eri(r: &mut impl Rng, n: usize) -> Eri4 {
    let t = Eri4::from_vec(n, (0..n.pow(4)).map(|_| r.gen_range(-0.3..0.3)).collect()).unwrap();
    Eri4::from_fn(n, |a, b, c, d| {
        let perms = [
            (a, b, c, d),
            (b, a, d, c),
            (c, d, a, b),
            (d, c, b, a),
            (c, b, a, d),
            (a, d, c, b),
            (d, a, b, c),
            (b, c, d, a),
        ];
        perms.iter().map(|&(p, q, s, u)| t.get(p, q, s, u)).sum::<f64>() / 8.0
    })
}

/// Σ_{i<j, a<b} |⟨ij||ab⟩|² / Δε over an explicit spin-orbital tensor.
fn brute_force_spin_orbital(d: &HartreeFockData) -> f64 {
    let n = 2 * d.n_orbitals;
    let n_occ = 2 * d.n_occupied;
    let spin_eri = |p: usize, q: usize, r: usize, s: usize| -> f64 {
        if p % 2 == r % 2 && q % 2 == s % 2 {
            d.eri_mo.get(p / 2, q / 2, r / 2, s / 2)
        } else {
            0.0
        }
    };
    let eps = |p: usize| d.orbital_energies[p / 2];
    let mut e = 0.0;
    for i in 0..n_occ {
        for j in i + 1..n_occ {
            for a in n_occ..n {
                for b in a + 1..n {
                    let v = spin_eri(i, j, a, b) - spin_eri(i, j, b, a);
                    e += v * v / (eps(i) + eps(j) - eps(a) - eps(b));
                }
            }
        }
    }
    e
}

fn random_system(seed: u64, n_occ: usize, n: usize) -> HartreeFockData {
    let mut r = rng(seed);
    let eri = eightfold_eri(&mut r, n);
    let mut eps: Vec<f64> = (0..n_occ).map(|_| r.gen_range(-2.0..-0.5)).collect();
    eps.extend((n_occ..n).map(|_| r.gen_range(0.2..2.0)));
    HartreeFockData::new(n_occ, eps, DMatrix::identity(n, n), eri, None).unwrap()
}

#[test]
fn spin_orbital_matches_brute_force() {
    for seed in 0..5 {
        let d = random_system(seed, 2, 4);
        let got = mp2_energy(&d, Formula::SpinOrbital).unwrap().e2_total;
        let want = brute_force_spin_orbital(&d);
        assert!((got - want).abs() < 1e-12, "seed {seed}: {got} vs {want}");
        assert!(got <= 0.0);
    }
}

#[test]
fn closed_shell_agrees_with_spin_orbital() {
    for seed in 10..15 {
        let d = random_system(seed, 2, 4);
        let cs = mp2_energy(&d, Formula::ClosedShell).unwrap().e2_total;
        let so = mp2_energy(&d, Formula::SpinOrbital).unwrap().e2_total;
        assert!((cs - so).abs() < 1e-12, "seed {seed}: {cs} vs {so}");
    }
}

#[test]
fn helium_ground_formula_for_one_occupied() {
    let d = random_system(20, 1, 5);
    let hg = mp2_energy(&d, Formula::HeliumGround).unwrap().e2_total;
    let cs = mp2_energy(&d, Formula::ClosedShell).unwrap().e2_total;
    assert!((hg - cs).abs() < 1e-12);
    assert!(mp2_energy(&random_system(21, 2, 4), Formula::HeliumGround).is_err());
}

#[test]
fn helium_reference_energy() {
    let r = mp2_energy(&helium(), Formula::HeliumGround).unwrap();
    assert!((r.e2_total - -0.0269625).abs() < 5e-8, "{}", r.e2_total);
    let cs = mp2_energy(&helium(), Formula::ClosedShell).unwrap().e2_total;
    assert!((cs - r.e2_total).abs() < 1e-10);
}

#[test]
fn helium_block_energies() {
    let r = mp2_energy(&helium(), Formula::HeliumGround).unwrap();
    let pb = &r.per_block;
    assert!((pb["I"] - 0.0025817).abs() < 5e-8);
    assert!((pb["III"] - 0.0034791).abs() < 5e-8);
    assert!((pb["IV"] - 0.017423).abs() < 5e-7);
    assert!((pb["II"] - pb["III"]).abs() < 1e-12);
    assert!(pb.values().all(|&v| v >= 0.0));

    let assembled = -pb["I"] - 2.0 * pb["III"] - pb["IV"];
    assert!((assembled - -0.026963).abs() < 5e-7);
    let total: f64 = pb.values().sum();
    assert!((total - r.e2_total.abs()).abs() < 1e-10);
}

#[test]
fn zero_gamma_block_has_zero_energy() {
    let b = EriBlock::synthetic("Z", vec![0.0; 16], vec![-1.0; 16]).unwrap();
    assert_eq!(block_energy(&b).unwrap(), 0.0);
    let bad = EriBlock::synthetic("Z", vec![0.1; 4], vec![-1.0, 0.0, -1.0, -1.0]).unwrap();
    assert!(block_energy(&bad).is_err());
}

#[test]
fn all_zero_eri() {
    let d = HartreeFockData::new(2, vec![-1.0, -0.8, 0.3, 0.9], DMatrix::identity(4, 4), Eri4::zeros(4), None)
        .unwrap();
    for f in [Formula::SpinOrbital, Formula::ClosedShell] {
        assert_eq!(mp2_energy(&d, f).unwrap().e2_total, 0.0);
    }
}
