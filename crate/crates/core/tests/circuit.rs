mod common;

use common::*;
use mp2q::builders::{build_pipeline, build_ue, build_uint, PipelineSpec};
use mp2q::circuit::{
    find_parallel_embeddings, find_parallel_embeddings_multi, lower, lower_pauli_x_exp,
    lower_pauli_z_exp, restricted_unitary, simplify_toffoli_pairs, unitary_of,
    validate_connectivity, z_ladder, Circuit, CouplingMap, Gate, Polarity,
};
use mp2q::Error;

fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
    Circuit::from_gates(n, gates).unwrap()
}

/// Lower on `coupling` with `layout` and compare against the logical unitary.
fn check_lowering(logical: &Circuit, coupling: &CouplingMap, layout: &[usize], tol: f64) -> Circuit {
    let lowered = lower(logical, coupling, layout).unwrap();
    assert!(lowered.is_native());
    assert!(validate_connectivity(&lowered, coupling).unwrap().is_empty());
    let (u, leak) = restricted_unitary(&lowered, layout).unwrap();
    assert!(leak < 1e-10, "ancilla leak {leak}");
    let reference = unitary_of(logical).unwrap();
    let d = phase_diff(&u, &reference);
    assert!(d < tol, "lowered unitary differs by {d}");
    lowered
}

fn mcry(controls: Vec<usize>, target: usize, theta: f64, polarity: Polarity) -> Gate {
    Gate::McRy {
        controls,
        target,
        theta,
        polarity,
    }
}

#[test]
fn unitary_of_trivial_cases() {
    let id = unitary_of(&Circuit::new(1)).unwrap();
    assert!(max_diff(&id, &CMat::identity(2, 2)) < 1e-15);
    let x = unitary_of(&circ(1, vec![Gate::X(0)])).unwrap();
    assert!(max_diff(&x, &pauli_x_string(1, 1)) < 1e-15);
    assert!(matches!(unitary_of(&Circuit::new(13)), Err(Error::TooManyQubits { .. })));
}

#[test]
fn edge_cnots_are_a_fixed_point() {
    let c = circ(4, vec![Gate::Cnot { control: 0, target: 1 }, Gate::Cnot { control: 2, target: 1 }, Gate::H(3)]);
    let l = lower(&c, &CouplingMap::path(4), &[0, 1, 2, 3]).unwrap();
    assert_eq!(l.gates(), c.gates());
}

#[test]
fn c2ry_on_path_avoids_control_pair() {
    let m = CouplingMap::path(3);
    let c = circ(3, vec![mcry(vec![0, 1], 2, 0.83, Polarity::One)]);
    // controls at the ends, target in the middle
    let l = check_lowering(&c, &m, &[0, 2, 1], 1e-10);
    for g in l.gates() {
        if let Gate::Cnot { control, target } = g {
            assert!(!matches!((control, target), (0, 2) | (2, 0)));
        }
    }
}

#[test]
fn multi_controlled_ry_on_h_shape() {
    let m = CouplingMap::h_shape();
    for pol in [Polarity::One, Polarity::Zero] {
        for (k, layout) in [(2, vec![0, 2, 3]), (3, vec![0, 2, 4, 3]), (4, vec![0, 2, 4, 6, 3])] {
            let c = circ(k + 1, vec![mcry((0..k).collect(), k, 1.234, pol)]);
            check_lowering(&c, &m, &layout, 1e-9);
        }
    }
}

#[test]
fn builder_outputs_survive_lowering() {
    let block = helium_block("I");
    let spec = PipelineSpec::new(block.clone(), 0.3);
    let ue = build_ue(&spec.angles().unwrap()).unwrap();
    check_lowering(&ue, &CouplingMap::h_shape(), &[0, 2, 4, 6, 3], 1e-9);
    check_lowering(&ue, &CouplingMap::relay_shape(), &[0, 2, 3, 5, 7], 1e-9);
    let uint = build_uint(&block, 0.4, 1).unwrap();
    check_lowering(&uint, &CouplingMap::path(4), &[0, 1, 2, 3], 1e-9);
    let full = build_pipeline(&spec, &spec.angles().unwrap()).unwrap();
    check_lowering(&full, &CouplingMap::h_shape(), &[0, 2, 4, 6, 3], 1e-9);
}

#[test]
fn lowered_ue_on_heavy_hex_validates() {
    let hh = CouplingMap::heavy_hex_27();
    let ue = build_ue(&PipelineSpec::new(helium_block("IV"), 0.1).angles().unwrap()).unwrap();
    let e = &find_parallel_embeddings(&hh, &CouplingMap::h_shape(), 1)[0];
    let layout: Vec<usize> = [0, 2, 4, 6, 3].iter().map(|&i| e.mapping[i]).collect();
    let l = lower(&ue, &hh, &layout).unwrap();
    assert!(validate_connectivity(&l, &hh).unwrap().is_empty());
}

#[test]
fn toffoli_pairs_drop_control_cnots() {
    let tof = Gate::Toffoli { c1: 0, c2: 1, target: 2 };
    for between in [vec![], vec![Gate::Ry(2, 0.4)], vec![Gate::Cnot { control: 3, target: 2 }]] {
        let mut gates = vec![tof.clone()];
        gates.extend(between);
        gates.push(tof.clone());
        let c = circ(4, gates);
        let s = simplify_toffoli_pairs(&c);
        assert!(s.is_native());
        for g in s.gates() {
            if let Gate::Cnot { control, target } = g {
                assert!(!matches!((control, target), (0, 1) | (1, 0)), "control-pair CNOT in {s:?}");
            }
        }
        assert!(phase_diff(&unitary_of(&s).unwrap(), &unitary_of(&c).unwrap()) < 1e-10);
    }
    // A gate on a control breaks the pair; both Toffolis stay.
    let c = circ(3, vec![tof.clone(), Gate::H(0), tof.clone()]);
    let s = simplify_toffoli_pairs(&c);
    assert_eq!(s.gates().iter().filter(|g| matches!(g, Gate::Toffoli { .. })).count(), 2);
}

#[test]
fn pauli_x_exponentials_match_expm() {
    let angle = 0.37;
    let m = CouplingMap::path(2);
    let g1 = Gate::PauliXExp { qubits: vec![0], angle };
    assert_eq!(lower_pauli_x_exp(&g1, &m, &[0, 1]).unwrap().gates(), &[Gate::Rx(0, -2.0 * angle)]);

    let g2 = Gate::PauliXExp { qubits: vec![0, 1], angle };
    let u = unitary_of(&lower_pauli_x_exp(&g2, &m, &[0, 1]).unwrap()).unwrap();
    assert!(max_diff(&u, &expi(&pauli_x_string(2, 0b11), angle)) < 1e-12);

    // string on the ends of a 3-path; the middle qubit only relays parity
    let p3 = CouplingMap::path(3);
    let g3 = Gate::PauliXExp { qubits: vec![0, 2], angle };
    let l = lower_pauli_x_exp(&g3, &p3, &[0, 1, 2]).unwrap();
    assert!(validate_connectivity(&l, &p3).unwrap().is_empty());
    assert!(max_diff(&unitary_of(&l).unwrap(), &expi(&pauli_x_string(3, 0b101), angle)) < 1e-12);

    let p4 = CouplingMap::path(4);
    let g4 = Gate::PauliXExp { qubits: vec![0, 1, 3], angle };
    let l = lower_pauli_x_exp(&g4, &p4, &[0, 1, 2, 3]).unwrap();
    assert!(validate_connectivity(&l, &p4).unwrap().is_empty());
    assert!(max_diff(&unitary_of(&l).unwrap(), &expi(&pauli_x_string(4, 0b1011), angle)) < 1e-12);
}

#[test]
fn z_string_orderings_agree() {
    let angle = -0.61;
    let oracle = expi(&pauli_z_string(3, 0b111), angle);
    for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let u = unitary_of(&z_ladder(&order, angle, 3).unwrap()).unwrap();
        assert!(max_diff(&u, &oracle) < 1e-12);
    }
    let l = lower_pauli_z_exp(&[0, 1, 2], angle, &CouplingMap::path(3), &[2, 0, 1]).unwrap();
    assert!(validate_connectivity(&l, &CouplingMap::path(3)).unwrap().is_empty());
}

#[test]
fn validate_connectivity_cases() {
    let m = CouplingMap::path(3);
    assert!(validate_connectivity(&Circuit::new(3), &m).unwrap().is_empty());
    let v = validate_connectivity(&circ(3, vec![Gate::Cnot { control: 0, target: 2 }]), &m).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].gate_index, v[0].qubits), (0, (0, 2)));
    let bad = circ(3, vec![Gate::Toffoli { c1: 0, c2: 1, target: 2 }]);
    assert!(matches!(validate_connectivity(&bad, &m), Err(Error::NotNative(_))));
}

#[test]
fn parallel_embeddings() {
    let edge = CouplingMap::path(2);
    let e = find_parallel_embeddings(&CouplingMap::path(4), &edge, 2);
    assert_eq!(e.len(), 2);
    assert!(e[0].vertices().is_disjoint(&e[1].vertices()));

    assert!(find_parallel_embeddings(&CouplingMap::complete(6), &CouplingMap::h_shape(), 1).is_empty());

    let hh = CouplingMap::heavy_hex_27();
    // The transcribed device graph holds only two disjoint H shapes; the
    // relay shape supplies the third placement.
    assert_eq!(find_parallel_embeddings(&hh, &CouplingMap::h_shape(), 3).len(), 2);
    let multi = find_parallel_embeddings_multi(&hh, &[CouplingMap::h_shape(), CouplingMap::relay_shape()], 3);
    assert_eq!(multi.len(), 3);
    for (i, a) in multi.iter().enumerate() {
        let shape = if a.shape_index == 0 { CouplingMap::h_shape() } else { CouplingMap::relay_shape() };
        for e in &shape.edges {
            assert!(hh.has_edge(a.mapping[e[0]], a.mapping[e[1]]));
        }
        for b in &multi[i + 1..] {
            assert!(a.vertices().is_disjoint(&b.vertices()));
        }
    }
}

#[test]
fn circuit_json_round_trip() {
    let c = circ(
        3,
        vec![
            Gate::H(0),
            mcry(vec![0, 1], 2, 0.5, Polarity::Zero),
            Gate::PauliXExp { qubits: vec![0, 2], angle: 0.1 },
            Gate::Swap(1, 2),
        ],
    );
    let j = serde_json::to_string(&c.to_json()).unwrap();
    let back = Circuit::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, c);
}
