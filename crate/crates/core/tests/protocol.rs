mod common;

use common::dense;
use hqec::codes::{builtin_code, logical_codewords};
use hqec::pauli::{PauliKind, PauliOperator};
use hqec::protocol::{
    apply_circuit, clifford_key_update, decrypt, encrypt, evaluate_circuit, format_circuit,
    parse_circuit, run_circuit_protocol, run_storage_protocol, CircuitGate, GateKind, KeyRegister,
};
use hqec::sim::{seeded_rng, Outcomes, SingleQubitGate, SparseState};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

/// `G·XᵃZᵇ = λ·X^{a′}Z^{b′}·G` on 2×2 matrices.
#[test]
fn single_qubit_key_rules_are_matrix_identities() {
    let gates = [
        ("X1", dense::x()),
        ("Z1", dense::zm()),
        ("H1", dense::h()),
        ("S1", dense::s()),
    ];
    for (tok, m) in gates {
        let g = dense::embed(&m, 0, 1);
        for a in 0..2 {
            for b in 0..2 {
                let keys = KeyRegister::new(vec![(a, b)]).unwrap();
                let out = clifford_key_update(&CircuitGate::parse(tok).unwrap(), &keys).unwrap();
                let (a2, b2) = out.get(0);
                let lhs = dense::matmul(&g, &dense::xz(a, b));
                let rhs = dense::matmul(&dense::xz(a2, b2), &g);
                assert!(dense::proportional(&lhs, &rhs, 1e-12).is_some(), "{tok} ({a},{b})");
            }
        }
    }
}

#[test]
fn cnot_key_rule_is_a_matrix_identity() {
    for bits in 0..16u8 {
        let k = vec![((bits >> 3) & 1, (bits >> 2) & 1), ((bits >> 1) & 1, bits & 1)];
        for (c, t) in [(0, 1), (1, 0)] {
            let out = clifford_key_update(&CircuitGate::cnot(c, t).unwrap(), &KeyRegister::new(k.clone()).unwrap())
                .unwrap();
            let g = dense::cnot(c, t, 2);
            let lhs = dense::matmul(&g, &dense::mask(&k));
            let rhs = dense::matmul(&dense::mask(out.pairs()), &g);
            assert!(dense::proportional(&lhs, &rhs, 1e-12).is_some(), "{k:?} CX{c}{t}");
        }
    }
}

#[test]
fn t_byproduct_relations() {
    let t = dense::embed(&dense::t(), 0, 1);
    let tdg = dense::embed(&dense::dagger2(&dense::t()), 0, 1);
    let sdg = dense::embed(&dense::dagger2(&dense::s()), 0, 1);
    let s = dense::embed(&dense::s(), 0, 1);
    for a in 0..2u8 {
        for b in 0..2u8 {
            let pow = |m: &dense::Mat| if a == 1 { m.clone() } else { dense::identity(2) };
            let lhs = dense::matmul(&t, &dense::xz(a, b));
            let rhs = dense::matmul(&dense::matmul(&pow(&sdg), &dense::xz(a, a ^ b)), &t);
            assert!(dense::proportional(&lhs, &rhs, 1e-12).is_some());
            let lhs = dense::matmul(&tdg, &dense::xz(a, b));
            let rhs = dense::matmul(&dense::matmul(&pow(&s), &dense::xz(a, a ^ b)), &tdg);
            assert!(dense::proportional(&lhs, &rhs, 1e-12).is_some());
        }
    }
}

/// T on |+⟩, every key and every forced outcome, against `T|+⟩` from the dense oracle.
#[test]
fn single_t_all_sixteen_branches() {
    let plus = SparseState::basis(1, 0).unwrap().apply_single(&SingleQubitGate::h(), 0).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let want = dense::apply(
        &dense::embed(&dense::t(), 0, 1),
        &[Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
    );
    let want = SparseState::from_dense(1, &want).unwrap();
    let circuit = parse_circuit("T1").unwrap();
    for k in 0..4u8 {
        for o in 0..4u8 {
            let keys = KeyRegister::new(vec![(k >> 1, k & 1)]).unwrap();
            let mut out = Outcomes::forced([(o >> 1, o & 1)]);
            let r = run_circuit_protocol(&plus, &circuit, &keys, &mut out).unwrap();
            assert!(want.fidelity_up_to_phase(&r.output).unwrap() > 1.0 - 1e-10, "key {k} outcome {o}");
        }
    }
}

#[test]
fn clifford_only_circuit_needs_only_the_final_pauli() {
    let mut rng = seeded_rng(5);
    let psi = SparseState::random(2, &mut rng).unwrap();
    let circuit = parse_circuit("H1 CX1,2 S2 X1 Z2").unwrap();
    let keys = KeyRegister::new(vec![(1, 0), (1, 1)]).unwrap();
    let enc = encrypt(&psi, &keys).unwrap();
    let (srv, mut t) = evaluate_circuit(&enc, &circuit, 0).unwrap();
    assert_eq!(srv.n(), 2);
    let (out, _) = decrypt(&srv, &mut t, &keys, &mut Outcomes::forced([])).unwrap();
    let want = apply_circuit(&psi, &circuit).unwrap();
    assert!(want.fidelity_up_to_phase(&out).unwrap() > 1.0 - 1e-10);
}

fn circuit_strategy() -> impl Strategy<Value = (usize, Vec<CircuitGate>)> {
    (1usize..=3).prop_flat_map(|n| {
        let gate = (0u8..7, 0..n, 1..n.max(2));
        (Just(n), prop::collection::vec(gate, 0..=12)).prop_map(|(n, raw)| {
            let mut ts = 0;
            let gates = raw
                .into_iter()
                .map(|(k, q, d)| {
                    let kind = match k {
                        0 => GateKind::X,
                        1 => GateKind::Z,
                        2 => GateKind::H,
                        3 => GateKind::S,
                        4 if n > 1 => GateKind::Cnot,
                        5 | 6 if ts < 3 => {
                            ts += 1;
                            if k == 5 { GateKind::T } else { GateKind::Tdg }
                        }
                        _ => GateKind::H,
                    };
                    if kind == GateKind::Cnot {
                        CircuitGate::cnot(q, (q + d) % n).unwrap()
                    } else {
                        CircuitGate::single(kind, q).unwrap()
                    }
                })
                .collect();
            (n, gates)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn decrypt_evaluate_encrypt_is_the_plain_circuit(
        (n, circuit) in circuit_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = seeded_rng(seed);
        let psi = SparseState::random(n, &mut rng).unwrap();
        let keys = KeyRegister::random(n, &mut rng);
        let mut out = Outcomes::sampled(seed ^ 0xabcdef);
        let r = run_circuit_protocol(&psi, &circuit, &keys, &mut out).unwrap();
        prop_assert!(r.fidelity >= 1.0 - 1e-10, "{} keys {} -> {}", format_circuit(&circuit), keys, r.fidelity);
        prop_assert_eq!(r.bell_pairs_consumed, r.t_count);
    }

    #[test]
    fn circuit_text_round_trip((_, circuit) in circuit_strategy()) {
        let text = format_circuit(&circuit);
        prop_assert_eq!(parse_circuit(&text).unwrap(), circuit);
    }
}

fn storage_errors(code: &str, n: usize) -> Vec<PauliKind> {
    match code {
        "bit_flip" => vec![PauliKind::X],
        "phase_flip" => vec![PauliKind::Z],
        _ => {
            let _ = n;
            vec![PauliKind::X, PauliKind::Y, PauliKind::Z]
        }
    }
}

#[test]
fn storage_round_trip_every_compatible_builtin() {
    let amps = (Complex64::new(0.48, -0.36), Complex64::new(0.0, 0.8));
    let mut rng = seeded_rng(21);
    for name in ["bit_flip", "phase_flip", "shor", "steane", "rm15"] {
        let code = builtin_code(name).unwrap();
        let n = code.n();
        let mut errors = vec![None];
        for kind in storage_errors(name, n) {
            for q in 0..n {
                errors.push(Some(PauliOperator::single(n, q, kind).unwrap()));
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                for e in &errors {
                    let r = run_storage_protocol(&code, amps, (a, b), e.as_ref(), &mut rng).unwrap();
                    assert!(r.fidelity >= 1.0 - 1e-10, "{name} ({a},{b}) {e:?}: {}", r.fidelity);
                }
            }
        }
    }
}

/// Uniform keys on the bit-flip block: the populations `(|c₀′|², |c₁′|²)` are the input
/// populations or their swap, each with probability 1/2, and the key-averaged logical
/// density is maximally mixed.
#[test]
fn masking_marginal_bit_flip() {
    let space = logical_codewords(&builtin_code("bit_flip").unwrap()).unwrap();
    let (c0, c1) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
    let psi = space.encode(c0, c1).unwrap();
    let mut same = 0;
    let mut swapped = 0;
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let enc = encrypt(&psi, &KeyRegister::uniform(3, a, b).unwrap()).unwrap();
            let (d0, d1) = space.logical_amplitudes(&enc).unwrap();
            let p = (d0.norm_sqr(), d1.norm_sqr());
            if (p.0 - c0.norm_sqr()).abs() < 1e-12 && (p.1 - c1.norm_sqr()).abs() < 1e-12 {
                same += 1;
            } else if (p.0 - c1.norm_sqr()).abs() < 1e-12 && (p.1 - c0.norm_sqr()).abs() < 1e-12 {
                swapped += 1;
            }
            let v = [d0, d1];
            for i in 0..2 {
                for j in 0..2 {
                    rho[i][j] += v[i] * v[j].conj() * 0.25;
                }
            }
        }
    }
    assert_eq!((same, swapped), (2, 2));
    assert!((rho[0][0] - 0.5).norm() < 1e-12 && (rho[1][1] - 0.5).norm() < 1e-12);
    assert!(rho[0][1].norm() < 1e-12);
}
