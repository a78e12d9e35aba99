mod common;

use common::dense;
use hqec::bits::BitVector;
use hqec::pauli::PauliOperator;
use hqec::sim::{SingleQubitGate, SparseState};
use num_complex::Complex64;
use proptest::prelude::*;

fn pauli_from(bits: &[(bool, bool)], phase: u8) -> PauliOperator {
    let x = BitVector::from_bools(&bits.iter().map(|b| b.0).collect::<Vec<_>>());
    let z = BitVector::from_bools(&bits.iter().map(|b| b.1).collect::<Vec<_>>());
    PauliOperator::from_parts(x, z, phase).unwrap()
}

fn pauli_matrix(p: &PauliOperator) -> dense::Mat {
    let bits: Vec<(bool, bool)> = (0..p.n()).map(|q| (p.x_bits().get(q), p.z_bits().get(q))).collect();
    dense::pauli(&bits, p.phase())
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = (Vec<(bool, bool)>, u8)> {
    (prop::collection::vec((any::<bool>(), any::<bool>()), n), 0u8..4)
}

fn amps(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
}

#[derive(Clone, Debug)]
enum Op {
    One(u8, usize),
    Cnot(usize, usize),
    Swap(usize, usize),
}

fn op_strategy(n: usize) -> impl Strategy<Value = Op> {
    let single = (0u8..7, 0..n).prop_map(|(g, q)| Op::One(g, q));
    if n < 2 {
        return single.boxed();
    }
    let pair = (0..n, 1..n).prop_map(move |(c, d)| (c, (c + d) % n));
    prop_oneof![
        3 => single,
        1 => pair.clone().prop_map(|(c, t)| Op::Cnot(c, t)),
        1 => pair.prop_map(|(i, j)| Op::Swap(i, j)),
    ]
    .boxed()
}

fn gate(g: u8) -> (SingleQubitGate, [[Complex64; 2]; 2]) {
    match g {
        0 => (SingleQubitGate::x(), dense::x()),
        1 => (SingleQubitGate::z(), dense::zm()),
        2 => (SingleQubitGate::h(), dense::h()),
        3 => (SingleQubitGate::s(), dense::s()),
        4 => (SingleQubitGate::sdg(), dense::dagger2(&dense::s())),
        5 => (SingleQubitGate::t(), dense::t()),
        _ => (SingleQubitGate::tdg(), dense::dagger2(&dense::t())),
    }
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sparse_circuits_match_dense(
        (n, v, ops) in (1usize..=4).prop_flat_map(|n| (Just(n), amps(n), prop::collection::vec(op_strategy(n), 0..12)))
    ) {
        let v: Vec<Complex64> = v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let mut s = SparseState::from_dense(n, &v).unwrap();
        let mut d = v.clone();
        for op in &ops {
            match *op {
                Op::One(g, q) => {
                    let (sg, m) = gate(g);
                    s = s.apply_single(&sg, q).unwrap();
                    d = dense::apply(&dense::embed(&m, q, n), &d);
                }
                Op::Cnot(c, t) => {
                    s = s.apply_cnot(c, t).unwrap();
                    d = dense::apply(&dense::cnot(c, t, n), &d);
                }
                Op::Swap(i, j) => {
                    s = s.swap_qubits(i, j).unwrap();
                    d = dense::apply(&dense::swap(i, j, n), &d);
                }
            }
        }
        prop_assert!(max_dev(&s.to_dense(), &d) < 1e-12);
    }

    #[test]
    fn pauli_product_matches_dense(
        (p, q) in (1usize..=4).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n)))
    ) {
        let (a, b) = (pauli_from(&p.0, p.1), pauli_from(&q.0, q.1));
        let prod = a.multiply(&b).unwrap();
        let want = dense::matmul(&pauli_matrix(&a), &pauli_matrix(&b));
        prop_assert!(dense::max_diff(&pauli_matrix(&prod), &want) < 1e-12);
    }

    #[test]
    fn commutation_matches_dense(
        (p, q) in (1usize..=4).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n)))
    ) {
        let (a, b) = (pauli_from(&p.0, p.1), pauli_from(&q.0, q.1));
        let (ma, mb) = (pauli_matrix(&a), pauli_matrix(&b));
        let commute = dense::max_diff(&dense::matmul(&ma, &mb), &dense::matmul(&mb, &ma)) < 1e-12;
        prop_assert_eq!(a.commutes(&b).unwrap(), commute);
    }

    #[test]
    fn apply_pauli_matches_dense(
        (n, v, p) in (1usize..=4).prop_flat_map(|n| (Just(n), amps(n), pauli_strategy(n)))
    ) {
        let v: Vec<Complex64> = v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let op = pauli_from(&p.0, p.1);
        let s = SparseState::from_dense(n, &v).unwrap().apply_pauli(&op).unwrap();
        prop_assert!(max_dev(&s.to_dense(), &dense::apply(&pauli_matrix(&op), &v)) < 1e-12);
    }

    #[test]
    fn text_round_trip((p, ph) in (1usize..=12).prop_flat_map(pauli_strategy)) {
        let op = pauli_from(&p, ph);
        let back: PauliOperator = op.to_string().parse().unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn inner_product_matches_dense(
        (n, v, w) in (1usize..=4).prop_flat_map(|n| (Just(n), amps(n), amps(n)))
    ) {
        let v: Vec<Complex64> = v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let w: Vec<Complex64> = w.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let got = SparseState::from_dense(n, &v).unwrap().inner(&SparseState::from_dense(n, &w).unwrap()).unwrap();
        let want: Complex64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((got - want).norm() < 1e-12);
    }
}
