use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sim::{SingleQubitGate, SparseState};
use crate::bits::BitVector;

/// Per-qubit one-time-pad keys; qubit `j` carries the mask `X^{aⱼ} Z^{bⱼ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyRegister {
    pairs: Vec<(u8, u8)>,
}

impl KeyRegister {
    pub fn new(pairs: Vec<(u8, u8)>) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a > 1 || *b > 1) {
            return Err(Error::InvalidArgument(format!("key bits must be 0 or 1, got ({a},{b})")));
        }
        Ok(KeyRegister { pairs })
    }

    /// The same `(a, b)` on every one of `n` qubits.
    pub fn uniform(n: usize, a: u8, b: u8) -> Result<Self> {
        Self::new(vec![(a, b); n])
    }

    pub fn zeros(n: usize) -> Self {
        KeyRegister { pairs: vec![(0, 0); n] }
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        KeyRegister {
            pairs: (0..n).map(|_| (rng.gen_range(0..2), rng.gen_range(0..2))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, q: usize) -> (u8, u8) {
        self.pairs[q]
    }

    pub fn set(&mut self, q: usize, key: (u8, u8)) {
        self.pairs[q] = key;
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    /// `⊗ X^{aⱼ} Z^{bⱼ}` as a Pauli operator.
    pub fn mask(&self) -> PauliOperator {
        let x = BitVector::from_bools(&self.pairs.iter().map(|p| p.0 == 1).collect::<Vec<_>>());
        let z = BitVector::from_bools(&self.pairs.iter().map(|p| p.1 == 1).collect::<Vec<_>>());
        PauliOperator::from_parts(x, z, 0).expect("equal lengths")
    }
}

impl fmt::Display for KeyRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GateKind {
    X,
    Z,
    H,
    S,
    Cnot,
    T,
    Tdg,
}

impl GateKind {
    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg)
    }

    fn token(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Cnot => "CX",
            GateKind::T => "T",
            GateKind::Tdg => "Td",
        }
    }

    pub fn single_qubit_gate(self) -> Option<SingleQubitGate> {
        match self {
            GateKind::X => Some(SingleQubitGate::x()),
            GateKind::Z => Some(SingleQubitGate::z()),
            GateKind::H => Some(SingleQubitGate::h()),
            GateKind::S => Some(SingleQubitGate::s()),
            GateKind::T => Some(SingleQubitGate::t()),
            GateKind::Tdg => Some(SingleQubitGate::tdg()),
            GateKind::Cnot => None,
        }
    }
}

/// One gate of the universal set. Qubit indices are 0-based; CNOT is `(control, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitGate {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl CircuitGate {
    pub fn single(kind: GateKind, q: usize) -> Result<Self> {
        if kind == GateKind::Cnot {
            return Err(Error::InvalidArgument("CNOT needs two qubits".into()));
        }
        Ok(CircuitGate { kind, qubits: vec![q] })
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        if control == target {
            return Err(Error::DuplicateQubits(control));
        }
        Ok(CircuitGate {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn target(&self) -> usize {
        *self.qubits.last().expect("gate has a qubit")
    }

    /// Parses one token such as `H1`, `Td2`, `CX1,2` (1-based indices).
    pub fn parse(token: &str) -> Result<Self> {
        let bad = || Error::CircuitToken(token.to_string());
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(bad)
        };
        if let Some(rest) = token.strip_prefix("CX") {
            let (c, t) = rest.split_once(',').ok_or_else(bad)?;
            return Self::cnot(idx(c)?, idx(t)?).map_err(|_| bad());
        }
        let (kind, rest) = if let Some(r) = token.strip_prefix("Td") {
            (GateKind::Tdg, r)
        } else if let Some(r) = token.strip_prefix('T') {
            (GateKind::T, r)
        } else if let Some(r) = token.strip_prefix('H') {
            (GateKind::H, r)
        } else if let Some(r) = token.strip_prefix('S') {
            (GateKind::S, r)
        } else if let Some(r) = token.strip_prefix('X') {
            (GateKind::X, r)
        } else if let Some(r) = token.strip_prefix('Z') {
            (GateKind::Z, r)
        } else {
            return Err(bad());
        };
        Self::single(kind, idx(rest)?)
    }

    /// Applies the bare gate (no encryption bookkeeping).
    pub fn apply(&self, state: &SparseState) -> Result<SparseState> {
        match self.kind.single_qubit_gate() {
            Some(g) => state.apply_single(&g, self.qubits[0]),
            None => state.apply_cnot(self.qubits[0], self.qubits[1]),
        }
    }
}

impl fmt::Display for CircuitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.qubits.iter().map(|q| (q + 1).to_string()).collect();
        write!(f, "{}{}", self.kind.token(), idx.join(","))
    }
}

/// Whitespace-separated tokens, e.g. `H1 T1 Td2 S2`.
pub fn parse_circuit(text: &str) -> Result<Vec<CircuitGate>> {
    text.split_whitespace().map(CircuitGate::parse).collect()
}

pub fn format_circuit(circuit: &[CircuitGate]) -> String {
    circuit.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Number of T and T† gates.
pub fn t_count(circuit: &[CircuitGate]) -> usize {
    circuit.iter().filter(|g| !g.kind.is_clifford()).count()
}

/// `G·X^a Z^b = λ·X^{a'} Z^{b'}·G` for Clifford `G`; returns the updated register.
pub fn clifford_key_update(gate: &CircuitGate, keys: &KeyRegister) -> Result<KeyRegister> {
    let mut out = keys.clone();
    for &q in &gate.qubits {
        if q >= keys.len() {
            return Err(Error::QubitIndex { index: q, n: keys.len() });
        }
    }
    match gate.kind {
        GateKind::X | GateKind::Z => {}
        GateKind::H => {
            let (a, b) = keys.get(gate.qubits[0]);
            out.set(gate.qubits[0], (b, a));
        }
        GateKind::S => {
            let (a, b) = keys.get(gate.qubits[0]);
            out.set(gate.qubits[0], (a, a ^ b));
        }
        GateKind::Cnot => {
            let (i, j) = (gate.qubits[0], gate.qubits[1]);
            let ((ai, bi), (aj, bj)) = (keys.get(i), keys.get(j));
            out.set(i, (ai, bi ^ bj));
            out.set(j, (ai ^ aj, bj));
        }
        GateKind::T | GateKind::Tdg => return Err(Error::NonClifford(gate.to_string())),
    }
    Ok(out)
}

/// The S-type byproduct left by a T or T† acting on `X^a Z^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TByproduct {
    /// Exponent of the byproduct: `(S†)^a` after T, `S^a` after T†.
    pub s_power: u8,
    /// True when the byproduct is a power of `S†`.
    pub dagger: bool,
    pub new_key: (u8, u8),
}

/// `T X^a Z^b ≃ (S†)^a X^a Z^{a⊕b} T` and `T† X^a Z^b ≃ S^a X^a Z^{a⊕b} T†`.
pub fn t_byproduct(kind: GateKind, key: (u8, u8)) -> Result<TByproduct> {
    let (a, b) = key;
    let dagger = match kind {
        GateKind::T => true,
        GateKind::Tdg => false,
        other => return Err(Error::InvalidArgument(format!("{other:?} is not T or T†"))),
    };
    Ok(TByproduct {
        s_power: a,
        dagger,
        new_key: (a, a ^ b),
    })
}

/// Applies `⊗ X^{aⱼ} Z^{bⱼ}`.
pub fn encrypt(state: &SparseState, keys: &KeyRegister) -> Result<SparseState> {
    if keys.len() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            found: keys.len(),
        });
    }
    state.apply_pauli(&keys.mask())
}

/// Applies `⊗ Z^{bⱼ} X^{aⱼ}`, the inverse of [`encrypt`], to the first `keys.len()` qubits.
pub fn remove_mask(state: &SparseState, keys: &KeyRegister) -> Result<SparseState> {
    let mut s = state.clone();
    for (q, &(a, b)) in keys.pairs().iter().enumerate() {
        if a == 1 {
            s = s.apply_single(&SingleQubitGate::x(), q)?;
        }
        if b == 1 {
            s = s.apply_single(&SingleQubitGate::z(), q)?;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_tokens() {
        let c = parse_circuit("H1 T1 Td2 S2 CX1,2 X3 Z1").unwrap();
        assert_eq!(format_circuit(&c), "H1 T1 Td2 S2 CX1,2 X3 Z1");
        assert_eq!(c[4].qubits(), &[0, 1]);
        assert_eq!(t_count(&c), 2);
        for bad in ["Q1", "H0", "CX1,1", "CX1", "T", "Hx"] {
            assert!(CircuitGate::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn h_swaps_keys() {
        let k = KeyRegister::new(vec![(1, 0), (0, 1)]).unwrap();
        let out = clifford_key_update(&CircuitGate::parse("H1").unwrap(), &k).unwrap();
        assert_eq!(out.pairs(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn cnot_rule() {
        let k = KeyRegister::new(vec![(1, 1), (0, 1)]).unwrap();
        let out = clifford_key_update(&CircuitGate::parse("CX1,2").unwrap(), &k).unwrap();
        assert_eq!(out.pairs(), &[(1, 0), (1, 1)]);
    }

    #[test]
    fn s_on_zero_key() {
        let k = KeyRegister::zeros(1);
        let out = clifford_key_update(&CircuitGate::parse("S1").unwrap(), &k).unwrap();
        assert_eq!(out.pairs(), &[(0, 0)]);
    }

    #[test]
    fn t_is_not_clifford() {
        let k = KeyRegister::zeros(1);
        assert!(matches!(
            clifford_key_update(&CircuitGate::parse("T1").unwrap(), &k),
            Err(Error::NonClifford(_))
        ));
    }

    #[test]
    fn byproducts() {
        let t = t_byproduct(GateKind::T, (1, 0)).unwrap();
        assert_eq!((t.s_power, t.dagger, t.new_key), (1, true, (1, 1)));
        let t0 = t_byproduct(GateKind::T, (0, 1)).unwrap();
        assert_eq!((t0.s_power, t0.new_key), (0, (0, 1)));
        let td = t_byproduct(GateKind::Tdg, (1, 1)).unwrap();
        assert_eq!((td.s_power, td.dagger, td.new_key), (1, false, (1, 0)));
    }
}
