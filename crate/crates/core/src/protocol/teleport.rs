use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::keys::{
    clifford_key_update, format_circuit, parse_circuit, remove_mask, t_byproduct, t_count,
    CircuitGate, GateKind, KeyRegister,
};
use crate::error::{Error, Result};
use crate::sim::{bell_pair, rotated_bell_measure, Outcomes, SimRng, SingleQubitGate, SparseState};

/// One entry of a protocol log. Qubit and pair indices are 0-based; `Display` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscriptEvent {
    Gate { gate: String },
    KeyUpdate {
        cause: String,
        qubit: usize,
        old: (u8, u8),
        new: (u8, u8),
    },
    /// Pair `pair` occupies `(s, c)`; its `s` half receives the data after the T on `data_qubit`.
    BellConsumed {
        pair: usize,
        data_qubit: usize,
        s: usize,
        c: usize,
        dagger: bool,
    },
    Swap { i: usize, j: usize },
    Measurement {
        pair: usize,
        rotation: String,
        outcome: (u8, u8),
        forced: bool,
    },
    FinalKeys { keys: Vec<(u8, u8)> },
    FinalCorrection { mask: String },
}

impl fmt::Display for TranscriptEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranscriptEvent::Gate { gate } => write!(f, "gate {gate}"),
            TranscriptEvent::KeyUpdate { cause, qubit, old, new } => write!(
                f,
                "key update {cause}: q{} ({},{}) -> ({},{})",
                qubit + 1,
                old.0,
                old.1,
                new.0,
                new.1
            ),
            TranscriptEvent::BellConsumed { pair, data_qubit, s, c, dagger } => write!(
                f,
                "bell pair {} consumed by {}{} (s=q{}, c=q{})",
                pair + 1,
                if *dagger { "Td" } else { "T" },
                data_qubit + 1,
                s + 1,
                c + 1
            ),
            TranscriptEvent::Swap { i, j } => write!(f, "swap q{} <-> q{}", i + 1, j + 1),
            TranscriptEvent::Measurement { pair, rotation, outcome, forced } => write!(
                f,
                "measure pair {} in {rotation}-rotated Bell basis -> ({},{}){}",
                pair + 1,
                outcome.0,
                outcome.1,
                if *forced { " [forced]" } else { "" }
            ),
            TranscriptEvent::FinalKeys { keys } => {
                let k: Vec<String> = keys.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, "final keys {}", k.join(" "))
            }
            TranscriptEvent::FinalCorrection { mask } => write!(f, "final correction {mask}"),
        }
    }
}

/// Ordered protocol log over `data_qubits` data qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    data_qubits: usize,
    events: Vec<TranscriptEvent>,
}

impl Transcript {
    pub fn new(data_qubits: usize) -> Self {
        Transcript {
            data_qubits,
            events: Vec::new(),
        }
    }

    pub fn data_qubits(&self) -> usize {
        self.data_qubits
    }

    pub fn events(&self) -> &[TranscriptEvent] {
        &self.events
    }

    pub fn push(&mut self, e: TranscriptEvent) {
        self.events.push(e);
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn bell_consumed(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TranscriptEvent::BellConsumed { .. }))
            .count()
    }

    pub fn lines(&self) -> Vec<String> {
        self.events.iter().map(|e| e.to_string()).collect()
    }
}

impl Serialize for Transcript {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.lines().serialize(s)
    }
}

/// Server side. Cliffords act directly on the encrypted register; each T or T† acts on its
/// data qubit `w`, then a fresh pair `(s, c)` is appended and `w` is swapped with `s`.
/// The output register holds the data qubits followed by two qubits per consumed pair.
///
/// Keys are never read: the server is oblivious to them.
pub fn evaluate_circuit(
    enc_state: &SparseState,
    circuit: &[CircuitGate],
    bell_pool: usize,
) -> Result<(SparseState, Transcript)> {
    let n = enc_state.n();
    for g in circuit {
        if let Some(&q) = g.qubits().iter().find(|&&q| q >= n) {
            return Err(Error::QubitIndex { index: q, n });
        }
    }
    let mut state = enc_state.clone();
    let mut transcript = Transcript::new(n);
    let mut used = 0;
    for g in circuit {
        state = g.apply(&state)?;
        transcript.push(TranscriptEvent::Gate { gate: g.to_string() });
        if g.kind().is_clifford() {
            continue;
        }
        if used == bell_pool {
            return Err(Error::BellPoolExhausted(used));
        }
        let (s, c) = (state.n(), state.n() + 1);
        state = state.tensor(&bell_pair())?;
        let w = g.target();
        transcript.push(TranscriptEvent::BellConsumed {
            pair: used,
            data_qubit: w,
            s,
            c,
            dagger: g.kind() == GateKind::Tdg,
        });
        state = state.swap_qubits(w, s)?;
        transcript.push(TranscriptEvent::Swap { i: w, j: s });
        used += 1;
    }
    Ok((state, transcript))
}

/// Which `a` enters the Step-3 update `b ← b ⊕ (a ⊕ r_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KeySchedule {
    /// The key bit before `a ← a ⊕ r_a` (correct).
    PreUpdate,
    /// The key bit after `a ← a ⊕ r_a`; kept to demonstrate that it breaks the round trip.
    PostUpdate,
}

/// Rotation applied before the Bell contraction of a T (or T†) event with key bit `a`.
fn event_rotation(dagger: bool, a: u8) -> SingleQubitGate {
    match (dagger, a) {
        (_, 0) => SingleQubitGate::identity(),
        (false, _) => SingleQubitGate::s(),
        (true, _) => SingleQubitGate::sdg(),
    }
}

fn rotation_label(dagger: bool, a: u8) -> String {
    format!("{}^{a}", if dagger { "S†" } else { "S" })
}

/// Client side, see [`decrypt_with_schedule`] with [`KeySchedule::PreUpdate`].
pub fn decrypt(
    client_state: &SparseState,
    transcript: &mut Transcript,
    keys: &KeyRegister,
    outcomes: &mut Outcomes,
) -> Result<(SparseState, KeyRegister)> {
    decrypt_with_schedule(client_state, transcript, keys, outcomes, KeySchedule::PreUpdate)
}

/// Replays the server transcript: Clifford gates update keys; each consumed pair is measured
/// in the `S^a` (T) or `(S†)^a` (T†) rotated Bell basis with the data qubit's current `a`,
/// then `a ← a ⊕ r_a`, `b ← b ⊕ a ⊕ r_b`. Finally removes `⊗ X^{aⱼ} Z^{bⱼ}`.
/// Appends key updates, measurements and the final correction to `transcript`.
pub fn decrypt_with_schedule(
    client_state: &SparseState,
    transcript: &mut Transcript,
    keys: &KeyRegister,
    outcomes: &mut Outcomes,
    schedule: KeySchedule,
) -> Result<(SparseState, KeyRegister)> {
    let n = transcript.data_qubits();
    if keys.len() != n {
        return Err(Error::TranscriptMismatch(format!(
            "{} key pairs for {n} data qubits",
            keys.len()
        )));
    }
    let pairs = transcript.bell_consumed();
    if client_state.n() != n + 2 * pairs {
        return Err(Error::TranscriptMismatch(format!(
            "register has {} qubits, expected {} data + {} pair qubits",
            client_state.n(),
            n,
            2 * pairs
        )));
    }
    // Original index → current index, as pairs are factored out.
    let mut pos: Vec<Option<usize>> = (0..client_state.n()).map(Some).collect();
    let mut state = client_state.clone();
    let mut keys = keys.clone();
    let replay: Vec<TranscriptEvent> = transcript.events().to_vec();
    for event in replay {
        match event {
            TranscriptEvent::Gate { gate } => {
                let g = CircuitGate::parse(&gate)?;
                if !g.kind().is_clifford() {
                    continue;
                }
                let new = clifford_key_update(&g, &keys)?;
                for &q in g.qubits() {
                    transcript.push(TranscriptEvent::KeyUpdate {
                        cause: gate.clone(),
                        qubit: q,
                        old: keys.get(q),
                        new: new.get(q),
                    });
                }
                keys = new;
            }
            TranscriptEvent::BellConsumed { pair, data_qubit, s, c, dagger } => {
                let kind = if dagger { GateKind::Tdg } else { GateKind::T };
                let old = keys.get(data_qubit);
                let (a, b) = old;
                let (ps, pc) = match (pos.get(s).copied().flatten(), pos.get(c).copied().flatten()) {
                    (Some(ps), Some(pc)) => (ps, pc),
                    _ => {
                        return Err(Error::TranscriptMismatch(format!(
                            "pair {} is not in the register",
                            pair + 1
                        )))
                    }
                };
                let forced = outcomes.is_forced();
                let m = rotated_bell_measure(&state, (ps, pc), &event_rotation(dagger, a), outcomes)?;
                let (ra, rb) = m.outcome;
                transcript.push(TranscriptEvent::Measurement {
                    pair,
                    rotation: rotation_label(dagger, a),
                    outcome: m.outcome,
                    forced,
                });
                // The byproduct's own key map (a, a⊕b) combined with the teleportation outcome.
                let by = t_byproduct(kind, old)?;
                let a_new = by.new_key.0 ^ ra;
                let b_new = match schedule {
                    KeySchedule::PreUpdate => by.new_key.1 ^ rb,
                    KeySchedule::PostUpdate => b ^ a_new ^ rb,
                };
                keys.set(data_qubit, (a_new, b_new));
                transcript.push(TranscriptEvent::KeyUpdate {
                    cause: format!("{}{} pair {}", if dagger { "Td" } else { "T" }, data_qubit + 1, pair + 1),
                    qubit: data_qubit,
                    old,
                    new: (a_new, b_new),
                });
                for p in pos.iter_mut() {
                    *p = p.and_then(|i| m.index_map[i]);
                }
                state = m.state;
            }
            TranscriptEvent::Swap { .. } => {}
            other => {
                return Err(Error::TranscriptMismatch(format!(
                    "unexpected client-side event in evaluation log: {other}"
                )))
            }
        }
    }
    transcript.push(TranscriptEvent::FinalKeys {
        keys: keys.pairs().to_vec(),
    });
    transcript.push(TranscriptEvent::FinalCorrection {
        mask: keys.mask().body_string(),
    });
    let out = remove_mask(&state, &keys)?;
    Ok((out, keys))
}

/// The plain circuit on the plain state.
pub fn apply_circuit(state: &SparseState, circuit: &[CircuitGate]) -> Result<SparseState> {
    circuit.iter().try_fold(state.clone(), |s, g| g.apply(&s))
}

/// XOR of named bits; the empty set is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicBit(BTreeSet<String>);

impl SymbolicBit {
    pub fn var(name: &str) -> Self {
        SymbolicBit(BTreeSet::from([name.to_string()]))
    }

    pub fn xor(&self, other: &SymbolicBit) -> SymbolicBit {
        SymbolicBit(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Value under `env`; unknown names are an error.
    pub fn eval(&self, env: &std::collections::BTreeMap<String, u8>) -> Result<u8> {
        self.0.iter().try_fold(0u8, |acc, v| {
            env.get(v)
                .map(|b| acc ^ (b & 1))
                .ok_or_else(|| Error::InvalidArgument(format!("unbound key symbol {v}")))
        })
    }

    /// Builds from `"a1^0 ⊕ rb^1"` style text; `"0"` is zero.
    pub fn parse(text: &str) -> Self {
        let mut out = SymbolicBit::default();
        for t in text.split('⊕').map(str::trim).filter(|t| !t.is_empty() && *t != "0") {
            out = out.xor(&SymbolicBit::var(t));
        }
        out
    }
}

impl fmt::Display for SymbolicBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let v: Vec<&str> = self.0.iter().map(String::as_str).collect();
        f.write_str(&v.join(" ⊕ "))
    }
}

impl Serialize for SymbolicBit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Keys after one client-side step, in terms of the initial keys `aⱼ^0, bⱼ^0` and the
/// outcomes `ra^k, rb^k` of pair `k` (1-based names).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicStep {
    pub step: String,
    /// `S^{…}` or `S†^{…}` for measurement steps.
    pub rotation: Option<String>,
    pub keys: Vec<(SymbolicBit, SymbolicBit)>,
}

/// Client-side key schedule of `circuit` on `n` qubits, one step per gate.
pub fn symbolic_key_trace(circuit: &[CircuitGate], n: usize) -> Result<Vec<SymbolicStep>> {
    let mut keys: Vec<(SymbolicBit, SymbolicBit)> = (1..=n)
        .map(|j| (SymbolicBit::var(&format!("a{j}^0")), SymbolicBit::var(&format!("b{j}^0"))))
        .collect();
    let mut steps = Vec::with_capacity(circuit.len());
    let mut pair = 0;
    for g in circuit {
        if let Some(&q) = g.qubits().iter().find(|&&q| q >= n) {
            return Err(Error::QubitIndex { index: q, n });
        }
        let mut rotation = None;
        match g.kind() {
            GateKind::X | GateKind::Z => {}
            GateKind::H => {
                let q = g.target();
                let (a, b) = keys[q].clone();
                keys[q] = (b, a);
            }
            GateKind::S => {
                let q = g.target();
                let (a, b) = keys[q].clone();
                keys[q] = (a.clone(), a.xor(&b));
            }
            GateKind::Cnot => {
                let (i, j) = (g.qubits()[0], g.qubits()[1]);
                let ((ai, bi), (aj, bj)) = (keys[i].clone(), keys[j].clone());
                keys[i] = (ai.clone(), bi.xor(&bj));
                keys[j] = (ai.xor(&aj), bj);
            }
            GateKind::T | GateKind::Tdg => {
                pair += 1;
                let q = g.target();
                let (a, b) = keys[q].clone();
                let sym = if g.kind() == GateKind::T { "S" } else { "S†" };
                rotation = Some(format!("{sym}^{{{a}}}"));
                let ra = SymbolicBit::var(&format!("ra^{pair}"));
                let rb = SymbolicBit::var(&format!("rb^{pair}"));
                keys[q] = (a.xor(&ra), b.xor(&a).xor(&rb));
            }
        }
        steps.push(SymbolicStep {
            step: g.to_string(),
            rotation,
            keys: keys.clone(),
        });
    }
    Ok(steps)
}

/// The two-qubit worked example: `H₁ T₁ T†₂ S₂`, evaluating `(TH ⊗ ST†)`.
pub const A1_CIRCUIT: &str = "H1 T1 Td2 S2";

#[derive(Clone, Debug, Serialize)]
pub struct CircuitReport {
    pub circuit: String,
    pub input_keys: KeyRegister,
    pub final_keys: KeyRegister,
    pub outcomes: Vec<(u8, u8)>,
    pub bell_pairs_consumed: usize,
    pub t_count: usize,
    pub transcript: Transcript,
    pub symbolic_trace: Vec<SymbolicStep>,
    /// `|⟨plain circuit output|decrypted output⟩|`.
    pub fidelity: f64,
    #[serde(skip)]
    pub output: SparseState,
}

/// encrypt → evaluate → decrypt, compared against the plain circuit.
pub fn run_circuit_protocol(
    psi: &SparseState,
    circuit: &[CircuitGate],
    keys: &KeyRegister,
    outcomes: &mut Outcomes,
) -> Result<CircuitReport> {
    let enc = super::keys::encrypt(psi, keys)?;
    let nt = t_count(circuit);
    let (server_out, mut transcript) = evaluate_circuit(&enc, circuit, nt)?;
    let (out, final_keys) = decrypt(&server_out, &mut transcript, keys, outcomes)?;
    let expected = apply_circuit(psi, circuit)?;
    let fidelity = expected.fidelity_up_to_phase(&out)?;
    let measured = transcript
        .events()
        .iter()
        .filter_map(|e| match e {
            TranscriptEvent::Measurement { outcome, .. } => Some(*outcome),
            _ => None,
        })
        .collect();
    Ok(CircuitReport {
        circuit: format_circuit(circuit),
        input_keys: keys.clone(),
        final_keys,
        outcomes: measured,
        bell_pairs_consumed: transcript.bell_consumed(),
        t_count: nt,
        symbolic_trace: symbolic_key_trace(circuit, psi.n())?,
        transcript,
        fidelity,
        output: out,
    })
}

/// Runs the worked example on `psi` (two qubits).
pub fn run_a1(psi: &SparseState, keys: &KeyRegister, outcomes: &mut Outcomes) -> Result<CircuitReport> {
    if psi.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.n(),
        });
    }
    run_circuit_protocol(psi, &parse_circuit(A1_CIRCUIT)?, keys, outcomes)
}

/// Random input and keys drawn from `rng`; outcomes sampled from the same stream.
pub fn run_a1_random(rng: &mut SimRng) -> Result<CircuitReport> {
    use rand::Rng;
    let psi = SparseState::random(2, rng)?;
    let keys = KeyRegister::random(2, rng);
    let mut outcomes = Outcomes::sampled(rng.gen());
    run_a1(&psi, &keys, &mut outcomes)
}

/// `ω^k`-phase check helper for reports: the complex number as `[re, im]`.
pub(crate) fn complex_pair(c: Complex64) -> [f64; 2] {
    [c.re + 0.0, c.im + 0.0]
}
