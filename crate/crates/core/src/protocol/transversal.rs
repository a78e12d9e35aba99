use num_complex::Complex64;
use serde::Serialize;

use super::keys::{remove_mask, t_byproduct, GateKind, KeyRegister};
use super::teleport::{complex_pair, Transcript, TranscriptEvent};
use crate::codes::{builtin_code, logical_codewords, CodeSpace};
use crate::compat::{clifford_correction_for_t, diagonal_gate_action, uniform_phases, LEAKAGE_TOL};
use crate::error::{Error, Result};
use crate::sim::{bell_pair, omega_pow, rotated_bell_measure, Outcomes, SingleQubitGate, SparseState};

#[derive(Clone, Debug, Serialize)]
pub struct TransversalReport {
    pub code: String,
    pub amplitudes: [[f64; 2]; 2],
    pub keys: (u8, u8),
    /// `U = Z̄^z S̄^s`, with `S̄` realised as `(S†)^⊗n`.
    pub correction_s_power: u8,
    pub correction_z_power: u8,
    pub outcomes: Vec<(u8, u8)>,
    pub final_keys: KeyRegister,
    pub data_qubits: usize,
    pub bell_pairs_consumed: usize,
    /// Largest simultaneous register during the run.
    pub peak_live_qubits: usize,
    pub peak_terms: usize,
    pub transcript: Transcript,
    /// Squared norm of the decrypted output inside the code space.
    pub code_space_weight: f64,
    pub fidelity: f64,
    #[serde(skip)]
    pub output: SparseState,
}

/// `(S†)^⊗n` acting as `S̄ = diag(1, i)` up to a global phase.
fn check_transversal_sdg(space: &CodeSpace) -> Result<()> {
    let n = space.code().n();
    let act = diagonal_gate_action(space, &uniform_phases(n, Complex64::new(0.0, -1.0)), "(S†)^⊗n")?;
    if act.leakage >= LEAKAGE_TOL {
        return Err(Error::Leakage(act.leakage));
    }
    let ok = act
        .logical_phases
        .map(|p| (p[1] / p[0] - Complex64::i()).norm() < 1e-12)
        .unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(Error::CorrectionUnavailable)
    }
}

/// Transversal T on the 15-qubit Reed-Muller block, with one physical gate teleportation per
/// qubit. Pairs are attached one at a time as qubits 15 and 16, so at most 17 qubits are live.
pub fn run_transversal_t_protocol(
    logical_amplitudes: (Complex64, Complex64),
    keys: (u8, u8),
    outcomes: &mut Outcomes,
) -> Result<TransversalReport> {
    let code = builtin_code("rm15")?;
    let space = logical_codewords(&code)?;
    let n = code.n();
    let corr = clifford_correction_for_t(&space)?;
    let corr = match corr.found() {
        Some(c) => c,
        None => {
            if let crate::compat::CorrectionSearch::Leakage { leakage } = corr {
                return Err(Error::Leakage(leakage));
            }
            return Err(Error::CorrectionUnavailable);
        }
    };
    check_transversal_sdg(&space)?;

    let (c0, c1) = logical_amplitudes;
    let psi = space.encode(c0, c1)?.normalized()?;
    let mut key_reg = KeyRegister::uniform(n, keys.0, keys.1)?;
    let mut state = super::keys::encrypt(&psi, &key_reg)?;
    let mut transcript = Transcript::new(n);
    let mut peak_terms = state.term_count();
    let mut peak_live = n;
    let mut measured = Vec::with_capacity(n);

    for q in 0..n {
        state = state.apply_single(&SingleQubitGate::t(), q)?;
    }
    transcript.push(TranscriptEvent::Gate {
        gate: format!("T^⊗{n}"),
    });
    peak_terms = peak_terms.max(state.term_count());
    for q in 0..n {
        let (s, c) = (n, n + 1);
        state = state.tensor(&bell_pair())?;
        transcript.push(TranscriptEvent::BellConsumed {
            pair: q,
            data_qubit: q,
            s,
            c,
            dagger: false,
        });
        state = state.swap_qubits(q, s)?;
        transcript.push(TranscriptEvent::Swap { i: q, j: s });
        peak_live = peak_live.max(state.n());
        peak_terms = peak_terms.max(state.term_count());

        let old = key_reg.get(q);
        let rot = SingleQubitGate::s_power(old.0 as i64);
        let forced = outcomes.is_forced();
        let m = rotated_bell_measure(&state, (s, c), &rot, outcomes)?;
        let (ra, rb) = m.outcome;
        let by = t_byproduct(GateKind::T, old)?;
        let new = (by.new_key.0 ^ ra, by.new_key.1 ^ rb);
        key_reg.set(q, new);
        transcript.push(TranscriptEvent::Measurement {
            pair: q,
            rotation: format!("S^{}", old.0),
            outcome: m.outcome,
            forced,
        });
        transcript.push(TranscriptEvent::KeyUpdate {
            cause: format!("T{} pair {}", q + 1, q + 1),
            qubit: q,
            old,
            new,
        });
        measured.push(m.outcome);
        state = m.state;
    }

    // U: Z̄^z first, then ((S†)^⊗n)^s; each S† maps keys (a, b) → (a, a⊕b).
    if corr.logical_z_power == 1 {
        let zbar = &code.logical_z()[0];
        state = state.apply_pauli(zbar)?;
        transcript.push(TranscriptEvent::Gate {
            gate: format!("Z̄ = {zbar}"),
        });
    }
    for _ in 0..corr.logical_s_power {
        for q in 0..n {
            state = state.apply_single(&SingleQubitGate::sdg(), q)?;
            let (a, b) = key_reg.get(q);
            key_reg.set(q, (a, a ^ b));
        }
        transcript.push(TranscriptEvent::Gate {
            gate: format!("(S†)^⊗{n}"),
        });
    }
    peak_terms = peak_terms.max(state.term_count());
    transcript.push(TranscriptEvent::FinalKeys {
        keys: key_reg.pairs().to_vec(),
    });
    transcript.push(TranscriptEvent::FinalCorrection {
        mask: key_reg.mask().body_string(),
    });
    let out = remove_mask(&state, &key_reg)?;
    let proj = space.project(&out)?;
    let expected = space.encode(c0, c1 * omega_pow(1))?.normalized()?;
    let fidelity = expected.fidelity_up_to_phase(&out)?;
    Ok(TransversalReport {
        code: code.name().to_string(),
        amplitudes: [complex_pair(c0), complex_pair(c1)],
        keys,
        correction_s_power: corr.logical_s_power,
        correction_z_power: corr.logical_z_power,
        outcomes: measured,
        final_keys: key_reg,
        data_qubits: n,
        bell_pairs_consumed: transcript.bell_consumed(),
        peak_live_qubits: peak_live,
        peak_terms,
        transcript,
        code_space_weight: proj.weight,
        fidelity,
        output: out,
    })
}
