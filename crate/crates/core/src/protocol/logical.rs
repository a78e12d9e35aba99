use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use super::teleport::{complex_pair, Transcript, TranscriptEvent};
use crate::codes::{builtin_code, logical_codewords, CodeSpace};
use crate::compat::LEAKAGE_TOL;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sim::{omega_pow, Matrix2, Outcomes, SingleQubitGate, SparseState};

/// Bound on the sparse term count that the logical-T run is expected to respect.
pub const LOGICAL_T_TERM_BOUND: usize = 128;

#[derive(Clone, Debug, Serialize)]
pub struct LogicalReport {
    pub code: String,
    pub amplitudes: [[f64; 2]; 2],
    pub keys: (u8, u8),
    pub outcome: (u8, u8),
    /// Probabilities of the four logical Bell outcomes, ordered 00, 01, 10, 11.
    pub probabilities: [f64; 4],
    pub final_keys: (u8, u8),
    /// Qubits in the joint register `w ⊗ s ⊗ c`.
    pub live_register: usize,
    /// Largest term count of any state materialised during the run.
    pub peak_terms: usize,
    /// Term count after each step, in order.
    pub term_counts: Vec<(String, usize)>,
    pub transcript: Transcript,
    pub code_space_weight: f64,
    pub fidelity: f64,
    #[serde(skip)]
    pub output: SparseState,
}

fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// `Σᵢⱼ Mᵢⱼ/√2 |ī⟩|j̄⟩` on two blocks, the first block on the low qubits.
fn logical_pair(space: &CodeSpace, m: &Matrix2) -> Result<SparseState> {
    let n = space.code().n();
    let mut out = SparseState::from_terms(2 * n, std::iter::empty())?;
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    for (i, row) in m.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate() {
            if mij.norm() < 1e-15 {
                continue;
            }
            let t = space.basis()[i].tensor(&space.basis()[j])?;
            out = out.add(&t.scaled(mij * h))?;
        }
    }
    Ok(out)
}

/// `T̄ = I + (ω − 1)|1̄⟩⟨1̄|`, a unitary extension of the logical T.
fn apply_logical_t(space: &CodeSpace, state: &SparseState) -> Result<SparseState> {
    let one = space.one();
    let amp = one.inner(state)?;
    state.add(&one.scaled((omega_pow(1) - 1.0) * amp))
}

fn pauli_pow(state: &SparseState, p: &PauliOperator, e: u8) -> Result<SparseState> {
    if e == 1 {
        state.apply_pauli(p)
    } else {
        Ok(state.clone())
    }
}

/// Logical-gate T on the Shor code: the data block `w`, and a logical Bell pair on blocks
/// `s` and `c`. Qubits `0..9` are `w`, `9..18` are `s`, `18..27` are `c`.
pub fn run_logical_t_protocol(
    logical_amplitudes: (Complex64, Complex64),
    keys: (u8, u8),
    outcomes: &mut Outcomes,
) -> Result<LogicalReport> {
    let code = builtin_code("shor")?;
    let space = logical_codewords(&code)?;
    let n = code.n();
    let (xbar, zbar) = (&code.logical_x()[0], &code.logical_z()[0]);
    let (a, b) = keys;
    if a > 1 || b > 1 {
        return Err(Error::InvalidArgument(format!("key bits must be 0 or 1, got ({a},{b})")));
    }
    let mut counts = Vec::new();
    let mut transcript = Transcript::new(n);

    let (c0, c1) = logical_amplitudes;
    let psi = space.encode(c0, c1)?.normalized()?;
    counts.push(("encode".to_string(), psi.term_count()));
    // X̄^a Z̄^b: Z̄ first.
    let enc = pauli_pow(&pauli_pow(&psi, zbar, b)?, xbar, a)?;
    counts.push(("encrypt".to_string(), enc.term_count()));

    let t_state = apply_logical_t(&space, &enc)?;
    transcript.push(TranscriptEvent::Gate { gate: "T̄ on w".into() });
    counts.push(("logical T".to_string(), t_state.term_count()));

    let id = SingleQubitGate::identity();
    let bell = logical_pair(&space, id.matrix())?;
    counts.push(("logical Bell pair".to_string(), bell.term_count()));
    let mut joint = t_state.tensor(&bell)?;
    let live_register = joint.n();
    transcript.push(TranscriptEvent::BellConsumed {
        pair: 0,
        data_qubit: 0,
        s: n,
        c: 2 * n,
        dagger: false,
    });
    counts.push(("joint register".to_string(), joint.term_count()));
    for p in 0..n {
        joint = joint.swap_qubits(p, p + n)?;
    }
    transcript.push(TranscriptEvent::Swap { i: 0, j: n });
    counts.push(("block swap".to_string(), joint.term_count()));

    // Bras χ_{ra,rb} = ((S̄^a)† Z̄^{rb} X̄^{ra} ⊗ I)|Φ̄⟩ on s ⊗ c.
    let rot = SingleQubitGate::s_power(a as i64).dagger();
    let sc: Vec<usize> = (n..3 * n).collect();
    let mut branches = Vec::with_capacity(4);
    let mut probabilities = [0.0; 4];
    for (i, (ra, rb)) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        let mut m = *id.matrix();
        if ra == 1 {
            m = mat_mul(SingleQubitGate::x().matrix(), &m);
        }
        if rb == 1 {
            m = mat_mul(SingleQubitGate::z().matrix(), &m);
        }
        m = mat_mul(rot.matrix(), &m);
        let chi = logical_pair(&space, &m)?;
        let branch = joint.contract(&sc, &chi)?;
        probabilities[i] = branch.norm_sqr();
        branches.push(branch);
    }
    let forced = outcomes.is_forced();
    let idx = outcomes.choose(&probabilities)?;
    let outcome = ((idx / 2) as u8, (idx % 2) as u8);
    let w = branches.swap_remove(idx).normalized()?;
    counts.push(("after measurement".to_string(), w.term_count()));
    transcript.push(TranscriptEvent::Measurement {
        pair: 0,
        rotation: format!("S̄^{a}"),
        outcome,
        forced,
    });

    let final_keys = (a ^ outcome.0, a ^ b ^ outcome.1);
    transcript.push(TranscriptEvent::FinalKeys {
        keys: vec![final_keys],
    });
    transcript.push(TranscriptEvent::FinalCorrection {
        mask: format!("X̄^{} Z̄^{}", final_keys.0, final_keys.1),
    });
    // Undo X̄^a' Z̄^b': X̄ first.
    let out = pauli_pow(&pauli_pow(&w, xbar, final_keys.0)?, zbar, final_keys.1)?;
    let proj = space.project(&out)?;
    if 1.0 - proj.weight > LEAKAGE_TOL {
        return Err(Error::Leakage(1.0 - proj.weight));
    }
    let expected = space.encode(c0, c1 * omega_pow(1))?.normalized()?;
    let fidelity = expected.fidelity_up_to_phase(&out)?;
    let peak_terms = counts.iter().map(|c| c.1).max().unwrap_or(0);
    Ok(LogicalReport {
        code: code.name().to_string(),
        amplitudes: [complex_pair(c0), complex_pair(c1)],
        keys,
        outcome,
        probabilities,
        final_keys,
        live_register,
        peak_terms,
        term_counts: counts,
        transcript,
        code_space_weight: proj.weight,
        fidelity,
        output: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_zero_outcome_zero() {
        let c = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let r = run_logical_t_protocol(c, (0, 0), &mut Outcomes::forced([(0, 0)])).unwrap();
        assert_eq!(r.final_keys, (0, 0));
        assert!(r.fidelity > 1.0 - 1e-10);
        assert_eq!(r.live_register, 27);
    }

    #[test]
    fn every_branch_with_full_keys() {
        let c = (Complex64::new(0.28, -0.3), Complex64::new(0.5, 0.76));
        for o in 0..4u8 {
            let r = run_logical_t_protocol(c, (1, 1), &mut Outcomes::forced([(o / 2, o % 2)])).unwrap();
            assert!(r.fidelity > 1.0 - 1e-10, "branch {o}: {}", r.fidelity);
            assert!(r.probabilities.iter().all(|p| (p - 0.25).abs() < 1e-10));
        }
    }
}
