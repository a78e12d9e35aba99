use std::collections::VecDeque;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gate::SingleQubitGate;
use super::state::SparseState;
use crate::error::{Error, Result};

/// Deterministic generator used for every sampled measurement.
pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Where Bell-measurement outcomes come from.
#[derive(Clone, Debug)]
pub enum Outcomes {
    Sampled(Box<SimRng>),
    /// Outcomes `(r_a, r_b)` consumed in order.
    Forced(VecDeque<(u8, u8)>),
}

impl Outcomes {
    pub fn sampled(seed: u64) -> Self {
        Outcomes::Sampled(Box::new(seeded_rng(seed)))
    }

    pub fn forced(seq: impl IntoIterator<Item = (u8, u8)>) -> Self {
        Outcomes::Forced(seq.into_iter().collect())
    }

    pub fn is_forced(&self) -> bool {
        matches!(self, Outcomes::Forced(_))
    }

    /// Picks an index into `probs` (ordered 00, 01, 10, 11).
    pub(crate) fn choose(&mut self, probs: &[f64; 4]) -> Result<usize> {
        match self {
            Outcomes::Sampled(rng) => {
                let total: f64 = probs.iter().sum();
                let u = rng.gen::<f64>() * total;
                let mut acc = 0.0;
                let mut last = None;
                for (i, &p) in probs.iter().enumerate() {
                    if p <= 1e-20 {
                        continue;
                    }
                    acc += p;
                    last = Some(i);
                    if u < acc {
                        return Ok(i);
                    }
                }
                last.ok_or(Error::ZeroWeight)
            }
            Outcomes::Forced(queue) => {
                let (a, b) = queue.pop_front().ok_or(Error::OutcomesExhausted)?;
                if a > 1 || b > 1 {
                    return Err(Error::InvalidArgument(format!("outcome bits ({a},{b})")));
                }
                let i = (2 * a + b) as usize;
                if probs[i] <= 1e-20 {
                    return Err(Error::ForcedOutcomeImpossible(a, b));
                }
                Ok(i)
            }
        }
    }
}

/// `(|00⟩+|11⟩)/√2`.
pub fn bell_pair() -> SparseState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    SparseState::from_terms(2, [(0b00, h), (0b11, h)]).expect("two qubits")
}

#[derive(Clone, Debug)]
pub struct BellMeasurement {
    pub outcome: (u8, u8),
    /// Outcome probabilities in the order 00, 01, 10, 11.
    pub probabilities: [f64; 4],
    /// Post-measurement state with the pair removed, renormalised.
    pub state: SparseState,
    /// Old qubit index → new index (`None` for the measured pair).
    pub index_map: Vec<Option<usize>>,
}

/// Contracts qubits `(p, q)` against `⟨Φ(R)_{ab}|` where
/// `|Φ(R)_{ab}⟩ = (R† Z^b X^a ⊗ I)|Φ⟩`. Teleporting `|ψ⟩` through this basis leaves
/// `X^a Z^b R|ψ⟩` on the partner of `q`.
fn contract(
    state: &SparseState,
    p: usize,
    q: usize,
    rotation: &SingleQubitGate,
    a: u8,
    b: u8,
) -> Result<(SparseState, Vec<Option<usize>>)> {
    let mut s = state.apply_single(rotation, p)?;
    if b == 1 {
        s = s.apply_single(&SingleQubitGate::z(), p)?;
    }
    if a == 1 {
        s = s.apply_single(&SingleQubitGate::x(), p)?;
    }
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let kept = s
        .terms()
        .filter(|(k, _)| (k >> p) & 1 == (k >> q) & 1)
        .map(|(k, amp)| (k & !(1 << p) & !(1 << q), amp * h))
        .collect::<Vec<_>>();
    let fixed = SparseState::from_terms(s.n(), kept)?;
    Ok(fixed.compact_without(&[p, q]))
}

/// Measures `(p, q)` in the `rotation`-rotated Bell basis and removes both qubits.
pub fn rotated_bell_measure(
    state: &SparseState,
    pair: (usize, usize),
    rotation: &SingleQubitGate,
    outcomes: &mut Outcomes,
) -> Result<BellMeasurement> {
    let (p, q) = pair;
    for &i in &[p, q] {
        if i >= state.n() {
            return Err(Error::QubitIndex { index: i, n: state.n() });
        }
    }
    if p == q {
        return Err(Error::DuplicateQubits(p));
    }
    if !rotation.is_unitary() {
        return Err(Error::NotUnitary(rotation.label().to_string()));
    }
    let mut branches = Vec::with_capacity(4);
    let mut probabilities = [0.0; 4];
    for (i, (a, b)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        let (s, map) = contract(state, p, q, rotation, a, b)?;
        probabilities[i] = s.norm_sqr();
        branches.push((s, map));
    }
    if probabilities.iter().sum::<f64>() < 1e-20 {
        return Err(Error::ZeroWeight);
    }
    let i = outcomes.choose(&probabilities)?;
    let (s, index_map) = branches.swap_remove(i);
    Ok(BellMeasurement {
        outcome: ((i / 2) as u8, (i % 2) as u8),
        probabilities,
        state: s.normalized()?,
        index_map,
    })
}
