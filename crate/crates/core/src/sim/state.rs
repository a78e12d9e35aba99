use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;

use super::gate::SingleQubitGate;
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Amplitudes below this magnitude are dropped.
pub const PRUNE_EPS: f64 = 1e-12;
/// Tolerance for norm, Gram and equality comparisons.
pub const COMPARE_TOL: f64 = 1e-10;
/// Upper bound on stored terms for `tensor`.
pub const TERM_GUARD: usize = 1 << 22;
/// Basis strings are packed into a `u64`.
pub const MAX_SIM_QUBITS: usize = 64;

/// Sparse state vector. Qubit `q` is bit `q` of the basis key.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    n: usize,
    amps: BTreeMap<u64, Complex64>,
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_SIM_QUBITS {
        return Err(Error::QubitCap(n));
    }
    Ok(())
}

#[inline]
fn bit(k: u64, q: usize) -> u64 {
    (k >> q) & 1
}

fn accumulate(map: &mut BTreeMap<u64, Complex64>, k: u64, a: Complex64) {
    *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += a;
}

impl SparseState {
    /// The zero-qubit state with amplitude 1.
    pub fn vacuum() -> Self {
        Self::basis(0, 0).expect("vacuum is valid")
    }

    pub fn basis(n: usize, key: u64) -> Result<Self> {
        check_n(n)?;
        let mut amps = BTreeMap::new();
        amps.insert(key, Complex64::new(1.0, 0.0));
        Ok(SparseState { n, amps })
    }

    /// Basis state from a `0`/`1` string, qubit 0 leftmost.
    pub fn from_bitstring(text: &str) -> Result<Self> {
        let v = BitVector::parse(text)?;
        check_n(v.len())?;
        Self::basis(v.len(), v.to_u64())
    }

    /// Sums duplicate keys and prunes; no normalisation.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u64, Complex64)>) -> Result<Self> {
        check_n(n)?;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut amps = BTreeMap::new();
        for (k, a) in terms {
            if k & !mask != 0 {
                return Err(Error::QubitIndex {
                    index: 63 - k.leading_zeros() as usize,
                    n,
                });
            }
            accumulate(&mut amps, k, a);
        }
        let mut s = SparseState { n, amps };
        s.prune();
        Ok(s)
    }

    pub fn from_bitvector_terms(n: usize, terms: Vec<(BitVector, Complex64)>) -> Result<Self> {
        check_n(n)?;
        Self::from_terms(n, terms.into_iter().map(|(b, a)| (b.to_u64(), a)))
    }

    /// Dense vector of length `2^n`, index bit `q` = qubit `q`.
    pub fn from_dense(n: usize, v: &[Complex64]) -> Result<Self> {
        if v.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: v.len(),
            });
        }
        Self::from_terms(n, v.iter().enumerate().map(|(k, &a)| (k as u64, a)))
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        assert!(self.n <= 24, "dense export limited to 24 qubits");
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        for (&k, &a) in &self.amps {
            v[k as usize] = a;
        }
        v
    }

    fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_EPS);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, key: u64) -> Complex64 {
        self.amps.get(&key).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn amplitude_of(&self, bits: &str) -> Result<Complex64> {
        let v = BitVector::parse(bits)?;
        self.check_same_n(v.len())?;
        Ok(self.amplitude(v.to_u64()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.amps.iter().map(|(&k, &a)| (k, a))
    }

    /// Basis string for `key` with qubit 0 first.
    pub fn key_string(&self, key: u64) -> String {
        (0..self.n).map(|q| if bit(key, q) == 1 { '1' } else { '0' }).collect()
    }

    fn check_same_n(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitIndex { index: q, n: self.n });
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::DuplicateQubits(a));
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn normalized(&self) -> Result<SparseState> {
        let w = self.norm_sqr();
        if w < 1e-20 {
            return Err(Error::ZeroWeight);
        }
        Ok(self.scaled(Complex64::new(1.0 / w.sqrt(), 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> SparseState {
        let mut s = SparseState {
            n: self.n,
            amps: self.amps.iter().map(|(&k, &a)| (k, a * c)).collect(),
        };
        s.prune();
        s
    }

    pub fn add(&self, other: &SparseState) -> Result<SparseState> {
        self.check_same_n(other.n)?;
        let mut amps = self.amps.clone();
        for (&k, &a) in &other.amps {
            accumulate(&mut amps, k, a);
        }
        let mut s = SparseState { n: self.n, amps };
        s.prune();
        Ok(s)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SparseState) -> Result<Complex64> {
        self.check_same_n(other.n)?;
        let (small, large, conj_small) = if self.amps.len() <= other.amps.len() {
            (&self.amps, &other.amps, true)
        } else {
            (&other.amps, &self.amps, false)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &a) in small {
            if let Some(&b) = large.get(k) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        Ok(acc)
    }

    /// `|⟨a|b⟩|`, clamped to 1; equals 1 iff the states agree up to global phase.
    pub fn fidelity_up_to_phase(&self, other: &SparseState) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Largest amplitude difference against `other`.
    pub fn max_deviation(&self, other: &SparseState) -> Result<f64> {
        self.check_same_n(other.n)?;
        let mut m: f64 = 0.0;
        for k in self.amps.keys().chain(other.amps.keys()) {
            m = m.max((self.amplitude(*k) - other.amplitude(*k)).norm());
        }
        Ok(m)
    }

    pub fn approx_eq(&self, other: &SparseState, tol: f64) -> bool {
        self.max_deviation(other).is_ok_and(|d| d <= tol)
    }

    pub fn apply_single(&self, gate: &SingleQubitGate, q: usize) -> Result<SparseState> {
        self.check_qubit(q)?;
        let m = gate.matrix();
        let mut out = BTreeMap::new();
        let zero = Complex64::new(0.0, 0.0);
        for (&k, &a) in &self.amps {
            let b = bit(k, q) as usize;
            let k0 = k & !(1u64 << q);
            let k1 = k | (1u64 << q);
            if m[0][b] != zero {
                accumulate(&mut out, k0, m[0][b] * a);
            }
            if m[1][b] != zero {
                accumulate(&mut out, k1, m[1][b] * a);
            }
        }
        let mut s = SparseState { n: self.n, amps: out };
        s.prune();
        Ok(s)
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<SparseState> {
        self.check_pair(control, target)?;
        Ok(self.permute(|k| if bit(k, control) == 1 { k ^ (1 << target) } else { k }))
    }

    pub fn swap_qubits(&self, i: usize, j: usize) -> Result<SparseState> {
        self.check_pair(i, j)?;
        Ok(self.permute(|k| {
            if bit(k, i) != bit(k, j) {
                k ^ ((1 << i) | (1 << j))
            } else {
                k
            }
        }))
    }

    fn permute(&self, f: impl Fn(u64) -> u64) -> SparseState {
        SparseState {
            n: self.n,
            amps: self.amps.iter().map(|(&k, &a)| (f(k), a)).collect(),
        }
    }

    /// `i^phase · X^x · Z^z`: sign from Z on the input string, then X flips.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<SparseState> {
        self.check_same_n(p.n())?;
        let x = p.x_bits().to_u64();
        let z = p.z_bits().to_u64();
        let global = Complex64::i().powu(p.phase() as u32);
        Ok(SparseState {
            n: self.n,
            amps: self
                .amps
                .iter()
                .map(|(&k, &a)| {
                    let sign = if (k & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                    (k ^ x, a * global * sign)
                })
                .collect(),
        })
    }

    /// Diagonal product gate: basis string `k` picks up `∏_{q: k_q = 1} phases[q]`.
    pub fn apply_diagonal(&self, phases: &[Complex64]) -> Result<SparseState> {
        self.check_same_n(phases.len())?;
        let mut s = SparseState {
            n: self.n,
            amps: self
                .amps
                .iter()
                .map(|(&k, &a)| {
                    let mut f = Complex64::new(1.0, 0.0);
                    for (q, ph) in phases.iter().enumerate() {
                        if bit(k, q) == 1 {
                            f *= ph;
                        }
                    }
                    (k, a * f)
                })
                .collect(),
        };
        s.prune();
        Ok(s)
    }

    /// `self` on qubits `0..n_a`, `other` on `n_a..n_a+n_b`.
    pub fn tensor(&self, other: &SparseState) -> Result<SparseState> {
        let n = self.n + other.n;
        check_n(n)?;
        let terms = self.amps.len() * other.amps.len();
        if terms > TERM_GUARD {
            return Err(Error::TermGuard {
                terms,
                guard: TERM_GUARD,
            });
        }
        let mut amps = BTreeMap::new();
        for (&ka, &a) in &self.amps {
            for (&kb, &b) in &other.amps {
                amps.insert(ka | (kb << self.n), a * b);
            }
        }
        let mut s = SparseState { n, amps };
        s.prune();
        Ok(s)
    }

    /// Drops the listed qubits, keeping each string's remaining bits in order.
    /// Only valid when the dropped bits are already fixed (e.g. after contraction).
    pub(crate) fn compact_without(&self, removed: &[usize]) -> (SparseState, Vec<Option<usize>>) {
        let mut map = Vec::with_capacity(self.n);
        let mut next = 0;
        for q in 0..self.n {
            if removed.contains(&q) {
                map.push(None);
            } else {
                map.push(Some(next));
                next += 1;
            }
        }
        let mut amps = BTreeMap::new();
        for (&k, &a) in &self.amps {
            let mut nk = 0u64;
            for (q, m) in map.iter().enumerate() {
                if let Some(j) = m {
                    nk |= bit(k, q) << j;
                }
            }
            accumulate(&mut amps, nk, a);
        }
        let mut s = SparseState { n: next, amps };
        s.prune();
        (s, map)
    }

    /// `(⟨bra| ⊗ I) |self⟩` where `bra` lives on `qubits` (its qubit `i` is `qubits[i]`).
    /// The remaining qubits keep their relative order.
    pub fn contract(&self, qubits: &[usize], bra: &SparseState) -> Result<SparseState> {
        if bra.n != qubits.len() {
            return Err(Error::DimensionMismatch {
                expected: qubits.len(),
                found: bra.n,
            });
        }
        for (i, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubits(q));
            }
        }
        let rest: Vec<usize> = (0..self.n).filter(|q| !qubits.contains(q)).collect();
        let mut out = BTreeMap::new();
        for (&k, &a) in &self.amps {
            let mut sub = 0u64;
            for (i, &q) in qubits.iter().enumerate() {
                sub |= bit(k, q) << i;
            }
            let Some(&b) = bra.amps.get(&sub) else {
                continue;
            };
            let mut nk = 0u64;
            for (j, &q) in rest.iter().enumerate() {
                nk |= bit(k, q) << j;
            }
            accumulate(&mut out, nk, b.conj() * a);
        }
        let mut s = SparseState {
            n: rest.len(),
            amps: out,
        };
        s.prune();
        Ok(s)
    }

    /// Normalised state with independent uniform(-1, 1) real and imaginary parts on every
    /// basis string.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SparseState> {
        if n > 16 {
            return Err(Error::QubitCap(n));
        }
        let terms: Vec<(u64, Complex64)> = (0..1u64 << n)
            .map(|k| (k, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        Self::from_terms(n, terms)?.normalized()
    }

    /// Projective measurement of a Hermitian Pauli. Returns `(outcome bit, collapsed state)`,
    /// outcome 1 meaning eigenvalue −1.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &self,
        p: &PauliOperator,
        rng: &mut R,
    ) -> Result<(u8, SparseState)> {
        if p.square_phase() != 0 {
            return Err(Error::InvalidArgument(format!("{p} is not Hermitian")));
        }
        let pp = self.apply_pauli(p)?;
        let half = Complex64::new(0.5, 0.0);
        let plus = self.add(&pp)?.scaled(half);
        let minus = self.add(&pp.scaled(Complex64::new(-1.0, 0.0)))?.scaled(half);
        let (wp, wm) = (plus.norm_sqr(), minus.norm_sqr());
        let total = wp + wm;
        if total < 1e-20 {
            return Err(Error::ZeroWeight);
        }
        let u: f64 = rng.gen::<f64>() * total;
        if (u < wp && wp > 1e-20) || wm <= 1e-20 {
            Ok((0, plus.normalized()?))
        } else {
            Ok((1, minus.normalized()?))
        }
    }

    /// `bitstring re im` per term, sorted by bitstring.
    pub fn dump(&self) -> String {
        let mut lines: Vec<(String, Complex64)> =
            self.amps.iter().map(|(&k, &a)| (self.key_string(k), a)).collect();
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (s, a) in lines {
            // +0.0 folds negative zero so dumps are stable.
            let _ = writeln!(out, "{s} {:.15} {:.15}", a.re + 0.0, a.im + 0.0);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Projection {
    /// Renormalised projection, `None` when the weight is below `1e-20`.
    pub state: Option<SparseState>,
    /// Squared norm of the projection before renormalisation.
    pub weight: f64,
    /// `⟨basisᵢ|state⟩` per span vector.
    pub coefficients: Vec<Complex64>,
}

/// Projects `state` onto the span of the orthonormal `span` vectors.
pub fn project_onto(span: &[SparseState], state: &SparseState) -> Result<Projection> {
    let mut dev: f64 = 0.0;
    for (i, a) in span.iter().enumerate() {
        for (j, b) in span.iter().enumerate().skip(i) {
            let g = a.inner(b)?;
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((g - Complex64::new(target, 0.0)).norm());
        }
    }
    if dev > COMPARE_TOL {
        return Err(Error::NonOrthonormalSpan(dev));
    }
    let mut coefficients = Vec::with_capacity(span.len());
    let mut acc = SparseState::from_terms(state.n(), std::iter::empty())?;
    for b in span {
        let c = b.inner(state)?;
        coefficients.push(c);
        acc = acc.add(&b.scaled(c))?;
    }
    let weight: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    let projected = if weight < 1e-20 { None } else { Some(acc.normalized()?) };
    Ok(Projection {
        state: projected,
        weight,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hadamard_on_zero() {
        let s = SparseState::from_bitstring("0").unwrap().apply_single(&SingleQubitGate::h(), 0).unwrap();
        assert_eq!(s.term_count(), 2);
        assert!((s.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn z_on_set_qubit() {
        let s = SparseState::from_bitstring("110").unwrap();
        let out = s.apply_single(&SingleQubitGate::z(), 1).unwrap();
        assert_eq!(out.amplitude_of("110").unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn cnot_cases() {
        let s = SparseState::from_bitstring("10").unwrap().apply_cnot(0, 1).unwrap();
        assert_eq!(s.amplitude_of("11").unwrap().re, 1.0);
        let s = SparseState::from_bitstring("01").unwrap().apply_cnot(0, 1).unwrap();
        assert_eq!(s.amplitude_of("01").unwrap().re, 1.0);
        assert!(s.apply_cnot(1, 1).is_err());
    }

    #[test]
    fn swap_moves_bits() {
        let s = SparseState::from_bitstring("01").unwrap().swap_qubits(0, 1).unwrap();
        assert_eq!(s.amplitude_of("10").unwrap().re, 1.0);
    }

    #[test]
    fn tensor_with_vacuum() {
        let s = SparseState::from_bitstring("101").unwrap();
        assert_eq!(s.tensor(&SparseState::vacuum()).unwrap(), s);
        assert_eq!(SparseState::vacuum().tensor(&s).unwrap(), s);
    }

    #[test]
    fn dump_is_sorted_by_bitstring() {
        let h = SingleQubitGate::h();
        let s = SparseState::from_bitstring("00")
            .unwrap()
            .apply_single(&h, 0)
            .unwrap()
            .apply_single(&h, 1)
            .unwrap();
        let lines: Vec<_> = s.dump().lines().map(|l| l[..2].to_string()).collect();
        assert_eq!(lines, ["00", "01", "10", "11"]);
    }

    #[test]
    fn contract_against_bra() {
        // |ψ⟩ = (|01⟩ + |10⟩)/√2 on qubits 0,1 plus |1⟩ on qubit 2.
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let s = SparseState::from_terms(3, [(0b110, h), (0b101, h)]).unwrap();
        let bra = SparseState::from_bitstring("1").unwrap();
        let out = s.contract(&[0], &bra).unwrap();
        assert_eq!(out.n(), 2);
        assert!((out.amplitude_of("01").unwrap() - h).norm() < 1e-15);
        assert_eq!(out.term_count(), 1);
    }

    #[test]
    fn projection_rejects_non_orthonormal() {
        let a = SparseState::from_bitstring("0").unwrap();
        assert!(matches!(
            project_onto(&[a.clone(), a.clone()], &a),
            Err(Error::NonOrthonormalSpan(_))
        ));
    }
}
