use num_complex::Complex64;

use super::StabilizerCode;
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::f2::{coset_state, solve_f2};
use crate::pauli::PauliOperator;
use crate::sim::{project_onto, Projection, SparseState, MAX_SIM_QUBITS};

/// A code together with its logical basis `|0̄⟩, |1̄⟩`.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    code: StabilizerCode,
    basis: Vec<SparseState>,
}

impl CodeSpace {
    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn basis(&self) -> &[SparseState] {
        &self.basis
    }

    pub fn zero(&self) -> &SparseState {
        &self.basis[0]
    }

    pub fn one(&self) -> &SparseState {
        &self.basis[1]
    }

    /// `c₀|0̄⟩ + c₁|1̄⟩`, not renormalised.
    pub fn encode(&self, c0: Complex64, c1: Complex64) -> Result<SparseState> {
        self.basis[0].scaled(c0).add(&self.basis[1].scaled(c1))
    }

    pub fn project(&self, state: &SparseState) -> Result<Projection> {
        project_onto(&self.basis, state)
    }

    /// `(⟨0̄|ψ⟩, ⟨1̄|ψ⟩)`.
    pub fn logical_amplitudes(&self, state: &SparseState) -> Result<(Complex64, Complex64)> {
        Ok((self.basis[0].inner(state)?, self.basis[1].inner(state)?))
    }
}

/// Builds `|0̄⟩` and `|1̄⟩ = X̄|0̄⟩` for a `k = 1` code.
///
/// CSS codes use the coset states of C₂. Other codes take `|0̄⟩` as the unique joint +1
/// eigenstate of `⟨gᵢ, Z̄⟩`, obtained by projecting a seed basis state that every diagonal
/// element of that group fixes.
pub fn logical_codewords(code: &StabilizerCode) -> Result<CodeSpace> {
    if code.k() != 1 {
        return Err(Error::UnsupportedLogicalCount(code.k()));
    }
    if code.n() > MAX_SIM_QUBITS {
        return Err(Error::QubitCap(code.n()));
    }
    let x_bar = &code.logical_x()[0];
    let zero = match code.css_origin() {
        Some(origin) if x_bar.is_x_type() && x_bar.phase() == 0 => {
            coset_state(&origin.c2, &BitVector::zeros(code.n()))?
        }
        _ => projected_zero(code)?,
    };
    let one = match code.css_origin() {
        Some(origin) if x_bar.is_x_type() && x_bar.phase() == 0 => {
            coset_state(&origin.c2, x_bar.x_bits())?
        }
        _ => zero.apply_pauli(x_bar)?,
    };
    let space = CodeSpace {
        code: code.clone(),
        basis: vec![zero, one],
    };
    check_space(&space)?;
    Ok(space)
}

fn projected_zero(code: &StabilizerCode) -> Result<SparseState> {
    let n = code.n();
    let mut group: Vec<PauliOperator> = code.generators().to_vec();
    group.push(code.logical_z()[0].clone());

    // Diagonal subgroup: eliminate x-parts; rows left with x = 0 are ±Z-strings.
    let mut rows = group.clone();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].x_bits().get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.x_bits().get(c) {
                *row = row.multiply(&pivot)?;
            }
        }
        rank += 1;
    }
    let diagonal: Vec<&PauliOperator> = rows[rank..].iter().filter(|d| !d.is_scalar()).collect();
    for d in &rows[rank..] {
        if d.is_scalar() && d.phase() != 0 {
            return Err(Error::SeedSearchExhausted);
        }
    }
    // d|s⟩ = (-1)^{phase/2} (-1)^{z·s} |s⟩ must be +|s⟩.
    let eqs: Vec<BitVector> = diagonal.iter().map(|d| d.z_bits().clone()).collect();
    let rhs: Vec<bool> = diagonal.iter().map(|d| d.phase() == 2).collect();
    if diagonal.iter().any(|d| d.phase() % 2 == 1) {
        return Err(Error::SeedSearchExhausted);
    }
    let seed = solve_f2(&eqs, &rhs, n).ok_or(Error::SeedSearchExhausted)?;
    let mut state = SparseState::basis(n, seed.to_u64())?;
    let half = Complex64::new(0.5, 0.0);
    for g in &group {
        let gs = state.apply_pauli(g)?;
        state = state.add(&gs)?.scaled(half);
        if state.norm_sqr() < 1e-20 {
            return Err(Error::SeedSearchExhausted);
        }
        state = state.normalized()?;
    }
    // Fix the global phase: the first stored amplitude is real and positive.
    let (_, a0) = state.terms().next().ok_or(Error::SeedSearchExhausted)?;
    Ok(state.scaled(a0.conj() / a0.norm()))
}

fn check_space(space: &CodeSpace) -> Result<()> {
    let code = space.code();
    for (i, b) in space.basis.iter().enumerate() {
        for g in code.generators() {
            let dev = b.apply_pauli(g)?.max_deviation(b)?;
            if dev > 1e-10 {
                return Err(Error::InvalidArgument(format!(
                    "logical basis state {i} is not fixed by {g}"
                )));
            }
        }
        let sign = if i == 0 { 1.0 } else { -1.0 };
        let zb = b.apply_pauli(&code.logical_z()[0])?;
        if zb.max_deviation(&b.scaled(Complex64::new(sign, 0.0)))? > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "logical Z does not act as {sign:+} on basis state {i}"
            )));
        }
    }
    Ok(())
}
