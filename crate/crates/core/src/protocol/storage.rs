use num_complex::Complex64;
use serde::Serialize;

use super::keys::{encrypt, remove_mask, KeyRegister};
use super::teleport::complex_pair;
use crate::codes::{decode_single_error, logical_codewords, StabilizerCode};
use crate::compat::theorem1_check;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sim::SimRng;

#[derive(Clone, Debug, Serialize)]
pub struct StorageReport {
    pub code: String,
    pub n: usize,
    pub amplitudes: [[f64; 2]; 2],
    pub keys: (u8, u8),
    /// Logical amplitudes of the encrypted, error-free block.
    pub encrypted_logical: [[f64; 2]; 2],
    pub injected_error: Option<String>,
    /// One bit per generator, generator 1 first.
    pub syndrome: String,
    pub correction: Option<String>,
    pub fidelity: f64,
}

/// Encode → transversal `X^a Z^b` mask → error → syndrome measurement → lookup correction
/// → unmask, all on the encrypted block. The server never sees the keys.
pub fn run_storage_protocol(
    code: &StabilizerCode,
    logical_amplitudes: (Complex64, Complex64),
    keys: (u8, u8),
    injected_error: Option<&PauliOperator>,
    rng: &mut SimRng,
) -> Result<StorageReport> {
    let compat = theorem1_check(code)?;
    if !compat.compatible {
        let bad = compat
            .generator_checks
            .iter()
            .find(|c| !(c.commutes_with_x_mask && c.commutes_with_z_mask))
            .expect("incompatible report has a failing generator");
        let mask = if bad.commutes_with_x_mask { "Z" } else { "X" };
        return Err(Error::Incompatible {
            code: code.name().to_string(),
            generator: bad.generator.clone(),
            mask: format!("{mask}^⊗{}", code.n()),
        });
    }
    let n = code.n();
    let space = logical_codewords(code)?;
    let (c0, c1) = logical_amplitudes;
    let psi = space.encode(c0, c1)?.normalized()?;
    let key_reg = KeyRegister::uniform(n, keys.0, keys.1)?;
    let enc = encrypt(&psi, &key_reg)?;
    let (e0, e1) = space.logical_amplitudes(&enc)?;

    let mut noisy = enc;
    if let Some(e) = injected_error {
        if e.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: e.n(),
            });
        }
        noisy = noisy.apply_pauli(e)?;
    }
    let mut bits = Vec::with_capacity(code.generators().len());
    for g in code.generators() {
        let (bit, post) = noisy.measure_pauli(g, rng)?;
        bits.push(bit == 1);
        noisy = post;
    }
    let syndrome = crate::bits::BitVector::from_bools(&bits);
    let correction = decode_single_error(code, &syndrome)?;
    if let Some(c) = &correction {
        noisy = noisy.apply_pauli(c)?;
    }
    let out = remove_mask(&noisy, &key_reg)?;
    let fidelity = psi.fidelity_up_to_phase(&out)?;
    Ok(StorageReport {
        code: code.name().to_string(),
        n,
        amplitudes: [complex_pair(c0), complex_pair(c1)],
        keys,
        encrypted_logical: [complex_pair(e0), complex_pair(e1)],
        injected_error: injected_error.map(|e| e.to_string()),
        syndrome: bits.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        correction: correction.map(|c| c.to_string()),
        fidelity,
    })
}
