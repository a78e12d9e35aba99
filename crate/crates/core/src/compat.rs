//! Compatibility of Pauli-mask encryption with stabilizer codes, and transversal diagonal
//! gate analysis.

use num_complex::Complex64;
use serde::Serialize;

use crate::bits::BitVector;
use crate::codes::{CodeSpace, StabilizerCode};
use crate::error::{Error, Result};
use crate::f2::{dual, is_subcode, ClassicalCode};
use crate::pauli::{transversal_pauli, PauliKind, PauliOperator};
use crate::sim::{omega_pow, SparseState};

/// Leakage below this counts as staying in the code space.
pub const LEAKAGE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    /// 1-based.
    pub index: usize,
    pub generator: String,
    pub commutes_with_x_mask: bool,
    pub commutes_with_z_mask: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CssFlags {
    pub e_in_c1: bool,
    pub e_in_c2_dual: bool,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub code: String,
    pub n: usize,
    pub generator_checks: Vec<GeneratorCheck>,
    pub compatible: bool,
    /// One entry per failing pair, e.g. `ZZZ vs X^⊗3`.
    pub failures: Vec<String>,
    pub css: Option<CssFlags>,
    /// Whether the classical-code verdict matches the generator verdict (CSS codes only).
    pub cross_check_agrees: Option<bool>,
}

fn mask_label(kind: PauliKind, n: usize) -> String {
    format!("{}^⊗{n}", kind.symbol())
}

fn generator_checks(
    n: usize,
    generators: &[PauliOperator],
) -> Result<(Vec<GeneratorCheck>, Vec<String>)> {
    let xm = transversal_pauli(PauliKind::X, n)?;
    let zm = transversal_pauli(PauliKind::Z, n)?;
    let mut checks = Vec::with_capacity(generators.len());
    let mut failures = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let cx = g.commutes(&xm)?;
        let cz = g.commutes(&zm)?;
        if !cx {
            failures.push(format!("{g} vs {}", mask_label(PauliKind::X, n)));
        }
        if !cz {
            failures.push(format!("{g} vs {}", mask_label(PauliKind::Z, n)));
        }
        checks.push(GeneratorCheck {
            index: i + 1,
            generator: g.to_string(),
            commutes_with_x_mask: cx,
            commutes_with_z_mask: cz,
        });
    }
    Ok((checks, failures))
}

fn css_flags(c1: &ClassicalCode, c2: &ClassicalCode) -> CssFlags {
    let e = BitVector::ones(c1.length());
    let e_in_c1 = c1.reduce(&e).is_zero();
    let e_in_c2_dual = c2.basis().iter().all(|r| !r.dot(&e));
    CssFlags {
        e_in_c1,
        e_in_c2_dual,
        compatible: e_in_c1 && e_in_c2_dual,
    }
}

/// Every generator must commute with both `X^⊗n` and `Z^⊗n`.
pub fn theorem1_check(code: &StabilizerCode) -> Result<CompatReport> {
    let (checks, failures) = generator_checks(code.n(), code.generators())?;
    let compatible = failures.is_empty();
    let css = code.css_origin().map(|o| css_flags(&o.c1, &o.c2));
    Ok(CompatReport {
        code: code.name().to_string(),
        n: code.n(),
        cross_check_agrees: css.as_ref().map(|f| f.compatible == compatible),
        generator_checks: checks,
        compatible,
        failures,
        css,
    })
}

/// X generators from the rows of C₂, Z generators from a basis of C₁⊥.
pub fn css_generators(c1: &ClassicalCode, c2: &ClassicalCode) -> Vec<PauliOperator> {
    let mut g: Vec<PauliOperator> = c2.basis().iter().map(PauliOperator::x_type).collect();
    g.extend(dual(c1).basis().iter().map(PauliOperator::z_type));
    g
}

/// `e ∈ C₁` and `e ∈ C₂⊥`, cross-checked against the generator-level criterion.
pub fn theorem2_check(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<CompatReport> {
    if !is_subcode(c2, c1)? {
        return Err(Error::NotSubcode);
    }
    let flags = css_flags(c1, c2);
    let n = c1.length();
    let (checks, failures) = generator_checks(n, &css_generators(c1, c2))?;
    let generator_verdict = failures.is_empty();
    Ok(CompatReport {
        code: format!("CSS(C1[{n},{}], C2[{n},{}])", c1.dimension(), c2.dimension()),
        n,
        generator_checks: checks,
        compatible: flags.compatible,
        failures,
        cross_check_agrees: Some(generator_verdict == flags.compatible),
        css: Some(flags),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenSupportReport {
    pub verdict: bool,
    /// `(family, 1-based index, weight)` for each odd support; family is `Z` or `X`.
    pub odd_supports: Vec<(char, usize, usize)>,
}

/// Every support has even size.
pub fn even_support_check(z_supports: &[BitVector], x_supports: &[BitVector]) -> EvenSupportReport {
    let mut odd = Vec::new();
    for (family, list) in [('Z', z_supports), ('X', x_supports)] {
        for (i, s) in list.iter().enumerate() {
            if s.weight() % 2 == 1 {
                odd.push((family, i + 1, s.weight()));
            }
        }
    }
    EvenSupportReport {
        verdict: odd.is_empty(),
        odd_supports: odd,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalAction {
    pub gate: String,
    /// Squared norm of the out-of-code-space part of `D ψ`, i.e. `1 − Σᵢ|⟨bᵢ|D ψ⟩|²`, for
    /// `ψ = (|0̄⟩+|1̄⟩)/√2`.
    pub leakage: f64,
    /// `⟨bᵢ|D|bⱼ⟩`.
    pub logical_matrix: Vec<Vec<Complex64>>,
    /// `D|bᵢ⟩ = λᵢ|bᵢ⟩`, present only when leakage is below tolerance and each basis state is
    /// an eigenvector.
    pub logical_phases: Option<Vec<Complex64>>,
}

/// `phase` on every qubit.
pub fn uniform_phases(n: usize, phase: Complex64) -> Vec<Complex64> {
    vec![phase; n]
}

/// Applies the product-diagonal gate with per-qubit `phases` (amplitude of `b` times
/// `∏_{q: b_q=1} phases[q]`) and reads off its logical action.
pub fn diagonal_gate_action(space: &CodeSpace, phases: &[Complex64], label: &str) -> Result<DiagonalAction> {
    let basis = space.basis();
    let images = basis
        .iter()
        .map(|b| b.apply_diagonal(phases))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); basis.len()]; basis.len()];
    for (j, img) in images.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            matrix[i][j] = b.inner(img)?;
        }
    }
    let h = Complex64::new(1.0 / (basis.len() as f64).sqrt(), 0.0);
    let mut uniform = SparseState::from_terms(space.code().n(), std::iter::empty())?;
    for img in &images {
        uniform = uniform.add(&img.scaled(h))?;
    }
    // Residual computed directly rather than as 1 − kept, which loses precision.
    let mut residual = uniform.clone();
    for b in basis {
        residual = residual.add(&b.scaled(-b.inner(&uniform)?))?;
    }
    let leakage = (residual.norm_sqr() + 0.0).min(1.0);
    let mut logical_phases = None;
    if leakage < LEAKAGE_TOL {
        let mut phases_out = Vec::with_capacity(basis.len());
        let mut eigen = true;
        for (i, (b, img)) in basis.iter().zip(&images).enumerate() {
            let lambda = matrix[i][i];
            if img.max_deviation(&b.scaled(lambda))? > LEAKAGE_TOL {
                eigen = false;
                break;
            }
            phases_out.push(lambda);
        }
        if eigen {
            logical_phases = Some(phases_out);
        }
    }
    Ok(DiagonalAction {
        gate: label.to_string(),
        leakage,
        logical_matrix: matrix,
        logical_phases,
    })
}

/// `T^⊗n`.
pub fn transversal_t_action(space: &CodeSpace) -> Result<DiagonalAction> {
    let n = space.code().n();
    diagonal_gate_action(space, &uniform_phases(n, omega_pow(1)), &format!("T^⊗{n}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CliffordCorrection {
    /// Exponent `s` of the logical `diag(1, i^s)`.
    pub logical_s_power: u8,
    /// Exponent of the logical Z applied before the `S̄` power.
    pub logical_z_power: u8,
    pub global_phase: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CorrectionSearch {
    Found(CliffordCorrection),
    /// The transversal gate leaves the code space.
    Leakage { leakage: f64 },
    /// The gate preserves the code space but acts non-diagonally.
    NotDiagonal,
    /// Diagonal, but no `Z̄^z S̄^s` fixes the relative phase.
    NoneFound,
}

impl CorrectionSearch {
    pub fn found(&self) -> Option<CliffordCorrection> {
        match self {
            CorrectionSearch::Found(c) => Some(*c),
            _ => None,
        }
    }
}

/// Finds `U = g · S̄^s · Z̄^z` with `U · T^⊗n` acting as `diag(1, e^{iπ/4})` on the logical
/// qubit. Searches `z ∈ {0,1}` outer, `s ∈ {0..3}` inner.
pub fn clifford_correction_for_t(space: &CodeSpace) -> Result<CorrectionSearch> {
    let action = transversal_t_action(space)?;
    if action.leakage >= LEAKAGE_TOL {
        return Ok(CorrectionSearch::Leakage {
            leakage: action.leakage,
        });
    }
    let Some(phases) = action.logical_phases else {
        return Ok(CorrectionSearch::NotDiagonal);
    };
    let (l0, l1) = (phases[0], phases[1]);
    let target = omega_pow(1);
    let relative = l1 / l0;
    for z in 0..2u8 {
        for s in 0..4u8 {
            let f = Complex64::i().powu(s as u32) * if z == 1 { -1.0 } else { 1.0 };
            if (f * relative - target).norm() < 1e-12 {
                return Ok(CorrectionSearch::Found(CliffordCorrection {
                    logical_s_power: s,
                    logical_z_power: z,
                    global_phase: l0.conj() / l0.norm_sqr(),
                }));
            }
        }
    }
    Ok(CorrectionSearch::NoneFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin_code, logical_codewords};

    #[test]
    fn synthetic_failure_names_zzz() {
        let r = theorem1_check(&builtin_code("synthetic_incompatible").unwrap()).unwrap();
        assert!(!r.compatible);
        assert_eq!(r.failures, vec!["ZZZ vs X^⊗3".to_string()]);
    }

    #[test]
    fn identity_gate_has_no_leakage() {
        let s = logical_codewords(&builtin_code("steane").unwrap()).unwrap();
        let a = diagonal_gate_action(&s, &uniform_phases(7, Complex64::new(1.0, 0.0)), "I").unwrap();
        assert!(a.leakage < 1e-12);
        let p = a.logical_phases.unwrap();
        assert!((p[0] - 1.0).norm() < 1e-12 && (p[1] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn non_diagonal_preserving_gate() {
        // Z^⊗3 swaps the phase-flip codewords.
        let s = logical_codewords(&builtin_code("phase_flip").unwrap()).unwrap();
        let a = diagonal_gate_action(&s, &uniform_phases(3, Complex64::new(-1.0, 0.0)), "Z").unwrap();
        assert!(a.leakage < 1e-12);
        assert!(a.logical_phases.is_none());
    }

    #[test]
    fn even_support() {
        assert!(even_support_check(&[], &[]).verdict);
        let r = even_support_check(&[BitVector::parse("111").unwrap()], &[]);
        assert!(!r.verdict);
        assert_eq!(r.odd_supports, vec![('Z', 1, 3)]);
    }
}
