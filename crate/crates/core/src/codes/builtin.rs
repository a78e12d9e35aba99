use super::{css_from_classical, StabilizerCode};
use crate::error::{Error, Result};
use crate::f2::{code_from_rows, BitMatrix};

pub const BUILTIN_NAMES: [&str; 6] = [
    "bit_flip",
    "phase_flip",
    "shor",
    "steane",
    "rm15",
    "synthetic_incompatible",
];

/// Steane generator matrices as column maps (7×4 and 7×3); the rows of their transposes
/// generate C₁ and C₂.
pub(crate) const STEANE_G1_COLUMNS: [&str; 7] =
    ["1000", "0100", "0010", "0001", "0111", "1011", "1101"];
pub(crate) const STEANE_G2_COLUMNS: [&str; 7] = ["001", "010", "011", "100", "101", "110", "111"];

/// Columns are the nonzero vectors of F₂⁴; row 0 is odd (G₁), rows 1..4 even (G₀).
pub const RM15_MATRIX: [&str; 5] = [
    "111111111111111",
    "000000011111111",
    "000111100001111",
    "011001100110011",
    "101010101010101",
];

pub fn builtin_code(name: &str) -> Result<StabilizerCode> {
    match name {
        "bit_flip" => StabilizerCode::from_strs(name, &["ZZI", "IZZ"], &["XXX"], &["ZZZ"]),
        "phase_flip" => StabilizerCode::from_strs(name, &["XXI", "IXX"], &["ZZZ"], &["XXX"]),
        // Logical Z is X^⊗9 and logical X is Z^⊗9 in the phase-repetition basis.
        "shor" => StabilizerCode::from_strs(
            name,
            &[
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ],
            &["ZZZZZZZZZ"],
            &["XXXXXXXXX"],
        ),
        "steane" => {
            let c1 = code_from_rows(BitMatrix::from_strs(&STEANE_G1_COLUMNS)?.transpose())?;
            let c2 = code_from_rows(BitMatrix::from_strs(&STEANE_G2_COLUMNS)?.transpose())?;
            css_from_classical(name, &c1, &c2)
        }
        "rm15" => {
            let g = BitMatrix::from_strs(&RM15_MATRIX)?;
            let g0 = BitMatrix::new(15, g.rows()[1..].to_vec())?;
            css_from_classical(name, &code_from_rows(g)?, &code_from_rows(g0)?)
        }
        // ZZZ has odd overlap with X^⊗3, so block masking cannot preserve this code.
        "synthetic_incompatible" => {
            StabilizerCode::from_strs(name, &["ZZZ", "XXI"], &["IXX"], &["ZZI"])
        }
        other => Err(Error::UnknownCode(other.to_string())),
    }
}
