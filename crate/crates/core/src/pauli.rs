//! n-qubit Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^phase · X^x · Z^z` with the X factor to the left, so that
//! `Y = i·X·Z` has `x = z = 1, phase = 1`.

use std::fmt;

use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase · X^x · Z^z` directly (no Y correction is applied).
    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        if x.len() > MAX_QUBITS {
            return Err(Error::QubitCap(x.len()));
        }
        Ok(PauliOperator {
            n: x.len(),
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Hermitian single-qubit Pauli `kind` on qubit `q` (0-based).
    pub fn single(n: usize, q: usize, kind: PauliKind) -> Result<Self> {
        if q >= n {
            return Err(Error::QubitIndex { index: q, n });
        }
        let mut p = Self::identity(n);
        p.set_kind(q, kind);
        Ok(p)
    }

    /// `X^⊗n` or `Z^⊗n`; any other kind is rejected.
    pub fn transversal(kind: PauliKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPauli);
        }
        if n > MAX_QUBITS {
            return Err(Error::QubitCap(n));
        }
        match kind {
            PauliKind::X => Self::from_parts(BitVector::ones(n), BitVector::zeros(n), 0),
            PauliKind::Z => Self::from_parts(BitVector::zeros(n), BitVector::ones(n), 0),
            _ => Err(Error::InvalidArgument(format!(
                "transversal mask must be X or Z, got {}",
                kind.symbol()
            ))),
        }
    }

    /// Pure X-type operator supported on `support`.
    pub fn x_type(support: &BitVector) -> Self {
        PauliOperator {
            n: support.len(),
            x: support.clone(),
            z: BitVector::zeros(support.len()),
            phase: 0,
        }
    }

    /// Pure Z-type operator supported on `support`.
    pub fn z_type(support: &BitVector) -> Self {
        PauliOperator {
            n: support.len(),
            x: BitVector::zeros(support.len()),
            z: support.clone(),
            phase: 0,
        }
    }

    /// Parses `[prefix]P₁P₂…` with prefix in `"", "+", "-", "i", "-i"` and `Pⱼ ∈ {I,X,Y,Z}`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (prefix_phase, body, offset) = if let Some(rest) = text.strip_prefix("-i") {
            (3u8, rest, 2)
        } else if let Some(rest) = text.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = text.strip_prefix('+') {
            (0, rest, 1)
        } else if let Some(rest) = text.strip_prefix('i') {
            (1, rest, 1)
        } else {
            (0, text, 0)
        };
        let n = body.chars().count();
        if n == 0 {
            return Err(Error::EmptyPauli);
        }
        if n > MAX_QUBITS {
            return Err(Error::QubitCap(n));
        }
        let mut p = Self::identity(n);
        for (i, c) in body.chars().enumerate() {
            let kind = match c {
                'I' => PauliKind::I,
                'X' => PauliKind::X,
                'Y' => PauliKind::Y,
                'Z' => PauliKind::Z,
                other => {
                    return Err(Error::PauliParse {
                        position: offset + i + 1,
                        found: other,
                    })
                }
            };
            p.set_kind(i, kind);
        }
        p.phase = (p.phase + prefix_phase) % 4;
        Ok(p)
    }

    /// Replaces the factor on qubit `q`, keeping the operator Hermitian-per-site (Y carries its `i`).
    fn set_kind(&mut self, q: usize, kind: PauliKind) {
        let old_y = self.x.get(q) && self.z.get(q);
        let (x, z) = kind.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        if old_y {
            self.phase = (self.phase + 3) % 4;
        }
        if x && z {
            self.phase = (self.phase + 1) % 4;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    /// Exponent of `i` in the `i^phase · X^x · Z^z` form.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn kind_at(&self, q: usize) -> PauliKind {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    /// Number of Y factors; each contributes one `i` that is not part of the printed sign.
    fn y_count(&self) -> usize {
        self.x.and_weight(&self.z)
    }

    /// Sign in front of the Hermitian tensor product, as an exponent of `i`.
    pub fn sign_phase(&self) -> u8 {
        ((self.phase as usize + 4 * self.n - self.y_count() % 4) % 4) as u8
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero() && self.phase == 0
    }

    /// True when the operator is `±I` or `±iI`.
    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// `self · other`; moving `Z^{z₁}` past `X^{x₂}` contributes `(-1)^{z₁·x₂}`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_dim(other)?;
        let swaps = self.z.and_weight(&other.x);
        let phase = (self.phase as usize + other.phase as usize + 2 * (swaps % 2)) % 4;
        Ok(PauliOperator {
            n: self.n,
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: phase as u8,
        })
    }

    /// Symplectic product parity; zero iff the operators commute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        self.check_dim(other)?;
        let s = self.x.and_weight(&other.z) + self.z.and_weight(&other.x);
        Ok(s % 2 == 1)
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// `p² = i^{2·phase} · (-1)^{#Y}`; returns that exponent of `i` (0 or 2).
    pub fn square_phase(&self) -> u8 {
        ((2 * self.phase as usize + 2 * self.y_count()) % 4) as u8
    }

    pub fn with_phase(&self, phase: u8) -> PauliOperator {
        let mut p = self.clone();
        p.phase = phase % 4;
        p
    }

    pub fn negated(&self) -> PauliOperator {
        self.with_phase(self.phase + 2)
    }

    /// Hermitian text without sign, e.g. `XYZI`.
    pub fn body_string(&self) -> String {
        (0..self.n).map(|q| self.kind_at(q).symbol()).collect()
    }
}

/// `X^⊗n` or `Z^⊗n` with phase 0.
pub fn transversal_pauli(kind: PauliKind, n: usize) -> Result<PauliOperator> {
    PauliOperator::transversal(kind, n)
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign_phase() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.body_string())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl std::str::FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliOperator::parse(s)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_phase() {
        let y = PauliOperator::parse("Y").unwrap();
        assert_eq!((y.x_bits().get(0), y.z_bits().get(0), y.phase()), (true, true, 1));
        assert_eq!(y.to_string(), "Y");
    }

    #[test]
    fn prefixes_round_trip() {
        for s in ["XYZ", "-XYZ", "iXYZ", "-iXYZ", "-IIY", "iYY"] {
            assert_eq!(PauliOperator::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(PauliOperator::parse("+ZZ").unwrap().to_string(), "ZZ");
    }

    #[test]
    fn parse_error_position_is_one_based() {
        assert_eq!(
            PauliOperator::parse("XXQ"),
            Err(Error::PauliParse { position: 3, found: 'Q' })
        );
        assert_eq!(
            PauliOperator::parse("-iXA"),
            Err(Error::PauliParse { position: 4, found: 'A' })
        );
        assert_eq!(PauliOperator::parse("-"), Err(Error::EmptyPauli));
    }

    #[test]
    fn xz_squares_to_minus_identity() {
        let x = PauliOperator::parse("X").unwrap();
        let z = PauliOperator::parse("Z").unwrap();
        let xz = x.multiply(&z).unwrap();
        let sq = xz.multiply(&xz).unwrap();
        assert!(sq.is_scalar());
        assert_eq!(sq.phase(), 2);
        assert_eq!(xz.to_string(), "-iY");
    }

    #[test]
    fn shor_mask_product() {
        let x9 = transversal_pauli(PauliKind::X, 9).unwrap();
        let z9 = transversal_pauli(PauliKind::Z, 9).unwrap();
        let m = x9.multiply(&z9).unwrap();
        assert_eq!(m.phase(), 0);
        assert_eq!(m.weight(), 9);
        assert!(m.x_bits().weight() == 9 && m.z_bits().weight() == 9);
    }

    #[test]
    fn weights() {
        assert_eq!(PauliOperator::parse("XXXXXXIII").unwrap().weight(), 6);
        assert_eq!(PauliOperator::parse("XYZI").unwrap().weight(), 3);
        assert_eq!(PauliOperator::identity(4).weight(), 0);
    }
}
