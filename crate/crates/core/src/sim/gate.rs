use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix2 = [[Complex64; 2]; 2];

const UNITARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateLabel {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Custom(String),
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateLabel::I => f.write_str("I"),
            GateLabel::X => f.write_str("X"),
            GateLabel::Y => f.write_str("Y"),
            GateLabel::Z => f.write_str("Z"),
            GateLabel::H => f.write_str("H"),
            GateLabel::S => f.write_str("S"),
            GateLabel::Sdg => f.write_str("Sdg"),
            GateLabel::T => f.write_str("T"),
            GateLabel::Tdg => f.write_str("Tdg"),
            GateLabel::Custom(name) => f.write_str(name),
        }
    }
}

/// A 2×2 unitary with a label. `matrix[row][col]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitGate {
    label: GateLabel,
    matrix: Matrix2,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iπk/4}`, exact for the multiples of π/4 used throughout.
pub fn omega_pow(k: i64) -> Complex64 {
    match k.rem_euclid(8) {
        0 => c(1.0, 0.0),
        1 => c(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        2 => c(0.0, 1.0),
        3 => c(-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        4 => c(-1.0, 0.0),
        5 => c(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        6 => c(0.0, -1.0),
        _ => c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
    }
}

impl SingleQubitGate {
    pub fn custom(name: &str, matrix: Matrix2) -> Result<Self> {
        let g = SingleQubitGate {
            label: GateLabel::Custom(name.to_string()),
            matrix,
        };
        if !g.is_unitary() {
            return Err(Error::NotUnitary(name.to_string()));
        }
        Ok(g)
    }

    fn diag(label: GateLabel, d1: Complex64) -> Self {
        let zero = c(0.0, 0.0);
        SingleQubitGate {
            label,
            matrix: [[c(1.0, 0.0), zero], [zero, d1]],
        }
    }

    pub fn identity() -> Self {
        Self::diag(GateLabel::I, c(1.0, 0.0))
    }

    pub fn x() -> Self {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        SingleQubitGate {
            label: GateLabel::X,
            matrix: [[z, o], [o, z]],
        }
    }

    pub fn y() -> Self {
        let z = c(0.0, 0.0);
        SingleQubitGate {
            label: GateLabel::Y,
            matrix: [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        }
    }

    pub fn z() -> Self {
        Self::diag(GateLabel::Z, c(-1.0, 0.0))
    }

    pub fn h() -> Self {
        let h = c(FRAC_1_SQRT_2, 0.0);
        SingleQubitGate {
            label: GateLabel::H,
            matrix: [[h, h], [h, -h]],
        }
    }

    pub fn s() -> Self {
        Self::diag(GateLabel::S, omega_pow(2))
    }

    pub fn sdg() -> Self {
        Self::diag(GateLabel::Sdg, omega_pow(-2))
    }

    pub fn t() -> Self {
        Self::diag(GateLabel::T, omega_pow(1))
    }

    pub fn tdg() -> Self {
        Self::diag(GateLabel::Tdg, omega_pow(-1))
    }

    /// `S^k` with `k` taken mod 4, labelled by its simplest name.
    pub fn s_power(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::identity(),
            1 => Self::s(),
            2 => Self::z(),
            _ => Self::sdg(),
        }
    }

    pub fn label(&self) -> &GateLabel {
        &self.label
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix[0][1] == c(0.0, 0.0) && self.matrix[1][0] == c(0.0, 0.0)
    }

    pub fn dagger(&self) -> SingleQubitGate {
        let m = &self.matrix;
        let label = match &self.label {
            GateLabel::S => GateLabel::Sdg,
            GateLabel::Sdg => GateLabel::S,
            GateLabel::T => GateLabel::Tdg,
            GateLabel::Tdg => GateLabel::T,
            GateLabel::Custom(name) => GateLabel::Custom(format!("{name}^dag")),
            other => other.clone(),
        };
        SingleQubitGate {
            label,
            matrix: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    pub fn is_unitary(&self) -> bool {
        let m = &self.matrix;
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (dot - c(target, 0.0)).norm() > UNITARY_TOL {
                    return false;
                }
            }
        }
        true
    }
}
