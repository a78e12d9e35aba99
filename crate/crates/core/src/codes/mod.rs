//! Stabilizer codes: definitions, validation, codewords, syndromes and decoding.

mod builtin;
mod css;
mod decode;
mod space;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::ClassicalCode;
use crate::pauli::PauliOperator;

pub use builtin::{builtin_code, BUILTIN_NAMES, RM15_MATRIX};
pub use css::css_from_classical;
pub use decode::{decode_single_error, syndrome, SyndromeTable};
pub use space::{logical_codewords, CodeSpace};

/// The classical pair a CSS code was built from, `C₂ ⊂ C₁`.
#[derive(Clone, Debug)]
pub struct CssOrigin {
    pub c1: ClassicalCode,
    pub c2: ClassicalCode,
}

#[derive(Clone)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    css_origin: Option<CssOrigin>,
}

impl StabilizerCode {
    /// Checks only that every operator acts on the same number of qubits; the algebra is
    /// checked by [`validate_code`].
    pub fn new(
        name: &str,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        let n = generators
            .iter()
            .chain(&logical_x)
            .chain(&logical_z)
            .map(|p| p.n())
            .next()
            .ok_or(Error::EmptyPauli)?;
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if p.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        if logical_x.len() != logical_z.len() {
            return Err(Error::DimensionMismatch {
                expected: logical_x.len(),
                found: logical_z.len(),
            });
        }
        Ok(StabilizerCode {
            name: name.to_string(),
            n,
            generators,
            logical_x,
            logical_z,
            css_origin: None,
        })
    }

    /// Parses one Pauli string per generator / logical.
    pub fn from_strs(name: &str, gens: &[&str], lx: &[&str], lz: &[&str]) -> Result<Self> {
        let p = |v: &[&str]| v.iter().map(|s| PauliOperator::parse(s)).collect::<Result<Vec<_>>>();
        Self::new(name, p(gens)?, p(lx)?, p(lz)?)
    }

    pub(crate) fn with_css_origin(mut self, origin: CssOrigin) -> Self {
        self.css_origin = Some(origin);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn css_origin(&self) -> Option<&CssOrigin> {
        self.css_origin.as_ref()
    }

    /// True when `p`, up to sign, is a product of generators.
    pub fn in_stabilizer_up_to_sign(&self, p: &PauliOperator) -> Result<bool> {
        let reduced = reduce_against(&self.generators, p)?;
        Ok(reduced.is_scalar())
    }
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerCode[{}: [[{}, {}]]]", self.name, self.n, self.k())
    }
}

/// Symplectic elimination of `p` against the row-reduced form of `ops`, tracking phase.
fn reduce_against(ops: &[PauliOperator], p: &PauliOperator) -> Result<PauliOperator> {
    let (basis, pivots) = symplectic_rref(ops)?;
    let mut r = p.clone();
    for (b, &col) in basis.iter().zip(&pivots) {
        if symplectic_bit(&r, col) {
            r = r.multiply(b)?;
        }
    }
    Ok(r)
}

/// Column `c < n` is the x-part, `c ≥ n` the z-part.
fn symplectic_bit(p: &PauliOperator, c: usize) -> bool {
    if c < p.n() {
        p.x_bits().get(c)
    } else {
        p.z_bits().get(c - p.n())
    }
}

fn first_symplectic_one(p: &PauliOperator) -> Option<usize> {
    p.x_bits()
        .first_one()
        .or_else(|| p.z_bits().first_one().map(|c| c + p.n()))
}

/// Reduces `ops` with Pauli multiplication so phases stay exact. Rows that reduce to a scalar
/// are dropped.
fn symplectic_rref(ops: &[PauliOperator]) -> Result<(Vec<PauliOperator>, Vec<usize>)> {
    let mut basis: Vec<PauliOperator> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for op in ops {
        let mut r = op.clone();
        for (b, &col) in basis.iter().zip(&pivots) {
            if symplectic_bit(&r, col) {
                r = r.multiply(b)?;
            }
        }
        let Some(col) = first_symplectic_one(&r) else {
            continue;
        };
        for b in basis.iter_mut() {
            if symplectic_bit(b, col) {
                *b = b.multiply(&r)?;
            }
        }
        basis.push(r);
        pivots.push(col);
    }
    Ok((basis, pivots))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub valid: bool,
    /// One entry per violated invariant; generator indices are 1-based.
    pub violations: Vec<String>,
}

/// Checks every stabilizer-code invariant and lists the failures.
pub fn validate_code(code: &StabilizerCode) -> ValidationReport {
    let mut v = Vec::new();
    let gens = &code.generators;
    let n = code.n;
    let k = code.k();
    if gens.len() + k != n {
        v.push(format!(
            "expected n - k = {} generators, found {}",
            n.saturating_sub(k),
            gens.len()
        ));
    }
    for (i, g) in gens.iter().enumerate() {
        if g.square_phase() != 0 {
            v.push(format!("generator g{} = {g} is not Hermitian", i + 1));
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].symplectic_product(&gens[j]).unwrap_or(true) {
                v.push(format!("generators g{} and g{} anticommute", i + 1, j + 1));
            }
        }
    }
    // Dependence and -I: reduce each generator against its predecessors.
    let mut basis: Vec<PauliOperator> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Ok(r) = reduce_against(&basis, g) else {
            continue;
        };
        if r.is_scalar() {
            v.push(format!("generator g{} is dependent on earlier generators", i + 1));
            if r.phase() == 2 {
                v.push("stabilizer group contains -I".to_string());
            }
        } else {
            basis.push(g.clone());
        }
    }
    let logicals = code
        .logical_x
        .iter()
        .enumerate()
        .map(|(j, p)| (format!("logical X{}", j + 1), p))
        .chain(
            code.logical_z
                .iter()
                .enumerate()
                .map(|(j, p)| (format!("logical Z{}", j + 1), p)),
        );
    for (label, l) in logicals {
        if l.square_phase() != 0 {
            v.push(format!("{label} = {l} is not Hermitian"));
        }
        for (i, g) in gens.iter().enumerate() {
            if l.symplectic_product(g).unwrap_or(true) {
                v.push(format!("{label} = {l} anticommutes with g{}", i + 1));
            }
        }
        if code.in_stabilizer_up_to_sign(l).unwrap_or(false) {
            v.push(format!("{label} = {l} lies in the stabilizer group"));
        }
    }
    for j in 0..k {
        for l in 0..k {
            let anti = code.logical_x[j]
                .symplectic_product(&code.logical_z[l])
                .unwrap_or(false);
            if anti != (j == l) {
                v.push(format!(
                    "logical X{} and Z{} should {}",
                    j + 1,
                    l + 1,
                    if j == l { "anticommute" } else { "commute" }
                ));
            }
            if j < l {
                if code.logical_x[j].symplectic_product(&code.logical_x[l]).unwrap_or(true) {
                    v.push(format!("logical X{} and X{} anticommute", j + 1, l + 1));
                }
                if code.logical_z[j].symplectic_product(&code.logical_z[l]).unwrap_or(true) {
                    v.push(format!("logical Z{} and Z{} anticommute", j + 1, l + 1));
                }
            }
        }
    }
    ValidationReport {
        code: code.name.clone(),
        n,
        k,
        valid: v.is_empty(),
        violations: v,
    }
}

/// Code file: header `n k`, then `n-k` generators, `k` logical X, `k` logical Z; `#` comments.
pub fn parse_code_file(name: &str, text: &str) -> Result<StabilizerCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n k` header".into(),
    })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: hline,
            msg: format!("header {header:?} is not `n k`"),
        })?;
    let [n, k] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header {header:?} is not `n k`"),
        });
    };
    if n == 0 || k > n {
        return Err(Error::Parse {
            line: hline,
            msg: format!("invalid parameters n = {n}, k = {k}"),
        });
    }
    let mut take = |count: usize, what: &str| -> Result<Vec<PauliOperator>> {
        let mut out = Vec::with_capacity(count);
        for idx in 0..count {
            let (ln, l) = lines.next().ok_or(Error::Parse {
                line: hline,
                msg: format!("expected {count} {what} lines, found {idx}"),
            })?;
            let p = PauliOperator::parse(l).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
            if p.n() != n {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("{what} {l:?} has {} qubits, expected {n}", p.n()),
                });
            }
            out.push(p);
        }
        Ok(out)
    };
    let gens = take(n - k, "generator")?;
    let lx = take(k, "logical X")?;
    let lz = take(k, "logical Z")?;
    if let Some((ln, l)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: format!("unexpected trailing line {l:?}"),
        });
    }
    StabilizerCode::new(name, gens, lx, lz)
}

/// Serialises a code in the file format read by [`parse_code_file`].
pub fn format_code_file(code: &StabilizerCode) -> String {
    let mut out = format!("# {}\n{} {}\n", code.name, code.n, code.k());
    for p in code.generators.iter().chain(&code.logical_x).chain(&code.logical_z) {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubit_bell_stabilizer_is_valid() {
        let c = StabilizerCode::from_strs("xx_zz", &["XX", "ZZ"], &[], &[]).unwrap();
        let r = validate_code(&c);
        assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn anticommuting_pair_is_reported() {
        let c = StabilizerCode::from_strs("bad", &["X", "Z"], &[], &[]).unwrap();
        let r = validate_code(&c);
        assert!(!r.valid);
        assert!(r.violations.iter().any(|m| m.contains("g1 and g2 anticommute")));
    }

    #[test]
    fn minus_identity_is_reported() {
        let c = StabilizerCode::from_strs("neg", &["ZZ", "-ZZ"], &[], &[]).unwrap();
        let r = validate_code(&c);
        assert!(r.violations.iter().any(|m| m.contains("-I")));
        assert!(r.violations.iter().any(|m| m.contains("dependent")));
    }

    #[test]
    fn code_file_round_trip() {
        let text = "# comment\n3 1\nZZI\nIZZ # trailing\nXXX\nZZZ\n";
        let c = parse_code_file("bf", text).unwrap();
        assert_eq!((c.n(), c.k()), (3, 1));
        let again = parse_code_file("bf", &format_code_file(&c)).unwrap();
        assert_eq!(again.generators(), c.generators());
    }

    #[test]
    fn code_file_errors_name_the_line() {
        assert!(matches!(
            parse_code_file("x", "3 1\nZZI\nIZQ\nXXX\nZZZ\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_code_file("x", "3 1\nZZI\nIZZ\nXXX\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_code_file("x", "three\n"), Err(Error::Parse { line: 1, .. })));
    }
}
