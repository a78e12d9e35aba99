//! Binary linear codes: row reduction, membership, duals, cosets and triorthogonality.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::sim::SparseState;

/// Largest dimension `enumerate_codewords` and friends will expand.
pub const ENUMERATION_GUARD: usize = 20;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RowLength {
                    row: i + 1,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Rows from `0`/`1` strings; all must share one length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, |r| r.len());
        Self::new(cols, parsed)
    }

    /// Matrix file: one row of `0`/`1` per line, blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<BitVector> = Vec::new();
        let mut cols = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            let row = BitVector::parse(&compact).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: ln + 1, msg },
                other => other,
            })?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("row has {} entries, expected {c}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        match cols {
            None => Err(Error::EmptyMatrix),
            Some(c) => Self::new(c, rows),
        }
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = vec![BitVector::zeros(self.rows.len()); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                out[j].set(i, true);
            }
        }
        BitMatrix {
            cols: self.rows.len(),
            rows: out,
        }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix{{{}x{}}}", self.rows.len(), self.cols)
    }
}

/// Reduces `rows` in place to reduced row-echelon form; returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Vec<BitVector>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r.get(c) {
                r.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// A binary linear code given by generator rows.
#[derive(Clone)]
pub struct ClassicalCode {
    n: usize,
    generators: BitMatrix,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl ClassicalCode {
    pub fn from_rows(rows: BitMatrix) -> Result<Self> {
        code_from_rows(rows)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    /// Row-reduced basis; row `i` has its leading one at `pivots()[i]`.
    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `word` against the basis; the result is zero iff `word` is a codeword.
    pub fn reduce(&self, word: &BitVector) -> BitVector {
        let mut w = word.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w
    }

    pub fn contains(&self, word: &BitVector) -> Result<bool> {
        contains(self, word)
    }

    fn check_guard(&self) -> Result<()> {
        if self.dimension() > ENUMERATION_GUARD {
            return Err(Error::DimensionGuard {
                dim: self.dimension(),
                guard: ENUMERATION_GUARD,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassicalCode[n={}, k={}]", self.n, self.dimension())
    }
}

pub fn code_from_rows(rows: BitMatrix) -> Result<ClassicalCode> {
    if rows.cols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut basis = rows.rows().to_vec();
    let pivots = rref(&mut basis);
    Ok(ClassicalCode {
        n: rows.cols(),
        generators: rows,
        basis,
        pivots,
    })
}

pub fn contains(code: &ClassicalCode, word: &BitVector) -> Result<bool> {
    if word.len() != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: word.len(),
        });
    }
    Ok(code.reduce(word).is_zero())
}

/// All `2^k` codewords. Word `c` is `Σ cᵢ·basisᵢ` with `c₀` the most significant coefficient,
/// so the order is lexicographic in the coefficient vector.
pub fn enumerate_codewords(code: &ClassicalCode) -> Result<Vec<BitVector>> {
    code.check_guard()?;
    let k = code.dimension();
    let mut out = Vec::with_capacity(1 << k);
    for c in 0u64..(1u64 << k) {
        let mut w = BitVector::zeros(code.n);
        for (i, row) in code.basis.iter().enumerate() {
            if (c >> (k - 1 - i)) & 1 == 1 {
                w.xor_assign(row);
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Every codeword has even weight; by linearity the basis rows suffice.
pub fn all_even_weight(code: &ClassicalCode) -> Result<bool> {
    code.check_guard()?;
    Ok(code.basis.iter().all(|r| r.weight() % 2 == 0))
}

/// Dual code `C⊥`, built from the free columns of the reduced basis.
pub fn dual(code: &ClassicalCode) -> ClassicalCode {
    let n = code.n;
    let mut rows = Vec::new();
    let pivot_set: BTreeSet<usize> = code.pivots.iter().copied().collect();
    for f in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = BitVector::zeros(n);
        v.set(f, true);
        for (row, &p) in code.basis.iter().zip(&code.pivots) {
            if row.get(f) {
                v.set(p, true);
            }
        }
        rows.push(v);
    }
    if rows.is_empty() {
        rows.push(BitVector::zeros(n));
    }
    code_from_rows(BitMatrix { cols: n, rows }).expect("dual of a non-empty code has n > 0")
}

/// `inner ⊆ outer`.
pub fn is_subcode(inner: &ClassicalCode, outer: &ClassicalCode) -> Result<bool> {
    if inner.n != outer.n {
        return Err(Error::DimensionMismatch {
            expected: outer.n,
            found: inner.n,
        });
    }
    Ok(inner.basis.iter().all(|r| outer.reduce(r).is_zero()))
}

/// Solves `A·x = rhs` over F2 with equations given as rows of `A`; free variables are 0.
/// Returns `None` when inconsistent.
pub fn solve_f2(equations: &[BitVector], rhs: &[bool], vars: usize) -> Option<BitVector> {
    debug_assert_eq!(equations.len(), rhs.len());
    let mut aug: Vec<BitVector> = equations
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut v = BitVector::zeros(vars + 1);
            for i in row.ones_iter() {
                v.set(i, true);
            }
            v.set(vars, r);
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&vars) {
        return None;
    }
    let mut x = BitVector::zeros(vars);
    for (row, &p) in aug.iter().zip(&pivots) {
        x.set(p, row.get(vars));
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOverlap {
    pub i: usize,
    pub j: usize,
    pub overlap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleOverlap {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub overlap: usize,
}

/// Outcome of the pairwise and triple even-overlap conditions. Row indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriorthoReport {
    pub pairwise_ok: bool,
    pub triple_ok: bool,
    pub violating_index_sets: Vec<Vec<usize>>,
    pub odd_rows: Vec<usize>,
    pub even_rows: Vec<usize>,
    pub pair_overlaps: Vec<PairOverlap>,
    pub triple_overlaps: Vec<TripleOverlap>,
}

impl TriorthoReport {
    pub fn is_triorthogonal(&self) -> bool {
        self.pairwise_ok && self.triple_ok
    }
}

pub fn triorthogonality_check(g: &BitMatrix) -> TriorthoReport {
    let rows = g.rows();
    let m = rows.len();
    let mut pair_overlaps = Vec::new();
    let mut triple_overlaps = Vec::new();
    let mut violating = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let w = rows[i].and_weight(&rows[j]);
            if w % 2 == 1 {
                violating.push(vec![i, j]);
            }
            pair_overlaps.push(PairOverlap { i, j, overlap: w });
        }
    }
    let pairwise_ok = violating.is_empty();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let w = BitVector::and3_weight(&rows[i], &rows[j], &rows[k]);
                if w % 2 == 1 {
                    violating.push(vec![i, j, k]);
                }
                triple_overlaps.push(TripleOverlap { i, j, k, overlap: w });
            }
        }
    }
    let triple_ok = triple_overlaps.iter().all(|t| t.overlap % 2 == 0);
    let (odd_rows, even_rows) = (0..m).partition(|&i| rows[i].weight() % 2 == 1);
    TriorthoReport {
        pairwise_ok,
        triple_ok,
        violating_index_sets: violating,
        odd_rows,
        even_rows,
        pair_overlaps,
        triple_overlaps,
    }
}

/// `|x + C₂⟩`: uniform superposition over `{x ⊕ y : y ∈ C₂}`.
pub fn coset_state(c2: &ClassicalCode, x: &BitVector) -> Result<SparseState> {
    if x.len() != c2.n {
        return Err(Error::DimensionMismatch {
            expected: c2.n,
            found: x.len(),
        });
    }
    let words = enumerate_codewords(c2)?;
    let amp = Complex64::new(1.0 / (words.len() as f64).sqrt(), 0.0);
    let mut terms = Vec::with_capacity(words.len());
    for y in &words {
        terms.push((x.xor(y), amp));
    }
    SparseState::from_bitvector_terms(c2.n, terms)
}

/// Residues `{w(c) mod m}` over `words`.
pub fn weight_mod(words: &[BitVector], m: usize) -> Result<BTreeSet<usize>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {m}")));
    }
    Ok(words.iter().map(|w| w.weight() % m).collect())
}

/// `x ⊕ C` for every word of `C`.
pub fn coset_words(code: &ClassicalCode, x: &BitVector) -> Result<Vec<BitVector>> {
    Ok(enumerate_codewords(code)?.iter().map(|y| x.xor(y)).collect())
}
