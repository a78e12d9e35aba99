use std::collections::BTreeMap;

use super::StabilizerCode;
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Bit `i` is set iff `error` anticommutes with generator `i`.
pub fn syndrome(code: &StabilizerCode, error: &PauliOperator) -> Result<BitVector> {
    if error.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: error.n(),
        });
    }
    let mut s = BitVector::zeros(code.generators().len());
    for (i, g) in code.generators().iter().enumerate() {
        s.set(i, g.symplectic_product(error)?);
    }
    Ok(s)
}

/// Lookup from syndrome to a minimum symplectic-weight error among the `3n + 1` errors of
/// weight at most one. Ties go to the lower qubit index, then X before Z.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    n: usize,
    table: BTreeMap<BitVector, PauliOperator>,
}

impl SyndromeTable {
    pub fn build(code: &StabilizerCode) -> Result<Self> {
        let n = code.n();
        let mut table = BTreeMap::new();
        let mut candidates = vec![PauliOperator::identity(n)];
        for q in 0..n {
            for kind in [PauliKind::X, PauliKind::Z] {
                candidates.push(PauliOperator::single(n, q, kind)?);
            }
        }
        // Y has symplectic weight 2, so it only wins syndromes no X or Z error produces.
        for q in 0..n {
            candidates.push(PauliOperator::single(n, q, PauliKind::Y)?);
        }
        for e in candidates {
            table.entry(syndrome(code, &e)?).or_insert(e);
        }
        Ok(SyndromeTable { n, table })
    }

    pub fn lookup(&self, s: &BitVector) -> Option<&PauliOperator> {
        self.table.get(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

pub fn decode_single_error(code: &StabilizerCode, s: &BitVector) -> Result<Option<PauliOperator>> {
    if s.len() != code.generators().len() {
        return Err(Error::DimensionMismatch {
            expected: code.generators().len(),
            found: s.len(),
        });
    }
    Ok(SyndromeTable::build(code)?.lookup(s).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin_code;

    #[test]
    fn bit_flip_middle_qubit() {
        let c = builtin_code("bit_flip").unwrap();
        let e = PauliOperator::parse("IXI").unwrap();
        assert_eq!(syndrome(&c, &e).unwrap().to_string(), "11");
        let d = decode_single_error(&c, &BitVector::parse("10").unwrap()).unwrap();
        assert_eq!(d.unwrap().to_string(), "XII");
    }

    #[test]
    fn zero_syndrome_decodes_to_identity() {
        let c = builtin_code("shor").unwrap();
        let d = decode_single_error(&c, &BitVector::zeros(8)).unwrap().unwrap();
        assert!(d.is_identity());
    }

    #[test]
    fn shor_x1_fires_only_g1() {
        let c = builtin_code("shor").unwrap();
        let s = syndrome(&c, &PauliOperator::parse("XIIIIIIII").unwrap()).unwrap();
        assert_eq!(s.to_string(), "10000000");
    }

    #[test]
    fn shor_block_degenerate_z() {
        let c = builtin_code("shor").unwrap();
        let s = syndrome(&c, &PauliOperator::parse("IZIIIIIII").unwrap()).unwrap();
        let d = decode_single_error(&c, &s).unwrap().unwrap();
        assert_eq!(d.to_string(), "ZIIIIIIII");
    }

    #[test]
    fn unmatched_syndrome() {
        let c = builtin_code("bit_flip").unwrap();
        let t = SyndromeTable::build(&c).unwrap();
        assert_eq!(t.len(), 4);
        let shor = builtin_code("shor").unwrap();
        let s = BitVector::parse("11111111").unwrap();
        assert_eq!(decode_single_error(&shor, &s).unwrap(), None);
    }

    #[test]
    fn phase_flip_prefers_z_over_y() {
        let c = builtin_code("phase_flip").unwrap();
        let e = PauliOperator::parse("ZII").unwrap();
        let d = decode_single_error(&c, &syndrome(&c, &e).unwrap()).unwrap().unwrap();
        assert_eq!(d.to_string(), "ZII");
    }
}
