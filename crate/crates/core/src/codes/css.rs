use super::{CssOrigin, StabilizerCode};
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::f2::{dual, is_subcode, solve_f2, ClassicalCode};
use crate::pauli::PauliOperator;

/// `CSS(C₁, C₂)`: X generators from the rows of C₂, Z generators from a basis of C₁⊥.
///
/// Logical X̄ₗ = X(fₗ) with fₗ ∈ C₁ independent modulo C₂; logical Z̄ⱼ = Z(hⱼ) with hⱼ ∈ C₂⊥
/// and `hⱼ·fₗ = δⱼₗ`. The all-ones word is used for both when admissible.
pub fn css_from_classical(name: &str, c1: &ClassicalCode, c2: &ClassicalCode) -> Result<StabilizerCode> {
    if !is_subcode(c2, c1)? {
        return Err(Error::NotSubcode);
    }
    let (k1, k2) = (c1.dimension(), c2.dimension());
    if k1 <= k2 {
        return Err(Error::NoLogicalQubits { k1, k2 });
    }
    let n = c1.length();
    let k = k1 - k2;
    let e = BitVector::ones(n);
    let c1_dual = dual(c1);
    let c2_dual = dual(c2);

    let f: Vec<BitVector> = if k == 1 && !c2.reduce(&e).is_zero() && c1.reduce(&e).is_zero() {
        vec![e.clone()]
    } else {
        representatives_mod(c1.basis(), c2.basis())
    };
    debug_assert_eq!(f.len(), k);

    let h: Vec<BitVector> =
        if k == 1 && c2_dual.reduce(&e).is_zero() && e.dot(&f[0]) {
            vec![e.clone()]
        } else {
            let d = c2_dual.basis();
            let eqs: Vec<BitVector> = f
                .iter()
                .map(|fl| BitVector::from_bools(&d.iter().map(|di| di.dot(fl)).collect::<Vec<_>>()))
                .collect();
            (0..k)
                .map(|j| {
                    let rhs: Vec<bool> = (0..k).map(|l| l == j).collect();
                    let c = solve_f2(&eqs, &rhs, d.len())
                        .expect("pairing is solvable for independent coset representatives");
                    let mut hj = BitVector::zeros(n);
                    for i in c.ones_iter() {
                        hj.xor_assign(&d[i]);
                    }
                    hj
                })
                .collect()
        };

    let mut generators: Vec<PauliOperator> = c2.basis().iter().map(PauliOperator::x_type).collect();
    generators.extend(c1_dual.basis().iter().map(PauliOperator::z_type));
    let code = StabilizerCode::new(
        name,
        generators,
        f.iter().map(PauliOperator::x_type).collect(),
        h.iter().map(PauliOperator::z_type).collect(),
    )?;
    Ok(code.with_css_origin(CssOrigin {
        c1: c1.clone(),
        c2: c2.clone(),
    }))
}

/// Rows of `outer` that extend the span of `inner`, in order.
fn representatives_mod(outer: &[BitVector], inner: &[BitVector]) -> Vec<BitVector> {
    let mut span: Vec<BitVector> = inner.to_vec();
    let mut out = Vec::new();
    for row in outer {
        let mut probe = span.clone();
        probe.push(row.clone());
        if crate::f2::rref(&mut probe).len() > span.len() {
            span.push(row.clone());
            out.push(row.clone());
        }
    }
    out
}
