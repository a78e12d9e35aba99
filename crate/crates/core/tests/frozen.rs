//! Golden values. Each is first computed by an independent construction in this file, then
//! pinned as a literal so a regression in either path shows up.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use hqec::codes::{builtin_code, logical_codewords};
use hqec::compat::transversal_t_action;
use hqec::protocol::run_logical_t_protocol;
use hqec::sim::Outcomes;
use num_complex::Complex64;

const SHOR_T_LEAKAGE: f64 = 0.375;
const SHOR_LOGICAL_BELL_TERMS: usize = 32;
const SHOR_JOINT_TERMS: usize = 256;

/// `(|000⟩ ± |111⟩)^⊗3 / 2√2` written out string by string.
fn shor_word(sign: f64) -> HashMap<String, f64> {
    let mut out = HashMap::new();
    for blocks in 0..8u32 {
        let mut s = String::new();
        let mut amp = 1.0 / 8f64.sqrt();
        for b in 0..3 {
            if blocks >> b & 1 == 1 {
                s.push_str("111");
                amp *= sign;
            } else {
                s.push_str("000");
            }
        }
        out.insert(s, amp);
    }
    out
}

fn oracle_shor_t_leakage() -> f64 {
    let (zero, one) = (shor_word(1.0), shor_word(-1.0));
    let w = Complex64::from_polar(1.0, FRAC_PI_4);
    let mut image: HashMap<String, Complex64> = HashMap::new();
    for (s, a) in zero.iter() {
        let b = one[s];
        let ones = s.chars().filter(|&c| c == '1').count() as i32;
        image.insert(s.clone(), w.powi(ones) * (a + b) / 2f64.sqrt());
    }
    let overlap = |basis: &HashMap<String, f64>| -> Complex64 {
        basis.iter().map(|(s, a)| image[s] * a).sum()
    };
    1.0 - overlap(&zero).norm_sqr() - overlap(&one).norm_sqr()
}

fn oracle_logical_bell_terms() -> usize {
    let (zero, one) = (shor_word(1.0), shor_word(-1.0));
    let mut n = 0;
    for u in zero.keys() {
        for v in zero.keys() {
            if (zero[u] * zero[v] + one[u] * one[v]).abs() > 1e-12 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn oracle_agrees_with_the_frozen_values() {
    assert!((oracle_shor_t_leakage() - SHOR_T_LEAKAGE).abs() < 1e-12);
    assert_eq!(oracle_logical_bell_terms(), SHOR_LOGICAL_BELL_TERMS);
    assert_eq!(8 * SHOR_LOGICAL_BELL_TERMS, SHOR_JOINT_TERMS);
}

#[test]
fn shor_transversal_t_leakage() {
    let space = logical_codewords(&builtin_code("shor").unwrap()).unwrap();
    let a = transversal_t_action(&space).unwrap();
    assert!((a.leakage - SHOR_T_LEAKAGE).abs() < 1e-9, "{}", a.leakage);
    assert!(a.logical_phases.is_none());
}

#[test]
fn logical_t_term_counts() {
    let c = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
    let r = run_logical_t_protocol(c, (1, 0), &mut Outcomes::forced([(0, 1)])).unwrap();
    let counts: HashMap<_, _> = r.term_counts.iter().cloned().collect();
    assert_eq!(counts["logical Bell pair"], SHOR_LOGICAL_BELL_TERMS);
    assert_eq!(counts["joint register"], SHOR_JOINT_TERMS);
    assert_eq!(r.peak_terms, SHOR_JOINT_TERMS);
}
