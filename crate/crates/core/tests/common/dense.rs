//! Brute-force dense oracle, independent of the sparse kernels. Index bit `q` is qubit `q`.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

pub type Mat = Vec<Vec<Complex64>>;

pub const MAX_ORACLE_QUBITS: usize = 4;

fn z() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn identity(dim: usize) -> Mat {
    let mut m = vec![vec![z(); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut m = vec![vec![z(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == z() {
                continue;
            }
            for j in 0..n {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn scale(a: &Mat, s: Complex64) -> Mat {
    a.iter().map(|r| r.iter().map(|&x| x * s).collect()).collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

pub fn apply(m: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `m` on qubit `q` of `n`, identity elsewhere, by Kronecker products.
pub fn embed(m: &[[Complex64; 2]; 2], q: usize, n: usize) -> Mat {
    let dim = 1 << n;
    let mut out = vec![vec![z(); dim]; dim];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let rest_equal = (r & !(1 << q)) == (c & !(1 << q));
            if rest_equal {
                *cell = m[(r >> q) & 1][(c >> q) & 1];
            }
        }
    }
    out
}

pub fn cnot(control: usize, target: usize, n: usize) -> Mat {
    let dim = 1 << n;
    let mut out = vec![vec![z(); dim]; dim];
    for c in 0..dim {
        let r = if (c >> control) & 1 == 1 { c ^ (1 << target) } else { c };
        out[r][c] = Complex64::new(1.0, 0.0);
    }
    out
}

pub fn swap(i: usize, j: usize, n: usize) -> Mat {
    let dim = 1 << n;
    let mut out = vec![vec![z(); dim]; dim];
    for c in 0..dim {
        let (bi, bj) = ((c >> i) & 1, (c >> j) & 1);
        let r = (c & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j);
        out[r][c] = Complex64::new(1.0, 0.0);
    }
    out
}

pub fn x() -> [[Complex64; 2]; 2] {
    let (o, l) = (z(), Complex64::new(1.0, 0.0));
    [[o, l], [l, o]]
}

pub fn zm() -> [[Complex64; 2]; 2] {
    let (o, l) = (z(), Complex64::new(1.0, 0.0));
    [[l, o], [o, -l]]
}

pub fn h() -> [[Complex64; 2]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

pub fn phase(theta: f64) -> [[Complex64; 2]; 2] {
    let (o, l) = (z(), Complex64::new(1.0, 0.0));
    [[l, o], [o, Complex64::from_polar(1.0, theta)]]
}

pub fn s() -> [[Complex64; 2]; 2] {
    phase(std::f64::consts::FRAC_PI_2)
}

pub fn t() -> [[Complex64; 2]; 2] {
    phase(std::f64::consts::FRAC_PI_4)
}

pub fn dagger2(m: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

/// `i^phase · ∏_q X_q^{x_q} Z_q^{z_q}` from per-qubit `(x, z)` bits.
pub fn pauli(bits: &[(bool, bool)], phase: u8) -> Mat {
    let n = bits.len();
    let mut m = identity(1 << n);
    for (q, &(xb, zb)) in bits.iter().enumerate() {
        if xb {
            m = matmul(&m, &embed(&x(), q, n));
        }
        if zb {
            m = matmul(&m, &embed(&zm(), q, n));
        }
    }
    scale(&m, Complex64::i().powu(phase as u32))
}

/// `X^a Z^b` on one qubit.
pub fn xz(a: u8, b: u8) -> Mat {
    pauli(&[(a == 1, b == 1)], 0)
}

/// Per-qubit masks `⊗ X^{aⱼ} Z^{bⱼ}`.
pub fn mask(keys: &[(u8, u8)]) -> Mat {
    pauli(&keys.iter().map(|&(a, b)| (a == 1, b == 1)).collect::<Vec<_>>(), 0)
}

/// If `a = λ b` for a unit `λ`, returns `λ`.
pub fn proportional(a: &Mat, b: &Mat, tol: f64) -> Option<Complex64> {
    let mut lambda = None;
    for (ra, rb) in a.iter().zip(b) {
        for (&x, &y) in ra.iter().zip(rb) {
            if y.norm() > 1e-9 {
                lambda = Some(x / y);
                break;
            }
        }
        if lambda.is_some() {
            break;
        }
    }
    let l = lambda?;
    if (l.norm() - 1.0).abs() > tol || max_diff(a, &scale(b, l)) > tol {
        return None;
    }
    Some(l)
}
