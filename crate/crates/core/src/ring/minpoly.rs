//! Minimal polynomial of `2cos(π/q)` from the cyclotomic polynomial `Φ_{2q}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer polynomial, coefficients from the constant term upward.
pub type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial. Panics on a nonzero remainder.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Poly {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem: Poly = num.to_vec();
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    trim(quot)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Φ_n` via `x^n - 1 = Π_{d | n} Φ_d`.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den: Poly = vec![BigInt::one()];
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = mul(&den, &cyclotomic(d));
        }
    }
    div_exact_monic(&num, &den)
}

/// Fold a palindromic polynomial `P` of degree `2n` into `m` of degree `n`
/// with `z^n · m(z + 1/z) = P(z)`.
///
/// Uses `z^j + z^-j = V_j(z + 1/z)` where `V_0 = 2`, `V_1 = x`,
/// `V_{j+1} = x V_j - V_{j-1}`.
pub fn fold_palindromic(p: &[BigInt]) -> Poly {
    let deg = p.len() - 1;
    assert!(deg.is_multiple_of(2), "palindromic fold needs even degree");
    let n = deg / 2;
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] += &p[n];
    let mut v_prev: Poly = vec![BigInt::from(2)];
    let mut v_cur: Poly = vec![BigInt::zero(), BigInt::one()];
    for j in 1..=n {
        let c = &p[n + j];
        for (i, vi) in v_cur.iter().enumerate() {
            out[i] += c * vi;
        }
        // V_{j+1} = x V_j - V_{j-1}
        let mut next = vec![BigInt::zero(); v_cur.len() + 1];
        for (i, vi) in v_cur.iter().enumerate() {
            next[i + 1] += vi;
        }
        for (i, vi) in v_prev.iter().enumerate() {
            next[i] -= vi;
        }
        v_prev = v_cur;
        v_cur = next;
    }
    trim(out)
}

/// Minimal polynomial of `2cos(π/q)` over the rationals, monic, degree `φ(2q)/2`.
pub fn min_poly_2cos(q: u32) -> Poly {
    fold_palindromic(&cyclotomic(2 * q))
}

/// Euler's totient by trial division.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
