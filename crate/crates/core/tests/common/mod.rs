#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use hecke::{word_multiply, HeckeGroup, ProjForm, ProjMatrix, RingInt, Token};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random word over `S`, `T`, `T⁻¹` of length `1..=max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Token> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Token::S,
            1 => Token::T,
            _ => Token::TInv,
        })
        .collect()
}

pub fn random_element(rng: &mut ChaCha8Rng, group: &HeckeGroup, max_len: usize) -> ProjMatrix {
    word_multiply(&random_word(rng, max_len), group).unwrap()
}

/// Random hyperbolic element of the group, rejecting elliptic and parabolic draws.
pub fn random_hyperbolic(rng: &mut ChaCha8Rng, group: &HeckeGroup, max_len: usize) -> ProjMatrix {
    loop {
        let g = random_element(rng, group, max_len);
        if g.is_hyperbolic() {
            return g;
        }
    }
}

pub fn random_group(rng: &mut ChaCha8Rng, qs: std::ops::RangeInclusive<u32>) -> HeckeGroup {
    HeckeGroup::new(rng.gen_range(qs)).unwrap()
}

// ---- 2cos(π/q) to high precision, from Machin's formula and the cosine series ----

/// `atan(1/x)·2^bits`, truncated termwise.
fn atan_inv(x: u32, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        k += 1;
    }
    sum
}

fn pi_fixed(bits: u32) -> BigInt {
    atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4
}

/// Enclosure `(lo, hi)` of `2cos(π/q)·2^bits` of width `2^33`.
pub fn lambda_fixed(q: u32, bits: u32) -> (BigInt, BigInt) {
    let work = bits + 64;
    let y = pi_fixed(work) / q;
    let y2 = (&y * &y) >> work;
    let mut term = BigInt::one() << work;
    let mut sum = term.clone();
    let mut k = 1u32;
    while !term.is_zero() {
        term = ((&term * &y2) >> work) / ((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    let centre = (sum << 1) >> 64;
    let slack = BigInt::one() << 32;
    (&centre - &slack, &centre + &slack)
}

/// Sign of `Σ c_i λ^i` if an enclosure of `λ` at `bits` separates it from
/// zero. Endpoints are exact rationals over `2^(bits·deg)`.
pub fn certified_sign(coeffs: &[BigInt], q: u32, bits: u32) -> Option<Ordering> {
    let (lo, hi) = lambda_fixed(q, bits);
    let deg = coeffs.len().saturating_sub(1);
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let pad = bits as usize * (deg - i);
        let small = (num_traits::pow(lo.clone(), i) * c) << pad;
        let large = (num_traits::pow(hi.clone(), i) * c) << pad;
        if c.is_negative() {
            lower += large;
            upper += small;
        } else {
            lower += small;
            upper += large;
        }
    }
    if lower.is_positive() {
        Some(Ordering::Greater)
    } else if upper.is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

// ---- unpruned enumeration of reduced forms ----

fn mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// `(TS)^k S` as an exact word.
fn alphabet_word(k: u32) -> Vec<Token> {
    let mut w = Vec::new();
    for _ in 0..k {
        w.push(Token::T);
        w.push(Token::S);
    }
    w.push(Token::S);
    w
}

/// Every reduced form `ψ₂⁻¹(g_{k_1}⁻¹ ⋯ g_{k_n}⁻¹)` with `n ≤ max_len` and
/// discriminant at most `dmax`. Visits all `(q-1)^n` words; floating point
/// only preselects candidates, which are then rebuilt and checked exactly.
pub fn brute_force_reduced(group: &HeckeGroup, dmax: &BigRational, max_len: usize) -> BTreeSet<String> {
    let q = group.q();
    let lambda = 2.0 * (std::f64::consts::PI / q as f64).cos();
    let t = [[1.0, lambda], [0.0, 1.0]];
    let s = [[0.0, 1.0], [-1.0, 0.0]];
    let letters: Vec<[[f64; 2]; 2]> = (1..q)
        .map(|k| {
            let mut m = [[1.0, 0.0], [0.0, 1.0]];
            for _ in 0..k {
                m = mul(mul(m, t), s);
            }
            mul(m, s)
        })
        .collect();
    let limit = dmax.to_f64().unwrap() + 1e-6;

    let mut candidates = Vec::new();
    let mut word = Vec::new();
    fn walk(
        m: [[f64; 2]; 2],
        word: &mut Vec<u32>,
        letters: &[[[f64; 2]; 2]],
        max_len: usize,
        limit: f64,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !word.is_empty() {
            let tr = (m[0][0] + m[1][1]).abs();
            if tr > 2.0 + 1e-9 && tr * tr - 4.0 <= limit {
                out.push(word.clone());
            }
        }
        if word.len() == max_len {
            return;
        }
        for (i, l) in letters.iter().enumerate() {
            word.push(i as u32 + 1);
            walk(mul(m, *l), word, letters, max_len, limit, out);
            word.pop();
        }
    }
    walk([[1.0, 0.0], [0.0, 1.0]], &mut word, &letters, max_len, limit, &mut candidates);

    let dmax_num = RingInt::from_int(group.ctx(), dmax.numer().clone());
    let mut found = BTreeSet::new();
    for w in candidates {
        let tokens: Vec<Token> = w.iter().flat_map(|&k| alphabet_word(k)).collect();
        let m = word_multiply(&tokens, group).unwrap();
        if !m.is_hyperbolic() {
            continue;
        }
        let form = ProjForm::psi2_inv(&m).unwrap();
        let scaled = form.discriminant().scale(dmax.denom());
        if (&dmax_num - &scaled).is_negative() || !form.is_reduced() {
            continue;
        }
        found.insert(form.to_string());
    }
    found
}
