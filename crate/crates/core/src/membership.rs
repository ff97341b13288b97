//! Deciding membership in `Γ_q` by tracking the images of `0` and `∞`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::moebius::{HeckeGroup, ProjMatrix};
use crate::ring::{ProjPoint, RingRat};

/// Letter of a certificate word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    S,
    T,
    TInv,
    /// `g_k⁻¹`
    GInv(u32),
}

impl Token {
    pub fn matrix(self, group: &HeckeGroup) -> Result<ProjMatrix> {
        Ok(match self {
            Token::S => group.s().clone(),
            Token::T => group.t().clone(),
            Token::TInv => group.t().inverse(),
            Token::GInv(k) if (1..group.q()).contains(&k) => group.g_inv(k).clone(),
            Token::GInv(k) => {
                return Err(Error::InvalidParameter(format!(
                    "generator index {k} outside 1..={}",
                    group.q() - 1
                )))
            }
        })
    }

    pub fn parse(text: &str) -> Result<Token> {
        let t = text.trim();
        match t {
            "S" => return Ok(Token::S),
            "T" => return Ok(Token::T),
            "T^-1" => return Ok(Token::TInv),
            _ => {}
        }
        t.strip_prefix('g')
            .and_then(|x| x.strip_suffix("^-1"))
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|&k| k >= 1)
            .map(Token::GInv)
            .ok_or_else(|| Error::parse(t, "expected `S`, `T`, `T^-1` or `g<k>^-1`"))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::S => f.write_str("S"),
            Token::T => f.write_str("T"),
            Token::TInv => f.write_str("T^-1"),
            Token::GInv(k) => write!(f, "g{k}^-1"),
        }
    }
}

/// Parse a whitespace- or comma-separated token list.
pub fn parse_word(text: &str) -> Result<Vec<Token>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(Token::parse)
        .collect()
}

/// Product of the tokens' matrices, left to right.
pub fn word_multiply(word: &[Token], group: &HeckeGroup) -> Result<ProjMatrix> {
    word.iter().try_fold(group.identity(), |acc, t| Ok(acc.compose(&t.matrix(group)?)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionResult {
    pub member: bool,
    /// Certificate reproducing the input when `member` holds.
    pub word: Option<Vec<Token>>,
    pub iterations: u64,
    /// `⌈Σ(h₂)/λ⌉`, the most iterations a member can need.
    pub bound: u64,
}

/// Index `k` of the half-open interval `[g_k⁻¹.0, g_k⁻¹.∞)` containing `x`.
pub fn bd_interval_of(x: &ProjPoint, group: &HeckeGroup) -> Result<u32> {
    let xr = match x {
        ProjPoint::Infinity => return Err(Error::domain("∞ lies in no half-open interval")),
        ProjPoint::Finite(v) => v,
    };
    if xr.is_negative() {
        return Err(Error::domain(format!("{xr} is negative")));
    }
    // Left endpoints decrease in k; find the smallest k with left_k ≤ x.
    let (mut lo, mut hi) = (1u32, group.q() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if at_or_right_of(xr, group.interval_left(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

fn at_or_right_of(x: &RingRat, endpoint: &ProjPoint) -> bool {
    match endpoint {
        ProjPoint::Infinity => false,
        ProjPoint::Finite(e) => x.compare(e) != Ordering::Less,
    }
}

/// Smallest `ℓ ≥ 0` with `x + ℓλ ≥ 0` (vacuous for `∞`).
fn shift_needed(x: &ProjPoint, group: &HeckeGroup) -> BigInt {
    match x {
        ProjPoint::Finite(v) if v.is_negative() => {
            let lambda_inv = RingRat::from(group.lambda()).inverse().expect("λ ≠ 0");
            (&(-v) * &lambda_inv).ceil()
        }
        _ => BigInt::zero(),
    }
}

fn saturating_u64(n: &BigInt) -> u64 {
    if n.is_negative() {
        0
    } else {
        n.to_u64().unwrap_or(u64::MAX)
    }
}

/// Decide whether `g ∈ Γ_q`, returning a generator word when it is.
///
/// Members leave the loop after at most `bound` steps, so reaching the bound
/// without arriving at the identity certifies non-membership.
pub fn decide(g: &ProjMatrix, group: &HeckeGroup) -> DecisionResult {
    let ctx = group.ctx();
    let zero = ProjPoint::Finite(RingRat::zero(ctx));

    let shift = shift_needed(&g.apply(&zero), group).max(shift_needed(&g.apply(&ProjPoint::Infinity), group));
    let h1 = group.t().pow(shift.to_i64().expect("shift fits in i64")).compose(g);
    let flip = h1.apply(&zero).compare(&h1.apply(&ProjPoint::Infinity)) == Ordering::Greater;
    let mut h = if flip { h1.compose(group.s()) } else { h1 };

    let lambda_inv = RingRat::from(group.delta0()).inverse().expect("λ ≠ 0");
    let bound = saturating_u64(&(&h.entry_sum() * &lambda_inv).ceil());

    let mut steps = Vec::new();
    let mut iterations = 0u64;
    while !h.is_identity() && !h.mixed_signs() && iterations < bound {
        // No mixed signs and determinant one: all entries are nonnegative
        // and h.0 = b/d is finite.
        let k = bd_interval_of(&h.apply(&zero), group).expect("h.0 is finite and nonnegative");
        h = group.g(k).compose(&h);
        steps.push(k);
        iterations += 1;
    }

    let member = h.is_identity();
    let word = member.then(|| {
        let mut word: Vec<Token> = Vec::new();
        let n = saturating_u64(&shift);
        word.extend(std::iter::repeat_n(Token::TInv, n as usize));
        word.extend(steps.iter().map(|&k| Token::GInv(k)));
        if flip {
            word.push(Token::S);
        }
        word
    });
    DecisionResult { member, word, iterations, bound }
}
