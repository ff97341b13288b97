//! Text grammar for ring elements: integer polynomials in `L`.
//!
//! ```text
//! ring_int  := term (('+' | '-') term)*     e.g. 1+2L-L^2
//! term      := ['-'] [digits ['*']] ['L' ['^' digits]]
//! ring_rat  := ring_int | '(' ring_int ')' '/' digits | ring_int '/' digits
//! proj_pt   := ring_rat | 'inf'
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ProjPoint, RingContext, RingInt, RingRat};
use crate::error::{Error, Result};

impl fmt::Display for RingInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("L")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Display for RingRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({})/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(whole, format!("expected digits, found `{s}`")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::parse(whole, e.to_string()))
}

fn parse_term(term: &str) -> Result<(usize, BigInt)> {
    let (coeff_part, power) = match term.find('L') {
        None => (term, 0usize),
        Some(pos) => {
            let rest = &term[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                parse_digits(exp, term)?
                    .try_into()
                    .map_err(|_| Error::parse(term, "exponent too large"))?
            } else {
                return Err(Error::parse(term, "unexpected characters after `L`"));
            };
            let coeff = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
            (coeff, power)
        }
    };
    let coeff = if coeff_part.is_empty() {
        if power == 0 {
            return Err(Error::parse(term, "empty term"));
        }
        BigInt::one()
    } else {
        parse_digits(coeff_part, term)?
    };
    Ok((power, coeff))
}

/// Parse the `L`-polynomial grammar into a canonical element.
pub fn parse_ring_int(ctx: &Arc<RingContext>, text: &str) -> Result<RingInt> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(text, "empty ring element"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        match bytes[i] {
            b'+' if i > 0 => i += 1,
            b'-' => {
                sign = -sign;
                i += 1;
            }
            _ if i > 0 => return Err(Error::parse(&s[i..], "expected `+` or `-`")),
            _ => {}
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err(Error::parse(&s[start.saturating_sub(1)..], "dangling sign"));
        }
        let (power, coeff) = parse_term(term)?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += sign * coeff;
    }
    Ok(RingInt::from_coeffs(ctx, coeffs))
}

/// Parse `num`, `(num)/den` or `num/den`.
pub fn parse_ring_rat(ctx: &Arc<RingContext>, text: &str) -> Result<RingRat> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (num_text, den_text) = match s.rfind('/') {
        None => (s.as_str(), None),
        Some(pos) => (&s[..pos], Some(&s[pos + 1..])),
    };
    let num_text = match (num_text.strip_prefix('('), num_text.strip_suffix(')')) {
        (Some(_), Some(_)) => &num_text[1..num_text.len() - 1],
        (None, None) => num_text,
        _ => return Err(Error::parse(num_text, "unbalanced parentheses")),
    };
    let num = parse_ring_int(ctx, num_text)?;
    let den = match den_text {
        None => BigInt::one(),
        Some(d) => {
            let den = parse_digits(d, &s)?;
            if den.is_zero() {
                return Err(Error::parse(d, "zero denominator"));
            }
            den
        }
    };
    Ok(RingRat::new(num, den))
}

pub fn parse_proj_point(ctx: &Arc<RingContext>, text: &str) -> Result<ProjPoint> {
    if text.trim() == "inf" {
        Ok(ProjPoint::Infinity)
    } else {
        parse_ring_rat(ctx, text).map(ProjPoint::Finite)
    }
}
