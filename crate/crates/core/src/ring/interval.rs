//! Dyadic interval arithmetic with outward rounding.
//!
//! An [`Interval`] is a pair of integers `lo <= hi` read at a fixed binary
//! scale: it encloses the real numbers in `[lo * 2^-prec, hi * 2^-prec]`.
//! Every operation returns an enclosure of all possible exact results, so a
//! sign read off an interval that excludes zero is certified.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    x.div_floor(&(BigInt::from(1) << bits))
}

fn shr_ceil(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    -((-x).div_floor(&(BigInt::from(1) << bits)))
}

impl Interval {
    /// Enclosure `[lo, hi] * 2^-prec`. Panics if `lo > hi`.
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        let m = n << prec;
        Interval {
            lo: m.clone(),
            hi: m,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    /// Outward rounding to a coarser scale (or exact rescaling to a finer one).
    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Interval {
                    lo: &self.lo << s,
                    hi: &self.hi << s,
                    prec,
                }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Interval {
                    lo: shr_floor(&self.lo, s),
                    hi: shr_ceil(&self.hi, s),
                    prec,
                }
            }
        }
    }

    fn aligned(&self, other: &Interval) -> (Interval, Interval) {
        let p = self.prec.max(other.prec);
        (self.with_prec(p), other.with_prec(p))
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval {
            lo: a.lo + b.lo,
            hi: a.hi + b.hi,
            prec: a.prec,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval {
            lo: a.lo - b.hi,
            hi: a.hi - b.lo,
            prec: a.prec,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval {
            lo: shr_floor(min, a.prec),
            hi: shr_ceil(max, a.prec),
            prec: a.prec,
        }
    }

    /// Exact multiplication by an integer.
    pub fn scale(&self, k: &BigInt) -> Interval {
        let (x, y) = (&self.lo * k, &self.hi * k);
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        Interval {
            lo,
            hi,
            prec: self.prec,
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(k.is_positive(), "div_int needs a positive divisor");
        Interval {
            lo: self.lo.div_floor(k),
            hi: -((-&self.hi).div_floor(k)),
            prec: self.prec,
        }
    }

    /// Enclosure of the square root of the nonnegative part; `None` when the
    /// whole interval is negative.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_negative() {
            BigInt::zero()
        } else {
            (&self.lo << self.prec).sqrt()
        };
        let hi_scaled = &self.hi << self.prec;
        let mut hi = hi_scaled.sqrt();
        if &hi * &hi < hi_scaled {
            hi += 1;
        }
        Some(Interval {
            lo,
            hi,
            prec: self.prec,
        })
    }

    /// `Some(sign)` when the enclosure excludes zero or is exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Largest integer `<=` every point of the interval.
    pub fn floor_lo(&self) -> BigInt {
        shr_floor(&self.lo, self.prec)
    }

    /// Smallest integer `>=` every point of the interval.
    pub fn ceil_hi(&self) -> BigInt {
        shr_ceil(&self.hi, self.prec)
    }

    /// The unique integer in the interval, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let lo = shr_ceil(&self.lo, self.prec);
        let hi = shr_floor(&self.hi, self.prec);
        if lo == hi {
            Some(lo)
        } else {
            None
        }
    }

    /// True when the enclosure is shorter than `2^-bits`.
    pub fn width_below(&self, bits: i64) -> bool {
        let w = &self.hi - &self.lo;
        let shift = self.prec as i64 - bits;
        if shift >= 0 {
            w < (BigInt::from(1) << shift as u32)
        } else {
            // width must be below a fractional ulp count, only exact points qualify
            w.is_zero()
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        let bits = mid.bits() as i64;
        // keep 60 significant bits before converting
        let drop = (bits - 60).max(0) as u32;
        let m = (&mid >> drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(drop as i32 - self.prec as i32)
    }

    /// Decimal string of the lower endpoint truncated to `digits` fractional
    /// digits. Only digits confirmed by the upper endpoint are meaningful.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = shr_floor(&(&self.lo * &scale), self.prec);
        let negative = scaled.is_negative();
        let mag = scaled.abs().to_string();
        let mag = if mag.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
        } else {
            mag
        };
        let (int_part, frac_part) = mag.split_at(mag.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}
