//! Quadratic surds `p + r·√Δ` over `Q(λ)`, extended by `∞`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Interval, ProjPoint, RingInt, RingRat};

/// `p + r·√Δ` with `Δ` positive, or `∞`.
///
/// When `r = 0` the radicand is stored as zero, and a radicand that is a
/// perfect square in `Z[λ]` is folded into the rational part on construction.
#[derive(Clone)]
pub enum Surd {
    Infinity,
    Finite { p: RingRat, r: RingRat, delta: RingInt },
}

impl Surd {
    /// `p + r·√delta`. Fails unless `delta` is positive (or `r` is zero).
    pub fn new(p: RingRat, r: RingRat, delta: RingInt) -> Result<Surd> {
        if r.is_zero() || delta.is_zero() {
            return Ok(Surd::rational(p));
        }
        if !delta.is_positive() {
            return Err(Error::domain(format!("radicand {delta} is not positive")));
        }
        Ok(match delta.sqrt() {
            Some(t) => Surd::rational(&p + &(&r * &RingRat::from(t))),
            None => Surd::Finite { p, r, delta },
        })
    }

    /// Build without checking the radicand; the caller guarantees it is a
    /// positive non-square whenever `r` is nonzero.
    pub(crate) fn from_parts(p: RingRat, r: RingRat, delta: RingInt) -> Surd {
        if r.is_zero() {
            Surd::rational(p)
        } else {
            Surd::Finite { p, r, delta }
        }
    }

    pub fn rational(p: RingRat) -> Surd {
        let zero = RingInt::zero(p.ctx());
        Surd::Finite {
            r: RingRat::zero(p.ctx()),
            p,
            delta: zero,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Surd::Infinity)
    }

    /// The point itself when it lies in `Q(λ) ∪ {∞}`.
    pub fn as_point(&self) -> Option<ProjPoint> {
        match self {
            Surd::Infinity => Some(ProjPoint::Infinity),
            Surd::Finite { p, r, .. } if r.is_zero() => Some(ProjPoint::Finite(p.clone())),
            _ => None,
        }
    }

    /// Galois conjugate `p - r·√Δ`.
    pub fn conjugate(&self) -> Surd {
        match self {
            Surd::Infinity => Surd::Infinity,
            Surd::Finite { p, r, delta } => Surd::Finite {
                p: p.clone(),
                r: -r,
                delta: delta.clone(),
            },
        }
    }

    /// Exact sign of a finite surd; `None` for `∞`.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Surd::Infinity => None,
            Surd::Finite { p, r, delta } => Some(sign_parts(p, r, delta)),
        }
    }

    /// Enclosure of a finite surd under the distinguished embedding.
    pub fn enclosure(&self, prec: u32) -> Option<Interval> {
        match self {
            Surd::Infinity => None,
            Surd::Finite { p, r, delta } => {
                let pe = p.enclosure(prec);
                if r.is_zero() {
                    return Some(pe);
                }
                let root = sqrt_enclosure(delta, prec);
                Some(pe.add(&r.enclosure(prec).mul(&root)))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.enclosure(80) {
            None => f64::INFINITY,
            Some(iv) => iv.midpoint_f64(),
        }
    }

    /// Total order with `∞` maximal, decided exactly.
    pub fn compare(&self, other: &Surd) -> Ordering {
        match (self, other) {
            (Surd::Infinity, Surd::Infinity) => Ordering::Equal,
            (Surd::Infinity, _) => Ordering::Greater,
            (_, Surd::Infinity) => Ordering::Less,
            (
                Surd::Finite { p: p1, r: r1, delta: d1 },
                Surd::Finite { p: p2, r: r2, delta: d2 },
            ) => {
                let dp = p1 - p2;
                if r2.is_zero() || d1 == d2 {
                    return sign_parts(&dp, &(r1 - r2), d1);
                }
                if r1.is_zero() {
                    return sign_parts(&dp, &-r2, d2);
                }
                if self == other {
                    return Ordering::Equal;
                }
                // Distinct values with unrelated radicands: refine until separated.
                let mut prec = 64;
                loop {
                    let a = self.enclosure(prec).expect("finite");
                    let b = other.enclosure(prec).expect("finite");
                    if let Some(s) = a.sub(&b).sign() {
                        return s;
                    }
                    prec *= 2;
                }
            }
        }
    }

    /// Compare against a point of `Q(λ) ∪ {∞}`.
    pub fn compare_point(&self, x: &ProjPoint) -> Ordering {
        self.compare(&Surd::from(x.clone()))
    }
}

/// Sign of `p + r·√Δ`, `Δ > 0`.
fn sign_parts(p: &RingRat, r: &RingRat, delta: &RingInt) -> Ordering {
    let sp = p.sign_of();
    let sr = r.sign_of();
    if sr == Ordering::Equal || delta.is_zero() {
        return sp;
    }
    if sp == Ordering::Equal || sp == sr {
        return sr;
    }
    // Opposite signs: the larger magnitude wins; compare p² with r²Δ.
    let diff = &(p * p) - &(&(r * r) * &RingRat::from(delta.clone()));
    match diff.sign_of() {
        Ordering::Greater => sp,
        Ordering::Less => sr,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sqrt_enclosure(delta: &RingInt, prec: u32) -> Interval {
    let mut work = prec;
    loop {
        let e = delta.enclosure(work);
        if e.sign() == Some(Ordering::Greater) {
            return e.sqrt().expect("positive");
        }
        work *= 2;
    }
}

impl From<ProjPoint> for Surd {
    fn from(x: ProjPoint) -> Surd {
        match x {
            ProjPoint::Infinity => Surd::Infinity,
            ProjPoint::Finite(p) => Surd::rational(p),
        }
    }
}

impl From<RingRat> for Surd {
    fn from(p: RingRat) -> Surd {
        Surd::rational(p)
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Surd) -> bool {
        match (self, other) {
            (Surd::Infinity, Surd::Infinity) => true,
            (
                Surd::Finite { p: p1, r: r1, delta: d1 },
                Surd::Finite { p: p2, r: r2, delta: d2 },
            ) => {
                if p1 != p2 || r1.sign_of() != r2.sign_of() {
                    return false;
                }
                if r1.is_zero() {
                    return true;
                }
                if d1 == d2 {
                    return r1 == r2;
                }
                let lhs = &(r1 * r1) * &RingRat::from(d1.clone());
                let rhs = &(r2 * r2) * &RingRat::from(d2.clone());
                lhs == rhs
            }
            _ => false,
        }
    }
}

impl Eq for Surd {}

fn grouped(x: &RingRat) -> String {
    let text = x.to_string();
    if x.is_integral() && text.trim_start_matches('-').contains(['+', '-']) {
        format!("({text})")
    } else {
        text
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surd::Infinity => f.write_str("inf"),
            Surd::Finite { p, r, delta } => {
                if r.is_zero() {
                    return write!(f, "{p}");
                }
                if !p.is_zero() {
                    write!(f, "{}+", grouped(p))?;
                }
                write!(f, "{}*sqrt({delta})", grouped(r))
            }
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
