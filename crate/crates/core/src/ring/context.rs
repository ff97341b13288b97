use std::cmp::Ordering;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::minpoly::{min_poly_2cos, totient};
use crate::error::{Error, Result};

/// Largest supported group parameter. Root isolation starts from `f64`
/// guesses, which stay well separated up to here.
pub const MAX_Q: u32 = 1000;

const INITIAL_PREC: u32 = 64;
const BRACKET_PREC: u32 = 48;

/// Arithmetic context for `Z[λ_q]`, `λ_q = 2cos(π/q)`.
///
/// Immutable after construction apart from an internally synchronized cache
/// of root enclosures; share it behind an [`Arc`].
pub struct RingContext {
    q: u32,
    degree: usize,
    min_poly: Vec<BigInt>,
    /// Indices `k` with `gcd(k, 2q) = 1`, `0 < k < q`; conjugate `j` is `2cos(k_j π/q)`.
    conjugate_ks: Vec<u32>,
    roots: Mutex<Vec<Interval>>,
}

impl std::fmt::Debug for RingContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RingContext")
            .field("q", &self.q)
            .field("min_poly", &self.min_poly)
            .finish()
    }
}

/// Build the context for `Γ_q`.
pub fn make_context(q: u32) -> Result<Arc<RingContext>> {
    RingContext::new(q)
}

impl RingContext {
    pub fn new(q: u32) -> Result<Arc<RingContext>> {
        if q < 3 {
            return Err(Error::InvalidParameter(format!("q must be at least 3, got {q}")));
        }
        if q > MAX_Q {
            return Err(Error::InvalidParameter(format!("q must be at most {MAX_Q}, got {q}")));
        }
        let min_poly = min_poly_2cos(q);
        let degree = min_poly.len() - 1;
        debug_assert_eq!(degree as u32, totient(2 * q) / 2);
        let conjugate_ks: Vec<u32> = (1..q).filter(|k| k.gcd(&(2 * q)) == 1).collect();
        debug_assert_eq!(conjugate_ks.len(), degree);

        let roots = conjugate_ks
            .iter()
            .map(|&k| {
                let guess = 2.0 * (std::f64::consts::PI * k as f64 / q as f64).cos();
                isolate_root(&min_poly, guess)
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Arc::new(RingContext {
            q,
            degree,
            min_poly,
            conjugate_ks,
            roots: Mutex::new(roots),
        }))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients from the constant term upward; monic.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn conjugate_ks(&self) -> &[u32] {
        &self.conjugate_ks
    }

    /// Enclosures of all real conjugates of `λ`, index 0 being `λ` itself,
    /// each of width at most `2^-prec`.
    pub fn root_enclosures(&self, prec: u32) -> Vec<Interval> {
        let mut roots = self.roots.lock().expect("root cache poisoned");
        if roots[0].prec() < prec {
            for r in roots.iter_mut() {
                *r = refine_root(&self.min_poly, r, prec);
            }
        }
        roots.iter().map(|r| r.with_prec(prec)).collect()
    }

    /// Enclosure of `λ = 2cos(π/q)` at `prec` bits.
    pub fn lambda_enclosure(&self, prec: u32) -> Interval {
        self.root_enclosures(prec).swap_remove(0)
    }

    /// Reduce an arbitrary-length coefficient vector modulo the minimal polynomial.
    pub(crate) fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if p.len() < d {
            p.resize(d, BigInt::zero());
            return p;
        }
        for i in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                p[i - d + j] -= &c * &self.min_poly[j];
            }
        }
        p.truncate(d);
        p
    }

    pub(crate) fn mul_raw(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            return vec![BigInt::zero(); self.degree];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Horner evaluation of `coeffs` at a root enclosure.
    pub(crate) fn eval_at(coeffs: &[BigInt], root: &Interval) -> Interval {
        let prec = root.prec();
        let mut acc = Interval::from_int(&BigInt::zero(), prec);
        for c in coeffs.iter().rev() {
            acc = acc.mul(root).add(&Interval::from_int(c, prec));
        }
        acc
    }

    /// Certified sign of the element with these coefficients under `λ ↦ 2cos(π/q)`.
    pub(crate) fn sign_raw(&self, coeffs: &[BigInt]) -> Ordering {
        if coeffs.iter().all(Zero::is_zero) {
            return Ordering::Equal;
        }
        if self.degree == 1 {
            return coeffs[0].cmp(&BigInt::zero());
        }
        let size = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0) as u32;
        let mut prec = INITIAL_PREC.max(size / 2);
        loop {
            let root = self.lambda_enclosure(prec);
            if let Some(s) = Self::eval_at(coeffs, &root).sign() {
                // A nonzero element never evaluates to an exact zero.
                debug_assert_ne!(s, Ordering::Equal);
                return s;
            }
            prec = prec.saturating_mul(2);
        }
    }

    /// Enclosures of every real conjugate of the element, each excluding zero
    /// (the element must be nonzero).
    pub(crate) fn conjugate_values(&self, coeffs: &[BigInt], min_prec: u32) -> Vec<Interval> {
        let mut prec = min_prec.max(INITIAL_PREC);
        loop {
            let roots = self.root_enclosures(prec);
            let vals: Vec<Interval> = roots.iter().map(|r| Self::eval_at(coeffs, r)).collect();
            if vals.iter().all(|v| !v.contains_zero()) {
                return vals;
            }
            prec = prec.saturating_mul(2);
        }
    }
}

fn poly_sign_at(p: &[BigInt], m: &BigInt, prec: u32) -> Ordering {
    // p(m / 2^prec) * 2^(prec * deg) = Σ c_i m^i s^(deg - i), s = 2^prec
    let deg = p.len() - 1;
    let mut acc = p[deg].clone();
    let mut spow = BigInt::one();
    for c in p[..deg].iter().rev() {
        spow <<= prec;
        acc = acc * m + c * &spow;
    }
    acc.cmp(&BigInt::zero())
}

fn isolate_root(p: &[BigInt], guess: f64) -> Result<Interval> {
    let center = BigInt::from((guess * (1u64 << BRACKET_PREC) as f64).round() as i64);
    let half = BigInt::from(1u64 << 16);
    let lo = &center - &half;
    let hi = &center + &half;
    let slo = poly_sign_at(p, &lo, BRACKET_PREC);
    let shi = poly_sign_at(p, &hi, BRACKET_PREC);
    if slo == Ordering::Equal {
        return Ok(Interval::new(lo.clone(), lo, BRACKET_PREC));
    }
    if shi == Ordering::Equal {
        return Ok(Interval::new(hi.clone(), hi, BRACKET_PREC));
    }
    if slo == shi {
        return Err(Error::Diagnostic(format!(
            "failed to bracket minimal polynomial root near {guess}"
        )));
    }
    Ok(bisect(p, lo, hi, BRACKET_PREC, slo))
}

/// Bisect `[lo, hi] * 2^-prec` (sign change, `slo` the sign at `lo`) down to one ulp.
fn bisect(p: &[BigInt], mut lo: BigInt, mut hi: BigInt, prec: u32, slo: Ordering) -> Interval {
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        match poly_sign_at(p, &mid, prec) {
            Ordering::Equal => return Interval::new(mid.clone(), mid, prec),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    Interval::new(lo, hi, prec)
}

fn refine_root(p: &[BigInt], r: &Interval, prec: u32) -> Interval {
    if r.lo() == r.hi() {
        return r.with_prec(prec);
    }
    let mut cur = r.clone();
    let slo_at = |iv: &Interval| poly_sign_at(p, iv.lo(), iv.prec());
    let slo = slo_at(&cur);
    debug_assert_ne!(slo, Ordering::Equal);
    // Each step doubles the precision and bisects once, which keeps the
    // enclosure one ulp wide; jump in chunks to limit polynomial evaluations.
    while cur.prec() < prec {
        let step = (prec - cur.prec()).min(cur.prec());
        let next = cur.with_prec(cur.prec() + step);
        cur = bisect(p, next.lo().clone(), next.hi().clone(), next.prec(), slo);
        if cur.lo() == cur.hi() {
            return cur.with_prec(prec);
        }
    }
    cur
}

pub(crate) fn content(coeffs: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(c))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_q() {
        assert!(matches!(RingContext::new(2), Err(Error::InvalidParameter(_))));
        assert!(matches!(RingContext::new(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn degree_and_poly() {
        let c3 = RingContext::new(3).unwrap();
        assert_eq!(c3.degree(), 1);
        let c4 = RingContext::new(4).unwrap();
        assert_eq!(c4.degree(), 2);
        assert_eq!(c4.min_poly(), &[BigInt::from(-2), BigInt::zero(), BigInt::one()]);
        let c5 = RingContext::new(5).unwrap();
        assert_eq!(c5.min_poly(), &[BigInt::from(-1), BigInt::from(-1), BigInt::one()]);
    }

    #[test]
    fn lambda_enclosures_tighten() {
        let ctx = RingContext::new(4).unwrap();
        for prec in [64u32, 200, 512] {
            let l = ctx.lambda_enclosure(prec);
            assert!(l.width_below(prec as i64 - 1));
            // l^2 encloses 2
            let sq = l.mul(&l);
            assert!(sq.sub(&Interval::from_int(&BigInt::from(2), prec)).contains_zero());
        }
        assert!((ctx.lambda_enclosure(64).midpoint_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn q3_root_is_exact() {
        let ctx = RingContext::new(3).unwrap();
        let l = ctx.lambda_enclosure(128);
        assert_eq!(l.lo(), l.hi());
        assert_eq!(l.unique_integer(), Some(BigInt::one()));
    }

    #[test]
    fn conjugates_for_q7() {
        let ctx = RingContext::new(7).unwrap();
        let roots = ctx.root_enclosures(80);
        assert_eq!(roots.len(), 3);
        for (r, &k) in roots.iter().zip(ctx.conjugate_ks()) {
            let expect = 2.0 * (std::f64::consts::PI * k as f64 / 7.0).cos();
            assert!((r.midpoint_f64() - expect).abs() < 1e-14);
        }
    }
}
