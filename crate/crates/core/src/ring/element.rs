use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{content, RingContext};
use super::interval::Interval;
use crate::error::{Error, Result};

/// Element of `Z[λ]` in the power basis `1, λ, …, λ^(d-1)`.
#[derive(Clone)]
pub struct RingInt {
    ctx: Arc<RingContext>,
    coeffs: Vec<BigInt>,
}

/// Element of `Q(λ)`: a [`RingInt`] numerator over a positive integer.
#[derive(Clone)]
pub struct RingRat {
    num: RingInt,
    den: BigInt,
}

/// Point of the projective line over `Q(λ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(RingRat),
    Infinity,
}

fn check_same(a: &RingContext, b: &RingContext) -> Result<()> {
    if a.q() == b.q() {
        Ok(())
    } else {
        Err(Error::ContextMismatch {
            left: a.q(),
            right: b.q(),
        })
    }
}

impl RingInt {
    /// Build from coefficients of any length, reducing modulo the minimal polynomial.
    pub fn from_coeffs(ctx: &Arc<RingContext>, coeffs: Vec<BigInt>) -> Self {
        RingInt {
            ctx: ctx.clone(),
            coeffs: ctx.reduce(coeffs),
        }
    }

    pub fn from_i64s(ctx: &Arc<RingContext>, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ctx, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_int(ctx: &Arc<RingContext>, n: impl Into<BigInt>) -> Self {
        Self::from_coeffs(ctx, vec![n.into()])
    }

    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Self::from_coeffs(ctx, Vec::new())
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    /// The generator `λ = 2cos(π/q)`.
    pub fn lambda(ctx: &Arc<RingContext>) -> Self {
        Self::from_coeffs(ctx, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Certified sign under the distinguished embedding.
    pub fn sign_of(&self) -> Ordering {
        self.ctx.sign_raw(&self.coeffs)
    }

    pub fn is_positive(&self) -> bool {
        self.sign_of() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign_of() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        content(&self.coeffs)
    }

    pub fn checked_add(&self, other: &RingInt) -> Result<RingInt> {
        check_same(&self.ctx, &other.ctx)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RingInt {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &RingInt) -> Result<RingInt> {
        check_same(&self.ctx, &other.ctx)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(RingInt {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &RingInt) -> Result<RingInt> {
        check_same(&self.ctx, &other.ctx)?;
        Ok(RingInt {
            ctx: self.ctx.clone(),
            coeffs: self.ctx.mul_raw(&self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, k: &BigInt) -> RingInt {
        RingInt {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient by `k`; `None` if not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<RingInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quot, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            coeffs.push(quot);
        }
        Some(RingInt {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u32) -> RingInt {
        let mut base = self.clone();
        let mut acc = RingInt::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Inverse in `Q(λ)`; `None` for zero.
    ///
    /// Solves `self · x = 1` as a linear system in the power basis.
    pub fn inverse(&self) -> Option<RingRat> {
        if self.is_zero() {
            return None;
        }
        let d = self.ctx.degree();
        // column j = coefficients of self * λ^j
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let lambda = RingInt::lambda(&self.ctx);
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = &cur * &lambda;
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..d).map(|j| BigRational::from_integer(cols[j][i].clone())).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let (top, bottom) = if r < col {
                        let (a, b) = m.split_at_mut(col);
                        (&mut a[r], &b[0])
                    } else {
                        let (a, b) = m.split_at_mut(r);
                        (&mut b[0], &a[col])
                    };
                    for (t, s) in top.iter_mut().zip(bottom.iter()) {
                        *t = &*t - &f * s;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.into_iter().map(|row| row[d].clone()).collect();
        let den = sol.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = sol.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Some(RingRat::new(RingInt::from_coeffs(&self.ctx, num), den))
    }

    /// Enclosure of the value under the distinguished embedding.
    pub fn enclosure(&self, prec: u32) -> Interval {
        let root = self.ctx.lambda_enclosure(prec);
        RingContext::eval_at(&self.coeffs, &root)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(80).midpoint_f64()
    }

    /// Floor of the value under the distinguished embedding, decided exactly.
    pub fn floor(&self) -> BigInt {
        RingRat::from(self.clone()).floor()
    }
}

impl PartialEq for RingInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.q() == other.ctx.q() && self.coeffs == other.coeffs
    }
}

impl Eq for RingInt {}

impl Hash for RingInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.q().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for RingInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! ring_int_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingInt> for &RingInt {
            type Output = RingInt;
            fn $method(self, rhs: &RingInt) -> RingInt {
                self.$checked(rhs).expect("ring elements from different contexts")
            }
        }
        impl $tr<RingInt> for RingInt {
            type Output = RingInt;
            fn $method(self, rhs: RingInt) -> RingInt {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_int_binop!(Add, add, checked_add);
ring_int_binop!(Sub, sub, checked_sub);
ring_int_binop!(Mul, mul, checked_mul);

impl Neg for &RingInt {
    type Output = RingInt;
    fn neg(self) -> RingInt {
        RingInt {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for RingInt {
    type Output = RingInt;
    fn neg(self) -> RingInt {
        -&self
    }
}

impl RingRat {
    /// `num / den`, normalized. Panics if `den` is zero.
    pub fn new(num: RingInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.content().gcd(&den);
        if g.is_one() || g.is_zero() {
            return RingRat { num, den };
        }
        RingRat {
            num: num.div_exact(&g).expect("content divides"),
            den: den / g,
        }
    }

    pub fn from_int(ctx: &Arc<RingContext>, n: impl Into<BigInt>) -> Self {
        RingInt::from_int(ctx, n).into()
    }

    pub fn from_ratio(ctx: &Arc<RingContext>, n: i64, d: i64) -> Self {
        RingRat::new(RingInt::from_int(ctx, n), BigInt::from(d))
    }

    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        RingInt::zero(ctx).into()
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        RingInt::one(ctx).into()
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.num.ctx()
    }

    pub fn numer(&self) -> &RingInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn to_ring_int(&self) -> Option<RingInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn sign_of(&self) -> Ordering {
        self.num.sign_of()
    }

    pub fn is_positive(&self) -> bool {
        self.sign_of() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign_of() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_add(&self, other: &RingRat) -> Result<RingRat> {
        let num = self
            .num
            .scale(&other.den)
            .checked_add(&other.num.scale(&self.den))?;
        Ok(RingRat::new(num, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &RingRat) -> Result<RingRat> {
        let num = self
            .num
            .scale(&other.den)
            .checked_sub(&other.num.scale(&self.den))?;
        Ok(RingRat::new(num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &RingRat) -> Result<RingRat> {
        let num = self.num.checked_mul(&other.num)?;
        Ok(RingRat::new(num, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &RingRat) -> Result<RingRat> {
        check_same(self.ctx(), other.ctx())?;
        let inv = other
            .inverse()
            .ok_or_else(|| Error::domain("division by zero"))?;
        self.checked_mul(&inv)
    }

    pub fn inverse(&self) -> Option<RingRat> {
        let inv = self.num.inverse()?;
        Some(RingRat::new(inv.num.scale(&self.den), inv.den))
    }

    pub fn scale_int(&self, k: &BigInt) -> RingRat {
        RingRat::new(self.num.scale(k), self.den.clone())
    }

    pub fn div_int(&self, k: &BigInt) -> RingRat {
        RingRat::new(self.num.clone(), &self.den * k)
    }

    pub fn pow(&self, e: u32) -> RingRat {
        RingRat::new(self.num.pow(e), num_traits::pow(self.den.clone(), e as usize))
    }

    /// Total order under the distinguished embedding.
    pub fn compare(&self, other: &RingRat) -> Ordering {
        (self - other).sign_of()
    }

    pub fn enclosure(&self, prec: u32) -> Interval {
        self.num.enclosure(prec).div_int(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(80).midpoint_f64()
    }

    /// Exact floor under the distinguished embedding.
    pub fn floor(&self) -> BigInt {
        let ctx = self.ctx().clone();
        let size = self.num.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
        let mut n = self.enclosure(64 + size as u32).floor_lo();
        loop {
            let below = self.compare(&RingRat::from_int(&ctx, n.clone()));
            if below == Ordering::Less {
                n -= 1;
                continue;
            }
            let above = self.compare(&RingRat::from_int(&ctx, &n + 1));
            if above != Ordering::Less {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Exact ceiling under the distinguished embedding.
    pub fn ceil(&self) -> BigInt {
        -((-self).floor())
    }
}

impl From<RingInt> for RingRat {
    fn from(num: RingInt) -> Self {
        RingRat {
            num,
            den: BigInt::one(),
        }
    }
}

impl PartialEq for RingRat {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for RingRat {}

impl Hash for RingRat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for RingRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! ring_rat_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingRat> for &RingRat {
            type Output = RingRat;
            fn $method(self, rhs: &RingRat) -> RingRat {
                self.$checked(rhs).expect("ring elements from different contexts")
            }
        }
        impl $tr<RingRat> for RingRat {
            type Output = RingRat;
            fn $method(self, rhs: RingRat) -> RingRat {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_rat_binop!(Add, add, checked_add);
ring_rat_binop!(Sub, sub, checked_sub);
ring_rat_binop!(Mul, mul, checked_mul);

impl Neg for &RingRat {
    type Output = RingRat;
    fn neg(self) -> RingRat {
        RingRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RingRat {
    type Output = RingRat;
    fn neg(self) -> RingRat {
        -&self
    }
}

impl ProjPoint {
    pub fn finite(x: RingRat) -> Self {
        ProjPoint::Finite(x)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&RingRat> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    /// Order on `Q(λ) ∪ {∞}` with `∞` above every finite point.
    pub fn compare(&self, other: &ProjPoint) -> Ordering {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
            (ProjPoint::Infinity, _) => Ordering::Greater,
            (_, ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.compare(b),
        }
    }
}

impl From<RingRat> for ProjPoint {
    fn from(x: RingRat) -> Self {
        ProjPoint::Finite(x)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
