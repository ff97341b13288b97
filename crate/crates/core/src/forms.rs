//! Projective oriented indefinite binary quadratic forms over `Z[λ]`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, NotGammaReason, Result};
use crate::membership::decide;
use crate::moebius::{HeckeGroup, ProjMatrix};
use crate::ring::{parse_ring_int, RingContext, RingInt, RingRat};
use crate::surd::Surd;

/// Orientation: which zero of the form is the attracting one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Plus => "+",
            Orientation::Minus => "-",
        }
    }
}

/// `[A, B, C, s]` modulo `(f, s) ~ (-f, -s)`, stored with the first nonzero
/// coefficient positive. The discriminant `B² - 4AC` is always positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjForm {
    a: RingInt,
    b: RingInt,
    c: RingInt,
    s: Orientation,
}

/// Attracting and repelling zero of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPair {
    pub attracting: Surd,
    pub repelling: Surd,
}

impl ProjForm {
    pub fn new(a: RingInt, b: RingInt, c: RingInt, s: Orientation) -> Result<ProjForm> {
        let q = a.ctx().q();
        for x in [&b, &c] {
            if x.ctx().q() != q {
                return Err(Error::ContextMismatch { left: q, right: x.ctx().q() });
            }
        }
        let form = Self::canonical(a, b, c, s);
        if !form.discriminant().is_positive() {
            return Err(Error::domain(format!(
                "{form} has non-positive discriminant {}",
                form.discriminant()
            )));
        }
        Ok(form)
    }

    pub fn from_i64s(ctx: &Arc<RingContext>, a: i64, b: i64, c: i64, s: Orientation) -> Result<ProjForm> {
        let e = |x: i64| RingInt::from_int(ctx, x);
        Self::new(e(a), e(b), e(c), s)
    }

    fn canonical(a: RingInt, b: RingInt, c: RingInt, s: Orientation) -> ProjForm {
        let lead = [&a, &b, &c].into_iter().find(|x| !x.is_zero());
        match lead {
            Some(x) if x.is_negative() => ProjForm { a: -a, b: -b, c: -c, s: s.flip() },
            _ => ProjForm { a, b, c, s },
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.a.ctx()
    }

    pub fn a(&self) -> &RingInt {
        &self.a
    }

    pub fn b(&self) -> &RingInt {
        &self.b
    }

    pub fn c(&self) -> &RingInt {
        &self.c
    }

    pub fn orientation(&self) -> Orientation {
        self.s
    }

    /// The same form with the opposite orientation.
    pub fn flipped(&self) -> ProjForm {
        ProjForm {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            s: self.s.flip(),
        }
    }

    /// `B² - 4AC`.
    pub fn discriminant(&self) -> RingInt {
        &(&self.b * &self.b) - &(&self.a * &self.c).scale(&BigInt::from(4))
    }

    /// Zeros `x_± = (-B ± √D) / 2A`, assigned by orientation.
    ///
    /// For `A = 0` the zeros are `-C/B` and `∞`, with `x_+ = -C/B` when
    /// `B > 0` and `x_+ = ∞` when `B < 0`; this is the limit of the general
    /// formula as `A → 0`.
    pub fn zeros(&self) -> ZeroPair {
        let ctx = self.ctx();
        let (plus, minus) = if self.a.is_zero() {
            let root = Surd::rational(
                RingRat::from(-&self.c)
                    .checked_div(&RingRat::from(self.b.clone()))
                    .expect("positive discriminant forces B ≠ 0"),
            );
            if self.b.is_positive() {
                (root, Surd::Infinity)
            } else {
                (Surd::Infinity, root)
            }
        } else {
            let two_a = RingRat::from(self.a.scale(&BigInt::from(2)));
            let p = RingRat::from(-&self.b).checked_div(&two_a).expect("A ≠ 0");
            let r = RingRat::one(ctx).checked_div(&two_a).expect("A ≠ 0");
            let d = self.discriminant();
            (
                Surd::new(p.clone(), r.clone(), d.clone()).expect("positive discriminant"),
                Surd::new(p, -r, d).expect("positive discriminant"),
            )
        };
        match self.s {
            Orientation::Plus => ZeroPair { attracting: plus, repelling: minus },
            Orientation::Minus => ZeroPair { attracting: minus, repelling: plus },
        }
    }

    /// `g.F`: `[Ad² - Bcd + Cc², -2Abd + B(ad+bc) - 2Cac, Ab² - Bab + Ca²]`,
    /// orientation unchanged. Fails if the result leaves `Z[λ]`.
    pub fn act(&self, g: &ProjMatrix) -> Result<ProjForm> {
        let (a, b, c, d) = (g.a(), g.b(), g.c(), g.d());
        let fa = RingRat::from(self.a.clone());
        let fb = RingRat::from(self.b.clone());
        let fc = RingRat::from(self.c.clone());
        let two = BigInt::from(2);
        let na = &(&(&fa * &(d * d)) - &(&fb * &(c * d))) + &(&fc * &(c * c));
        let nb = &(&(&fb * &(&(a * d) + &(b * c))) - &(&fa * &(b * d)).scale_int(&two))
            - &(&fc * &(a * c)).scale_int(&two);
        let nc = &(&(&fa * &(b * b)) - &(&fb * &(a * b))) + &(&fc * &(a * a));
        let int = |x: RingRat| {
            x.to_ring_int()
                .ok_or_else(|| Error::domain(format!("{g} maps {self} outside Z[λ]")))
        };
        Ok(Self::canonical(int(na)?, int(nb)?, int(nc)?, self.s))
    }

    /// Hyperbolic matrix `[[(-B + st)/2, -C], [A, (B + st)/2]]`, `t = √(D + 4)`.
    pub fn psi2(&self) -> Result<ProjMatrix> {
        let ctx = self.ctx();
        let shifted = &self.discriminant() + &RingInt::from_int(ctx, 4);
        let t = shifted
            .sqrt()
            .ok_or(Error::NotGammaForm(NotGammaReason::NonSquareDiscriminantShift))?;
        let st = RingRat::from(t.scale(&BigInt::from(self.s.as_i64())));
        let b = RingRat::from(self.b.clone());
        let two = BigInt::from(2);
        ProjMatrix::new(
            (&st - &b).div_int(&two),
            RingRat::from(-&self.c),
            RingRat::from(self.a.clone()),
            (&st + &b).div_int(&two),
        )
    }

    /// `[c, d - a, -b, sgn(a + d)]` for a hyperbolic matrix over `Z[λ]`.
    pub fn psi2_inv(g: &ProjMatrix) -> Result<ProjForm> {
        if !g.is_hyperbolic() {
            return Err(Error::domain(format!("{g} is not hyperbolic")));
        }
        let int = |x: &RingRat| {
            x.to_ring_int()
                .ok_or_else(|| Error::domain(format!("{g} has entries outside Z[λ]")))
        };
        let (a, b, c, d) = (int(g.a())?, int(g.b())?, int(g.c())?, int(g.d())?);
        let s = if g.trace().is_positive() {
            Orientation::Plus
        } else {
            Orientation::Minus
        };
        Ok(Self::canonical(c, &d - &a, -b, s))
    }

    /// `x_a > 0 > x_r`.
    pub fn is_reduced(&self) -> bool {
        let z = self.zeros();
        z.attracting.sign() == Some(Ordering::Greater) && z.repelling.sign() == Some(Ordering::Less)
    }
}

/// Check that `F` is associated to a hyperbolic element of `Γ_q`; on success
/// returns that element.
pub fn validate_gamma_form(
    form: &ProjForm,
    group: &HeckeGroup,
) -> std::result::Result<ProjMatrix, NotGammaReason> {
    let g = match form.psi2() {
        Ok(g) => g,
        Err(Error::NotGammaForm(reason)) => return Err(reason),
        Err(_) => return Err(NotGammaReason::NotInGroup),
    };
    if decide(&g, group).member {
        Ok(g)
    } else {
        Err(NotGammaReason::NotInGroup)
    }
}

impl fmt::Display for ProjForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{};{};{}]", self.a, self.b, self.c, self.s.symbol())
    }
}

impl fmt::Debug for ProjForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn parse_orientation(text: &str) -> Result<Orientation> {
    match text.trim() {
        "+" | "+1" | "1" => Ok(Orientation::Plus),
        "-" | "-1" => Ok(Orientation::Minus),
        other => Err(Error::parse(other, "orientation must be `+` or `-`")),
    }
}

/// Parse `[A;B;C;s]`.
pub fn parse_form(ctx: &Arc<RingContext>, text: &str) -> Result<ProjForm> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::parse(text, "expected `[A;B;C;s]`"))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 4 {
        return Err(Error::parse(text, "expected four `;`-separated fields"));
    }
    ProjForm::new(
        parse_ring_int(ctx, parts[0])?,
        parse_ring_int(ctx, parts[1])?,
        parse_ring_int(ctx, parts[2])?,
        parse_orientation(parts[3])?,
    )
}
