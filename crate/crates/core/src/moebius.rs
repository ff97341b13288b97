//! Projective 2×2 matrices over `Q(λ)` and the generators of the Hecke group.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{parse_ring_rat, Interval, ProjPoint, RingContext, RingInt, RingRat};
use crate::surd::Surd;

/// Element of `PSL₂(Q(λ))`, stored as its determinant-one representative
/// whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: RingRat,
    b: RingRat,
    c: RingRat,
    d: RingRat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl ProjMatrix {
    /// `[[a, b], [c, d]]`; the determinant must be exactly 1.
    pub fn new(a: RingRat, b: RingRat, c: RingRat, d: RingRat) -> Result<ProjMatrix> {
        let q = a.ctx().q();
        for x in [&b, &c, &d] {
            if x.ctx().q() != q {
                return Err(Error::ContextMismatch { left: q, right: x.ctx().q() });
            }
        }
        let det = &(&a * &d) - &(&b * &c);
        if !det.is_one() {
            return Err(Error::domain(format!("determinant is {det}, expected 1")));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_ring_ints(a: RingInt, b: RingInt, c: RingInt, d: RingInt) -> Result<ProjMatrix> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Integer entries; convenience for tests and examples.
    pub fn from_i64s(ctx: &Arc<RingContext>, m: [[i64; 2]; 2]) -> Result<ProjMatrix> {
        let e = |x: i64| RingRat::from_int(ctx, x);
        Self::new(e(m[0][0]), e(m[0][1]), e(m[1][0]), e(m[1][1]))
    }

    fn canonical(a: RingRat, b: RingRat, c: RingRat, d: RingRat) -> ProjMatrix {
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("determinant one forces a nonzero entry");
        if lead.is_negative() {
            ProjMatrix { a: -a, b: -b, c: -c, d: -d }
        } else {
            ProjMatrix { a, b, c, d }
        }
    }

    pub fn identity(ctx: &Arc<RingContext>) -> ProjMatrix {
        ProjMatrix {
            a: RingRat::one(ctx),
            b: RingRat::zero(ctx),
            c: RingRat::zero(ctx),
            d: RingRat::one(ctx),
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.a.ctx()
    }

    pub fn a(&self) -> &RingRat {
        &self.a
    }

    pub fn b(&self) -> &RingRat {
        &self.b
    }

    pub fn c(&self) -> &RingRat {
        &self.c
    }

    pub fn d(&self) -> &RingRat {
        &self.d
    }

    pub fn entries(&self) -> [&RingRat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// All entries lie in `Z[λ]`.
    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|x| x.is_integral())
    }

    pub fn checked_compose(&self, other: &ProjMatrix) -> Result<ProjMatrix> {
        if self.ctx().q() != other.ctx().q() {
            return Err(Error::ContextMismatch { left: self.ctx().q(), right: other.ctx().q() });
        }
        Ok(self.compose(other))
    }

    /// Matrix product `self · other`. Panics on a context mismatch.
    pub fn compose(&self, other: &ProjMatrix) -> ProjMatrix {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Self::canonical(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
    }

    pub fn inverse(&self) -> ProjMatrix {
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> ProjMatrix {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ProjMatrix::identity(self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &ProjMatrix) -> ProjMatrix {
        h.compose(self).compose(&h.inverse())
    }

    /// Trace of the canonical representative (defined up to sign projectively).
    pub fn trace(&self) -> RingRat {
        &self.a + &self.d
    }

    pub fn abs_trace(&self) -> RingRat {
        self.trace().abs()
    }

    /// Möbius action on `Q(λ) ∪ {∞}`.
    pub fn apply(&self, z: &ProjPoint) -> ProjPoint {
        match z {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.a.checked_div(&self.c).expect("nonzero"))
                }
            }
            ProjPoint::Finite(x) => {
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    let num = &(&self.a * x) + &self.b;
                    ProjPoint::Finite(num.checked_div(&den).expect("nonzero"))
                }
            }
        }
    }

    /// Möbius action on quadratic surds; the radicand is kept as is.
    pub fn apply_surd(&self, x: &Surd) -> Surd {
        let (p, r, delta) = match x {
            Surd::Infinity => return self.apply(&ProjPoint::Infinity).into(),
            Surd::Finite { p, r, .. } if r.is_zero() => {
                return self.apply(&ProjPoint::Finite(p.clone())).into()
            }
            Surd::Finite { p, r, delta } => (p, r, delta),
        };
        // (a x + b) / (c x + d) with x = p + r√Δ
        let n0 = &(&self.a * p) + &self.b;
        let n1 = &self.a * r;
        let m0 = &(&self.c * p) + &self.d;
        let m1 = &self.c * r;
        if m0.is_zero() && m1.is_zero() {
            return Surd::Infinity;
        }
        let dr = RingRat::from(delta.clone());
        let norm = &(&m0 * &m0) - &(&(&m1 * &m1) * &dr);
        let new_p = (&(&n0 * &m0) - &(&(&n1 * &m1) * &dr))
            .checked_div(&norm)
            .expect("radicand is not a square");
        let new_r = (&(&n1 * &m0) - &(&n0 * &m1))
            .checked_div(&norm)
            .expect("radicand is not a square");
        Surd::from_parts(new_p, new_r, delta.clone())
    }

    /// Sign of `tr² - 4`: positive for hyperbolic elements.
    fn trace_excess(&self) -> Ordering {
        let t = self.trace();
        (&(&t * &t) - &RingRat::from_int(self.ctx(), 4)).sign_of()
    }

    pub fn classify(&self) -> MatrixClass {
        if self.is_identity() {
            return MatrixClass::Identity;
        }
        match self.trace_excess() {
            Ordering::Greater => MatrixClass::Hyperbolic,
            Ordering::Equal => MatrixClass::Parabolic,
            Ordering::Less => MatrixClass::Elliptic,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.classify() == MatrixClass::Hyperbolic
    }

    fn require_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::domain(format!("{self} is not hyperbolic")))
        }
    }

    /// `(attracting, repelling)` fixed points of a hyperbolic element.
    pub fn fixed_points(&self) -> Result<(Surd, Surd)> {
        self.require_hyperbolic()?;
        let ctx = self.ctx();
        let two = BigInt::from(2);
        if self.c.is_zero() {
            // a·x + b = x/a: the finite fixed point b/(d - a), the other is ∞.
            let finite = Surd::rational(
                self.b
                    .checked_div(&(&self.d - &self.a))
                    .expect("hyperbolic forces a ≠ d"),
            );
            let expanding = (&self.a.abs() - &RingRat::one(ctx)).is_positive();
            return Ok(if expanding {
                (Surd::Infinity, finite)
            } else {
                (finite, Surd::Infinity)
            });
        }
        // x = ((a - d) ± σ√(tr² - 4)) / 2c with σ = sgn(tr); tr = n/m.
        let tr = self.trace();
        let (n, m) = (tr.numer(), tr.denom());
        let delta = n * n - RingInt::from_int(ctx, m * m * 4);
        let sigma = if tr.is_positive() { 1 } else { -1 };
        let two_c = self.c.scale_int(&two);
        let p = (&self.a - &self.d).checked_div(&two_c).expect("c ≠ 0");
        let r = RingRat::from_int(ctx, sigma)
            .div_int(m)
            .checked_div(&two_c)
            .expect("c ≠ 0");
        let wa = Surd::new(p.clone(), r.clone(), delta.clone())?;
        let wr = Surd::new(p, -r, delta)?;
        Ok((wa, wr))
    }

    /// Larger eigenvalue modulus `(|tr| + √(tr² - 4)) / 2`, as a surd.
    pub fn expansion_factor(&self) -> Result<Surd> {
        self.require_hyperbolic()?;
        let t = self.abs_trace();
        let (n, m) = (t.numer(), t.denom());
        let delta = n * n - RingInt::from_int(self.ctx(), m * m * 4);
        let two = BigInt::from(2);
        Surd::new(t.div_int(&two), RingRat::one(self.ctx()).div_int(&(m * &two)), delta)
    }

    /// Certified enclosure of the displacement length `2·log λ₊`, of width
    /// below `2^-precision_bits`.
    pub fn displacement(&self, precision_bits: u32) -> Result<Interval> {
        let lam = self.expansion_factor()?;
        let mut prec = precision_bits + 32;
        loop {
            let x = lam.enclosure(prec).expect("finite");
            let log = ln_interval(&x).scale(&BigInt::from(2));
            if log.width_below(precision_bits as i64) {
                return Ok(log);
            }
            prec *= 2;
        }
    }

    /// Exact fixed points plus an enclosure of the displacement length.
    pub fn psi1(&self, precision_bits: u32) -> Result<(Surd, Surd, Interval)> {
        let (wa, wr) = self.fixed_points()?;
        Ok((wa, wr, self.displacement(precision_bits)?))
    }

    /// `|a + b + c + d|`.
    pub fn entry_sum(&self) -> RingRat {
        (&(&self.a + &self.b) + &(&self.c + &self.d)).abs()
    }

    /// Whether the entries include both a positive and a negative value.
    pub fn mixed_signs(&self) -> bool {
        let signs: Vec<Ordering> = self.entries().iter().map(|x| x.sign_of()).collect();
        signs.contains(&Ordering::Greater) && signs.contains(&Ordering::Less)
    }

    /// Sum of the absolute values of the entries.
    pub fn abs_entry_sum(&self) -> RingRat {
        self.entries()
            .into_iter()
            .fold(RingRat::zero(self.ctx()), |acc, x| &acc + &x.abs())
    }
}

// Natural logarithm of a positive interval by fixed-point atanh series.
fn ln_interval(x: &Interval) -> Interval {
    let prec = x.prec();
    let work = prec + 64;
    let (lo, lo_err) = ln_fixed(x.lo(), prec, work);
    let (hi, hi_err) = ln_fixed(x.hi(), prec, work);
    let lo = lo - BigInt::from(lo_err);
    let hi = hi + BigInt::from(hi_err);
    Interval::new(lo, hi, work)
}

/// `ln(v · 2^-prec) · 2^work` together with an error bound in units of `2^-work`.
fn ln_fixed(v: &BigInt, prec: u32, work: u32) -> (BigInt, u64) {
    assert!(v.is_positive(), "logarithm of a non-positive value");
    // v · 2^-prec = m · 2^e with m in [1, 2)
    let e = v.bits() as i64 - 1 - prec as i64;
    let shift = work as i64 - (v.bits() as i64 - 1);
    let m = if shift >= 0 { v << shift as u32 } else { v >> (-shift) as u32 };
    let one = BigInt::one() << work;
    let y_num = &m - &one;
    let y_den = &m + &one;
    let y = (y_num << work) / &y_den;
    let (ln_m, err_m) = atanh_series(&y, work);
    let (ln2, err2) = ln2_fixed(work);
    let total = ln_m * 2 + &ln2 * BigInt::from(e);
    // truncating m and y costs at most a few ulps each
    let err = 2 * err_m + err2 * e.unsigned_abs() + 8;
    (total, err)
}

/// `atanh(y)` for `0 ≤ y ≤ 1/3` in fixed point, with error bound.
fn atanh_series(y: &BigInt, work: u32) -> (BigInt, u64) {
    let y2 = (y * y) >> work;
    let mut power = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = (&power * &y2) >> work;
        k += 1;
    }
    (sum, 2 * k + 2)
}

fn ln2_fixed(work: u32) -> (BigInt, u64) {
    let third = (BigInt::one() << work) / BigInt::from(3);
    let (a, err) = atanh_series(&third, work);
    (a * 2, 2 * err + 2)
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse `[[a,b],[c,d]]` with entries in the ring-fraction grammar.
pub fn parse_matrix(ctx: &Arc<RingContext>, text: &str) -> Result<ProjMatrix> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("[[")
        .and_then(|x| x.strip_suffix("]]"))
        .ok_or_else(|| Error::parse(text, "expected `[[a,b],[c,d]]`"))?;
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 2 {
        return Err(Error::parse(text, "expected two rows"));
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(Error::parse(row, "expected two entries per row"));
        }
        for cell in cells {
            entries.push(parse_ring_rat(ctx, cell)?);
        }
    }
    let [a, b, c, d]: [RingRat; 4] = entries.try_into().expect("four entries");
    ProjMatrix::new(a, b, c, d)
}

/// The Hecke triangle group `Γ_q` with its distinguished elements.
///
/// `g_k⁻¹ = [[u_k, u_{k+1}], [u_{k-1}, u_k]]` where `u_0 = 0`, `u_1 = 1`,
/// `u_{j+1} = λ u_j - u_{j-1}`, so that `u_j = sin(jπ/q) / sin(π/q)`.
#[derive(Clone, Debug)]
pub struct HeckeGroup {
    ctx: Arc<RingContext>,
    s: ProjMatrix,
    t: ProjMatrix,
    u: ProjMatrix,
    g_inv: Vec<ProjMatrix>,
    g: Vec<ProjMatrix>,
    seq: Vec<RingInt>,
    left: Vec<ProjPoint>,
    right: Vec<ProjPoint>,
}

impl HeckeGroup {
    pub fn new(q: u32) -> Result<HeckeGroup> {
        Ok(Self::from_context(&RingContext::new(q)?))
    }

    pub fn from_context(ctx: &Arc<RingContext>) -> HeckeGroup {
        let q = ctx.q() as usize;
        let lambda = RingInt::lambda(ctx);
        let mut seq = vec![RingInt::zero(ctx), RingInt::one(ctx)];
        for j in 1..q {
            let next = &(&lambda * &seq[j]) - &seq[j - 1];
            seq.push(next);
        }
        let int = |x: &RingInt| RingRat::from(x.clone());
        let s = ProjMatrix::from_i64s(ctx, [[0, 1], [-1, 0]]).expect("det 1");
        let t = ProjMatrix::new(
            RingRat::one(ctx),
            int(&lambda),
            RingRat::zero(ctx),
            RingRat::one(ctx),
        )
        .expect("det 1");
        let u = t.compose(&s);
        let g_inv: Vec<ProjMatrix> = (1..q)
            .map(|k| {
                ProjMatrix::new(int(&seq[k]), int(&seq[k + 1]), int(&seq[k - 1]), int(&seq[k]))
                    .expect("u_k² - u_{k+1}u_{k-1} = 1")
            })
            .collect();
        let g = g_inv.iter().map(ProjMatrix::inverse).collect();
        let zero = ProjPoint::Finite(RingRat::zero(ctx));
        let left = g_inv.iter().map(|x| x.apply(&zero)).collect();
        let right = g_inv.iter().map(|x| x.apply(&ProjPoint::Infinity)).collect();
        HeckeGroup {
            ctx: ctx.clone(),
            s,
            t,
            u,
            g_inv,
            g,
            seq,
            left,
            right,
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn lambda(&self) -> RingInt {
        RingInt::lambda(&self.ctx)
    }

    pub fn s(&self) -> &ProjMatrix {
        &self.s
    }

    pub fn t(&self) -> &ProjMatrix {
        &self.t
    }

    pub fn u(&self) -> &ProjMatrix {
        &self.u
    }

    /// `g_k` for `1 ≤ k ≤ q - 1`.
    pub fn g(&self, k: u32) -> &ProjMatrix {
        &self.g[k as usize - 1]
    }

    /// `g_k⁻¹` for `1 ≤ k ≤ q - 1`.
    pub fn g_inv(&self, k: u32) -> &ProjMatrix {
        &self.g_inv[k as usize - 1]
    }

    /// `u_j = sin(jπ/q) / sin(π/q)` for `0 ≤ j ≤ q`.
    pub fn sine_ratio(&self, j: usize) -> &RingInt {
        &self.seq[j]
    }

    /// Left endpoint `g_k⁻¹.0 = u_{k+1} / u_k` of the `k`-th interval.
    pub fn interval_left(&self, k: u32) -> &ProjPoint {
        &self.left[k as usize - 1]
    }

    /// Right endpoint `g_k⁻¹.∞ = u_k / u_{k-1}` of the `k`-th interval.
    pub fn interval_right(&self, k: u32) -> &ProjPoint {
        &self.right[k as usize - 1]
    }

    /// Guaranteed decrease of the entry sum per step of the decision procedure.
    pub fn delta0(&self) -> RingInt {
        self.lambda()
    }

    pub fn identity(&self) -> ProjMatrix {
        ProjMatrix::identity(&self.ctx)
    }
}

/// The distinguished elements of `Γ_q` for this context.
pub fn generators(ctx: &Arc<RingContext>) -> HeckeGroup {
    HeckeGroup::from_context(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ctx: &Arc<RingContext>, x: [[i64; 2]; 2]) -> ProjMatrix {
        ProjMatrix::from_i64s(ctx, x).unwrap()
    }

    fn rat(ctx: &Arc<RingContext>, n: i64, d: i64) -> RingRat {
        RingRat::from_ratio(ctx, n, d)
    }

    #[test]
    fn canonical_sign_and_equality() {
        let c = RingContext::new(3).unwrap();
        assert_eq!(m(&c, [[-1, -1], [-1, -2]]), m(&c, [[1, 1], [1, 2]]));
        assert_eq!(m(&c, [[0, -1], [1, 0]]), m(&c, [[0, 1], [-1, 0]]));
        assert!(matches!(ProjMatrix::from_i64s(&c, [[1, 1], [1, 1]]), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_examples() {
        let g = HeckeGroup::new(3).unwrap();
        let c = g.ctx();
        assert!(g.s().compose(g.s()).is_identity());
        assert_eq!(g.g_inv(1), &m(c, [[1, 1], [0, 1]]));
        assert_eq!(g.g_inv(2), &m(c, [[1, 0], [1, 1]]));
        assert_eq!(g.g_inv(1), g.t());
        assert_eq!(g.g_inv(2).compose(g.g_inv(1)), m(c, [[1, 1], [1, 2]]));
    }

    #[test]
    fn generator_relations() {
        for q in 3..=12 {
            let g = HeckeGroup::new(q).unwrap();
            assert!(g.u().pow(q as i64).is_identity(), "q = {q}");
            for k in 1..q {
                // g_k = (U^k S)^-1
                assert_eq!(g.g(k), &g.u().pow(k as i64).compose(g.s()).inverse(), "q = {q} k = {k}");
            }
        }
    }

    #[test]
    fn interval_endpoints_chain() {
        for q in 3..=12 {
            let g = HeckeGroup::new(q).unwrap();
            let zero = ProjPoint::Finite(RingRat::zero(g.ctx()));
            assert_eq!(g.interval_left(q - 1), &zero);
            assert_eq!(g.interval_right(1), &ProjPoint::Infinity);
            for k in 1..q - 1 {
                assert_eq!(g.interval_right(k + 1), g.interval_left(k));
            }
            for k in 1..q {
                assert_eq!(g.interval_left(k).compare(g.interval_right(k)), Ordering::Less);
            }
        }
    }

    #[test]
    fn apply_examples() {
        let g = HeckeGroup::new(3).unwrap();
        let c = g.ctx();
        let zero = ProjPoint::Finite(RingRat::zero(c));
        assert_eq!(g.t().apply(&ProjPoint::Infinity), ProjPoint::Infinity);
        assert_eq!(m(c, [[1, 1], [1, 2]]).apply(&zero), ProjPoint::Finite(rat(c, 1, 2)));
        assert_eq!(g.s().apply(&zero), ProjPoint::Infinity);
    }

    #[test]
    fn apply_surd_golden_ratio() {
        let g = HeckeGroup::new(3).unwrap();
        let c = g.ctx();
        let five = RingInt::from_int(c, 5);
        let x = Surd::new(rat(c, -1, 2), rat(c, 1, 2), five.clone()).unwrap();
        let y = Surd::new(rat(c, 1, 2), rat(c, 1, 2), five).unwrap();
        assert_eq!(g.g(2).apply_surd(&x), y);
        assert_eq!(g.identity().apply_surd(&x), x);
        let half = ProjPoint::Finite(rat(c, 1, 2));
        assert_eq!(
            g.g(2).apply_surd(&Surd::from(half.clone())),
            Surd::from(g.g(2).apply(&half))
        );
    }

    #[test]
    fn classification() {
        let g = HeckeGroup::new(3).unwrap();
        let c = g.ctx();
        assert_eq!(m(c, [[1, 1], [1, 2]]).classify(), MatrixClass::Hyperbolic);
        assert_eq!(g.s().classify(), MatrixClass::Elliptic);
        assert_eq!(g.t().classify(), MatrixClass::Parabolic);
        assert_eq!(g.identity().classify(), MatrixClass::Identity);
    }

    #[test]
    fn fixed_point_examples() {
        let c = RingContext::new(3).unwrap();
        let five = RingInt::from_int(&c, 5);
        let (wa, wr) = m(&c, [[1, 1], [1, 2]]).fixed_points().unwrap();
        assert_eq!(wa, Surd::new(rat(&c, -1, 2), rat(&c, 1, 2), five.clone()).unwrap());
        assert_eq!(wr, Surd::new(rat(&c, -1, 2), rat(&c, -1, 2), five).unwrap());

        let two = rat(&c, 2, 1);
        let half = rat(&c, 1, 2);
        let zero = RingRat::zero(&c);
        let diag = ProjMatrix::new(two.clone(), zero.clone(), zero.clone(), half.clone()).unwrap();
        assert_eq!(diag.fixed_points().unwrap(), (Surd::Infinity, Surd::rational(zero.clone())));
        let diag_inv = ProjMatrix::new(half, zero.clone(), zero.clone(), two).unwrap();
        assert_eq!(diag_inv.fixed_points().unwrap(), (Surd::rational(zero), Surd::Infinity));

        // upper triangular with a translation part: fixed point b / (d - a)
        let tri = ProjMatrix::new(rat(&c, 2, 1), rat(&c, 1, 1), rat(&c, 0, 1), rat(&c, 1, 2)).unwrap();
        let (wa, wr) = tri.fixed_points().unwrap();
        assert_eq!(wa, Surd::Infinity);
        assert_eq!(wr, Surd::rational(rat(&c, -2, 3)));
        assert_eq!(tri.apply_surd(&wr), wr);

        assert!(matches!(
            HeckeGroup::new(3).unwrap().t().fixed_points(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn negative_trace_fixed_points() {
        let c = RingContext::new(3).unwrap();
        let h = m(&c, [[1, 1], [-6, -5]]);
        assert!(h.trace().is_negative());
        let (wa, wr) = h.fixed_points().unwrap();
        assert_eq!(h.apply_surd(&wa), wa);
        // attracting: iterating from a generic point moves toward wa
        let mut x = ProjPoint::Finite(rat(&c, 7, 3));
        for _ in 0..30 {
            x = h.apply(&x);
        }
        let xf = x.as_finite().unwrap().to_f64();
        assert!((xf - wa.to_f64()).abs() < 1e-6, "{xf} vs {wa} / {wr}");
    }

    #[test]
    fn displacement_values() {
        let c = RingContext::new(3).unwrap();
        let zero = RingRat::zero(&c);
        let diag = ProjMatrix::new(rat(&c, 2, 1), zero.clone(), zero, rat(&c, 1, 2)).unwrap();
        let t = diag.displacement(64).unwrap();
        assert!((t.midpoint_f64() - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!(t.width_below(64));

        let g = m(&c, [[1, 1], [1, 2]]);
        let t1 = g.displacement(100).unwrap();
        let t2 = g.pow(2).displacement(100).unwrap();
        assert!(t1.scale(&BigInt::from(2)).sub(&t2).contains_zero());
        let h = m(&c, [[2, 1], [1, 1]]);
        let tc = g.conjugate_by(&h).displacement(100).unwrap();
        assert!(t1.sub(&tc).contains_zero());
    }

    #[test]
    fn entry_sums_and_signs() {
        let g = HeckeGroup::new(3).unwrap();
        let c = g.ctx();
        assert_eq!(g.identity().entry_sum(), rat(c, 2, 1));
        assert_eq!(m(c, [[1, 1], [1, 2]]).entry_sum(), rat(c, 5, 1));
        assert_eq!(m(c, [[-1, -1], [-1, -2]]).entry_sum(), rat(c, 5, 1));
        assert!(g.s().mixed_signs());
        assert!(!g.t().mixed_signs());
        assert!(!m(c, [[1, 1], [1, 2]]).mixed_signs());
    }

    #[test]
    fn matrix_grammar() {
        let c = RingContext::new(4).unwrap();
        let x = parse_matrix(&c, "[[1, L], [0, 1]]").unwrap();
        assert_eq!(&x, HeckeGroup::from_context(&c).t());
        assert_eq!(x.to_string(), "[[1,L],[0,1]]");
        assert_eq!(parse_matrix(&c, &x.to_string()).unwrap(), x);
        assert!(matches!(parse_matrix(&c, "[[1,2],[3]]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(&c, "[[1,1],[1,1]]"), Err(Error::Domain(_))));
    }
}
