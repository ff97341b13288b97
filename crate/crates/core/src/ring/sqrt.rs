//! Square roots in `Z[λ]`.
//!
//! A square root `t` of `a` is pinned down by its values at the real
//! conjugates: `σ_k(t) = ±sqrt(σ_k(a))`. Coefficients are recovered with the
//! trace-dual basis, `t_j = Σ_k σ_k(t) σ_k(β_j)`, evaluated in certified
//! interval arithmetic, rounded to the unique integer in each enclosure and
//! confirmed by squaring exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::interval::Interval;
use super::{RingContext, RingInt, RingRat};

/// Trace-dual basis `β_j = b_j(λ) / f'(λ)` of the power basis, where
/// `f(x) / (x - λ) = Σ b_j(λ) x^j`.
fn dual_basis(a: &RingInt) -> Vec<RingRat> {
    let ctx = a.ctx();
    let d = ctx.degree();
    let f = ctx.min_poly();
    let lambda = RingInt::lambda(ctx);

    let mut b = vec![RingInt::zero(ctx); d];
    b[d - 1] = RingInt::one(ctx);
    for j in (1..d).rev() {
        b[j - 1] = &RingInt::from_int(ctx, f[j].clone()) + &(&lambda * &b[j]);
    }
    let deriv: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let deriv_inv = RingInt::from_coeffs(ctx, deriv)
        .inverse()
        .expect("minimal polynomial is separable");
    b.into_iter().map(|bj| RingRat::from(bj) * deriv_inv.clone()).collect()
}

/// Square root with nonnegative value under the distinguished embedding,
/// or `None` if `a` is not a square in `Z[λ]`.
pub fn sqrt_in_ring(a: &RingInt) -> Option<RingInt> {
    let ctx = a.ctx().clone();
    if a.is_zero() {
        return Some(RingInt::zero(&ctx));
    }
    if a.sign_of() == Ordering::Less {
        return None;
    }
    if ctx.degree() == 1 {
        let n = &a.coeffs()[0];
        let r = n.sqrt();
        return (&r * &r == *n).then(|| RingInt::from_int(&ctx, r));
    }

    let d = ctx.degree();
    let duals = dual_basis(a);
    let size = a.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as u32;
    let mut prec = 64 + size / 2 + 8 * d as u32;

    'precision: loop {
        let values = ctx.conjugate_values(a.coeffs(), prec);
        let prec_used = values[0].prec();
        if values.iter().any(|v| v.sign() == Some(Ordering::Less)) {
            return None;
        }
        let roots: Vec<Interval> = values.iter().map(|v| v.sqrt().expect("positive")).collect();
        let conj = ctx.root_enclosures(prec_used);
        // dual_at[j][k] = σ_k(β_j)
        let dual_at: Vec<Vec<Interval>> = duals
            .iter()
            .map(|beta| {
                conj.iter()
                    .map(|r| RingContext::eval_at(beta.numer().coeffs(), r).div_int(beta.denom()))
                    .collect()
            })
            .collect();
        let terms: Vec<Vec<Interval>> = dual_at
            .iter()
            .map(|row| row.iter().zip(&roots).map(|(b, r)| b.mul(r)).collect())
            .collect();

        for mask in 0u64..(1u64 << (d - 1)) {
            let mut coeffs = Vec::with_capacity(d);
            let mut feasible = true;
            for row in &terms {
                let mut sum = Interval::from_int(&BigInt::zero(), prec_used);
                for (k, term) in row.iter().enumerate() {
                    let negate = k > 0 && (mask >> (k - 1)) & 1 == 1;
                    sum = if negate { sum.sub(term) } else { sum.add(term) };
                }
                if !sum.width_below(1) {
                    prec = prec_used * 2;
                    continue 'precision;
                }
                match sum.unique_integer() {
                    Some(n) => coeffs.push(n),
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if !feasible {
                continue;
            }
            let t = RingInt::from_coeffs(&ctx, coeffs);
            if &t * &t == *a {
                return Some(if t.is_negative() { -t } else { t });
            }
        }
        return None;
    }
}

impl RingInt {
    /// See [`sqrt_in_ring`].
    pub fn sqrt(&self) -> Option<RingInt> {
        sqrt_in_ring(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ctx(q: u32) -> Arc<RingContext> {
        RingContext::new(q).unwrap()
    }

    #[test]
    fn integer_squares_q3() {
        let c = ctx(3);
        assert_eq!(sqrt_in_ring(&RingInt::from_int(&c, 9)), Some(RingInt::from_int(&c, 3)));
        assert_eq!(sqrt_in_ring(&RingInt::from_int(&c, 5)), None);
        assert_eq!(sqrt_in_ring(&RingInt::from_int(&c, -4)), None);
        assert_eq!(sqrt_in_ring(&RingInt::zero(&c)), Some(RingInt::zero(&c)));
    }

    #[test]
    fn two_is_lambda_squared_q4() {
        let c = ctx(4);
        assert_eq!(sqrt_in_ring(&RingInt::from_int(&c, 2)), Some(RingInt::lambda(&c)));
        assert_eq!(sqrt_in_ring(&RingInt::from_int(&c, 3)), None);
    }

    #[test]
    fn totally_positive_non_square() {
        // q = 5: λ has a negative conjugate, so it cannot be a square
        let c = ctx(5);
        assert_eq!(sqrt_in_ring(&RingInt::lambda(&c)), None);
        // λ^2 = λ + 1 has root λ
        assert_eq!(
            sqrt_in_ring(&RingInt::from_i64s(&c, &[1, 1])),
            Some(RingInt::lambda(&c))
        );
    }

    #[test]
    fn roots_of_squares_with_mixed_conjugate_signs() {
        for q in [5, 7, 8, 9, 11, 12, 15] {
            let c = ctx(q);
            for coeffs in [[3, -2, 1, 0], [-1, 4, -2, 1], [12, 0, -7, 3], [0, 0, 0, 1]] {
                let t = RingInt::from_i64s(&c, &coeffs);
                let sq = &t * &t;
                assert_eq!(sqrt_in_ring(&sq), Some(t.abs()), "q = {q}, t = {t}");
            }
        }
    }

    #[test]
    fn large_square() {
        let c = ctx(7);
        let t = RingInt::from_i64s(&c, &[123_456_789, -987_654_321, 555_555_555]).pow(5);
        assert_eq!(sqrt_in_ring(&(&t * &t)), Some(t.abs()));
        let shifted = &(&t * &t) + &RingInt::one(&c);
        assert_eq!(sqrt_in_ring(&shifted), None);
    }
}
