//! Listing every reduced `Γ_q`-form up to a discriminant bound.
//!
//! Reduced forms correspond to products `g_{k_1}⁻¹ ⋯ g_{k_n}⁻¹` with positive
//! off-diagonal entries. All such matrices have nonnegative entries and the
//! trace never decreases when a word is extended, so a depth-first search can
//! discard a prefix as soon as its trace is too large.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::forms::ProjForm;
use crate::moebius::{HeckeGroup, ProjMatrix};
use crate::reduction::reduce;
use crate::ring::{RingContext, RingInt, RingRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedForm {
    pub form: ProjForm,
    /// Generator indices `k_1, …, k_n` with `ψ₂(form) = g_{k_1}⁻¹ ⋯ g_{k_n}⁻¹`.
    pub word: Vec<u32>,
    pub discriminant: RingInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub dmax: BigRational,
    pub word_length_cap: usize,
    /// Sorted by word length, then lexicographically by word.
    pub forms: Vec<EnumeratedForm>,
    /// Number of search nodes visited.
    pub explored: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Override for the maximal word length; defaults to [`word_length_cap`].
    pub cap: Option<usize>,
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { cap: None, threads: 1 }
    }
}

/// Longest word that can produce a reduced form of discriminant at most `dmax`:
/// `⌈2√(dmax+4)/λ + √(dmax+4)/δ⌉`, `δ = 2(λ - 1)`, the second term dropped for
/// `q = 3`. Evaluated in floating point and rounded up generously.
pub fn word_length_cap(dmax: f64, q: u32) -> usize {
    if dmax <= 0.0 {
        return 0;
    }
    let lambda = 2.0 * (std::f64::consts::PI / q as f64).cos();
    let root = (dmax + 4.0).sqrt();
    let mut n0 = 2.0 * root / lambda;
    if q > 3 {
        n0 += root / (2.0 * (lambda - 1.0));
    }
    (n0 * (1.0 + 1e-9)).ceil() as usize
}

fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// All reduced `Γ_q`-forms with discriminant at most `dmax`.
pub fn enumerate_reduced(dmax: &BigRational, group: &HeckeGroup) -> EnumerationReport {
    enumerate_reduced_with(dmax, group, EnumerationOptions::default())
}

pub fn enumerate_reduced_with(
    dmax: &BigRational,
    group: &HeckeGroup,
    options: EnumerationOptions,
) -> EnumerationReport {
    let ctx = group.ctx();
    let cap = options
        .cap
        .unwrap_or_else(|| word_length_cap(rational_to_f64(dmax), group.q()));
    if !dmax.is_positive() {
        return EnumerationReport { dmax: dmax.clone(), word_length_cap: cap, forms: Vec::new(), explored: 0 };
    }
    let search = Search {
        group,
        trace_sq_limit: ring_rat(ctx, dmax) + RingRat::from_int(ctx, 4),
        dmax: ring_rat(ctx, dmax),
        cap,
    };

    let q = group.q();
    let firsts: Vec<u32> = (1..q).collect();
    let threads = options.threads.clamp(1, firsts.len());
    let results: Vec<(Vec<EnumeratedForm>, u64)> = if threads == 1 {
        firsts.iter().map(|&k| search.branch(k)).collect()
    } else {
        let chunks: Vec<Vec<u32>> = (0..threads)
            .map(|t| firsts.iter().copied().skip(t).step_by(threads).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    let search = &search;
                    scope.spawn(move || chunk.iter().map(|&k| search.branch(k)).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    let mut explored = 0;
    let mut seen = HashSet::new();
    let mut forms = Vec::new();
    for (found, count) in results {
        explored += count;
        for f in found {
            if seen.insert(f.form.clone()) {
                forms.push(f);
            }
        }
    }
    forms.sort_by(|x, y| x.word.len().cmp(&y.word.len()).then_with(|| x.word.cmp(&y.word)));
    EnumerationReport { dmax: dmax.clone(), word_length_cap: cap, forms, explored }
}

fn ring_rat(ctx: &Arc<RingContext>, x: &BigRational) -> RingRat {
    RingRat::new(RingInt::from_int(ctx, x.numer().clone()), x.denom().clone())
}

struct Search<'a> {
    group: &'a HeckeGroup,
    trace_sq_limit: RingRat,
    dmax: RingRat,
    cap: usize,
}

impl Search<'_> {
    fn branch(&self, first: u32) -> (Vec<EnumeratedForm>, u64) {
        let mut out = Vec::new();
        let mut explored = 0;
        let mut word = vec![first];
        self.visit(self.group.g_inv(first).clone(), &mut word, &mut out, &mut explored);
        (out, explored)
    }

    fn visit(&self, m: ProjMatrix, word: &mut Vec<u32>, out: &mut Vec<EnumeratedForm>, explored: &mut u64) {
        *explored += 1;
        let tr = m.trace();
        if (&(&tr * &tr) - &self.trace_sq_limit).is_positive() {
            return;
        }
        self.maybe_emit(&m, word, out);
        if word.len() >= self.cap {
            return;
        }
        for k in 1..self.group.q() {
            word.push(k);
            let next = m.compose(self.group.g_inv(k));
            self.visit(next, word, out, explored);
            word.pop();
        }
    }

    fn maybe_emit(&self, m: &ProjMatrix, word: &[u32], out: &mut Vec<EnumeratedForm>) {
        let q = self.group.q();
        if word.iter().all(|&k| k == 1) || word.iter().all(|&k| k == q - 1) {
            return;
        }
        if !(m.b().is_positive() && m.c().is_positive() && m.is_hyperbolic()) {
            return;
        }
        let form = ProjForm::psi2_inv(m).expect("hyperbolic over Z[λ]");
        let discriminant = form.discriminant();
        if (&RingRat::from(discriminant.clone()) - &self.dmax).is_positive() {
            return;
        }
        assert!(form.is_reduced(), "positive off-diagonal product {m} gave unreduced {form}");
        out.push(EnumeratedForm { form, word: word.to_vec(), discriminant });
    }
}

/// Whether the reduction cycle of every listed form stays inside the report.
pub fn cross_check_cycles(report: &EnumerationReport, group: &HeckeGroup) -> Result<bool> {
    let listed: HashSet<&ProjForm> = report.forms.iter().map(|f| &f.form).collect();
    for f in &report.forms {
        let r = reduce(&f.form, group)?;
        if !r.period.iter().all(|g| listed.contains(g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parse a bound given as an integer, fraction `n/d` or decimal.
pub fn parse_dmax(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::parse(t, "expected a rational number such as `30`, `25/2` or `12.5`");
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_positive() {
            return Ok(BigRational::new(n, d));
        }
        return Err(bad());
    }
    if let Some((i, f)) = t.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = format!("{i}{f}").parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), f.len());
        return Ok(BigRational::new(n, d));
    }
    t.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}
