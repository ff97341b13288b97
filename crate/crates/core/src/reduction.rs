//! Reduction of `Γ_q`-forms: preperiod, cycle of reduced forms, level and
//! associated hyperbolic element.

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::enumeration::word_length_cap;
use crate::error::{Error, Result};
use crate::forms::{validate_gamma_form, ProjForm, ZeroPair};
use crate::moebius::{HeckeGroup, ProjMatrix};
use crate::ring::RingRat;
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub level: u64,
    /// `F_0, …, F_m`; `F_m` is the first reduced form reached.
    pub preperiod: Vec<ProjForm>,
    /// `F_{m+1}, …, F_{m+p}`, ending again at `F_m`.
    pub period: Vec<ProjForm>,
    /// `h_m`, with `F_m = h_m⁻¹.F_0`.
    pub conjugator: ProjMatrix,
    /// `k_1, …, k_p` with primitive element `g_{k_1}⁻¹ ⋯ g_{k_p}⁻¹`.
    pub period_word: Vec<u32>,
    /// The primitive element `a_p` read off the period.
    pub primitive: ProjMatrix,
    /// `h_m · a_p^level · h_m⁻¹`, equal to `ψ₂(F_0)`.
    pub hyperbolic_element: ProjMatrix,
}

/// Index `k` of the open interval `(g_k⁻¹.0, g_k⁻¹.∞)` containing `x > 0`.
pub fn interval_of(x: &Surd, group: &HeckeGroup) -> Result<u32> {
    if x.is_infinite() || x.sign() != Some(Ordering::Greater) {
        return Err(Error::domain(format!("{x} is not a positive real")));
    }
    let (mut lo, mut hi) = (1u32, group.q() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if x.compare_point(group.interval_left(mid)) != Ordering::Less {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if x.compare_point(group.interval_left(lo)) == Ordering::Equal {
        return Err(Error::domain(format!("{x} is an interval endpoint")));
    }
    Ok(lo)
}

struct Walk<'a> {
    group: &'a HeckeGroup,
    forms: Vec<ProjForm>,
    zeros: Vec<ZeroPair>,
    cap: u64,
}

impl Walk<'_> {
    fn current(&self) -> (&ProjForm, &ZeroPair) {
        (self.forms.last().expect("nonempty"), self.zeros.last().expect("nonempty"))
    }

    /// Act by `g` on the current form and its zero pair, checking that the
    /// transported zeros are the zeros of the new form.
    fn step(&mut self, g: &ProjMatrix) -> Result<()> {
        let (form, zeros) = self.current();
        let next = form.act(g)?;
        let moved = ZeroPair {
            attracting: g.apply_surd(&zeros.attracting),
            repelling: g.apply_surd(&zeros.repelling),
        };
        if moved != next.zeros() {
            return Err(Error::Diagnostic(format!(
                "zeros of {next} disagree with transported zeros of {form}"
            )));
        }
        self.forms.push(next);
        self.zeros.push(moved);
        Ok(())
    }

    fn next_index(&self) -> Result<u32> {
        interval_of(&self.current().1.attracting, self.group)
    }
}

/// Iteration cap for each loop of [`reduce`]: `⌈‖g‖₁/λ⌉ + n₀(D) + q + 8`,
/// where `‖g‖₁` is the sum of absolute entries of `ψ₂(F)` and `n₀(D)` the
/// word-length cap for the discriminant.
fn safety_cap(g: &ProjMatrix, form: &ProjForm, group: &HeckeGroup) -> u64 {
    let lambda_inv = RingRat::from(group.lambda()).inverse().expect("λ ≠ 0");
    let norm = (&g.abs_entry_sum() * &lambda_inv).ceil().to_u64().unwrap_or(u64::MAX);
    let n0 = word_length_cap(form.discriminant().to_f64(), group.q()) as u64;
    norm.saturating_add(n0).saturating_add(group.q() as u64 + 8)
}

/// Run the reduction procedure on a `Γ_q`-form.
pub fn reduce(form: &ProjForm, group: &HeckeGroup) -> Result<ReductionResult> {
    let target = validate_gamma_form(form, group).map_err(Error::NotGammaForm)?;
    let cap = safety_cap(&target, form, group);
    let mut walk = Walk {
        group,
        forms: vec![form.clone()],
        zeros: vec![form.zeros()],
        cap,
    };

    // Preperiod: make the attracting zero positive, then move until reduced.
    let mut conjugator = group.identity();
    if walk.current().1.attracting.sign() == Some(Ordering::Less) {
        walk.step(group.s())?;
        conjugator = group.s().clone();
    }
    let mut steps = 0u64;
    while !walk.current().0.is_reduced() {
        steps += 1;
        if steps > walk.cap {
            return Err(Error::Diagnostic(format!("preperiod of {form} exceeded {} steps", walk.cap)));
        }
        let k = walk.next_index()?;
        walk.step(group.g(k))?;
        conjugator = conjugator.compose(group.g_inv(k));
    }
    let m = walk.forms.len() - 1;

    // Period: continue until the first reduced form and its zeros return.
    let mut primitive = group.identity();
    let mut period_word = Vec::new();
    loop {
        if period_word.len() as u64 >= walk.cap {
            return Err(Error::Diagnostic(format!("period of {form} exceeded {} steps", walk.cap)));
        }
        let k = walk.next_index()?;
        walk.step(group.g(k))?;
        primitive = primitive.compose(group.g_inv(k));
        period_word.push(k);
        let same_form = walk.current().0 == &walk.forms[m];
        let same_zeros = walk.current().1 == &walk.zeros[m];
        if same_form != same_zeros {
            return Err(Error::Diagnostic(format!(
                "form and zero-pair period detection disagree for {form}"
            )));
        }
        if same_form {
            break;
        }
    }

    // Level: smallest n with h a^n h⁻¹ = ψ₂(F).
    let target_trace = target.abs_trace();
    let mut level = 1u64;
    let mut power = primitive.clone();
    loop {
        let candidate = power.conjugate_by(&conjugator);
        if candidate == target {
            break;
        }
        if power.abs_trace().compare(&target_trace) == Ordering::Greater {
            return Err(Error::Diagnostic(format!(
                "no power of {primitive} matches {target}"
            )));
        }
        level += 1;
        power = power.compose(&primitive);
    }

    let mut forms = walk.forms;
    let period = forms.split_off(m + 1);
    Ok(ReductionResult {
        level,
        preperiod: forms,
        period,
        conjugator,
        period_word,
        primitive,
        hyperbolic_element: target,
    })
}

/// Whether reducing from each form of `F`'s period gives the same cycle up to rotation.
pub fn reduced_cycle_rotation_check(form: &ProjForm, group: &HeckeGroup) -> Result<bool> {
    let base = reduce(form, group)?.period;
    for f in &base {
        let other = reduce(f, group)?.period;
        if !is_rotation(&base, &other) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i])))
}
