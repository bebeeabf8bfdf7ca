//! The discrete two-parameter Mittag-Leffler function
//!
//!   F_{α,β}(λ, k, a) = Σ_{j≥0} λ^j (k−a)^(ov(jα+β−1)) / Γ(jα+β),
//!
//! where p^(ov(q)) = Γ(p+q)/Γ(p) is the rising factorial. It plays the role
//! the exponential plays for first-order difference systems: F_{1,1}(λ,k,a)
//! collapses to (1−λ)^{−(k−a)}.
//!
//! With m = k − a the j-th term telescopes into a finite product,
//!
//!   term_j = λ^j · ∏_{i=0}^{m−2} (jα + β + i) / (i + 1),
//!
//! so no Gamma evaluation is needed. For λ < 0 the terms grow enormous
//! before cancelling (the peak exceeds the final value by 10^15 and more at
//! desk horizons), which destroys a plain f64 summation; the series is
//! therefore accumulated in extended precision with exactly constructed
//! factors, and an evaluation reports a domain error if even that precision
//! cannot meet the requested tolerance.
//!
//! The series converges iff |λ| < 1 (the term ratio tends to λ).
//! Evaluations with |λ| ≥ 1 are only available through the closed forms at
//! k − a ≤ 1 and α = β = 1; everything else is delegated to the exact
//! recursion in [`crate::solver`], which realizes the same function values
//! for any λ ≠ 1.

use crate::error::{Error, Result};
use crate::extended::{two_prod, PosBig};
use crate::special::log_gamma_signed;
use num_complex::Complex64;

/// Default truncation tolerance for the series path.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Hard cap on series terms before giving up.
pub const TERM_CAP: usize = 100_000;

/// Starting working precision of the series engine.
const BASE_PREC_BITS: u64 = 512;

/// Largest working precision tried before giving up on a query.
const PREC_CAP_BITS: u64 = 4096;

/// Bits kept between the running peak term and the dropped tail.
const TAIL_MARGIN_BITS: u64 = 47;

/// Parameter tuple addressing one function value F_{α,β}(λ, k, a).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlQuery {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub a: i64,
    pub k: i64,
}

/// A function value plus truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlResult {
    pub value: f64,
    /// Series terms actually summed (0 on a closed-form path).
    pub terms_used: usize,
    /// Magnitude of the first neglected term (0 on a closed-form path).
    pub truncation_bound: f64,
}

impl MlResult {
    fn closed(value: f64) -> Self {
        MlResult { value, terms_used: 0, truncation_bound: 0.0 }
    }
}

fn validate(alpha: f64, beta: f64, tol: f64) -> Result<()> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Evaluates F_{α,β}(λ, k, a) with closed-form shortcuts at k − a ≤ 1,
/// order (1,1) and λ = 0, and the extended-precision series otherwise.
pub fn ml_eval(q: &MlQuery, tol: f64) -> Result<MlResult> {
    validate(q.alpha, q.beta, tol)?;
    if q.k < q.a {
        return Err(Error::InvalidArgument(format!(
            "k must not precede the origin: k = {}, a = {}",
            q.k, q.a
        )));
    }
    let m = (q.k - q.a) as u64;
    let lambda = q.lambda;

    if m == 0 {
        return Ok(MlResult::closed(value_at_origin(q.alpha, q.beta, lambda)));
    }
    if lambda == 1.0 {
        return Err(Error::LambdaOne);
    }
    if m == 1 {
        // 1^(ov(jα+β−1)) = Γ(jα+β), so every term is λ^j: the geometric
        // value 1/(1−λ) continues the series to all λ ≠ 1.
        return Ok(MlResult::closed(1.0 / (1.0 - lambda)));
    }
    if q.alpha == 1.0 && q.beta == 1.0 {
        return Ok(MlResult::closed(ml_alpha1_closed(lambda, q.k, q.a)?));
    }
    if lambda == 0.0 {
        return Ok(MlResult::closed(lambda_zero_value(q.alpha, q.beta, m)));
    }
    if lambda.abs() >= 1.0 {
        return Err(Error::SeriesNotConvergent(lambda));
    }
    let mut seq = ml_eval_sequence(q.alpha, q.beta, lambda, q.a, q.k, tol)?;
    Ok(seq.pop().expect("sequence covers k"))
}

/// Evaluates F_{α,β}(λ, ·, a) at every k = a+1 ..= k_last in one incremental
/// series pass (the m-th values reuse the (m−1)-th terms via
/// term_j(m) = term_j(m−1) · (jα+β+m−2)/(m−1)).
///
/// Requires |λ| < 1. The per-point results carry the same diagnostics as
/// [`ml_eval`].
pub fn ml_eval_sequence(
    alpha: f64,
    beta: f64,
    lambda: f64,
    a: i64,
    k_last: i64,
    tol: f64,
) -> Result<Vec<MlResult>> {
    validate(alpha, beta, tol)?;
    if k_last < a + 1 {
        return Err(Error::InvalidArgument(format!(
            "k_last must be at least a + 1: k_last = {k_last}, a = {a}"
        )));
    }
    if lambda == 1.0 {
        return Err(Error::LambdaOne);
    }
    if lambda.abs() >= 1.0 {
        return Err(Error::SeriesNotConvergent(lambda));
    }
    let horizon = (k_last - a) as usize;
    if lambda == 0.0 {
        return Ok((1..=horizon)
            .map(|m| MlResult::closed(lambda_zero_value(alpha, beta, m as u64)))
            .collect());
    }

    // order (1,1) deliberately runs through the engine too: the sequence
    // path stays an independent route against the geometric closed form.
    //
    // The working precision adapts: a pass tracks the peak term magnitude
    // exactly even when the sum itself is drowned by cancellation, so a
    // failed pass knows how many bits a retry needs.
    let mut prec = BASE_PREC_BITS;
    loop {
        let mut engine = SeriesEngine::new(alpha, beta, lambda, prec);
        let mut out = Vec::with_capacity(horizon);
        let mut retry_at: Option<u64> = None;
        for _ in 1..=horizon {
            engine.advance();
            match engine.sum_current(tol)? {
                SumOutcome::Value(r) => out.push(r),
                SumOutcome::NeedsBits(bits) => {
                    retry_at = Some(bits);
                    break;
                }
            }
        }
        match retry_at {
            None => return Ok(out),
            Some(bits) if bits <= PREC_CAP_BITS => prec = bits.max(prec + 256),
            Some(bits) => {
                return Err(Error::Domain(format!(
                    "series cancellation needs ~{bits} bits of precision                      (cap {PREC_CAP_BITS}); use the recursive solver"
                )))
            }
        }
    }
}

enum SumOutcome {
    Value(MlResult),
    /// Cancellation exceeded the current precision; retry with this many bits.
    NeedsBits(u64),
}

/// Series state: the term magnitudes |term_j| at the current offset m.
struct SeriesEngine {
    alpha: f64,
    beta: f64,
    abs_lambda: f64,
    negative: bool,
    prec: u64,
    tail_cut: i64,
    m: usize,
    terms: Vec<PosBig>,
    /// |λ|^{terms.len()}, ready for the next extension.
    pow_next: PosBig,
}

impl SeriesEngine {
    fn new(alpha: f64, beta: f64, lambda: f64, prec: u64) -> Self {
        SeriesEngine {
            alpha,
            beta,
            abs_lambda: lambda.abs(),
            negative: lambda < 0.0,
            prec,
            tail_cut: (prec - TAIL_MARGIN_BITS) as i64,
            m: 0,
            terms: Vec::new(),
            pow_next: PosBig::from_f64(1.0),
        }
    }

    /// jα + β + i, constructed exactly.
    fn factor(&self, j: usize, i: usize) -> PosBig {
        let (hi, lo) = two_prod(j as f64, self.alpha);
        let mut f = PosBig::from_f64(hi);
        f.add_assign(&PosBig::from_f64(self.beta), self.prec);
        if i > 0 {
            f.add_assign(&PosBig::from_f64(i as f64), self.prec);
        }
        if lo > 0.0 {
            f.add_assign(&PosBig::from_f64(lo), self.prec);
        } else if lo < 0.0 {
            let (d, sign) = f.sub_abs(&PosBig::from_f64(-lo), self.prec);
            debug_assert!(sign > 0, "factor must stay positive");
            f = d;
        }
        f
    }

    /// Move every live term from offset m−1 to m.
    fn advance(&mut self) {
        self.m += 1;
        if self.m < 2 {
            return; // at m = 1 the terms are the bare powers |λ|^j
        }
        let i = self.m - 2;
        let divisor = (self.m - 1) as u64;
        for j in 0..self.terms.len() {
            let f = self.factor(j, i);
            self.terms[j].mul_assign(&f, self.prec);
            self.terms[j].div_u64(divisor, self.prec);
        }
    }

    /// |term_j| at the current offset, built from scratch.
    fn build_term(&self, j: usize, pow: &PosBig) -> PosBig {
        let mut t = pow.clone();
        for i in 0..self.m.saturating_sub(1) {
            let f = self.factor(j, i);
            t.mul_assign(&f, self.prec);
            t.div_u64((i + 1) as u64, self.prec);
        }
        t
    }

    /// Sum the series at the current offset. Terms are unimodal in j, so the
    /// scan accumulates until the magnitude has fallen `tail_cut` bits below
    /// the running peak, extending the live set as needed.
    fn sum_current(&mut self, tol: f64) -> Result<SumOutcome> {
        let mut pos = PosBig::zero();
        let mut neg = PosBig::zero();
        let mut peak = i64::MIN;
        let bound;
        let mut used = 0usize;
        let mut j = 0usize;
        loop {
            if j == self.terms.len() {
                if j >= TERM_CAP {
                    return Err(Error::NonConvergedAtCap { cap: TERM_CAP });
                }
                let t = self.build_term(j, &self.pow_next);
                self.terms.push(t);
                self.pow_next.mul_f64(self.abs_lambda, self.prec);
            }
            let mag = self.terms[j].log2_mag();
            if mag > peak {
                peak = mag;
            }
            if mag < peak - self.tail_cut {
                // past the peak and below precision: the tail is negligible
                bound = self.terms[j].to_f64();
                break;
            }
            if self.negative && j % 2 == 1 {
                neg.add_assign(&self.terms[j], self.prec);
            } else {
                pos.add_assign(&self.terms[j], self.prec);
            }
            used += 1;
            j += 1;
        }
        let (value_big, sign) = pos.sub_abs(&neg, self.prec);
        let value = sign as f64 * value_big.to_f64();

        // conditioning: the dropped tail and trimming contribute an absolute
        // error of ~2^(peak − tail_cut); if that exceeds the tolerance budget
        // the pass must be redone with more bits
        let err_log2 = peak.saturating_sub(self.tail_cut);
        let budget = tol * (1.0 + value.abs());
        if (err_log2 as f64) * std::f64::consts::LN_2 > budget.ln() {
            let needed = peak
                .saturating_sub(budget.log2().floor() as i64)
                .saturating_add(TAIL_MARGIN_BITS as i64 + 64);
            return Ok(SumOutcome::NeedsBits(needed.max(0) as u64));
        }
        Ok(SumOutcome::Value(MlResult { value, terms_used: used, truncation_bound: bound }))
    }
}

/// Value at k = a. The rising factorial 0^(ov(q)) vanishes except at q = 0
/// where it is 1, so the sum collapses to the terms with jα + β − 1 = 0.
fn value_at_origin(alpha: f64, beta: f64, lambda: f64) -> f64 {
    let mut value = 0.0;
    let mut j = 0u32;
    loop {
        let q = j as f64 * alpha + beta - 1.0;
        if q > 0.0 {
            break;
        }
        if q == 0.0 {
            value += lambda.powi(j as i32); // Γ(jα+β) = Γ(1) = 1
        }
        j += 1;
    }
    value
}

/// λ = 0 leaves only the j = 0 term: m^(ov(β−1)) / Γ(β).
fn lambda_zero_value(alpha: f64, beta: f64, m: u64) -> f64 {
    let _ = alpha;
    let (lg_num, sign) = log_gamma_signed(m as f64 + beta - 1.0);
    let (lg_m, _) = log_gamma_signed(m as f64);
    let (lg_b, _) = log_gamma_signed(beta);
    sign as f64 * (lg_num - lg_m - lg_b).exp()
}

/// Closed form of the order-(1,1) function: F_{1,1}(λ, k, a) = (1−λ)^{−(k−a)}.
pub fn ml_alpha1_closed(lambda: f64, k: i64, a: i64) -> Result<f64> {
    if lambda == 1.0 {
        return Err(Error::LambdaOne);
    }
    if k < a {
        return Err(Error::InvalidArgument(format!(
            "k must not precede the origin: k = {k}, a = {a}"
        )));
    }
    Ok((1.0 - lambda).powi(-((k - a) as i32)))
}

/// The first three values of the order-2 function F_{α,2}(λ, ·, a):
/// at k = a, a+1, a+2.
///
/// At k = a the value is exactly 0 (the 1/Γ(0) = 0 convention); at k = a+1 it
/// is 1/(1−λ) for every α; at k = a+2 the series telescopes to
/// Σ_j λ^j (jα + 2) = (2(1−λ) + αλ)/(1−λ)², continued to all λ ≠ 1.
pub fn ml_boundary_values(alpha: f64, lambda: f64) -> Result<(f64, f64, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if lambda == 1.0 {
        return Err(Error::LambdaOne);
    }
    let one_minus = 1.0 - lambda;
    let at_a1 = 1.0 / one_minus;
    let at_a2 = (2.0 * one_minus + alpha * lambda) / (one_minus * one_minus);
    Ok((0.0, at_a1, at_a2))
}

/// The transform-domain image of F_{α,β}: s^{α−β} / (s^α − λ) on the
/// principal branch, valid for |λ| < |s|^α.
pub fn ml_transform_point(
    alpha: f64,
    beta: f64,
    lambda: f64,
    s: Complex64,
) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("transform point s must be nonzero".into()));
    }
    if lambda.abs() >= s.norm().powf(alpha) {
        return Err(Error::Domain(format!(
            "|lambda| = {} is not below |s|^alpha = {}",
            lambda.abs(),
            s.norm().powf(alpha)
        )));
    }
    let s_alpha = s.powf(alpha);
    let denom = s_alpha - lambda;
    if denom.norm() == 0.0 {
        return Err(Error::TransformPole);
    }
    Ok(s.powf(alpha - beta) / denom)
}
