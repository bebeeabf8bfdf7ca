//! Numerical machinery for the nabla discrete Laplace transform
//! F(s) = Σ_{k≥1} (1−s)^{k−1} f(a+k): partial-sum evaluation, initial and
//! final value extraction, the difference rule as a testable identity, and
//! the response transform of the scalar fractional difference system.

use crate::error::{Error, Result};
use crate::signal::SampledSignal;
use num_complex::Complex64;

/// Partial transform Σ_{k=1}^{K} (1−s)^{k−1} f(a+k).
///
/// At s = 1 the weight sequence is 1, 0, 0, …, so the result is exactly
/// f(a+1) regardless of K.
pub fn n_transform_partial(f: &SampledSignal, s: Complex64, terms: usize) -> Result<Complex64> {
    if terms == 0 || terms > f.horizon() {
        return Err(Error::InvalidArgument(format!(
            "transform needs 1..={} terms, asked for {terms}",
            f.horizon()
        )));
    }
    let base = Complex64::new(1.0, 0.0) - s;
    let mut weight = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &v) in f.samples().iter().take(terms).enumerate() {
        acc += weight * v;
        if i + 1 < terms {
            weight *= base;
        }
    }
    Ok(acc)
}

/// The κ-th sample f(a+κ) extracted the transform way: subtract the first
/// κ−1 series terms, divide by (1−s)^{κ−1}, and evaluate the reduced series
/// at s = 1, where only the leading coefficient survives. The reduction is
/// asserted against the direct table read before returning.
pub fn initial_value(f: &SampledSignal, kappa: usize) -> Result<f64> {
    if kappa == 0 || kappa > f.horizon() {
        return Err(Error::InvalidArgument(format!(
            "kappa must lie in 1..={}, got {kappa}",
            f.horizon()
        )));
    }
    // reduced series Σ_{k≥κ} (1−s)^{k−κ} f(a+k) at s = 1
    let samples = f.samples();
    let mut weight = 1.0;
    let mut acc = 0.0;
    for &v in &samples[kappa - 1..] {
        acc += weight * v;
        weight *= 1.0 - 1.0; // s = 1
    }
    debug_assert_eq!(acc, samples[kappa - 1]);
    Ok(acc)
}

/// A final-value reading s·F(s) at a small positive probe point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinalValueEstimate {
    pub value: f64,
    /// False when K·s_probe < 10: the horizon does not resolve the tail and
    /// the estimate should not be trusted.
    pub tail_resolved: bool,
}

/// Estimates f(a+∞) as s·F(s) at s = s_probe over the signal's full horizon.
///
/// For signals with a geometrically convergent tail the error vanishes as
/// s_probe → 0 with K·s_probe → ∞. No finite computation takes the limit;
/// the probe point is explicit for that reason.
pub fn final_value_estimate(f: &SampledSignal, s_probe: f64) -> Result<FinalValueEstimate> {
    if !(s_probe > 0.0 && s_probe < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "s_probe must lie in (0, 1), got {s_probe}"
        )));
    }
    let base = 1.0 - s_probe;
    let mut weight = 1.0;
    let mut acc = 0.0;
    for &v in f.samples() {
        acc += weight * v;
        weight *= base;
    }
    Ok(FinalValueEstimate {
        value: s_probe * acc,
        tail_resolved: f.horizon() as f64 * s_probe >= 10.0,
    })
}

/// Residual of the difference rule at matched truncation K:
///
///   N{∇^n f} − [s^n F(s) − Σ_{j<n} s^{n−j−1} ∇^j f(a)]
///
/// over k = 1..=K with K the signal horizon. For |1−s| < 1 the magnitude is
/// bounded by the truncation tail M·|1−s|^K/(1−|1−s|).
pub fn diff_rule_residual(f: &SampledSignal, s: Complex64, n: usize) -> Result<Complex64> {
    let diffed = crate::operators::backward_diff(f, n)?;
    let terms = f.horizon();
    let lhs = n_transform_partial(&diffed, s, terms)?;
    let transform = n_transform_partial(f, s, terms)?;

    // ∇^j f(a) for j < n
    let mut initial_terms = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let mut delta = 0.0;
        let mut coeff = 1.0;
        for i in 0..=j {
            let v = f.value(f.origin() - i as i64).ok_or(Error::InsufficientHistory {
                missing: f.origin() - i as i64,
                start: f.start(),
            })?;
            delta += coeff * v;
            coeff *= -((j - i) as f64) / (i as f64 + 1.0); // next signed C(j,i)
        }
        initial_terms += s.powi((n - j - 1) as i32) * delta;
    }
    Ok(lhs - (s.powi(n as i32) * transform - initial_terms))
}

/// Transform of the zero-input response of the scalar system of order α:
/// Y(s) = Σ_{κ=0}^{n−1} b_κ s^{α−κ−1} / (s^α − λ) with n = ⌈α⌉.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseTransform {
    alpha: f64,
    lambda: f64,
    b: Vec<f64>,
}

impl ResponseTransform {
    pub fn new(alpha: f64, lambda: f64, b: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::NonPositiveAlpha(alpha));
        }
        if lambda == 1.0 {
            return Err(Error::LambdaOne);
        }
        let n = alpha.ceil() as usize;
        if b.len() != n {
            return Err(Error::InvalidArgument(format!(
                "order {alpha} takes {n} initial conditions, got {}",
                b.len()
            )));
        }
        Ok(Self { alpha, lambda, b })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn initial_conditions(&self) -> &[f64] {
        &self.b
    }
}

/// Evaluates Y(s) on the principal branch. Errors at s = 0 and at the pole
/// s^α = λ.
pub fn response_transform_eval(rt: &ResponseTransform, s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("response transform is undefined at s = 0".into()));
    }
    let s_alpha = s.powf(rt.alpha);
    let denom = s_alpha - rt.lambda;
    if denom.norm() == 0.0 {
        return Err(Error::TransformPole);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (kappa, &bk) in rt.b.iter().enumerate() {
        if bk != 0.0 {
            acc += bk * s.powf(rt.alpha - kappa as f64 - 1.0);
        }
    }
    Ok(acc / denom)
}
