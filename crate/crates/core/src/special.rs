//! Gamma-family primitives shared by every other module: signed log-gamma,
//! reciprocal gamma with its pole convention, rising factorials, generalized
//! binomial coefficients, and the fractional-sum coefficient table.
//!
//! All Gamma-ratio quantities are computed in log space with explicit sign
//! tracking. Direct Γ evaluations are never used for arguments beyond ~170,
//! where the result would overflow an `f64`; rising factorials routinely
//! reach such arguments.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln √(2π)
const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// True when `x` sits on a pole of Γ (0, −1, −2, …).
fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Lanczos approximation of ln Γ(x) for x ≥ 0.5.
fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + 7.5;
    LN_SQRT_TWO_PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// |sin(πx)| and the sign of sin(πx), computed on the reduced argument so
/// precision survives large |x|. Caller excludes integer x.
fn sin_pi_signed(x: f64) -> (f64, i32) {
    let f = x.floor();
    let z = x - f; // in [0, 1)
    let mag = if z > 0.5 { (PI * (1.0 - z)).sin() } else { (PI * z).sin() };
    let sign = if f.rem_euclid(2.0) == 0.0 { 1 } else { -1 };
    (mag, sign)
}

/// Returns `(ln |Γ(x)|, sign of Γ(x))`.
///
/// At the poles of Γ (x = 0, −1, −2, …) the sign is 0 and the log-magnitude
/// is `-inf`. Total over all finite inputs; NaN maps to `(NaN, 0)`.
pub fn log_gamma_signed(x: f64) -> (f64, i32) {
    if x.is_nan() {
        return (f64::NAN, 0);
    }
    if is_gamma_pole(x) {
        return (f64::NEG_INFINITY, 0);
    }
    if x >= 0.5 {
        return (lanczos_ln_gamma(x), 1);
    }
    // Reflection: Γ(x) Γ(1−x) = π / sin(πx), and 1−x ≥ 0.5 here.
    let (sin_mag, sin_sign) = sin_pi_signed(x);
    let lg = PI.ln() - sin_mag.ln() - lanczos_ln_gamma(1.0 - x);
    (lg, sin_sign)
}

/// Γ(x) for arguments where the result fits an `f64`; returns `+inf` at the
/// poles. Prefer [`log_gamma_signed`] / [`reciprocal_gamma`] for ratios.
pub fn gamma(x: f64) -> f64 {
    let (lg, sign) = log_gamma_signed(x);
    if sign == 0 {
        return f64::INFINITY;
    }
    sign as f64 * lg.exp()
}

/// 1/Γ(x), with 1/Γ(x) = 0 exactly at the poles of Γ (x = 0, −1, −2, …).
///
/// The zero convention is what makes order-β boundary values such as the
/// vanishing value of the order-2 function at its origin come out exact.
pub fn reciprocal_gamma(x: f64) -> f64 {
    let (lg, sign) = log_gamma_signed(x);
    if sign == 0 {
        return 0.0;
    }
    sign as f64 * (-lg).exp()
}

/// Rising factorial m^(q̄) = Γ(m + q) / Γ(m) for integer m ≥ 0 and real q.
///
/// Conventions at the boundary, all limits of Γ(p + q)/Γ(p) as p → m:
/// - q = 0 gives 1 for every m (empty product);
/// - m = 0 with q not a pole of Γ gives 0 (the 1/Γ(0) = 0 convention);
/// - m = 0 with q a negative integer −j gives (−1)^j / j! (pole over pole,
///   finite limit).
///
/// Errors when m ≥ 1 and m + q lands on a pole of Γ: the ratio is genuinely
/// infinite there.
pub fn rising_factorial(m: u64, q: f64) -> Result<f64> {
    if q == 0.0 {
        return Ok(1.0);
    }
    if m == 0 {
        if is_gamma_pole(q) {
            // Γ(p+q)/Γ(p) → (−1)^j / j! as p → 0 when q = −j
            let j = (-q) as u64;
            let mut v = 1.0;
            for i in 1..=j {
                v /= i as f64;
            }
            return Ok(if j % 2 == 1 { -v } else { v });
        }
        return Ok(0.0);
    }
    let x = m as f64 + q;
    if is_gamma_pole(x) {
        return Err(Error::Domain(format!(
            "rising_factorial({m}, {q}): Gamma pole at m + q = {x}"
        )));
    }
    let (lg_num, sign) = log_gamma_signed(x);
    let (lg_den, _) = log_gamma_signed(m as f64); // m ≥ 1, sign is +1
    Ok(sign as f64 * (lg_num - lg_den).exp())
}

/// Generalized binomial coefficient C(p, q) = Γ(p+1) / (Γ(q+1) Γ(p−q+1))
/// for real p and integer q ≥ 0.
///
/// Evaluated as the finite product ∏_{i<q} (p − i)/(i + 1), which is the
/// polynomial continuation of the Gamma formula and therefore total: every
/// apparent pole-over-pole case of the Gamma form (p a negative integer,
/// or an integer p with q > p) resolves to the product's value.
pub fn binom_general(p: f64, q: u64) -> f64 {
    let mut acc = 1.0;
    for i in 0..q {
        acc *= (p - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// The fractional-sum kernel coefficients c_j = Γ(j + α) / (Γ(α) Γ(j + 1))
/// for j = 0..=J, built once by the multiplicative recurrence
/// c_0 = 1, c_j = c_{j−1} (j − 1 + α)/j.
///
/// Equal to (−1)^j C(−α, j); strictly positive for α > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    alpha: f64,
    c: Vec<f64>,
}

impl CoefficientTable {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Coefficients c_0..=c_J.
    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn get(&self, j: usize) -> f64 {
        self.c[j]
    }
}

/// Builds the coefficient table for order α > 0 with entries c_0..=c_{j_max}.
pub fn sum_coefficients(alpha: f64, j_max: usize) -> Result<CoefficientTable> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let mut c = Vec::with_capacity(j_max + 1);
    c.push(1.0);
    for j in 1..=j_max {
        let prev = c[j - 1];
        c.push(prev * (j as f64 - 1.0 + alpha) / j as f64);
    }
    Ok(CoefficientTable { alpha, c })
}
