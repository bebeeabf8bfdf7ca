//! Time-domain response of the scalar linear fractional difference system
//!
//!   caputo_diff(y)(k) = λ y(k) + u(k),   λ ≠ 1,   ∇^κ y(a) = b_κ,
//!
//! computed two ways: an exact step-by-step recursion obtained from the
//! equivalent fractional sum equation, and the explicit Mittag-Leffler
//! superposition. The recursion is exact up to floating point for every
//! λ ≠ 1 and serves as the reference oracle; the explicit form needs the
//! series and is restricted to |λ| < 1 (or order 1, where it is closed).

use crate::error::{Error, Result};
use crate::mittag_leffler::ml_eval_sequence;
use crate::operators::caputo_diff;
use crate::signal::SampledSignal;
use crate::special::sum_coefficients;

/// The system definition: order α > 0, coefficient λ ≠ 1, initial instant a,
/// and the n = ⌈α⌉ initial conditions ∇^κ y(a) = b_κ.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    alpha: f64,
    lambda: f64,
    a: i64,
    b: Vec<f64>,
}

impl SystemSpec {
    pub fn new(alpha: f64, lambda: f64, a: i64, b: Vec<f64>) -> Result<Self> {
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
        Ok(Self { alpha, lambda, a, b })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn origin(&self) -> i64 {
        self.a
    }

    pub fn initial_conditions(&self) -> &[f64] {
        &self.b
    }

    /// n = ⌈α⌉, the number of initial conditions.
    pub fn order_count(&self) -> usize {
        self.b.len()
    }
}

/// Input sequence u on a+1 ..= a+K.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSignal {
    Zero,
    Table(Vec<f64>),
}

impl InputSignal {
    fn check_len(&self, horizon: usize) -> Result<()> {
        match self {
            InputSignal::Zero => Ok(()),
            InputSignal::Table(u) if u.len() == horizon => Ok(()),
            InputSignal::Table(u) => Err(Error::InvalidArgument(format!(
                "input table has {} entries but the horizon is {horizon}",
                u.len()
            ))),
        }
    }

    fn at(&self, idx: usize) -> f64 {
        match self {
            InputSignal::Zero => 0.0,
            InputSignal::Table(u) => u[idx],
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            InputSignal::Zero => true,
            InputSignal::Table(u) => u.iter().all(|&v| v == 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Explicit,
    Recursive,
}

/// A solved trajectory y(a+1 .. a+K) plus method metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    origin: i64,
    y: Vec<f64>,
    method: SolveMethod,
    max_series_truncation: f64,
    overflow_at: Option<i64>,
}

impl Response {
    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// y(a+1), y(a+2), … in grid order.
    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn value(&self, k: i64) -> Option<f64> {
        let m = k - self.origin;
        if m < 1 || m > self.y.len() as i64 {
            return None;
        }
        Some(self.y[(m - 1) as usize])
    }

    pub fn method(&self) -> SolveMethod {
        self.method
    }

    /// Largest Mittag-Leffler truncation bound seen while assembling an
    /// explicit solution; 0 for the recursion.
    pub fn max_series_truncation(&self) -> f64 {
        self.max_series_truncation
    }

    /// First grid point whose value left the f64 range, if the march blew
    /// up. The stored trajectory stops just before it.
    pub fn overflow_at(&self) -> Option<i64> {
        self.overflow_at
    }
}

/// Integer rising factorial m(m+1)…(m+κ−1).
fn rising_int(m: usize, kappa: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..kappa {
        v *= (m + i) as f64;
    }
    v
}

/// The initial-condition polynomial Σ_κ b_κ (k−a)^(ov(κ)) / κ! at k = a+m.
fn forcing_polynomial(b: &[f64], m: usize) -> f64 {
    let mut acc = 0.0;
    let mut factorial = 1.0;
    for (kappa, &bk) in b.iter().enumerate() {
        if kappa > 0 {
            factorial *= kappa as f64;
        }
        if bk != 0.0 {
            acc += bk * rising_int(m, kappa) / factorial;
        }
    }
    acc
}

/// Exact march of the equivalent sum equation: for k = a+1 ..= a+K,
///
///   y(k) = [y₀(k) + λ Σ_{j=1}^{k−a−1} c_j y(k−j) + (∇^{−α} u)(k)] / (1 − λ)
///
/// with y₀ the initial-condition polynomial and c_j the fractional-sum
/// coefficients of order α. Exact up to floating point for every λ ≠ 1;
/// this is the reference oracle for all other solution paths. If a value
/// leaves the f64 range the march stops there and records the grid point.
pub fn solve_recursive(spec: &SystemSpec, u: &InputSignal, horizon: usize) -> Result<Response> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    u.check_len(horizon)?;
    let table = sum_coefficients(spec.alpha, horizon.saturating_sub(1))?;
    let c = table.coeffs();
    let denom = 1.0 - spec.lambda;
    let mut y: Vec<f64> = Vec::with_capacity(horizon);
    let mut overflow_at = None;
    for m in 1..=horizon {
        let mut acc = forcing_polynomial(&spec.b, m);
        let mut feedback = 0.0;
        for j in 1..m {
            feedback += c[j] * y[m - 1 - j];
        }
        acc += spec.lambda * feedback;
        if !matches!(u, InputSignal::Zero) {
            let mut conv = 0.0;
            for j in 0..m {
                conv += c[j] * u.at(m - 1 - j);
            }
            acc += conv;
        }
        let value = acc / denom;
        if !value.is_finite() {
            overflow_at = Some(spec.a + m as i64);
            break;
        }
        y.push(value);
    }
    Ok(Response {
        origin: spec.a,
        y,
        method: SolveMethod::Recursive,
        max_series_truncation: 0.0,
        overflow_at,
    })
}

/// Explicit superposition
///
///   y(k) = Σ_κ b_κ F_{α,κ+1}(λ,k,a) + Σ_{τ=a+1}^{k} F_{α,α}(λ,τ,a) u(k−τ+a+1),
///
/// with every F evaluated by series (or closed form at order 1). Restricted
/// to |λ| < 1 unless the series is never consulted; otherwise delegates the
/// caller to [`solve_recursive`] via `SeriesNotConvergent`.
pub fn solve_explicit(
    spec: &SystemSpec,
    u: &InputSignal,
    horizon: usize,
    tol: f64,
) -> Result<Response> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    u.check_len(horizon)?;
    let k_last = spec.a + horizon as i64;
    let mut worst_bound = 0.0f64;

    let mut y = vec![0.0; horizon];
    for (kappa, &bk) in spec.b.iter().enumerate() {
        if bk == 0.0 {
            continue;
        }
        let beta = kappa as f64 + 1.0;
        let seq = ml_eval_sequence(spec.alpha, beta, spec.lambda, spec.a, k_last, tol)?;
        for (m, r) in seq.iter().enumerate() {
            y[m] += bk * r.value;
            worst_bound = worst_bound.max(r.truncation_bound);
        }
    }
    if !u.is_zero() {
        // kernel g(τ) = F_{α,α}(λ, a+τ, a), then a causal convolution with u
        let seq = ml_eval_sequence(spec.alpha, spec.alpha, spec.lambda, spec.a, k_last, tol)?;
        let kernel: Vec<f64> = seq
            .iter()
            .map(|r| {
                worst_bound = worst_bound.max(r.truncation_bound);
                r.value
            })
            .collect();
        for m in 1..=horizon {
            let mut conv = 0.0;
            for tau in 1..=m {
                conv += kernel[tau - 1] * u.at(m - tau);
            }
            y[m - 1] += conv;
        }
    }
    let mut overflow_at = None;
    if let Some(pos) = y.iter().position(|v| !v.is_finite()) {
        overflow_at = Some(spec.a + pos as i64 + 1);
        y.truncate(pos);
    }
    Ok(Response {
        origin: spec.a,
        y,
        method: SolveMethod::Explicit,
        max_series_truncation: worst_bound,
        overflow_at,
    })
}

/// The pre-origin samples y(a−n+1), …, y(a) implied by the initial
/// conditions: the unit lower-triangular system ∇^κ y(a) = b_κ solved
/// forward (∇^0 gives y(a) = b_0, ∇^1 gives y(a) − y(a−1) = b_1, …).
pub fn initial_history(spec: &SystemSpec) -> Vec<f64> {
    let n = spec.order_count();
    let mut back = vec![0.0; n]; // back[i] = y(a − i)
    back[0] = spec.b[0];
    for i in 1..n {
        // Σ_{j=0}^{i} (−1)^j C(i,j) y(a−j) = b_i
        let mut acc = 0.0;
        let mut coeff = 1.0; // (−1)^j C(i,j)
        for (j, item) in back.iter().enumerate().take(i) {
            acc += coeff * item;
            coeff *= -((i - j) as f64) / (j as f64 + 1.0);
        }
        // coeff is now (−1)^i C(i,i) = ±1
        back[i] = (spec.b[i] - acc) / coeff;
    }
    back.reverse();
    back
}

/// Plug-back verification: reconstructs the pre-origin history from the
/// initial conditions, applies the fractional difference of order α to the
/// candidate trajectory, and reports max_k |caputo(y)(k) − λ y(k) − u(k)|.
///
/// A perturbation of a single sample moves the residual by at least
/// |1 − λ| times its size, so a small residual certifies the trajectory.
pub fn residual(spec: &SystemSpec, u: &InputSignal, r: &Response) -> Result<f64> {
    let n = spec.order_count();
    let horizon = r.len();
    if horizon < n + 1 {
        return Err(Error::HorizonTooShort { needed: n + 1, have: horizon });
    }
    u.check_len(horizon).or_else(|_| match u {
        // allow a longer table than an overflow-truncated trajectory
        InputSignal::Table(t) if t.len() >= horizon => Ok(()),
        _ => Err(Error::InvalidArgument(format!(
            "input table shorter than the trajectory ({horizon} samples)"
        ))),
    })?;
    let signal = SampledSignal::with_history(spec.a, initial_history(spec), r.values().to_vec())?;
    let fractional = caputo_diff(&signal, spec.alpha)?;
    let mut worst = 0.0f64;
    for m in 1..=horizon {
        let k = spec.a + m as i64;
        let lhs = fractional.value(k).expect("caputo output covers the horizon");
        let rhs = spec.lambda * r.values()[m - 1] + u.at(m - 1);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mittag_leffler::{ml_eval, MlQuery};

    fn spec(alpha: f64, lambda: f64, b: Vec<f64>) -> SystemSpec {
        SystemSpec::new(alpha, lambda, 0, b).unwrap()
    }

    #[test]
    fn two_step_hand_recursion() {
        let s = spec(0.5, -0.2, vec![1.0]);
        let r = solve_recursive(&s, &InputSignal::Zero, 3).unwrap();
        // y(a+1) = 1/(1−λ), y(a+2) = (1 − 0.2·0.5·y(a+1))/1.2 = 55/72
        assert!((r.values()[0] - 5.0 / 6.0).abs() < 1e-15);
        assert!((r.values()[1] - 55.0 / 72.0).abs() < 1e-15);
    }

    #[test]
    fn order_one_is_geometric() {
        let s = spec(1.0, -0.2, vec![1.0]);
        let r = solve_recursive(&s, &InputSignal::Zero, 20).unwrap();
        for (m, &v) in r.values().iter().enumerate() {
            let want = 1.2f64.powi(-(m as i32 + 1));
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let s = spec(1.7, 0.4, vec![0.0, 0.0]);
        let r = solve_recursive(&s, &InputSignal::Zero, 50).unwrap();
        assert!(r.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn lambda_one_rejected() {
        assert!(matches!(
            SystemSpec::new(0.5, 1.0, 0, vec![1.0]),
            Err(Error::LambdaOne)
        ));
    }

    #[test]
    fn wrong_initial_condition_count_rejected() {
        assert!(SystemSpec::new(1.5, -0.2, 0, vec![1.0]).is_err());
        assert!(SystemSpec::new(0.5, -0.2, 0, vec![1.0, 0.0]).is_err());
        assert!(SystemSpec::new(2.0, -0.2, 0, vec![1.0, 0.0]).is_ok());
    }

    #[test]
    fn explicit_zero_input_is_ml_column() {
        let s = spec(0.7, -0.3, vec![1.0]);
        let r = solve_explicit(&s, &InputSignal::Zero, 30, 1e-12).unwrap();
        for m in 1..=30 {
            let f = ml_eval(
                &MlQuery { alpha: 0.7, beta: 1.0, lambda: -0.3, a: 0, k: m },
                1e-12,
            )
            .unwrap();
            assert!((r.value(m).unwrap() - f.value).abs() < 1e-13);
        }
        assert!(r.max_series_truncation() > 0.0);
    }

    #[test]
    fn lambda_zero_explicit_is_polynomial() {
        let s = spec(1.5, 0.0, vec![2.0, 0.5]);
        let r = solve_explicit(&s, &InputSignal::Zero, 10, 1e-12).unwrap();
        for m in 1..=10usize {
            let want = 2.0 + 0.5 * m as f64;
            assert!((r.value(m as i64).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_pulse_reproduces_kernel() {
        let mut table = vec![0.0; 40];
        table[0] = 1.0;
        let s = spec(0.6, -0.4, vec![0.0]);
        let pulse = InputSignal::Table(table);
        let explicit = solve_explicit(&s, &pulse, 40, 1e-12).unwrap();
        let recursive = solve_recursive(&s, &pulse, 40).unwrap();
        for m in 1..=40i64 {
            let f = ml_eval(
                &MlQuery { alpha: 0.6, beta: 0.6, lambda: -0.4, a: 0, k: m },
                1e-12,
            )
            .unwrap();
            assert!((explicit.value(m).unwrap() - f.value).abs() < 1e-12);
            assert!((recursive.value(m).unwrap() - f.value).abs() < 1e-10);
        }
    }

    #[test]
    fn explicit_outside_unit_disc_delegates() {
        let s = spec(0.5, 1.5, vec![1.0]);
        assert!(matches!(
            solve_explicit(&s, &InputSignal::Zero, 10, 1e-12),
            Err(Error::SeriesNotConvergent(_))
        ));
        // the recursion has no such restriction
        assert!(solve_recursive(&s, &InputSignal::Zero, 10).is_ok());
    }

    #[test]
    fn history_reconstruction() {
        let s = spec(0.5, -0.2, vec![2.0]);
        assert_eq!(initial_history(&s), vec![2.0]);
        let s = spec(1.5, -0.2, vec![1.0, 1.0]);
        assert_eq!(initial_history(&s), vec![0.0, 1.0]); // y(a−1), y(a)
        let s = spec(2.5, -0.2, vec![1.0, 0.0, 0.0]);
        assert_eq!(initial_history(&s), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn residual_certifies_recursion() {
        for (alpha, b) in [(0.5, vec![1.0]), (1.5, vec![1.0, 0.0]), (2.5, vec![1.0, 0.5, -0.2])] {
            let s = spec(alpha, -0.2, b);
            let r = solve_recursive(&s, &InputSignal::Zero, 100).unwrap();
            let res = residual(&s, &InputSignal::Zero, &r).unwrap();
            assert!(res < 1e-10, "alpha={alpha}: residual {res}");
        }
    }

    #[test]
    fn residual_spots_a_perturbation() {
        let s = spec(0.5, -0.2, vec![1.0]);
        let mut r = solve_recursive(&s, &InputSignal::Zero, 60).unwrap();
        r.y[30] += 1.0;
        let res = residual(&s, &InputSignal::Zero, &r).unwrap();
        assert!(res >= (1.0f64 - (-0.2)).abs() * 0.5, "residual {res}");
    }

    #[test]
    fn overflow_is_truncated_and_flagged() {
        // strong positive feedback: divergence reaches f64 limits quickly
        let s = SystemSpec::new(2.8, 1.2, 0, vec![1.0, 0.0, 0.0]).unwrap();
        let r = solve_recursive(&s, &InputSignal::Zero, 2000).unwrap();
        assert!(r.overflow_at().is_some());
        assert!(r.len() < 2000);
        assert!(r.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn superposition_of_initial_data_and_input() {
        let u_table: Vec<f64> = (0..60).map(|i| (0.3 * i as f64).sin()).collect();
        let both = solve_recursive(
            &spec(1.3, -0.4, vec![1.0, -0.5]),
            &InputSignal::Table(u_table.clone()),
            60,
        )
        .unwrap();
        let free = solve_recursive(&spec(1.3, -0.4, vec![1.0, -0.5]), &InputSignal::Zero, 60)
            .unwrap();
        let forced = solve_recursive(
            &spec(1.3, -0.4, vec![0.0, 0.0]),
            &InputSignal::Table(u_table),
            60,
        )
        .unwrap();
        for m in 0..60 {
            let sum = free.values()[m] + forced.values()[m];
            assert!((both.values()[m] - sum).abs() < 1e-10 * (1.0 + sum.abs()));
        }
    }
}
