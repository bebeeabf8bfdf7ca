//! Zero-input behavior classification from pole geometry.
//!
//! A sequence is convergent iff every pole of its transform lies outside the
//! circle |s − 1| = 1; poles inside force divergence, poles on the circle
//! leave constant, oscillating, or divergent behavior. The scalar system of
//! order α with coefficient λ has the single pole λ^{1/α} (principal branch),
//! which for λ < 0 carries phase −π/α; when α < 1 that phase leaves the
//! principal sheet entirely and the pole set is empty, so the circle test is
//! vacuously satisfied.

use crate::error::{Error, Result};
use crate::solver::Response;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default tolerance for the boundary bands of the analytic classifier.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Verdict of the analytic classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Divergent,
    Convergent,
    MonotoneConvergent,
    ConvergentPossibleOvershoot,
    Constant,
    PolynomialDivergent,
    Oscillating,
    /// Pole sits on the stability circle and no sharper rule applies.
    OnBoundary,
}

impl Verdict {
    /// True for every verdict that implies y(k) → 0 or stays bounded with a
    /// convergent tail.
    pub fn is_convergent(self) -> bool {
        matches!(
            self,
            Verdict::Convergent
                | Verdict::MonotoneConvergent
                | Verdict::ConvergentPossibleOvershoot
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Divergent => "Divergent",
            Verdict::Convergent => "Convergent",
            Verdict::MonotoneConvergent => "MonotoneConvergent",
            Verdict::ConvergentPossibleOvershoot => "ConvergentPossibleOvershoot",
            Verdict::Constant => "Constant",
            Verdict::PolynomialDivergent => "PolynomialDivergent",
            Verdict::Oscillating => "Oscillating",
            Verdict::OnBoundary => "OnBoundary",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Position relative to the stability circle |s − 1| = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoleRegion {
    InsideCircle,
    OutsideCircle,
    OnCircle,
}

impl std::fmt::Display for PoleRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PoleRegion::InsideCircle => "InsideCircle",
            PoleRegion::OutsideCircle => "OutsideCircle",
            PoleRegion::OnCircle => "OnCircle",
        })
    }
}

/// Classification result: verdict plus the pole evidence it rests on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BehaviorClass {
    pub verdict: Verdict,
    /// λ^{1/α} on the principal branch; `None` when λ = 0 (no such pole).
    pub pole: Option<Complex64>,
    /// Whether the root of s^α = λ actually lies on the principal sheet
    /// (false for λ < 0 with α < 1, and for λ = 0).
    pub pole_on_sheet: bool,
    /// Effective stability-circle classification. When no pole exists on the
    /// principal sheet the test is vacuous and reads OutsideCircle; when
    /// λ = 0 the transform's only pole is s = 0, which sits on the circle.
    pub pole_region: PoleRegion,
}

/// The pole λ^{1/α} of the response transform: the positive real root for
/// λ > 0, and |λ|^{1/α} e^{−iπ/α} for λ < 0. Returns `None` for λ = 0,
/// which has no such pole.
pub fn principal_pole(alpha: f64, lambda: f64) -> Option<Complex64> {
    debug_assert!(alpha > 0.0);
    if lambda == 0.0 {
        None
    } else if lambda > 0.0 {
        Some(Complex64::new(lambda.powf(1.0 / alpha), 0.0))
    } else {
        Some(Complex64::from_polar((-lambda).powf(1.0 / alpha), -PI / alpha))
    }
}

/// Whether the root of s^α = λ lies on the principal sheet (arg s ∈ (−π, π]).
/// For λ < 0 the root's phase is ±π/α, which fits only when α ≥ 1.
pub fn pole_on_principal_sheet(alpha: f64, lambda: f64) -> bool {
    debug_assert!(alpha > 0.0);
    if lambda == 0.0 {
        false
    } else if lambda > 0.0 {
        true
    } else {
        alpha >= 1.0
    }
}

/// Position of s relative to the circle |s − 1| = 1, with a tolerance band
/// around the boundary.
pub fn region_test(s: Complex64, boundary_tol: f64) -> PoleRegion {
    let d = (s - Complex64::new(1.0, 0.0)).norm();
    if d > 1.0 + boundary_tol {
        PoleRegion::OutsideCircle
    } else if d < 1.0 - boundary_tol {
        PoleRegion::InsideCircle
    } else {
        PoleRegion::OnCircle
    }
}

/// Coarse stability reading of a pole region: outside is convergent, inside
/// is divergent, on the circle is undecidable without sharper information.
pub fn region_verdict(region: PoleRegion) -> Verdict {
    match region {
        PoleRegion::OutsideCircle => Verdict::Convergent,
        PoleRegion::InsideCircle => Verdict::Divergent,
        PoleRegion::OnCircle => Verdict::OnBoundary,
    }
}

/// The |λ| threshold 2^α cos^α(π/α) separating convergence from divergence
/// for λ < 0, α > 2: the chord of the stability circle cut by the ray at
/// angle π/α has length 2cos(π/α).
pub fn critical_radius(alpha: f64) -> Result<f64> {
    if !(alpha > 2.0) {
        return Err(Error::Domain(format!(
            "critical radius needs alpha > 2 (pole ray in the right half-plane), got {alpha}"
        )));
    }
    Ok((alpha * (2.0f64.ln() + (PI / alpha).cos().ln())).exp())
}

/// Analytic classification of the zero-input response from (α, λ, b).
///
/// Decision tree:
/// - λ = 0: `Constant` when only b_0 may be nonzero, else
///   `PolynomialDivergent` (the response is a rising-factorial polynomial).
/// - λ > 0: `Divergent` below 2^α, `Convergent` above; on the 2^α boundary
///   (within `boundary_tol`) `Oscillating` for α ≤ 1 and `Convergent` for
///   α > 1.
/// - λ < 0: `MonotoneConvergent` for α ≤ 1, `ConvergentPossibleOvershoot`
///   for 1 < α ≤ 2; for α > 2 the critical radius decides, with
///   `Oscillating` on the boundary band.
///
/// The overshoot verdict is deliberately hedged: for mixed initial
/// conditions the overshoot can vanish, so presence is never asserted.
pub fn classify_zero_input(
    alpha: f64,
    lambda: f64,
    b: &[f64],
    boundary_tol: f64,
) -> Result<BehaviorClass> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if lambda == 1.0 {
        return Err(Error::LambdaOne);
    }
    if !(boundary_tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "boundary_tol must be nonnegative, got {boundary_tol}"
        )));
    }
    let n = alpha.ceil() as usize;
    if b.len() != n {
        return Err(Error::InvalidArgument(format!(
            "order {alpha} takes {n} initial conditions, got {}",
            b.len()
        )));
    }

    let pole = principal_pole(alpha, lambda);
    let on_sheet = pole_on_principal_sheet(alpha, lambda);

    if lambda == 0.0 {
        let verdict = if b.iter().skip(1).all(|&bk| bk == 0.0) {
            Verdict::Constant
        } else {
            Verdict::PolynomialDivergent
        };
        return Ok(BehaviorClass {
            verdict,
            pole: None,
            pole_on_sheet: false,
            pole_region: PoleRegion::OnCircle,
        });
    }

    let (verdict, boundary) = if lambda > 0.0 {
        let threshold = 2.0f64.powf(alpha);
        if (lambda - threshold).abs() <= boundary_tol {
            let v = if alpha <= 1.0 { Verdict::Oscillating } else { Verdict::Convergent };
            (v, true)
        } else if lambda < threshold {
            (Verdict::Divergent, false)
        } else {
            (Verdict::Convergent, false)
        }
    } else if alpha <= 1.0 {
        (Verdict::MonotoneConvergent, false)
    } else if alpha <= 2.0 {
        (Verdict::ConvergentPossibleOvershoot, false)
    } else {
        let crit = critical_radius(alpha)?;
        if (lambda.abs() - crit).abs() <= boundary_tol {
            (Verdict::Oscillating, true)
        } else if lambda.abs() < crit {
            (Verdict::Divergent, false)
        } else {
            (Verdict::Convergent, false)
        }
    };

    let pole_region = if boundary {
        PoleRegion::OnCircle
    } else if !on_sheet {
        PoleRegion::OutsideCircle // vacuous: no pole on the principal sheet
    } else {
        region_test(pole.expect("lambda != 0"), boundary_tol)
    };

    Ok(BehaviorClass { verdict, pole, pole_on_sheet: on_sheet, pole_region })
}

/// Verdict of the data-driven classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmpiricalVerdict {
    Convergent,
    MonotoneConvergent,
    Divergent,
    Inconclusive,
}

impl std::fmt::Display for EmpiricalVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EmpiricalVerdict::Convergent => "Convergent",
            EmpiricalVerdict::MonotoneConvergent => "MonotoneConvergent",
            EmpiricalVerdict::Divergent => "Divergent",
            EmpiricalVerdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalClass {
    pub verdict: EmpiricalVerdict,
    /// A sign change of y relative to sign(y(a+1)) was observed.
    pub overshoot: bool,
}

/// Default tail threshold for [`empirical_classify`]: the last tenth of the
/// trajectory must stay below this fraction of the overall peak to count as
/// convergent. Generous because fractional tails decay algebraically.
pub const DEFAULT_TOL_ZERO: f64 = 0.5;

/// Default one-sidedness slack for the monotonicity check.
pub const DEFAULT_TOL_MONO: f64 = 1e-9;

/// Classifies a solved trajectory from the data alone.
///
/// Divergent when the tail tenth exceeds 10× the early maximum (or the march
/// overflowed); convergent when the tail tenth stays below `tol_zero` of the
/// global peak; monotone convergent additionally requires every backward
/// difference on one side of ±`tol_mono`. Inconclusive otherwise. Requires a
/// horizon of at least 500 unless the trajectory already overflowed.
pub fn empirical_classify(
    r: &Response,
    tol_zero: f64,
    tol_mono: f64,
) -> Result<EmpiricalClass> {
    let y = r.values();
    if r.overflow_at().is_some() {
        return Ok(EmpiricalClass {
            verdict: EmpiricalVerdict::Divergent,
            overshoot: has_overshoot(y),
        });
    }
    if y.len() < 500 {
        return Err(Error::HorizonTooShort { needed: 500, have: y.len() });
    }
    let max_abs = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return Ok(EmpiricalClass {
            verdict: EmpiricalVerdict::Convergent,
            overshoot: false,
        });
    }
    let tenth = (y.len() / 10).max(1);
    let early_max = y[..tenth].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail_max = y[y.len() - tenth..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let overshoot = has_overshoot(y);

    if tail_max > 10.0 * early_max {
        return Ok(EmpiricalClass { verdict: EmpiricalVerdict::Divergent, overshoot });
    }
    if tail_max < tol_zero * max_abs {
        let one_sided = |sign: f64| y.windows(2).all(|w| sign * (w[1] - w[0]) <= tol_mono);
        let monotone = one_sided(1.0) || one_sided(-1.0);
        let verdict = if monotone && !overshoot {
            EmpiricalVerdict::MonotoneConvergent
        } else {
            EmpiricalVerdict::Convergent
        };
        return Ok(EmpiricalClass { verdict, overshoot });
    }
    Ok(EmpiricalClass { verdict: EmpiricalVerdict::Inconclusive, overshoot })
}

fn has_overshoot(y: &[f64]) -> bool {
    let Some(&first) = y.first() else { return false };
    if first == 0.0 {
        return false;
    }
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = first.signum();
    y.iter().any(|&v| v * sign < -1e-12 * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_recursive, InputSignal, SystemSpec};

    #[test]
    fn principal_pole_values() {
        // λ > 0: plain real root
        let p = principal_pole(0.5, 3.0).unwrap();
        assert!((p.re - 9.0).abs() < 1e-12 && p.im == 0.0);
        // λ < 0, α = 2: unit magnitude at phase −π/2
        let p = principal_pole(2.0, -1.0).unwrap();
        assert!((p.norm() - 1.0).abs() < 1e-14);
        assert!((p.arg() + PI / 2.0).abs() < 1e-14);
        // α = 1 recovers λ itself
        let p = principal_pole(1.0, -0.2).unwrap();
        assert!((p.re + 0.2).abs() < 1e-14 && p.im.abs() < 1e-14);
        assert!(principal_pole(0.5, 0.0).is_none());
    }

    #[test]
    fn sheet_membership() {
        assert!(pole_on_principal_sheet(0.5, 2.0));
        assert!(pole_on_principal_sheet(1.0, -0.2));
        assert!(pole_on_principal_sheet(2.5, -0.5));
        assert!(!pole_on_principal_sheet(0.5, -0.2));
        assert!(!pole_on_principal_sheet(0.99, -0.9));
        assert!(!pole_on_principal_sheet(1.5, 0.0));
    }

    #[test]
    fn region_test_cases() {
        assert_eq!(region_test(Complex64::new(3.0, 0.0), 1e-9), PoleRegion::OutsideCircle);
        assert_eq!(region_test(Complex64::new(1.0, 0.0), 1e-9), PoleRegion::InsideCircle);
        assert_eq!(region_test(Complex64::new(2.0, 0.0), 1e-9), PoleRegion::OnCircle);
        assert_eq!(region_test(Complex64::new(0.0, 0.0), 1e-9), PoleRegion::OnCircle);
    }

    #[test]
    fn critical_radius_values() {
        assert!((critical_radius(3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((critical_radius(4.0).unwrap() - 4.0).abs() < 1e-12);
        // frozen from exp(α ln 2 + α ln cos(π/α))
        assert!((critical_radius(2.5).unwrap() - 0.300_283_106_000_777_7).abs() < 1e-13);
        assert!(critical_radius(2.0).is_err());
        assert!(critical_radius(1.5).is_err());
    }

    #[test]
    fn classify_examples() {
        let tol = DEFAULT_BOUNDARY_TOL;
        assert_eq!(
            classify_zero_input(0.5, 0.5, &[1.0], tol).unwrap().verdict,
            Verdict::Divergent
        );
        assert_eq!(
            classify_zero_input(0.5, -0.2, &[1.0], tol).unwrap().verdict,
            Verdict::MonotoneConvergent
        );
        assert_eq!(
            classify_zero_input(1.5, -0.2, &[1.0, 0.0], tol).unwrap().verdict,
            Verdict::ConvergentPossibleOvershoot
        );
        assert_eq!(
            classify_zero_input(2.5, -0.2, &[1.0, 0.0, 0.0], tol).unwrap().verdict,
            Verdict::Divergent // 0.2 below the critical radius 0.3003
        );
        assert_eq!(
            classify_zero_input(0.3, 0.0, &[1.0], tol).unwrap().verdict,
            Verdict::Constant
        );
        assert_eq!(
            classify_zero_input(0.5, 2.0f64.powf(0.5), &[1.0], tol).unwrap().verdict,
            Verdict::Oscillating
        );
        assert_eq!(
            classify_zero_input(1.5, 2.0f64.powf(1.5), &[1.0, 0.0], tol).unwrap().verdict,
            Verdict::Convergent
        );
        assert!(matches!(
            classify_zero_input(0.5, 1.0, &[1.0], tol),
            Err(Error::LambdaOne)
        ));
    }

    #[test]
    fn classify_lambda_zero_polynomial() {
        let c = classify_zero_input(1.5, 0.0, &[1.0, 0.5], DEFAULT_BOUNDARY_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::PolynomialDivergent);
        assert_eq!(c.pole, None);
        assert_eq!(c.pole_region, PoleRegion::OnCircle);
        let c = classify_zero_input(1.5, 0.0, &[1.0, 0.0], DEFAULT_BOUNDARY_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::Constant);
    }

    #[test]
    fn critical_boundary_oscillates() {
        let crit = critical_radius(2.5).unwrap();
        let c = classify_zero_input(2.5, -crit, &[1.0, 0.0, 0.0], 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Oscillating);
        assert_eq!(c.pole_region, PoleRegion::OnCircle);
    }

    #[test]
    fn convergent_verdicts_sit_outside_the_circle() {
        // off the boundary bands the verdict and the circle test must agree
        for &(alpha, lambda) in &[
            (0.5f64, -0.2f64),
            (1.5, -0.2),
            (2.5, -0.5),
            (0.5, 2.0),
            (1.0, 3.0),
            (2.8, -0.9),
        ] {
            let n = alpha.ceil() as usize;
            let b: Vec<f64> = std::iter::once(1.0).chain(std::iter::repeat(0.0)).take(n).collect();
            let c = classify_zero_input(alpha, lambda, &b, 1e-9).unwrap();
            if c.verdict.is_convergent() {
                assert_eq!(c.pole_region, PoleRegion::OutsideCircle, "({alpha}, {lambda})");
            }
            if c.verdict == Verdict::Divergent {
                assert_eq!(c.pole_region, PoleRegion::InsideCircle, "({alpha}, {lambda})");
            }
        }
    }

    fn solved(alpha: f64, lambda: f64, b: Vec<f64>, horizon: usize) -> Response {
        let spec = SystemSpec::new(alpha, lambda, 1, b).unwrap();
        solve_recursive(&spec, &InputSignal::Zero, horizon).unwrap()
    }

    #[test]
    fn empirical_monotone_geometric() {
        let r = solved(1.0, -0.2, vec![1.0], 600);
        let c = empirical_classify(&r, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO).unwrap();
        assert_eq!(c.verdict, EmpiricalVerdict::MonotoneConvergent);
        assert!(!c.overshoot);
    }

    #[test]
    fn empirical_divergent_tail() {
        let r = solved(0.5, 0.5, vec![1.0], 500);
        let c = empirical_classify(&r, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO).unwrap();
        assert_eq!(c.verdict, EmpiricalVerdict::Divergent);
    }

    #[test]
    fn empirical_zero_is_convergent() {
        let r = solved(0.5, -0.2, vec![0.0], 500);
        let c = empirical_classify(&r, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO).unwrap();
        assert_eq!(c.verdict, EmpiricalVerdict::Convergent);
        assert!(!c.overshoot);
    }

    #[test]
    fn empirical_overshoot_detected() {
        let r = solved(1.5, -0.2, vec![1.0, 0.0], 600);
        let c = empirical_classify(&r, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO).unwrap();
        assert!(c.overshoot);
        assert_eq!(c.verdict, EmpiricalVerdict::Convergent);
    }

    #[test]
    fn empirical_short_horizon_rejected() {
        let r = solved(1.0, -0.2, vec![1.0], 100);
        assert!(matches!(
            empirical_classify(&r, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO),
            Err(Error::HorizonTooShort { .. })
        ));
    }
}
