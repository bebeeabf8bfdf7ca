//! Nabla calculus on finite sampled sequences: the n-th backward difference,
//! the α-th fractional sum, and the Caputo-type fractional difference
//! (fractional sum of order n−α applied after the integer difference ∇^n).
//!
//! Operators are causal finite sums over the table values; they never
//! extrapolate, so outputs may carry less history than inputs.

use crate::error::{Error, Result};
use crate::signal::SampledSignal;
use crate::special::sum_coefficients;

/// Row n of Pascal's triangle as exact floats.
fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1.0);
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1.0);
        row = next;
    }
    row
}

/// n-th backward difference ∇^n f(k) = Σ_{j=0}^n (−1)^j C(n,j) f(k−j).
///
/// The output keeps the input origin and covers every grid point where all n
/// lookbacks exist; n = 0 is the identity. Errors when the main domain
/// `a+1 ..= a+K` cannot be covered, naming the first missing grid point.
pub fn backward_diff(f: &SampledSignal, n: usize) -> Result<SampledSignal> {
    if n == 0 {
        return Ok(f.clone());
    }
    let needed = f.origin() + 1 - n as i64;
    if f.start() > needed {
        return Err(Error::InsufficientHistory {
            missing: needed,
            start: f.start(),
        });
    }
    let row = binomial_row(n);
    let out_start = f.start() + n as i64;
    let mut values = Vec::with_capacity((f.end() - out_start + 1) as usize);
    for k in out_start..=f.end() {
        let mut acc = 0.0;
        for (j, &c) in row.iter().enumerate() {
            let term = c * f.value(k - j as i64).expect("in range by construction");
            acc += if j % 2 == 0 { term } else { -term };
        }
        values.push(acc);
    }
    let history_len = (f.origin() - out_start + 1).max(0) as usize;
    let samples = values.split_off(history_len);
    SampledSignal::with_history(f.origin(), values, samples)
}

/// α-th fractional sum: output at k ∈ a+1..=a+K is Σ_{j=0}^{k−a−1} c_j f(k−j)
/// with c_j = Γ(j+α)/(Γ(α)Γ(j+1)). Causal; uses only f(a+1..k).
pub fn frac_sum(f: &SampledSignal, alpha: f64) -> Result<SampledSignal> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let horizon = f.horizon();
    let table = sum_coefficients(alpha, horizon - 1)?;
    let c = table.coeffs();
    let samples = f.samples();
    let mut out = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        let mut acc = 0.0;
        for j in 0..m {
            acc += c[j] * samples[m - 1 - j];
        }
        out.push(acc);
    }
    SampledSignal::from_samples(f.origin(), out)
}

/// Caputo-type fractional difference of order α > 0: the order n−α fractional
/// sum of ∇^n f, with n = ⌈α⌉. For integer α the order-0 sum is the identity
/// and the result is exactly ∇^n f. Output covers `a+1 ..= a+K`.
///
/// Annihilates constants: ∇^n of a constant is zero before the sum is taken.
pub fn caputo_diff(f: &SampledSignal, alpha: f64) -> Result<SampledSignal> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let n = alpha.ceil() as usize;
    let diffed = backward_diff(f, n)?;
    if alpha == n as f64 {
        return Ok(diffed.main_only());
    }
    frac_sum(&diffed, n as f64 - alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, rising_factorial};

    fn squares(origin: i64, history: usize, horizon: usize) -> SampledSignal {
        SampledSignal::from_fn(origin, history, horizon, |k| (k * k) as f64).unwrap()
    }

    #[test]
    fn first_difference_of_squares() {
        let f = squares(0, 1, 6);
        let d = backward_diff(&f, 1).unwrap();
        for k in 1..=6 {
            assert_eq!(d.value(k), Some(2.0 * k as f64 - 1.0));
        }
    }

    #[test]
    fn second_difference_of_squares_is_two() {
        let f = squares(0, 2, 6);
        let d = backward_diff(&f, 2).unwrap();
        for k in 1..=6 {
            assert_eq!(d.value(k), Some(2.0));
        }
    }

    #[test]
    fn zeroth_difference_is_identity() {
        let f = squares(3, 1, 4);
        let d = backward_diff(&f, 0).unwrap();
        assert_eq!(d, f);
    }

    #[test]
    fn missing_history_is_named() {
        let f = SampledSignal::from_samples(0, vec![1.0, 2.0, 3.0]).unwrap();
        match backward_diff(&f, 2) {
            Err(Error::InsufficientHistory { missing, start }) => {
                assert_eq!(missing, -1);
                assert_eq!(start, 1);
            }
            other => panic!("expected InsufficientHistory, got {other:?}"),
        }
    }

    #[test]
    fn frac_sum_of_ones_order_one_counts() {
        let f = SampledSignal::from_samples(2, vec![1.0; 8]).unwrap();
        let s = frac_sum(&f, 1.0).unwrap();
        for k in 3..=10 {
            assert_eq!(s.value(k), Some((k - 2) as f64));
        }
    }

    #[test]
    fn frac_sum_of_ones_half_order() {
        let f = SampledSignal::from_samples(0, vec![1.0; 4]).unwrap();
        let s = frac_sum(&f, 0.5).unwrap();
        // c_0 + c_1 = 1 + 0.5
        assert!((s.value(2).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn frac_sum_of_ones_closed_form() {
        // Σ_{j<m} c_j = m^(ᾱ) / Γ(α+1) for f ≡ 1
        for &alpha in &[0.3, 0.5, 1.0, 1.7, 2.5] {
            let f = SampledSignal::from_samples(0, vec![1.0; 30]).unwrap();
            let s = frac_sum(&f, alpha).unwrap();
            let g = gamma(alpha + 1.0);
            for m in 1..=30u64 {
                let want = rising_factorial(m, alpha).unwrap() / g;
                let got = s.value(m as i64).unwrap();
                assert!(
                    (got - want).abs() <= 1e-10 * (1.0 + want.abs()),
                    "alpha={alpha} m={m}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn frac_sum_rejects_nonpositive_order() {
        let f = SampledSignal::from_samples(0, vec![1.0; 3]).unwrap();
        assert!(frac_sum(&f, 0.0).is_err());
        assert!(frac_sum(&f, -0.5).is_err());
    }

    #[test]
    fn caputo_of_constant_vanishes() {
        for &alpha in &[0.3f64, 0.5, 1.0, 1.5, 2.0, 2.7] {
            let n = alpha.ceil() as usize;
            let f = SampledSignal::from_fn(5, n, 10, |_| 4.25).unwrap();
            let d = caputo_diff(&f, alpha).unwrap();
            for k in 6..=15 {
                assert!(
                    d.value(k).unwrap().abs() < 1e-14,
                    "alpha={alpha} k={k}: {}",
                    d.value(k).unwrap()
                );
            }
        }
    }

    #[test]
    fn integer_order_caputo_is_backward_diff() {
        let f = squares(0, 2, 8);
        let c = caputo_diff(&f, 2.0).unwrap();
        let d = backward_diff(&f, 2).unwrap();
        for k in 1..=8 {
            assert_eq!(c.value(k), d.value(k));
        }
        assert_eq!(c.history_len(), 0);
    }

    #[test]
    fn operators_are_linear() {
        let f = SampledSignal::from_fn(0, 2, 10, |k| (k as f64).sin()).unwrap();
        let g = SampledSignal::from_fn(0, 2, 10, |k| 0.3 * k as f64 + 1.0).unwrap();
        let combo = SampledSignal::from_fn(0, 2, 10, |k| {
            2.0 * (k as f64).sin() - 0.5 * (0.3 * k as f64 + 1.0)
        })
        .unwrap();
        let lhs = frac_sum(&combo, 0.7).unwrap();
        let fa = frac_sum(&f, 0.7).unwrap();
        let ga = frac_sum(&g, 0.7).unwrap();
        for k in 1..=10 {
            let want = 2.0 * fa.value(k).unwrap() - 0.5 * ga.value(k).unwrap();
            assert!((lhs.value(k).unwrap() - want).abs() < 1e-12);
        }
    }
}
