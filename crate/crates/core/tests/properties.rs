//! Property-based checks: operator linearity and causality on arbitrary
//! signals, CSV round-trips on arbitrary floats, binomial consistency.

use nabla_fde::csv::{parse_sweep_csv, render_sweep_csv};
use nabla_fde::operators::{backward_diff, caputo_diff, frac_sum};
use nabla_fde::signal::SampledSignal;
use nabla_fde::solver::{solve_recursive, InputSignal, SystemSpec};
use nabla_fde::special::{binom_general, log_gamma_signed};
use proptest::prelude::*;

fn finite_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, len)
}

proptest! {
    #[test]
    fn frac_sum_is_linear(xs in finite_vec(4..40), ys in finite_vec(4..40), a in -5i64..5, c in -10.0f64..10.0) {
        let n = xs.len().min(ys.len());
        let f = SampledSignal::from_samples(a, xs[..n].to_vec()).unwrap();
        let g = SampledSignal::from_samples(a, ys[..n].to_vec()).unwrap();
        let combo: Vec<f64> = (0..n).map(|i| c * xs[i] + ys[i]).collect();
        let h = SampledSignal::from_samples(a, combo).unwrap();
        let hf = frac_sum(&h, 0.6).unwrap();
        let ff = frac_sum(&f, 0.6).unwrap();
        let gf = frac_sum(&g, 0.6).unwrap();
        for k in (a + 1)..=(a + n as i64) {
            let want = c * ff.value(k).unwrap() + gf.value(k).unwrap();
            let got = hf.value(k).unwrap();
            prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn operators_are_causal(xs in finite_vec(6..40), bump_at in 0usize..40, bump in -100.0f64..100.0) {
        let bump_at = bump_at % xs.len();
        prop_assume!(bump != 0.0);
        let f = SampledSignal::with_history(0, vec![0.0, 0.0], xs.clone()).unwrap();
        let mut ys = xs.clone();
        ys[bump_at] += bump;
        let g = SampledSignal::with_history(0, vec![0.0, 0.0], ys).unwrap();
        for (pf, pg) in [
            (frac_sum(&f, 0.8).unwrap(), frac_sum(&g, 0.8).unwrap()),
            (backward_diff(&f, 1).unwrap(), backward_diff(&g, 1).unwrap()),
            (caputo_diff(&f, 1.3).unwrap(), caputo_diff(&g, 1.3).unwrap()),
        ] {
            for k in 1..=(bump_at as i64) {
                prop_assert_eq!(pf.value(k), pg.value(k));
            }
        }
    }

    #[test]
    fn sweep_csv_round_trips_bit_exactly(raw in finite_vec(1..30), param in -3.0f64..3.0) {
        let spec = SystemSpec::new(0.5, -0.3, 0, vec![raw[0]]).unwrap();
        let r = solve_recursive(&spec, &InputSignal::Table({
            let mut u = raw.clone();
            u[0] = 0.0;
            u
        }), raw.len()).unwrap();
        let text = render_sweep_csv(&[(param, &r)]);
        let rows = parse_sweep_csv(&text).unwrap();
        prop_assert_eq!(rows.len(), r.len());
        for (i, row) in rows.iter().enumerate() {
            prop_assert_eq!(row.sweep_param.to_bits(), param.to_bits());
            prop_assert_eq!(row.y.to_bits(), r.values()[i].to_bits());
        }
    }

    #[test]
    fn binomial_product_matches_gamma_formula(p in -8.0f64..8.0, q in 0u64..12) {
        // wherever the Gamma form is finite the product form must agree
        let (lg_p1, s1) = log_gamma_signed(p + 1.0);
        let (lg_q1, _) = log_gamma_signed(q as f64 + 1.0);
        let (lg_pq, s3) = log_gamma_signed(p - q as f64 + 1.0);
        prop_assume!(s1 != 0 && s3 != 0);
        let direct = (s1 * s3) as f64 * (lg_p1 - lg_q1 - lg_pq).exp();
        let product = binom_general(p, q);
        prop_assert!(
            (product - direct).abs() <= 1e-10 * (1.0 + direct.abs()),
            "p={} q={}: {} vs {}", p, q, product, direct
        );
    }

    #[test]
    fn recursion_is_deterministic(alpha in 0.1f64..2.9, lambda in -0.95f64..0.95, b0 in -2.0f64..2.0) {
        prop_assume!((lambda - 1.0).abs() > 1e-9);
        let n = alpha.ceil() as usize;
        let mut b = vec![0.0; n];
        b[0] = b0;
        let spec = SystemSpec::new(alpha, lambda, 0, b).unwrap();
        let r1 = solve_recursive(&spec, &InputSignal::Zero, 64).unwrap();
        let r2 = solve_recursive(&spec, &InputSignal::Zero, 64).unwrap();
        for (x, y) in r1.values().iter().zip(r2.values()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
