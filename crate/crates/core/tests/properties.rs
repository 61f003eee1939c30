use framex::extremal::{bmn_oracle, cmn_lower_bound, markov_check, SearchBudget};
use framex::frame::{condition_numbers, FrameOperator, FrameSpec};
use framex::numerics::equispaced_points;
use framex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn operator(gamma: f64, n: usize, m: usize) -> FrameOperator<f64> {
    FrameOperator::new(FrameSpec::new(gamma, n).unwrap(), m).unwrap()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unregularised_fit_reproduces_frame_polynomials(
        gamma in 1.0f64..1.6,
        n in 1usize..14,
        eta in 2usize..4,
        raw in prop::collection::vec(-1.0f64..1.0, 14),
    ) {
        let spec = FrameSpec::new(gamma, n).unwrap();
        let coeffs = &raw[..=n];
        let op = FrameOperator::new(spec.clone(), eta * n).unwrap();
        let fit = op.fit_fn(0.0, |x| c(spec.series_real(coeffs, x))).unwrap();
        let pts = equispaced_points::<f64>(501);
        let scale = pts.iter().map(|&x| spec.series_real(coeffs, x).abs()).fold(1e-300, f64::max);
        let err = pts
            .iter()
            .map(|&x| (fit.value_at(x) - c(spec.series_real(coeffs, x))).norm())
            .fold(0.0, f64::max);
        prop_assert!(err <= 1e-10 * scale.max(1.0), "err {err}");
    }

    #[test]
    fn refitting_an_approximant_changes_nothing(
        gamma in 1.1f64..2.0,
        n in 4usize..24,
        eps_exp in -11i32..-3,
        omega in 1.0f64..20.0,
    ) {
        let op = operator(gamma, n, 2 * n);
        let eps = 10f64.powi(eps_exp);
        let first = op.fit_fn(eps, |x| c((omega * x).cos())).unwrap();
        let second = op.fit_fn(eps, |x| first.value_at(x)).unwrap();
        let pts = equispaced_points::<f64>(401);
        let d = max_diff(&first.evaluate(&pts), &second.evaluate(&pts));
        // rounding in the samples is amplified by at most 1/eps
        prop_assert!(d < 1e-13 / eps, "{d}");
    }

    #[test]
    fn fit_is_linear_in_the_samples(
        gamma in 1.0f64..2.0,
        n in 2usize..20,
        eps_exp in -14i32..-2,
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let op = operator(gamma, n, 3 * n);
        let eps = 10f64.powi(eps_exp);
        let f = |x: f64| 1.0 / (1.0 + 25.0 * x * x);
        let g = |x: f64| (3.0 * x).exp();
        let ff = op.fit_fn(eps, |x| c(f(x))).unwrap();
        let fg = op.fit_fn(eps, |x| c(g(x))).unwrap();
        let fab = op.fit_fn(eps, |x| c(a * f(x) + b * g(x))).unwrap();
        let pts = equispaced_points::<f64>(401);
        let combined: Vec<Complex64> = ff
            .evaluate(&pts)
            .iter()
            .zip(fg.evaluate(&pts))
            .map(|(p, q)| p * a + q * b)
            .collect();
        // sample rounding, at most |a| + e^3 |b| in size, is amplified by at most 1/eps
        let data = a.abs() + 3f64.exp() * b.abs();
        let d = max_diff(&combined, &fab.evaluate(&pts));
        prop_assert!(d <= 1e-13 * data.max(1e-3) / eps, "{d}");
    }

    #[test]
    fn rank_shrinks_as_the_threshold_grows(
        gamma in 1.0f64..2.5,
        n in 2usize..30,
        m_extra in 0usize..30,
    ) {
        let op = operator(gamma, n, n + m_extra);
        let ranks: Vec<usize> = (0..=16)
            .map(|k| op.fit_fn(10f64.powi(-k), |x| c(x)).unwrap().rank)
            .collect();
        prop_assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{ranks:?}");
        prop_assert!(*ranks.last().unwrap() <= n + 1);
    }

    #[test]
    fn condition_numbers_are_at_least_one(
        gamma in 1.0f64..2.0,
        n in 1usize..16,
        eta in 1usize..4,
    ) {
        // the unregularised operator reproduces constants
        let spec = FrameSpec::new(gamma, n).unwrap();
        let cn = condition_numbers(&spec, eta * n, 0.0, 2001).unwrap();
        // cond_2 comes from power iteration stopped at relative change 1e-8
        prop_assert!(cn.cond_2 >= 1.0 - 1e-7, "{}", cn.cond_2);
        prop_assert!(cn.cond_inf >= 1.0 - 1e-9, "{}", cn.cond_inf);
    }

    #[test]
    fn coefficient_norm_stays_within_the_threshold_bound(
        gamma in 1.1f64..2.0,
        n in 4usize..30,
        eps_exp in -12i32..-2,
        omega in 1.0f64..30.0,
    ) {
        // ||c||_2 <= ||b||_2 / eps with b the weighted samples
        let m = 2 * n;
        let op = operator(gamma, n, m);
        let eps = 10f64.powi(eps_exp);
        let fit = op.fit_fn(eps, |x| c((omega * x).sin())).unwrap();
        let coeff_norm = fit.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let data_norm = op
            .grid()
            .nodes()
            .iter()
            .map(|&x| (omega * x).sin().powi(2))
            .sum::<f64>()
            .sqrt()
            * (2.0 / (m + 1) as f64).sqrt();
        prop_assert!(coeff_norm <= data_norm / eps * (1.0 + 1e-10));
    }
}

#[test]
fn markov_bounds_hold_for_random_polynomials() {
    for (n, k, delta, seed) in [(8, 1, 0.5, 1), (15, 2, 0.4, 2), (25, 4, 0.6, 3)] {
        let r = markov_check(n, k, delta, 200, seed).unwrap();
        assert_eq!(r.markov_violations, 0, "n={n} k={k}");
        assert_eq!(r.sharp_violations, 0, "n={n} k={k}");
    }
}

#[test]
fn extended_growth_bound_is_feasible_and_below_the_node_only_growth() {
    let (m, n) = (8, 4);
    let unconstrained = bmn_oracle(m, n, 2001).unwrap().value;
    let budget = SearchBudget { restarts: 4, ..SearchBudget::default() };
    let nodes = equispaced_points::<f64>(m + 1);
    for eps in [1e-3, 1e-2, 1e-1] {
        let r = cmn_lower_bound(m, n, 1.4, eps, budget).unwrap();
        assert!(r.value >= 1.0 - 1e-12, "{}", r.value);
        assert!(r.value <= unconstrained * (1.0 + 1e-3), "{} vs {unconstrained}", r.value);
        let worst = nodes.iter().map(|&x| r.witness_value_at(x).abs()).fold(0.0, f64::max);
        assert!(worst <= 1.0 + 1e-12, "{worst}");
    }
}
