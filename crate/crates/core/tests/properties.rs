use proptest::prelude::*;

use trimmed_edgeworth::edgeworth::{correction, expansion_cdf, invert_expansion, stationary_points};
use trimmed_edgeworth::estimators::{
    kernel_density_at_quantile, kernel_density_with_width, plugin_mu_s2, trimmed_mean,
};
use trimmed_edgeworth::io::{format_sample, parse_sample};
use trimmed_edgeworth::montecarlo::{empirical_cdf_sup_distance, two_sample_sup_distance};
use trimmed_edgeworth::ustat::indicator_pair_sum;
use trimmed_edgeworth::{
    compute_functionals, make_model, BiasEstimator, ExpansionCoefficients, ExpansionKind,
    PluginEstimates, SortedSample, TrimLevels, TrimSpec,
};

fn sample(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, 12..max)
}

fn levels() -> impl Strategy<Value = (f64, f64)> {
    (0.01f64..0.3, 0.7f64..0.99)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn coefs() -> impl Strategy<Value = ExpansionCoefficients> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, 10usize..5000, any::<bool>()).prop_map(
        |(l1, l2, b, n, stud)| {
            let kind = if stud { ExpansionKind::Studentized } else { ExpansionKind::Normalized };
            ExpansionCoefficients {
                lambda1: l1,
                lambda2: l2,
                bias_over_sigma: b,
                ..ExpansionCoefficients::zero(n, kind)
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permutation_invariance(mut x in sample(60), (a, b) in levels(), seed in any::<u64>()) {
        let spec = TrimSpec::new(a, b, x.len()).unwrap();
        let first = PluginEstimates::compute(&SortedSample::new(x.clone()).unwrap(), &spec, BiasEstimator::default());
        let mut s = seed;
        for i in (1..x.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            x.swap(i, (s >> 33) as usize % (i + 1));
        }
        let second = PluginEstimates::compute(&SortedSample::new(x).unwrap(), &spec, BiasEstimator::default());
        match (first, second) {
            (Ok(p), Ok(q)) => prop_assert_eq!(p, q),
            (p, q) => prop_assert_eq!(p.is_err(), q.is_err()),
        }
    }

    #[test]
    fn affine_equivariance(x in sample(60), (a, b) in levels(), c in 0.1f64..10.0, d in -50.0f64..50.0) {
        let spec = TrimSpec::new(a, b, x.len()).unwrap();
        let s0 = SortedSample::new(x.clone()).unwrap();
        let s1 = SortedSample::new(x.iter().map(|v| c * v + d).collect()).unwrap();
        let t0 = trimmed_mean(&s0, &spec).unwrap();
        let t1 = trimmed_mean(&s1, &spec).unwrap();
        prop_assert!(close(t1, c * t0 + d, 1e-10));
        let (_, v0) = plugin_mu_s2(&s0, &spec).unwrap();
        let (_, v1) = plugin_mu_s2(&s1, &spec).unwrap();
        prop_assert!(close(v1.sqrt(), c * v0.sqrt(), 1e-8));
        if v0 > 1e-6 {
            let p0 = PluginEstimates::compute(&s0, &spec, BiasEstimator::default()).unwrap();
            let p1 = PluginEstimates::compute(&s1, &spec, BiasEstimator::default()).unwrap();
            prop_assert!((p0.lambda1_hat - p1.lambda1_hat).abs() < 1e-6);
        }
    }

    #[test]
    fn shift_leaves_lambda2_unchanged(x in sample(60), (a, b) in levels(), d in -50.0f64..50.0) {
        let spec = TrimSpec::new(a, b, x.len()).unwrap();
        let s0 = SortedSample::new(x.clone()).unwrap();
        let s1 = SortedSample::new(x.iter().map(|v| v + d).collect()).unwrap();
        if let (Ok(p0), Ok(p1)) = (
            PluginEstimates::compute(&s0, &spec, BiasEstimator::default()),
            PluginEstimates::compute(&s1, &spec, BiasEstimator::default()),
        ) {
            if p0.s2_n > 1e-6 && p0.f_hat_alpha == p1.f_hat_alpha && p0.f_hat_beta == p1.f_hat_beta {
                prop_assert!((p0.lambda2_hat - p1.lambda2_hat).abs() < 1e-6 * (1.0 + p0.lambda2_hat.abs()));
            }
        }
    }

    #[test]
    fn kernel_width_identity(x in sample(60), c in 0.5f64..4.0, r in 1usize..12) {
        // c a power of two keeps the scaled window comparisons bitwise exact
        let c = 2f64.powi(c.log2().round() as i32);
        let n = x.len();
        let s0 = SortedSample::new(x.clone()).unwrap();
        let s1 = SortedSample::new(x.iter().map(|v| c * v).collect()).unwrap();
        let delta = (n as f64).powf(-0.25);
        let f0 = kernel_density_at_quantile(&s0, r).unwrap();
        let f1 = kernel_density_with_width(&s1, r, c * delta).unwrap();
        prop_assert!(close(f1, f0 / c, 1e-12));
    }

    #[test]
    fn trimmed_mean_is_monotone(x in sample(60), (a, b) in levels(), i in any::<prop::sample::Index>(), bump in 0.0f64..50.0) {
        let spec = TrimSpec::new(a, b, x.len()).unwrap();
        let t0 = trimmed_mean(&SortedSample::new(x.clone()).unwrap(), &spec).unwrap();
        let mut y = x;
        let j = i.index(y.len());
        y[j] += bump;
        let t1 = trimmed_mean(&SortedSample::new(y).unwrap(), &spec).unwrap();
        prop_assert!(t1 >= t0 - 1e-12 * t0.abs().max(1.0));
    }

    #[test]
    fn pair_sum_matches_double_sum(n in 2usize..50, frac in 0.0f64..1.0, p in 0.0f64..1.0) {
        let count = ((n as f64) * frac) as usize;
        let c: Vec<f64> = (0..n).map(|i| if i < count { 1.0 - p } else { -p }).collect();
        let mut brute = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                brute += c[i] * c[j];
            }
        }
        prop_assert!((indicator_pair_sum(n, count, p) - brute).abs() < 1e-9 * (1.0 + brute.abs()));
    }

    #[test]
    fn correction_is_even(c in coefs(), x in -8.0f64..8.0) {
        prop_assert_eq!(correction(&c, x), correction(&c, -x));
    }

    #[test]
    fn zero_correction_is_phi(n in 2usize..10_000, x in -8.0f64..8.0) {
        let c = ExpansionCoefficients::zero(n, ExpansionKind::Studentized);
        let phi = expansion_cdf(&ExpansionCoefficients::zero(n, ExpansionKind::Normalized), x);
        prop_assert_eq!(expansion_cdf(&c, x), phi);
        prop_assert!((phi + expansion_cdf(&c, -x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inversion_round_trip(c in coefs(), p in 0.001f64..0.999) {
        let inv = invert_expansion(&c, p).unwrap();
        if inv.warning.is_none() {
            prop_assert!((expansion_cdf(&c, inv.x) - p).abs() <= 1e-9);
        }
    }

    #[test]
    fn stationary_points_are_critical(c in coefs()) {
        for x in stationary_points(&c) {
            let h = 1e-5;
            let d = (expansion_cdf(&c, x + h) - expansion_cdf(&c, x - h)) / (2.0 * h);
            prop_assert!(d.abs() < 1e-6, "{x} {d}");
        }
    }

    #[test]
    fn sup_distance_is_bounded(a in prop::collection::vec(-5.0f64..5.0, 1..80), b in prop::collection::vec(-5.0f64..5.0, 1..80)) {
        let d = two_sample_sup_distance(&a, &b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, two_sample_sup_distance(&b, &a));
        prop_assert_eq!(two_sample_sup_distance(&a, &a), 0.0);
        let e = empirical_cdf_sup_distance(&a, |x| (x + 5.0) / 10.0);
        prop_assert!((0.0..=1.0).contains(&e));
    }

    #[test]
    fn sample_text_round_trip(x in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 0..50)) {
        let text = format_sample(&x, "values");
        let back = parse_sample(&text).unwrap();
        prop_assert_eq!(back.len(), x.len());
        for (a, b) in back.iter().zip(&x) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn parser_never_panics(text in ".{0,200}") {
        let _ = parse_sample(&text);
    }
}

#[test]
fn sup_distance_matches_grid_brute_force() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for case in 0..100 {
        let m = rng.random_range(1..40);
        let values: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
        let bend = rng.random_range(0.5..2.0);
        let target = |x: f64| x.clamp(0.0, 1.0).powf(bend);
        let exact = empirical_cdf_sup_distance(&values, target);

        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let ecdf = |x: f64| sorted.partition_point(|&v| v <= x) as f64 / m as f64;
        let left = |x: f64| sorted.partition_point(|&v| v < x) as f64 / m as f64;
        let mut brute = 0.0f64;
        for i in 0..=100_000 {
            let x = i as f64 / 100_000.0;
            brute = brute.max((ecdf(x) - target(x)).abs());
        }
        for &x in &sorted {
            brute = brute.max((ecdf(x) - target(x)).abs()).max((left(x) - target(x)).abs());
        }
        assert!((exact - brute).abs() < 1e-12, "case {case}: {exact} vs {brute}");
    }
}

#[test]
fn functionals_are_location_scale_equivariant() {
    let base = make_model("exponential", &[1.0]).unwrap();
    let lv = TrimLevels::new(0.1, 0.85).unwrap();
    let p0 = compute_functionals(&base, lv).unwrap();
    for (scale, shift) in [(1.0, 3.5), (2.5, 0.0), (0.4, -7.0)] {
        let moved = base.affine(scale, shift).unwrap();
        let p = compute_functionals(&moved, lv).unwrap();
        assert!(close(p.mu_trim, scale * p0.mu_trim + shift, 1e-9));
        assert!(close(p.mu_w, scale * p0.mu_w + shift, 1e-9));
        assert!(close(p.xi_alpha, scale * p0.xi_alpha + shift, 1e-12));
        assert!(close(p.xi_beta, scale * p0.xi_beta + shift, 1e-12));
        assert!(close(p.sigma2_w, scale * scale * p0.sigma2_w, 1e-9));
        assert!((p.lambda1 - p0.lambda1).abs() < 1e-8);
        assert!((p.lambda2 - p0.lambda2).abs() < 1e-8);
    }
}

#[test]
fn reflection_flips_lambdas() {
    let base = make_model("exponential", &[2.0]).unwrap();
    let mirrored = base.affine(-1.0, 0.0).unwrap();
    for (a, b) in [(0.1, 0.9), (0.05, 0.7), (0.2, 0.95)] {
        let p = compute_functionals(&base, TrimLevels::new(a, b).unwrap()).unwrap();
        let q = compute_functionals(&mirrored, TrimLevels::new(1.0 - b, 1.0 - a).unwrap()).unwrap();
        assert!((p.lambda1 + q.lambda1).abs() < 1e-8, "{} {}", p.lambda1, q.lambda1);
        assert!((p.lambda2 + q.lambda2).abs() < 1e-8, "{} {}", p.lambda2, q.lambda2);
        assert!(close(p.sigma2_w, q.sigma2_w, 1e-9));
    }
}
