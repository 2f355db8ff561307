//! Statistics of one observed sample: the trimmed mean, its Studentized
//! version and the plug-in estimates that feed the empirical expansions.
//!
//! The plug-in moments weight the order statistics in three blocks,
//! `k/N` on `X_{k:N}`, `1/N` on each of `X_{k+1:N} .. X_{m-1:N}` and
//! `(N-m+1)/N` on `X_{m:N}`, which is the moment of the sample Winsorized at
//! its own `k`-th and `m`-th order statistics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::TrimSpec;

/// Observations in nondecreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample {
    values: Vec<f64>,
}

impl SortedSample {
    /// Sorts `values` (stable) after checking there are at least two finite
    /// observations.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidSample(format!(
                "need at least 2 observations, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidSample(format!("non-finite value {bad}")));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `X_{i:N}` with 1-based `i`.
    #[inline]
    pub fn order_stat(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

fn check_size(sample: &SortedSample, spec: &TrimSpec) -> Result<()> {
    if sample.n() != spec.n {
        return Err(Error::InvalidSample(format!(
            "trim spec built for n = {} but sample has {} values",
            spec.n,
            sample.n()
        )));
    }
    Ok(())
}

/// Average of the order statistics `X_{k:N} .. X_{m:N}`.
pub fn trimmed_mean(sample: &SortedSample, spec: &TrimSpec) -> Result<f64> {
    check_size(sample, spec)?;
    Ok(trimmed_mean_sorted(sample.values(), spec))
}

#[inline]
pub(crate) fn trimmed_mean_sorted(x: &[f64], spec: &TrimSpec) -> f64 {
    x[spec.k - 1..spec.m].iter().sum::<f64>() / spec.kept() as f64
}

/// Clamps every value into `[lower, upper]`.
pub fn winsorize_sample(sample: &SortedSample, lower: f64, upper: f64) -> Result<SortedSample> {
    if !(lower <= upper) {
        return Err(Error::InvalidSample(format!(
            "winsorization bounds reversed: {lower} > {upper}"
        )));
    }
    let values = sample
        .values()
        .iter()
        .map(|&x| {
            if x <= lower {
                lower
            } else if x > upper {
                upper
            } else {
                x
            }
        })
        .collect();
    Ok(SortedSample { values })
}

/// Three-block weighted sum of `g(X_{i:N})`.
#[inline]
fn block_sum(x: &[f64], spec: &TrimSpec, g: impl Fn(f64) -> f64) -> f64 {
    let n = x.len() as f64;
    let (k, m) = (spec.k, spec.m);
    let middle: f64 = if m > k + 1 {
        x[k..m - 1].iter().map(|&v| g(v)).sum()
    } else {
        0.0
    };
    (k as f64 / n) * g(x[k - 1]) + middle / n + ((x.len() - m + 1) as f64 / n) * g(x[m - 1])
}

/// Plug-in estimates of `mu_W` and `sigma_W^2`.
///
/// For `k < m` the weights sum to one and the variance is accumulated in
/// central form. For `k = m` the boundary blocks share one order statistic,
/// the weights sum to `(N+1)/N` and the literal second-moment formula goes
/// negative; it is reported as zero.
pub fn plugin_mu_s2(sample: &SortedSample, spec: &TrimSpec) -> Result<(f64, f64)> {
    check_size(sample, spec)?;
    Ok(mu_s2_sorted(sample.values(), spec))
}

#[inline]
pub(crate) fn mu_s2_sorted(x: &[f64], spec: &TrimSpec) -> (f64, f64) {
    let mu = block_sum(x, spec, |v| v);
    let s2 = if spec.m > spec.k {
        block_sum(x, spec, |v| (v - mu) * (v - mu))
    } else {
        block_sum(x, spec, |v| v * v) - mu * mu
    };
    (mu, s2.max(0.0))
}

/// Plug-in third central Winsorized moment `gamma3_W`.
pub fn plugin_gamma3(sample: &SortedSample, spec: &TrimSpec) -> Result<f64> {
    check_size(sample, spec)?;
    let (mu, _) = mu_s2_sorted(sample.values(), spec);
    Ok(block_sum(sample.values(), spec, |v| (v - mu).powi(3)))
}

/// `lambda1_hat = gamma3_hat / S_N^3`.
pub fn lambda1_hat(sample: &SortedSample, spec: &TrimSpec) -> Result<f64> {
    check_size(sample, spec)?;
    let (mu, s2) = mu_s2_sorted(sample.values(), spec);
    if s2 <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let g3 = block_sum(sample.values(), spec, |v| (v - mu).powi(3));
    Ok(g3 / s2.powf(1.5))
}

/// Count of observations `X_i` satisfying `pred(|X_i - X_{r:N}|)`, for a
/// predicate that is monotone in the distance.
fn count_near(x: &[f64], r: usize, pred: impl Fn(f64) -> bool) -> usize {
    let centre = x[r - 1];
    let below = &x[..r - 1];
    let above = &x[r..];
    let first_in = below.partition_point(|&v| !pred(centre - v));
    let past_in = above.partition_point(|&v| pred(v - centre));
    (below.len() - first_in) + past_in + 1
}

/// Step-kernel density estimate at `X_{r:N}` with window `delta = N^{-1/4}`:
/// `N^{-3/4} #{i : 2 N^{1/4} |X_i - X_{r:N}| <= 1}`.
pub fn kernel_density_at_quantile(sample: &SortedSample, r: usize) -> Result<f64> {
    if r == 0 || r > sample.n() {
        return Err(Error::InvalidSample(format!(
            "order index {r} outside 1..={}",
            sample.n()
        )));
    }
    Ok(kernel_density_sorted(sample.values(), r))
}

#[inline]
pub(crate) fn kernel_density_sorted(x: &[f64], r: usize) -> f64 {
    let n = x.len() as f64;
    let quarter = n.powf(0.25);
    let count = count_near(x, r, |d| 2.0 * quarter * d <= 1.0);
    count as f64 / quarter.powi(3)
}

/// Same estimator with an arbitrary window `width`:
/// `(N width)^{-1} #{i : 2 |X_i - X_{r:N}| <= width}`.
pub fn kernel_density_with_width(sample: &SortedSample, r: usize, width: f64) -> Result<f64> {
    if r == 0 || r > sample.n() {
        return Err(Error::InvalidSample(format!(
            "order index {r} outside 1..={}",
            sample.n()
        )));
    }
    if !(width > 0.0) {
        return Err(Error::InvalidSample(format!("window must be positive, got {width}")));
    }
    let count = count_near(sample.values(), r, |d| 2.0 * d <= width);
    Ok(count as f64 / (sample.n() as f64 * width))
}

/// Which density estimate enters the upper-tail term of `beta_N_hat`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasEstimator {
    /// `f_hat(xi_beta)` in the upper term, mirroring the population `beta_N`.
    #[default]
    DensityMatched,
    /// `f_hat(xi_alpha)` in both terms.
    AsPrinted,
}

#[inline]
fn lambda2_from_parts(
    spec: &TrimSpec,
    mu: f64,
    s2: f64,
    x_k: f64,
    x_m: f64,
    f_alpha: f64,
    f_beta: f64,
) -> f64 {
    let a = spec.alpha;
    let b = spec.beta;
    (-a * a / f_alpha * (mu - x_k).powi(2) + (1.0 - b).powi(2) / f_beta * (mu - x_m).powi(2))
        / s2.powf(1.5)
}

#[inline]
fn beta_hat_from_parts(
    spec: &TrimSpec,
    t_n: f64,
    x_k: f64,
    x_m: f64,
    f_alpha: f64,
    f_beta: f64,
    variant: BiasEstimator,
) -> f64 {
    let (a, b) = (spec.alpha, spec.beta);
    let f_upper = match variant {
        BiasEstimator::DensityMatched => f_beta,
        BiasEstimator::AsPrinted => f_alpha,
    };
    let lower = -spec.frac_alpha * (t_n - x_k) - 0.5 * a * (1.0 - a) / f_alpha;
    let upper = spec.frac_beta * (t_n - x_m) + 0.5 * b * (1.0 - b) / f_upper;
    (lower + upper) / spec.n as f64
}

/// `(lambda2_hat, beta_N_hat)`.
pub fn plugin_lambda2_beta(
    sample: &SortedSample,
    spec: &TrimSpec,
    variant: BiasEstimator,
) -> Result<(f64, f64)> {
    check_size(sample, spec)?;
    let x = sample.values();
    let (mu, s2) = mu_s2_sorted(x, spec);
    if s2 <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let fa = kernel_density_sorted(x, spec.k);
    let fb = kernel_density_sorted(x, spec.m);
    if !(fa > 0.0 && fb > 0.0) {
        return Err(Error::DegenerateDensity);
    }
    let (x_k, x_m) = (x[spec.k - 1], x[spec.m - 1]);
    let t_n = trimmed_mean_sorted(x, spec);
    Ok((
        lambda2_from_parts(spec, mu, s2, x_k, x_m, fa, fb),
        beta_hat_from_parts(spec, t_n, x_k, x_m, fa, fb, variant),
    ))
}

/// `sqrt(N) (T_N - mu0) / ((beta - alpha)^{-1} S_N)`.
pub fn studentized_statistic(sample: &SortedSample, spec: &TrimSpec, mu0: f64) -> Result<f64> {
    check_size(sample, spec)?;
    let x = sample.values();
    let (_, s2) = mu_s2_sorted(x, spec);
    if s2 <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let t_n = trimmed_mean_sorted(x, spec);
    Ok(studentize(t_n, mu0, s2.sqrt(), spec))
}

#[inline]
pub(crate) fn studentize(t_n: f64, centre: f64, scale: f64, spec: &TrimSpec) -> f64 {
    (spec.n as f64).sqrt() * (t_n - centre) * (spec.beta - spec.alpha) / scale
}

/// Every plug-in quantity computed from one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PluginEstimates {
    pub n: usize,
    pub t_n: f64,
    #[serde(rename = "mu_hat_W")]
    pub mu_hat_w: f64,
    pub s2_n: f64,
    #[serde(rename = "gamma3_hat_W")]
    pub gamma3_hat_w: f64,
    pub f_hat_alpha: f64,
    pub f_hat_beta: f64,
    pub lambda1_hat: f64,
    pub lambda2_hat: f64,
    pub beta_n_hat: f64,
    /// Kernel window `N^{-1/4}`.
    pub delta: f64,
    pub bias_estimator: BiasEstimator,
    /// Set when either density estimate is not positive; `lambda2_hat` and
    /// `beta_n_hat` are then zero and the expansions keep only `lambda1_hat`.
    pub density_degenerate: bool,
}

impl PluginEstimates {
    /// Fails only on zero Winsorized variance.
    pub fn compute(sample: &SortedSample, spec: &TrimSpec, variant: BiasEstimator) -> Result<Self> {
        check_size(sample, spec)?;
        Self::from_sorted(sample.values(), spec, variant)
    }

    pub(crate) fn from_sorted(x: &[f64], spec: &TrimSpec, variant: BiasEstimator) -> Result<Self> {
        let (mu, s2) = mu_s2_sorted(x, spec);
        if s2 <= 0.0 {
            return Err(Error::DegenerateVariance);
        }
        let t_n = trimmed_mean_sorted(x, spec);
        let g3 = block_sum(x, spec, |v| (v - mu).powi(3));
        let fa = kernel_density_sorted(x, spec.k);
        let fb = kernel_density_sorted(x, spec.m);
        let (x_k, x_m) = (x[spec.k - 1], x[spec.m - 1]);
        let density_degenerate = !(fa > 0.0 && fb > 0.0 && fa.is_finite() && fb.is_finite());
        let (lambda2_hat, beta_n_hat) = if density_degenerate {
            (0.0, 0.0)
        } else {
            (
                lambda2_from_parts(spec, mu, s2, x_k, x_m, fa, fb),
                beta_hat_from_parts(spec, t_n, x_k, x_m, fa, fb, variant),
            )
        };
        Ok(Self {
            n: spec.n,
            t_n,
            mu_hat_w: mu,
            s2_n: s2,
            gamma3_hat_w: g3,
            f_hat_alpha: fa,
            f_hat_beta: fb,
            lambda1_hat: g3 / s2.powf(1.5),
            lambda2_hat,
            beta_n_hat,
            delta: (spec.n as f64).powf(-0.25),
            bias_estimator: variant,
            density_degenerate,
        })
    }

    pub fn s_n(&self) -> f64 {
        self.s2_n.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: &[f64]) -> SortedSample {
        SortedSample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trimmed_mean_examples() {
        let s = sample(&(1..=10).map(f64::from).collect::<Vec<_>>());
        let spec = TrimSpec::new(0.2, 0.8, 10).unwrap();
        assert_eq!(trimmed_mean(&s, &spec).unwrap(), 5.5);

        let s = sample(&[4.0, 1.0, 3.0, 2.0]);
        let spec = TrimSpec::new(0.25, 0.75, 4).unwrap();
        assert_eq!(trimmed_mean(&s, &spec).unwrap(), 2.5);

        // k = m = 3 at n = 5
        let s = sample(&[9.0, 1.0, 7.0, 3.0, 5.0]);
        let spec = TrimSpec::new(0.4, 0.6, 5).unwrap();
        assert_eq!((spec.k, spec.m), (3, 3));
        assert_eq!(trimmed_mean(&s, &spec).unwrap(), 5.0);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let s = sample(&[1.0, 2.0, 3.0]);
        let spec = TrimSpec::new(0.2, 0.8, 10).unwrap();
        assert!(trimmed_mean(&s, &spec).is_err());
    }

    #[test]
    fn sample_validation() {
        assert!(SortedSample::new(vec![1.0]).is_err());
        assert!(SortedSample::new(vec![1.0, f64::NAN]).is_err());
        assert!(SortedSample::new(vec![1.0, f64::INFINITY]).is_err());
        assert_eq!(sample(&[3.0, -1.0, 2.0]).values(), &[-1.0, 2.0, 3.0]);
    }

    #[test]
    fn winsorize_examples() {
        let s = sample(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(winsorize_sample(&s, 1.0, 2.0).unwrap().values(), &[1.0, 1.0, 2.0, 2.0]);
        assert_eq!(winsorize_sample(&s, 0.0, 3.0).unwrap().values(), s.values());
        let s = sample(&[1.0, 2.0, 3.0]);
        assert_eq!(winsorize_sample(&s, 2.0, 2.0).unwrap().values(), &[2.0, 2.0, 2.0]);
        assert!(winsorize_sample(&s, 2.0, 1.0).is_err());
    }

    #[test]
    fn plugin_mu_s2_example() {
        let s = sample(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let spec = TrimSpec::new(0.2, 0.8, 5).unwrap();
        assert_eq!((spec.k, spec.m), (2, 4));
        let (mu, s2) = plugin_mu_s2(&s, &spec).unwrap();
        assert!((mu - 3.0).abs() < 1e-15);
        assert!((s2 - 0.8).abs() < 1e-15);
        assert_eq!(plugin_gamma3(&s, &spec).unwrap(), 0.0);
        assert_eq!(lambda1_hat(&s, &spec).unwrap(), 0.0);
    }

    #[test]
    fn plugin_moments_equal_explicit_winsorization() {
        let s = sample(&[0.3, 1.7, -2.0, 5.5, 4.1, 0.9, 2.2, 3.3, -0.4, 8.0, 1.1]);
        let spec = TrimSpec::new(0.15, 0.7, s.n()).unwrap();
        let w = winsorize_sample(&s, s.order_stat(spec.k), s.order_stat(spec.m)).unwrap();
        let n = w.n() as f64;
        let mean = w.values().iter().sum::<f64>() / n;
        let var = w.values().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let m3 = w.values().iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
        let (mu, s2) = plugin_mu_s2(&s, &spec).unwrap();
        assert!((mu - mean).abs() < 1e-12);
        assert!((s2 - var).abs() < 1e-12);
        assert!((plugin_gamma3(&s, &spec).unwrap() - m3).abs() < 1e-12);
    }

    #[test]
    fn adjacent_indices_leave_middle_block_empty() {
        // n = 4, alpha = .25, beta = .75: k = 2, m = 3, no middle terms
        let s = sample(&[1.0, 2.0, 4.0, 8.0]);
        let spec = TrimSpec::new(0.25, 0.75, 4).unwrap();
        let (mu, s2) = plugin_mu_s2(&s, &spec).unwrap();
        assert!((mu - (0.5 * 2.0 + 0.5 * 4.0)).abs() < 1e-15);
        assert!((s2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn coincident_indices_report_zero_variance() {
        let s = sample(&[9.0, 1.0, 7.0, 3.0, 5.0]);
        let spec = TrimSpec::new(0.4, 0.6, 5).unwrap();
        let (mu, s2) = plugin_mu_s2(&s, &spec).unwrap();
        assert!((mu - 6.0).abs() < 1e-15);
        assert_eq!(s2, 0.0);
        assert!(matches!(
            PluginEstimates::compute(&s, &spec, BiasEstimator::default()),
            Err(Error::DegenerateVariance)
        ));
    }

    #[test]
    fn degenerate_sample_has_zero_variance() {
        let s = sample(&[2.0; 8]);
        let spec = TrimSpec::new(0.25, 0.75, 8).unwrap();
        assert_eq!(plugin_mu_s2(&s, &spec).unwrap().1, 0.0);
        assert!(matches!(lambda1_hat(&s, &spec), Err(Error::DegenerateVariance)));
        assert!(matches!(
            studentized_statistic(&s, &spec, 2.0),
            Err(Error::DegenerateVariance)
        ));
    }

    #[test]
    fn kernel_examples() {
        // N = 16, delta = 0.5, half-window 0.25
        let mut v = vec![10.0, 10.1, 10.25, 9.75, 9.74, 10.26];
        v.extend((0..10).map(|i| 20.0 + i as f64));
        let s = sample(&v);
        let r = s.values().iter().position(|&x| x == 10.0).unwrap() + 1;
        let f = kernel_density_at_quantile(&s, r).unwrap();
        assert!((f - 0.5).abs() < 1e-15, "{f}");

        let s = sample(&[3.0; 16]);
        assert!((kernel_density_at_quantile(&s, 5).unwrap() - 2.0).abs() < 1e-15);
        assert!(kernel_density_at_quantile(&s, 0).is_err());
        assert!(kernel_density_at_quantile(&s, 17).is_err());
    }

    #[test]
    fn kernel_counts_match_brute_force() {
        let mut g = crate::rng::RngStream::new(3, 0).generator();
        for n in [5usize, 37, 200] {
            let s = SortedSample::new((0..n).map(|_| g.uniform_open() * 3.0).collect()).unwrap();
            let q = (n as f64).powf(0.25);
            for r in 1..=n {
                let c = s.values().iter().filter(|&&x| 2.0 * q * (x - s.order_stat(r)).abs() <= 1.0).count();
                let f = kernel_density_at_quantile(&s, r).unwrap();
                assert!((f - c as f64 / (n as f64).powf(0.75)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_width_scaling_identity() {
        let s = sample(&[0.1, 0.4, 0.45, 0.5, 0.52, 0.9, 1.3, 1.31, 2.0]);
        let c = 3.5;
        let scaled = sample(&s.values().iter().map(|x| c * x).collect::<Vec<_>>());
        let delta = (s.n() as f64).powf(-0.25);
        for r in 1..=s.n() {
            let base = kernel_density_with_width(&s, r, delta).unwrap();
            let wide = kernel_density_with_width(&scaled, r, c * delta).unwrap();
            assert!((wide - base / c).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda2_beta_integer_indices() {
        let s = sample(&(1..=20).map(|i| (i as f64).sqrt()).collect::<Vec<_>>());
        let spec = TrimSpec::new(0.1, 0.9, 20).unwrap();
        assert_eq!((spec.frac_alpha, spec.frac_beta), (0.0, 0.0));
        let (_, b) = plugin_lambda2_beta(&s, &spec, BiasEstimator::DensityMatched).unwrap();
        let fa = kernel_density_at_quantile(&s, spec.k).unwrap();
        let fb = kernel_density_at_quantile(&s, spec.m).unwrap();
        let want = (-0.5 * 0.1 * 0.9 / fa + 0.5 * 0.9 * 0.1 / fb) / 20.0;
        assert!((b - want).abs() < 1e-15);
        let (_, b_printed) = plugin_lambda2_beta(&s, &spec, BiasEstimator::AsPrinted).unwrap();
        assert!(b_printed.abs() < 1e-15);
    }

    #[test]
    fn symmetric_sample_has_zero_lambdas() {
        let v: Vec<f64> = (0..20).map(|i| (i as f64 - 9.5) * 0.1).collect();
        let s = sample(&v);
        let spec = TrimSpec::new(0.2, 0.8, s.n()).unwrap();
        assert_eq!(spec.k + spec.m, s.n() + 1);
        assert!(lambda1_hat(&s, &spec).unwrap().abs() < 1e-12);
        let (l2, _) = plugin_lambda2_beta(&s, &spec, BiasEstimator::default()).unwrap();
        assert!(l2.abs() < 1e-12, "{l2}");
    }

    #[test]
    fn studentized_examples() {
        let s = sample(&[0.5, 1.7, 2.2, 2.9, 3.3, 4.8, 6.1, 7.0, 9.9, 12.0]);
        let spec = TrimSpec::new(0.1, 0.9, 10).unwrap();
        let t = trimmed_mean(&s, &spec).unwrap();
        assert_eq!(studentized_statistic(&s, &spec, t).unwrap(), 0.0);
        let z = studentized_statistic(&s, &spec, 3.0).unwrap();
        for (c, d) in [(2.0, 0.0), (0.5, -3.0), (1.0, 17.0)] {
            let moved = sample(&s.values().iter().map(|x| c * x + d).collect::<Vec<_>>());
            let zz = studentized_statistic(&moved, &spec, c * 3.0 + d).unwrap();
            assert!((z - zz).abs() < 1e-12, "{z} vs {zz}");
        }
    }

    #[test]
    fn estimates_bundle_is_consistent() {
        let s = sample(&[0.5, 1.7, 2.2, 2.9, 3.3, 4.8, 6.1, 7.0, 9.9, 12.0, 0.1, 5.5]);
        let spec = TrimSpec::new(0.1, 0.8, s.n()).unwrap();
        let est = PluginEstimates::compute(&s, &spec, BiasEstimator::default()).unwrap();
        let (mu, s2) = plugin_mu_s2(&s, &spec).unwrap();
        let (l2, b) = plugin_lambda2_beta(&s, &spec, BiasEstimator::default()).unwrap();
        assert_eq!(est.mu_hat_w, mu);
        assert_eq!(est.s2_n, s2);
        assert_eq!(est.lambda1_hat, lambda1_hat(&s, &spec).unwrap());
        assert_eq!(est.lambda2_hat, l2);
        assert_eq!(est.beta_n_hat, b);
        assert_eq!(est.t_n, trimmed_mean(&s, &spec).unwrap());
        assert_eq!(est.delta, 12f64.powf(-0.25));
        assert!(!est.density_degenerate);
    }
}
