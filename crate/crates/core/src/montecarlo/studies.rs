use serde::{Deserialize, Serialize};

use super::config::{SimulationConfig, Target};
use super::sup::{distance_with_error, sup_distance_sorted};
use super::{mean_and_se, ols_slope, quantile_sorted, run_replicates, statistic_sorted};
use crate::dist::DistributionModel;
use crate::edgeworth::{expansion_cdf, exits_unit_interval, stationary_points, ExpansionCoefficients};
use crate::error::{Error, Result};
use crate::estimators::{kernel_density_sorted, trimmed_mean_sorted, PluginEstimates};
use crate::functionals::{bias_term, compute_functionals, PopulationFunctionals, TrimLevels, TrimSpec};
use crate::normal::normal_cdf;
use crate::ustat::{decompose, remainder_sorted, Diagnostic};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub base_seed: u64,
    pub generator: String,
    pub stream_layout: String,
    pub version: String,
}

impl Provenance {
    pub fn new(base_seed: u64) -> Self {
        Self {
            base_seed,
            generator: "ChaCha8".into(),
            stream_layout: "stream (n << 32) | replicate".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupDistanceRow {
    pub n: usize,
    pub target: Target,
    /// For the empirical target, the median over replicate expansions.
    pub sup_distance: f64,
    pub mc_standard_error: Option<f64>,
    pub split_half_se: Option<f64>,
    pub sqrt_n_scaled: f64,
    pub exits_unit_interval: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalExpansionRow {
    pub n: usize,
    pub replicates: usize,
    pub degenerate_replicates: usize,
    pub degenerate_fraction: f64,
    pub median_sup_distance: Option<f64>,
    pub mean_sup_distance: Option<f64>,
    pub p95_sup_distance: Option<f64>,
    pub population_sup_distance: f64,
    pub normal_sup_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateStudyReport {
    pub provenance: Provenance,
    pub config: SimulationConfig,
    pub population: PopulationFunctionals,
    pub rows: Vec<SupDistanceRow>,
    pub empirical: Vec<EmpiricalExpansionRow>,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalExpansionReport {
    pub provenance: Provenance,
    pub config: SimulationConfig,
    pub rows: Vec<EmpiricalExpansionRow>,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

struct SizeRun {
    values: Vec<f64>,
    /// Plug-ins of the first `empirical_reps` replicates; `None` on zero
    /// plug-in variance.
    estimates: Vec<Option<PluginEstimates>>,
}

fn run_size(
    config: &SimulationConfig,
    model: &DistributionModel,
    pop: &PopulationFunctionals,
    spec: &TrimSpec,
    with_estimates: bool,
) -> Result<SizeRun> {
    let keep = if with_estimates { config.empirical_reps } else { 0 };
    let out = run_replicates(model, spec.n, config.reps, config.base_seed, config.workers, |rep, x| {
        x.sort_by(f64::total_cmp);
        let stat = statistic_sorted(x, spec, pop, config.kind);
        let est = (rep < keep)
            .then(|| PluginEstimates::from_sorted(x, spec, config.bias_estimator).ok())
            .flatten();
        (stat, est)
    })?;
    let mut values = Vec::with_capacity(out.len());
    let mut estimates = Vec::with_capacity(keep);
    for (rep, (v, e)) in out.into_iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::DegenerateVariance);
        }
        values.push(v);
        if rep < keep {
            estimates.push(e);
        }
    }
    Ok(SizeRun { values, estimates })
}

fn expansion_distance(sorted: &[f64], c: &ExpansionCoefficients) -> f64 {
    sup_distance_sorted(sorted, |x| expansion_cdf(c, x), &stationary_points(c))
}

fn empirical_row(
    n: usize,
    sorted: &[f64],
    run: &SizeRun,
    population: &ExpansionCoefficients,
    config: &SimulationConfig,
) -> EmpiricalExpansionRow {
    let mut d = Vec::with_capacity(run.estimates.len());
    let mut degenerate = 0;
    for est in &run.estimates {
        match est {
            Some(e) if !e.density_degenerate => {
                let c = ExpansionCoefficients::empirical_unchecked(e, config.kind);
                d.push(expansion_distance(sorted, &c));
            }
            _ => degenerate += 1,
        }
    }
    let stats = (!d.is_empty()).then(|| {
        let (mean, _) = mean_and_se(&d);
        d.sort_by(f64::total_cmp);
        (quantile_sorted(&d, 0.5), mean, quantile_sorted(&d, 0.95))
    });
    EmpiricalExpansionRow {
        n,
        replicates: run.estimates.len(),
        degenerate_replicates: degenerate,
        degenerate_fraction: degenerate as f64 / run.estimates.len() as f64,
        median_sup_distance: stats.map(|s| s.0),
        mean_sup_distance: stats.map(|s| s.1),
        p95_sup_distance: stats.map(|s| s.2),
        population_sup_distance: expansion_distance(sorted, population),
        normal_sup_distance: sup_distance_sorted(sorted, normal_cdf, &[]),
    }
}

const EXIT_RANGE: f64 = 8.0;

/// Sup distances of the simulated statistic to each requested target at every
/// sample size.
pub fn rate_study(config: &SimulationConfig) -> Result<RateStudyReport> {
    let started = std::time::Instant::now();
    config.validate()?;
    config.validate_rate_design()?;
    let model = config.build_model()?;
    let levels = config.levels()?;
    let pop = compute_functionals(&model, levels)?;
    let wants_empirical = config.targets.contains(&Target::EmpiricalExpansion);
    let mut targets = config.targets.clone();
    targets.sort();
    targets.dedup();

    let mut rows = Vec::new();
    let mut empirical = Vec::new();
    for &n in &config.n_list {
        let spec = TrimSpec::from_levels(levels, n)?;
        let run = run_size(config, &model, &pop, &spec, wants_empirical)?;
        let coef = ExpansionCoefficients::population(&pop, &spec, config.kind);
        let root = (n as f64).sqrt();
        let mut sorted = run.values.clone();
        sorted.sort_by(f64::total_cmp);
        for &target in &targets {
            let row = match target {
                Target::Normal => {
                    let e = distance_with_error(&run.values, normal_cdf, &[]);
                    SupDistanceRow {
                        n,
                        target,
                        sup_distance: e.sup_distance,
                        mc_standard_error: Some(e.mc_standard_error),
                        split_half_se: Some(e.split_half_se),
                        sqrt_n_scaled: e.sup_distance * root,
                        exits_unit_interval: false,
                    }
                }
                Target::PopulationExpansion => {
                    let pts = stationary_points(&coef);
                    let e = distance_with_error(&run.values, |x| expansion_cdf(&coef, x), &pts);
                    SupDistanceRow {
                        n,
                        target,
                        sup_distance: e.sup_distance,
                        mc_standard_error: Some(e.mc_standard_error),
                        split_half_se: Some(e.split_half_se),
                        sqrt_n_scaled: e.sup_distance * root,
                        exits_unit_interval: exits_unit_interval(&coef, -EXIT_RANGE, EXIT_RANGE),
                    }
                }
                Target::EmpiricalExpansion => {
                    let er = empirical_row(n, &sorted, &run, &coef, config);
                    let med = er.median_sup_distance.unwrap_or(f64::NAN);
                    let exits = run.estimates.iter().flatten().any(|e| {
                        !e.density_degenerate
                            && exits_unit_interval(
                                &ExpansionCoefficients::empirical_unchecked(e, config.kind),
                                -EXIT_RANGE,
                                EXIT_RANGE,
                            )
                    });
                    empirical.push(er);
                    SupDistanceRow {
                        n,
                        target,
                        sup_distance: med,
                        mc_standard_error: None,
                        split_half_se: None,
                        sqrt_n_scaled: med * root,
                        exits_unit_interval: exits,
                    }
                }
            };
            rows.push(row);
        }
    }
    Ok(RateStudyReport {
        provenance: Provenance::new(config.base_seed),
        config: config.clone(),
        population: pop,
        rows,
        empirical,
        runtime_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Distribution over replicates of the distance between the simulated cdf
/// and each replicate's own empirical expansion.
pub fn empirical_expansion_study(config: &SimulationConfig) -> Result<EmpiricalExpansionReport> {
    let started = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let levels = config.levels()?;
    let pop = compute_functionals(&model, levels)?;
    let mut rows = Vec::new();
    for &n in &config.n_list {
        let spec = TrimSpec::from_levels(levels, n)?;
        let run = run_size(config, &model, &pop, &spec, true)?;
        let coef = ExpansionCoefficients::population(&pop, &spec, config.kind);
        let mut sorted = run.values.clone();
        sorted.sort_by(f64::total_cmp);
        rows.push(empirical_row(n, &sorted, &run, &coef, config));
    }
    Ok(EmpiricalExpansionReport {
        provenance: Provenance::new(config.base_seed),
        config: config.clone(),
        rows,
        runtime_seconds: started.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasReport {
    pub provenance: Provenance,
    pub n: usize,
    pub reps: usize,
    pub frac_alpha: f64,
    pub frac_beta: f64,
    /// Monte Carlo mean of `(beta - alpha)(T_N - mu(alpha, beta))`.
    pub mc_bias: f64,
    pub mc_standard_error: f64,
    pub beta_n: f64,
    pub z_score: f64,
}

/// Compares the simulated bias of the trimmed mean with `beta_N`.
pub fn bias_study(
    model: &DistributionModel,
    levels: TrimLevels,
    n: usize,
    reps: usize,
    base_seed: u64,
    workers: usize,
) -> Result<BiasReport> {
    if reps < 2 {
        return Err(Error::Config("bias study needs at least 2 replicates".into()));
    }
    let pop = compute_functionals(model, levels)?;
    let spec = TrimSpec::from_levels(levels, n)?;
    let width = levels.beta - levels.alpha;
    let v = run_replicates(model, n, reps, base_seed, workers, |_, x| {
        x.sort_by(f64::total_cmp);
        width * (trimmed_mean_sorted(x, &spec) - pop.mu_trim)
    })?;
    let (mc_bias, se) = mean_and_se(&v);
    let beta_n = bias_term(&pop, &spec);
    Ok(BiasReport {
        provenance: Provenance::new(base_seed),
        n,
        reps,
        frac_alpha: spec.frac_alpha,
        frac_beta: spec.frac_beta,
        mc_bias,
        mc_standard_error: se,
        beta_n,
        z_score: (mc_bias - beta_n) / se,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelRateRow {
    pub n: usize,
    pub reps: usize,
    pub median_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelRateReport {
    pub provenance: Provenance,
    pub true_density: f64,
    pub rows: Vec<KernelRateRow>,
    /// Slope of `log(median |f_hat - f|)` on `log N`.
    pub log_slope: f64,
}

/// Error of the kernel density estimate at `X_{k:N}` across sample sizes.
pub fn kernel_rate_study(
    model: &DistributionModel,
    levels: TrimLevels,
    n_list: &[usize],
    reps: usize,
    base_seed: u64,
    workers: usize,
) -> Result<KernelRateReport> {
    let pop = compute_functionals(model, levels)?;
    let mut rows = Vec::new();
    for &n in n_list {
        let spec = TrimSpec::from_levels(levels, n)?;
        let mut err = run_replicates(model, n, reps, base_seed, workers, |_, x| {
            x.sort_by(f64::total_cmp);
            (kernel_density_sorted(x, spec.k) - pop.f_alpha).abs()
        })?;
        err.sort_by(f64::total_cmp);
        rows.push(KernelRateRow {
            n,
            reps,
            median_abs_error: quantile_sorted(&err, 0.5),
        });
    }
    let lx: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.median_abs_error.ln()).collect();
    Ok(KernelRateReport {
        provenance: Provenance::new(base_seed),
        true_density: pop.f_alpha,
        rows,
        log_slope: ols_slope(&lx, &ly),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderRow {
    pub n: usize,
    pub reps: usize,
    pub median_abs_raw: f64,
    pub median_abs_scaled: f64,
    pub p99_abs_scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderReport {
    pub provenance: Provenance,
    pub which: Diagnostic,
    pub rows: Vec<RemainderRow>,
    /// Slope of `log(median |raw remainder|)` on `log N`.
    pub log_median_slope: f64,
    /// Largest over smallest 99th percentile of the scaled remainder.
    pub p99_ratio: f64,
}

/// Quantiles of one Bahadur-type remainder across sample sizes.
pub fn remainder_study(
    model: &DistributionModel,
    levels: TrimLevels,
    n_list: &[usize],
    reps: usize,
    base_seed: u64,
    workers: usize,
    which: Diagnostic,
) -> Result<RemainderReport> {
    let pop = compute_functionals(model, levels)?;
    let mut rows = Vec::new();
    for &n in n_list {
        let spec = TrimSpec::from_levels(levels, n)?;
        let out = run_replicates(model, n, reps, base_seed, workers, |_, x| {
            x.sort_by(f64::total_cmp);
            let r = remainder_sorted(x, &pop, &spec, which);
            (r.raw_remainder.abs(), r.scaled_remainder.abs())
        })?;
        let mut raw: Vec<f64> = out.iter().map(|p| p.0).collect();
        let mut scaled: Vec<f64> = out.iter().map(|p| p.1).collect();
        raw.sort_by(f64::total_cmp);
        scaled.sort_by(f64::total_cmp);
        rows.push(RemainderRow {
            n,
            reps,
            median_abs_raw: quantile_sorted(&raw, 0.5),
            median_abs_scaled: quantile_sorted(&scaled, 0.5),
            p99_abs_scaled: quantile_sorted(&scaled, 0.99),
        });
    }
    let lx: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.median_abs_raw.ln()).collect();
    let p99 = rows.iter().map(|r| r.p99_abs_scaled);
    let hi = p99.clone().fold(f64::NEG_INFINITY, f64::max);
    let lo = p99.fold(f64::INFINITY, f64::min);
    Ok(RemainderReport {
        provenance: Provenance::new(base_seed),
        which,
        rows,
        log_median_slope: ols_slope(&lx, &ly),
        p99_ratio: hi / lo,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThirdMomentReport {
    pub provenance: Provenance,
    pub n: usize,
    pub reps: usize,
    /// Sample variance of `L_N + U_N`.
    pub variance: f64,
    pub variance_se: f64,
    #[serde(rename = "sigma2_W")]
    pub sigma2_w: f64,
    /// Sample skewness of `L_N + U_N`.
    pub skewness: f64,
    pub skewness_se: f64,
    /// `(lambda1 + 3 lambda2) / sqrt(N)`
    pub predicted_skewness: f64,
    pub mean_l_n: f64,
    pub mean_l_n_se: f64,
    pub mean_v_n: f64,
    pub mean_v_n_se: f64,
    /// `N Var(V_N)`
    pub n_var_v_n: f64,
    /// Sample covariance of `L_N` and `U_N`.
    pub cov_l_u: f64,
    pub cov_l_u_se: f64,
}

/// Monte Carlo moments of `L_N + U_N` and `V_N` against their population
/// values.
pub fn third_moment_check(
    model: &DistributionModel,
    levels: TrimLevels,
    n: usize,
    reps: usize,
    base_seed: u64,
    workers: usize,
) -> Result<ThirdMomentReport> {
    if reps < 10 {
        return Err(Error::Config("moment check needs at least 10 replicates".into()));
    }
    let pop = compute_functionals(model, levels)?;
    let parts = run_replicates(model, n, reps, base_seed, workers, |_, x| decompose(x, &pop))?;
    let m = reps as f64;
    let y: Vec<f64> = parts.iter().map(|d| d.l_n + d.u_n).collect();
    let (ybar, _) = mean_and_se(&y);
    let dev2: Vec<f64> = y.iter().map(|v| (v - ybar).powi(2)).collect();
    let (m2, m2_se) = mean_and_se(&dev2);
    let variance = m2 * m / (m - 1.0);
    let sd = m2.sqrt();
    let z: Vec<f64> = y.iter().map(|v| (v - ybar) / sd).collect();
    let skewness = z.iter().map(|v| v.powi(3)).sum::<f64>() / m;
    let influence: Vec<f64> = z
        .iter()
        .map(|v| v.powi(3) - 3.0 * v - 1.5 * skewness * (v * v - 1.0))
        .collect();
    let (_, skewness_se) = mean_and_se(&influence);

    let l: Vec<f64> = parts.iter().map(|d| d.l_n).collect();
    let u: Vec<f64> = parts.iter().map(|d| d.u_n).collect();
    let v: Vec<f64> = parts.iter().map(|d| d.v_n()).collect();
    let (mean_l_n, mean_l_n_se) = mean_and_se(&l);
    let (mean_v_n, mean_v_n_se) = mean_and_se(&v);
    let n_var_v_n = mean_v_n_se.powi(2) * m * n as f64;
    let (ubar, _) = mean_and_se(&u);
    let prod: Vec<f64> = l.iter().zip(&u).map(|(a, b)| (a - mean_l_n) * (b - ubar)).collect();
    let (cov_l_u, cov_l_u_se) = mean_and_se(&prod);

    Ok(ThirdMomentReport {
        provenance: Provenance::new(base_seed),
        n,
        reps,
        variance,
        variance_se: m2_se,
        sigma2_w: pop.sigma2_w,
        skewness,
        skewness_se,
        predicted_skewness: (pop.lambda1 + 3.0 * pop.lambda2) / (n as f64).sqrt(),
        mean_l_n,
        mean_l_n_se,
        mean_v_n,
        mean_v_n_se,
        n_var_v_n,
        cov_l_u,
        cov_l_u_se,
    })
}
