//! Replication engine. Replicate `r` at sample size `n` draws from the stream
//! `(n << 32) | r` of the base seed, so results never depend on the number of
//! workers, the order replicates finish in, or which other sizes are run.

mod config;
mod studies;
mod sup;

pub use config::{SimulationConfig, Target, MIN_REPS};
pub use studies::{
    bias_study, empirical_expansion_study, kernel_rate_study, rate_study, remainder_study,
    third_moment_check, BiasReport, EmpiricalExpansionReport, EmpiricalExpansionRow,
    KernelRateReport, KernelRateRow, Provenance, RateStudyReport, RemainderReport, RemainderRow,
    SupDistanceRow, ThirdMomentReport,
};
pub use sup::{
    distance_with_error, empirical_cdf_sup_distance, sup_distance_sorted, two_sample_sup_distance,
    DistanceEstimate, BATCHES,
};

use rayon::prelude::*;

use crate::dist::DistributionModel;
use crate::edgeworth::ExpansionKind;
use crate::error::{Error, Result};
use crate::estimators::{mu_s2_sorted, studentize, trimmed_mean_sorted};
use crate::functionals::{compute_functionals, PopulationFunctionals, TrimSpec};
use crate::rng::RngStream;

/// Runs `f` on every replicate sample of size `n` and returns the results in
/// replicate order. `f` receives the replicate index and the unsorted draws.
pub fn run_replicates<T, F>(
    model: &DistributionModel,
    n: usize,
    reps: usize,
    base_seed: u64,
    workers: usize,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut [f64]) -> T + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        (0..reps)
            .into_par_iter()
            .map_init(
                || vec![0.0; n],
                |buf, rep| {
                    let mut g = RngStream::for_replicate(base_seed, n, rep).generator();
                    model.fill(&mut g, buf);
                    f(rep, buf)
                },
            )
            .collect()
    }))
}

/// The normalized or Studentized statistic of one sorted sample.
#[inline]
pub(crate) fn statistic_sorted(
    x: &[f64],
    spec: &TrimSpec,
    pop: &PopulationFunctionals,
    kind: ExpansionKind,
) -> f64 {
    let t = trimmed_mean_sorted(x, spec);
    let scale = match kind {
        ExpansionKind::Normalized => pop.sigma_w(),
        ExpansionKind::Studentized => mu_s2_sorted(x, spec).1.sqrt(),
    };
    studentize(t, pop.mu_trim, scale, spec)
}

/// Replicate values of the statistic at size `n`, in replicate order.
///
/// Studentized replicates with zero plug-in variance come out as `NaN`; they
/// cannot occur for continuous laws.
pub fn simulate_statistic(config: &SimulationConfig, n: usize) -> Result<Vec<f64>> {
    config.validate()?;
    let model = config.build_model()?;
    let levels = config.levels()?;
    let pop = compute_functionals(&model, levels)?;
    let spec = TrimSpec::from_levels(levels, n)?;
    run_replicates(&model, n, config.reps, config.base_seed, config.workers, |_, x| {
        x.sort_by(f64::total_cmp);
        let v = statistic_sorted(x, &spec, &pop, config.kind);
        if v.is_finite() {
            v
        } else {
            f64::NAN
        }
    })
}

/// Ordinary least squares slope of `y` on `x`.
pub fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Linear-interpolation quantile of already sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean and standard error of the mean.
pub fn mean_and_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
