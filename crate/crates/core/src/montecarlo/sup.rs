//! Kolmogorov distance between an empirical cdf and a continuous target.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Exact `sup_x |F_M(x) - target(x)|` for a continuous `target` whose extrema
/// between jumps are either at the jumps or in `extra`.
///
/// `sorted` must be in nondecreasing order. At each jump both the value
/// `i/M` and the left limit `(i-1)/M` are compared; at an extra point both
/// one-sided values of the step function are.
pub fn sup_distance_sorted(sorted: &[f64], target: impl Fn(f64) -> f64, extra: &[f64]) -> f64 {
    let m = sorted.len() as f64;
    let mut worst = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let t = target(x);
        let upper = (i + 1) as f64 / m;
        let lower = i as f64 / m;
        worst = worst.max((upper - t).abs()).max((lower - t).abs());
    }
    for &x in extra {
        let t = target(x);
        let at = sorted.partition_point(|&v| v <= x) as f64 / m;
        let before = sorted.partition_point(|&v| v < x) as f64 / m;
        worst = worst.max((at - t).abs()).max((before - t).abs());
    }
    worst
}

/// [`sup_distance_sorted`] on values in any order, with no extra points.
pub fn empirical_cdf_sup_distance(values: &[f64], target: impl Fn(f64) -> f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sup_distance_sorted(&sorted, target, &[])
}

/// `sup_x |F_A(x) - F_B(x)|` for two empirical cdfs, both step functions.
pub fn two_sample_sup_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (ma, mb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut worst = 0.0f64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&p), Some(&q)) => p.min(q),
            (Some(&p), None) => p,
            (None, Some(&q)) => q,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        worst = worst.max((i as f64 / ma - j as f64 / mb).abs());
    }
    worst
}

pub const BATCHES: usize = 20;
const SPLITS: usize = 8;
const SPLIT_SEED: u64 = 0x5e_ed0f_ba7c;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub sup_distance: f64,
    /// Standard deviation of the 20 contiguous batch distances over `sqrt(20)`.
    pub mc_standard_error: f64,
    /// Root mean square of `|d_A - d_B| / 2` over fixed splits of the batches
    /// into two halves.
    pub split_half_se: f64,
}

fn sorted_copy<'a>(chunks: impl Iterator<Item = &'a [f64]>) -> Vec<f64> {
    let mut v: Vec<f64> = chunks.flat_map(|c| c.iter().copied()).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Sup distance of all `values` (replicate order) plus its Monte Carlo
/// standard error from batch splitting.
pub fn distance_with_error(
    values: &[f64],
    target: impl Fn(f64) -> f64 + Copy,
    extra: &[f64],
) -> DistanceEstimate {
    let all = sorted_copy(std::iter::once(values));
    let sup_distance = sup_distance_sorted(&all, target, extra);
    let size = values.len() / BATCHES;
    if size < 2 {
        return DistanceEstimate {
            sup_distance,
            mc_standard_error: f64::NAN,
            split_half_se: f64::NAN,
        };
    }
    let batches: Vec<&[f64]> = (0..BATCHES).map(|b| &values[b * size..(b + 1) * size]).collect();
    let d: Vec<f64> = batches
        .iter()
        .map(|b| sup_distance_sorted(&sorted_copy(std::iter::once(*b)), target, extra))
        .collect();
    let mean = d.iter().sum::<f64>() / BATCHES as f64;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
    let mc_standard_error = (var / BATCHES as f64).sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut order: Vec<usize> = (0..BATCHES).collect();
    let mut acc = 0.0;
    for _ in 0..SPLITS {
        order.shuffle(&mut rng);
        let (left, right) = order.split_at(BATCHES / 2);
        let da = sup_distance_sorted(&sorted_copy(left.iter().map(|&b| batches[b])), target, extra);
        let db = sup_distance_sorted(&sorted_copy(right.iter().map(|&b| batches[b])), target, extra);
        acc += (da - db).powi(2) / 4.0;
    }
    DistanceEstimate {
        sup_distance,
        mc_standard_error,
        split_half_se: (acc / SPLITS as f64).sqrt(),
    }
}
