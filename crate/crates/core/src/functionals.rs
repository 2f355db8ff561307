//! Population side of every comparison: trimming quantiles, the Winsorized
//! cumulants, the skewness coefficients `lambda1`/`lambda2`, the population
//! trimmed mean and the bias term `beta_N`.
//!
//! Integrals over `u` in (0, 1) of functions of the Winsorized quantile
//! function `Q(u)` are split at `alpha` and `beta`: the outer pieces are
//! constant and integrated exactly, the middle piece goes through adaptive
//! Gauss-Kronrod quadrature.

use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Absolute tolerance for every population integral.
pub const QUAD_TOL: f64 = 1e-10;

/// Tolerance used to snap `alpha * n` onto an integer before taking its
/// integer part.
const INDEX_SNAP_TOL: f64 = 1e-9;

/// Validated trimming proportions `0 < alpha < beta < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrimLevels {
    pub alpha: f64,
    pub beta: f64,
}

impl TrimLevels {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidTrim("levels must be finite".into()));
        }
        if !(0.0 < alpha && alpha < beta && beta < 1.0) {
            return Err(Error::InvalidTrim(format!(
                "need 0 < alpha < beta < 1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn with_n(self, n: usize) -> Result<TrimSpec> {
        TrimSpec::from_levels(self, n)
    }
}

/// `(integer part, fractional part)` of `x >= 0`, treating values within
/// `INDEX_SNAP_TOL` of an integer as that integer.
pub fn snapped_floor(x: f64) -> (usize, f64) {
    let r = x.round();
    if (x - r).abs() < INDEX_SNAP_TOL {
        (r as usize, 0.0)
    } else {
        let f = x.floor();
        (f as usize, x - f)
    }
}

/// Trimming levels at a fixed sample size, with the order-statistic indices
/// `k = [alpha n] + 1` and `m = [beta n]` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrimSpec {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// `alpha n - [alpha n]`
    pub frac_alpha: f64,
    /// `beta n - [beta n]`
    pub frac_beta: f64,
}

impl TrimSpec {
    pub fn new(alpha: f64, beta: f64, n: usize) -> Result<Self> {
        Self::from_levels(TrimLevels::new(alpha, beta)?, n)
    }

    pub fn from_levels(levels: TrimLevels, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTrim("sample size must be positive".into()));
        }
        let (fa, frac_alpha) = snapped_floor(levels.alpha * n as f64);
        let (fb, frac_beta) = snapped_floor(levels.beta * n as f64);
        let (k, m) = (fa + 1, fb);
        if k > m {
            return Err(Error::EmptyTrimRange { n, k, m });
        }
        Ok(Self {
            alpha: levels.alpha,
            beta: levels.beta,
            n,
            k,
            m,
            frac_alpha,
            frac_beta,
        })
    }

    pub fn levels(&self) -> TrimLevels {
        TrimLevels {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Number of retained order statistics, `[beta n] - [alpha n]`.
    pub fn kept(&self) -> usize {
        self.m + 1 - self.k
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationFunctionals {
    pub alpha: f64,
    pub beta: f64,
    pub xi_alpha: f64,
    pub xi_beta: f64,
    pub f_alpha: f64,
    pub f_beta: f64,
    pub mu_trim: f64,
    #[serde(rename = "mu_W")]
    pub mu_w: f64,
    #[serde(rename = "sigma2_W")]
    pub sigma2_w: f64,
    #[serde(rename = "gamma3_W")]
    pub gamma3_w: f64,
    #[serde(rename = "delta2_W")]
    pub delta2_w: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub quad_tol: f64,
}

impl PopulationFunctionals {
    pub fn sigma_w(&self) -> f64 {
        self.sigma2_w.sqrt()
    }
}

/// The Winsorized quantile function: `xi_alpha` below `alpha`, `F^{-1}(u)` on
/// `(alpha, beta]`, `xi_beta` above.
pub fn winsorized_transform(model: &DistributionModel, levels: TrimLevels, u: f64) -> f64 {
    if u <= levels.alpha {
        model.quantile(levels.alpha)
    } else if u <= levels.beta {
        model.quantile(u)
    } else {
        model.quantile(levels.beta)
    }
}

fn density_at(model: &DistributionModel, x: f64, which: &'static str) -> Result<f64> {
    match model.density(x) {
        Some(d) if d.is_finite() && d > 0.0 => Ok(d),
        _ => Err(Error::DensityUnavailable { which, at: x }),
    }
}

/// `∫_0^1 (Q(u) - centre)^r du`.
fn winsorized_moment(
    model: &DistributionModel,
    levels: TrimLevels,
    xi: (f64, f64),
    centre: f64,
    r: i32,
) -> Result<f64> {
    let TrimLevels { alpha, beta } = levels;
    let (middle, _) = integrate(
        |u| (model.quantile(u) - centre).powi(r),
        alpha,
        beta,
        QUAD_TOL,
    )?;
    Ok(alpha * (xi.0 - centre).powi(r) + middle + (1.0 - beta) * (xi.1 - centre).powi(r))
}

/// Raw moment `E W^r = ∫_0^1 Q(u)^r du` of the Winsorized variable.
pub fn winsorized_raw_moment(model: &DistributionModel, levels: TrimLevels, r: i32) -> Result<f64> {
    let xi = (model.quantile(levels.alpha), model.quantile(levels.beta));
    winsorized_moment(model, levels, xi, 0.0, r)
}

/// Population functionals of `model` trimmed at `levels`.
///
/// Fails when the density at either trimming quantile is undefined or zero,
/// since none of the expansions exist there.
pub fn compute_functionals(
    model: &DistributionModel,
    levels: TrimLevels,
) -> Result<PopulationFunctionals> {
    let TrimLevels { alpha, beta } = levels;
    let xi_alpha = model.quantile(alpha);
    let xi_beta = model.quantile(beta);
    let f_alpha = density_at(model, xi_alpha, "lower")?;
    let f_beta = density_at(model, xi_beta, "upper")?;

    let (core, _) = integrate(|u| model.quantile(u), alpha, beta, QUAD_TOL)?;
    let mu_trim = core / (beta - alpha);
    let mu_w = alpha * xi_alpha + core + (1.0 - beta) * xi_beta;

    let xi = (xi_alpha, xi_beta);
    let sigma2_w = winsorized_moment(model, levels, xi, mu_w, 2)?;
    if !(sigma2_w > 0.0) {
        return Err(Error::DegenerateVariance);
    }
    let gamma3_w = winsorized_moment(model, levels, xi, mu_w, 3)?;
    let delta2_w = -alpha * alpha / f_alpha * (mu_w - xi_alpha).powi(2)
        + (1.0 - beta).powi(2) / f_beta * (mu_w - xi_beta).powi(2);
    let sigma3 = sigma2_w.powf(1.5);

    Ok(PopulationFunctionals {
        alpha,
        beta,
        xi_alpha,
        xi_beta,
        f_alpha,
        f_beta,
        mu_trim,
        mu_w,
        sigma2_w,
        gamma3_w,
        delta2_w,
        lambda1: gamma3_w / sigma3,
        lambda2: delta2_w / sigma3,
        quad_tol: QUAD_TOL,
    })
}

/// The bias term `beta_N`: the order-1/N part of
/// `(beta - alpha)(E T_N - mu(alpha, beta))`.
pub fn bias_term(pop: &PopulationFunctionals, spec: &TrimSpec) -> f64 {
    let n = spec.n as f64;
    let lower = -spec.frac_alpha * (pop.mu_trim - pop.xi_alpha)
        - 0.5 * spec.alpha * (1.0 - spec.alpha) / pop.f_alpha;
    let upper = spec.frac_beta * (pop.mu_trim - pop.xi_beta)
        + 0.5 * spec.beta * (1.0 - spec.beta) / pop.f_beta;
    (lower + upper) / n
}
