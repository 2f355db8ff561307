//! One-term Edgeworth expansions of the normalized and Studentized trimmed
//! mean.
//!
//! Both expansions have the shape `E(x) = Phi(x) + phi(x) (c2 x^2 + c0)`.
//! For the normalized statistic
//!
//! `G_N(x) = Phi(x) - phi(x) / (6 sqrt N) [(l1 + 3 l2)(x^2 - 1) + 6 b]`
//!
//! and for the Studentized one
//!
//! `H_N(x) = Phi(x) + phi(x) / (6 sqrt N) [(2x^2 + 1) l1 + 3 (x^2 + 1) l2 - 6 b]`
//!
//! where `b = N beta_N / sigma_W`. Raw values are returned as they are and may
//! leave `[0, 1]` in the tails; inversion works on the running maximum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::PluginEstimates;
use crate::functionals::{bias_term, PopulationFunctionals, TrimSpec};
use crate::normal::{normal_cdf, normal_pdf, normal_quantile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionKind {
    Normalized,
    Studentized,
}

impl FromStr for ExpansionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(Self::Normalized),
            "studentized" => Ok(Self::Studentized),
            other => Err(Error::Config(format!(
                "unknown statistic kind `{other}` (expected normalized or studentized)"
            ))),
        }
    }
}

impl fmt::Display for ExpansionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Normalized => "normalized",
            Self::Studentized => "studentized",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Population,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub lambda1: f64,
    pub lambda2: f64,
    /// `N beta_N / sigma_W`, or its plug-in.
    pub bias_over_sigma: f64,
    pub n: usize,
    pub kind: ExpansionKind,
    pub source: Source,
}

impl ExpansionCoefficients {
    /// Coefficients whose expansion is exactly `Phi`.
    pub fn zero(n: usize, kind: ExpansionKind) -> Self {
        Self {
            lambda1: 0.0,
            lambda2: 0.0,
            bias_over_sigma: 0.0,
            n,
            kind,
            source: Source::Population,
        }
    }

    /// `G_N` or `H_N` from population functionals.
    pub fn population(pop: &PopulationFunctionals, spec: &TrimSpec, kind: ExpansionKind) -> Self {
        Self {
            lambda1: pop.lambda1,
            lambda2: pop.lambda2,
            bias_over_sigma: spec.n as f64 * bias_term(pop, spec) / pop.sigma_w(),
            n: spec.n,
            kind,
            source: Source::Population,
        }
    }

    /// The empirical expansion built from one sample's plug-ins.
    pub fn empirical(est: &PluginEstimates, kind: ExpansionKind) -> Result<Self> {
        if !(est.s2_n > 0.0) {
            return Err(Error::DegenerateVariance);
        }
        if est.density_degenerate {
            return Err(Error::DegenerateDensity);
        }
        Ok(Self::empirical_unchecked(est, kind))
    }

    /// Same as [`Self::empirical`] but keeps whatever the estimates hold when
    /// the density estimate was degenerate (then only `lambda1_hat` is live).
    pub fn empirical_unchecked(est: &PluginEstimates, kind: ExpansionKind) -> Self {
        Self {
            lambda1: est.lambda1_hat,
            lambda2: est.lambda2_hat,
            bias_over_sigma: est.n as f64 * est.beta_n_hat / est.s_n(),
            n: est.n,
            kind,
            source: Source::Empirical,
        }
    }

    /// `(c2, c0)` with `E(x) = Phi(x) + phi(x) (c2 x^2 + c0)`.
    pub fn shape(&self) -> (f64, f64) {
        let s = 6.0 * (self.n as f64).sqrt();
        let (l1, l2, b) = (self.lambda1, self.lambda2, self.bias_over_sigma);
        match self.kind {
            ExpansionKind::Normalized => {
                let a = l1 + 3.0 * l2;
                (-a / s, (a - 6.0 * b) / s)
            }
            ExpansionKind::Studentized => ((2.0 * l1 + 3.0 * l2) / s, (l1 + 3.0 * l2 - 6.0 * b) / s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda1 == 0.0 && self.lambda2 == 0.0 && self.bias_over_sigma == 0.0
    }
}

/// The `phi(x) * polynomial` term added to `Phi(x)`, evaluated from the
/// displayed formula.
pub fn correction(c: &ExpansionCoefficients, x: f64) -> f64 {
    let s = 6.0 * (c.n as f64).sqrt();
    let (l1, l2, b) = (c.lambda1, c.lambda2, c.bias_over_sigma);
    let x2 = x * x;
    let poly = match c.kind {
        ExpansionKind::Normalized => -((l1 + 3.0 * l2) * (x2 - 1.0) + 6.0 * b),
        ExpansionKind::Studentized => (2.0 * x2 + 1.0) * l1 + 3.0 * (x2 + 1.0) * l2 - 6.0 * b,
    };
    normal_pdf(x) * poly / s
}

/// Raw expansion value, not clipped to `[0, 1]`.
pub fn expansion_cdf(c: &ExpansionCoefficients, x: f64) -> f64 {
    if c.is_zero() {
        return normal_cdf(x);
    }
    normal_cdf(x) + correction(c, x)
}

/// Real roots of `x^3 + p x + q = 0`, ascending.
fn depressed_cubic_roots(p: f64, q: f64) -> Vec<f64> {
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let r = disc.sqrt();
        vec![(-q / 2.0 + r).cbrt() + (-q / 2.0 - r).cbrt()]
    } else if p == 0.0 {
        vec![0.0]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|j| m * (theta - 2.0 * std::f64::consts::PI * j as f64 / 3.0).cos())
            .collect()
    };
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let g = *r * *r * *r + p * *r + q;
            let dg = 3.0 * *r * *r + p;
            if dg != 0.0 {
                let step = g / dg;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Points where the derivative `phi(x) [1 - c2 x^3 + (2 c2 - c0) x]` of the
/// expansion vanishes, ascending.
pub fn stationary_points(c: &ExpansionCoefficients) -> Vec<f64> {
    let (c2, c0) = c.shape();
    let lin = 2.0 * c2 - c0;
    if c2 == 0.0 {
        return if lin == 0.0 { Vec::new() } else { vec![-1.0 / lin] };
    }
    depressed_cubic_roots(-lin / c2, -1.0 / c2)
        .into_iter()
        .filter(|r| r.is_finite())
        .collect()
}

/// Running maximum `sup_{y <= x} E(y)` of the raw expansion, computed from its
/// stationary points.
#[derive(Debug, Clone)]
pub struct MonotoneEnvelope {
    coef: ExpansionCoefficients,
    // (point, running max of E over the local maxima up to this point)
    peaks: Vec<(f64, f64)>,
}

impl MonotoneEnvelope {
    pub fn new(coef: ExpansionCoefficients) -> Self {
        let mut peaks = Vec::new();
        let mut best = 0.0f64;
        for s in stationary_points(&coef) {
            best = best.max(expansion_cdf(&coef, s));
            peaks.push((s, best));
        }
        Self { coef, peaks }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let upto = self.peaks.partition_point(|&(s, _)| s <= x);
        let prior = if upto == 0 { 0.0 } else { self.peaks[upto - 1].1 };
        prior.max(expansion_cdf(&self.coef, x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inversion {
    pub x: f64,
    /// `Some` when the normal quantile was returned instead.
    pub warning: Option<String>,
}

const INVERT_TOL: f64 = 1e-9;

/// Smallest `x` with `envelope(x) >= p`, for `0.001 <= p <= 0.999`.
pub fn invert_expansion(c: &ExpansionCoefficients, p: f64) -> Result<Inversion> {
    if !(0.001..=0.999).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let z = normal_quantile(p);
    if c.is_zero() {
        return Ok(Inversion { x: z, warning: None });
    }
    let fallback = |why: &str| Inversion {
        x: z,
        warning: Some(format!(
            "expansion could not be inverted at p = {p} ({why}); normal quantile used"
        )),
    };
    let env = MonotoneEnvelope::new(*c);
    let (mut lo, mut hi) = (z - 1.0, z + 1.0);
    let mut widen = 0;
    while env.eval(lo) >= p || env.eval(hi) < p {
        if widen == 40 {
            return Ok(fallback("no bracket"));
        }
        if env.eval(lo) >= p {
            lo -= (hi - lo).max(1.0);
        }
        if env.eval(hi) < p {
            hi += (hi - lo).max(1.0);
        }
        widen += 1;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if env.eval(mid) >= p {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (expansion_cdf(c, hi) - p).abs() > INVERT_TOL {
        return Ok(fallback("envelope is flat at the target level"));
    }
    Ok(Inversion { x: hi, warning: None })
}

/// Whether the raw expansion leaves `[0, 1]` anywhere on `[lo, hi]`.
pub fn exits_unit_interval(c: &ExpansionCoefficients, lo: f64, hi: f64) -> bool {
    let out = |x: f64| {
        let v = expansion_cdf(c, x);
        !(0.0..=1.0).contains(&v)
    };
    out(lo)
        || out(hi)
        || stationary_points(c)
            .into_iter()
            .filter(|s| (lo..=hi).contains(s))
            .any(out)
}

/// `(x, E(x))` on an even grid, for plotting.
pub fn expansion_curve(c: &ExpansionCoefficients, lo: f64, hi: f64, points: usize) -> Vec<(f64, f64)> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            (x, expansion_cdf(c, x))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coef(l1: f64, l2: f64, b: f64, n: usize, kind: ExpansionKind) -> ExpansionCoefficients {
        ExpansionCoefficients {
            lambda1: l1,
            lambda2: l2,
            bias_over_sigma: b,
            n,
            kind,
            source: Source::Population,
        }
    }

    #[test]
    fn zero_coefficients_give_phi() {
        for kind in [ExpansionKind::Normalized, ExpansionKind::Studentized] {
            let c = ExpansionCoefficients::zero(50, kind);
            for x in [-4.0, -1.0, 0.0, 0.3, 2.5] {
                assert_eq!(expansion_cdf(&c, x), normal_cdf(x));
            }
        }
    }

    #[test]
    fn worked_values_at_zero() {
        let want = 0.5 + 0.398_942_280_401_432_7 / 60.0 * 0.6;
        let g = coef(0.6, 0.0, 0.0, 100, ExpansionKind::Normalized);
        let h = coef(0.6, 0.0, 0.0, 100, ExpansionKind::Studentized);
        assert!((expansion_cdf(&g, 0.0) - want).abs() < 1e-15);
        assert!((expansion_cdf(&h, 0.0) - want).abs() < 1e-15);
        assert!((want - 0.503_989_423).abs() < 1e-9);
    }

    #[test]
    fn shape_matches_display() {
        for kind in [ExpansionKind::Normalized, ExpansionKind::Studentized] {
            let c = coef(0.7, -0.4, 1.3, 77, kind);
            let (c2, c0) = c.shape();
            for i in 0..50 {
                let x = -5.0 + 0.2 * i as f64;
                let direct = correction(&c, x);
                assert!((direct - normal_pdf(x) * (c2 * x * x + c0)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn kinds_differ_by_the_expanded_polynomial() {
        let (l1, l2, b, n) = (0.72, 0.5, 0.9, 400);
        let g = coef(l1, l2, b, n, ExpansionKind::Normalized);
        let h = coef(l1, l2, b, n, ExpansionKind::Studentized);
        for i in 0..100 {
            let x = -6.0 + 0.12 * i as f64;
            let poly = (l1 + 3.0 * l2) * (x * x - 1.0) + (2.0 * x * x + 1.0) * l1 + 3.0 * (x * x + 1.0) * l2;
            let want = normal_pdf(x) / (6.0 * (n as f64).sqrt()) * poly;
            let got = expansion_cdf(&h, x) - expansion_cdf(&g, x);
            assert!((got - want).abs() < 1e-14, "{x}: {got} vs {want}");
        }
    }

    #[test]
    fn skewness_correction_is_even() {
        let c = coef(0.8, 0.3, 0.0, 64, ExpansionKind::Normalized);
        for i in 0..40 {
            let x = 0.1 * i as f64;
            assert_eq!(correction(&c, x), correction(&c, -x));
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_distance_bound() {
        let (l1, l2, b, n) = (0.72, 0.5, 0.36, 100);
        let c = coef(l1, l2, b, n, ExpansionKind::Normalized);
        let bound = ((l1 + 3.0 * l2).abs() * normal_pdf(0.0) + 6.0 * b.abs() * normal_pdf(0.0))
            / (6.0 * (n as f64).sqrt());
        for i in 0..2001 {
            let x = -10.0 + 0.01 * i as f64;
            assert!((expansion_cdf(&c, x) - normal_cdf(x)).abs() <= bound + 1e-15);
        }
    }

    #[test]
    fn stationary_points_zero_the_derivative() {
        let cases = [
            coef(0.72, 0.5, 0.36, 100, ExpansionKind::Normalized),
            coef(0.72, 0.5, 0.36, 100, ExpansionKind::Studentized),
            coef(-3.0, 2.0, 0.0, 4, ExpansionKind::Normalized),
            coef(0.0, 0.0, 2.0, 9, ExpansionKind::Normalized),
            coef(9.0, 4.0, -1.0, 5, ExpansionKind::Studentized),
        ];
        for c in cases {
            let (c2, c0) = c.shape();
            let pts = stationary_points(&c);
            assert!(!pts.is_empty(), "{c:?}");
            for s in pts {
                let d = 1.0 - c2 * s.powi(3) + (2.0 * c2 - c0) * s;
                assert!(d.abs() < 1e-9 * (1.0 + s.abs().powi(3)), "{c:?} {s} {d}");
            }
        }
    }

    #[test]
    fn flat_correction_has_no_stationary_points() {
        assert!(stationary_points(&coef(-3.0, 1.0, 0.0, 4, ExpansionKind::Normalized)).is_empty());
    }

    #[test]
    fn cubic_root_branches() {
        // one real root
        let r = depressed_cubic_roots(1.0, -2.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
        // three real roots: (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let r = depressed_cubic_roots(-7.0, 6.0);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn envelope_is_monotone_and_dominates() {
        let c = coef(4.0, 2.0, 0.0, 4, ExpansionKind::Normalized);
        let env = MonotoneEnvelope::new(c);
        let mut last = f64::NEG_INFINITY;
        for i in 0..4001 {
            let x = -8.0 + 0.004 * i as f64;
            let v = env.eval(x);
            assert!(v >= last);
            assert!(v >= expansion_cdf(&c, x));
            last = v;
        }
    }

    #[test]
    fn inversion_examples() {
        let c = ExpansionCoefficients::zero(100, ExpansionKind::Studentized);
        assert!((invert_expansion(&c, 0.975).unwrap().x - 1.959_963_984_540_054).abs() < 1e-10);
        assert_eq!(invert_expansion(&c, 0.5).unwrap().x, 0.0);
        assert!(invert_expansion(&c, 0.0005).is_err());
        assert!(invert_expansion(&c, 0.9995).is_err());
    }

    #[test]
    fn inversion_round_trip() {
        for kind in [ExpansionKind::Normalized, ExpansionKind::Studentized] {
            let c = coef(0.72, 0.5, 0.36, 400, kind);
            for i in 1..=999 {
                let p = i as f64 / 1000.0;
                let inv = invert_expansion(&c, p).unwrap();
                assert!(inv.warning.is_none());
                assert!((expansion_cdf(&c, inv.x) - p).abs() < 1e-9, "{p}");
            }
        }
    }

    #[test]
    fn wild_coefficients_fall_back_or_invert() {
        let c = coef(30.0, 10.0, 5.0, 2, ExpansionKind::Studentized);
        for p in [0.001, 0.05, 0.5, 0.95, 0.999] {
            let inv = invert_expansion(&c, p).unwrap();
            if inv.warning.is_none() {
                assert!((expansion_cdf(&c, inv.x) - p).abs() < 1e-9);
            } else {
                assert_eq!(inv.x, normal_quantile(p));
            }
        }
    }

    #[test]
    fn leaving_the_unit_interval_is_flagged() {
        assert!(!exits_unit_interval(&ExpansionCoefficients::zero(10, ExpansionKind::Normalized), -8.0, 8.0));
        let c = coef(6.0, 3.0, 0.0, 4, ExpansionKind::Normalized);
        assert!(exits_unit_interval(&c, -8.0, 8.0));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("studentized".parse::<ExpansionKind>().unwrap(), ExpansionKind::Studentized);
        assert_eq!(ExpansionKind::Normalized.to_string(), "normalized");
        assert!("skewed".parse::<ExpansionKind>().is_err());
    }

    #[test]
    fn curve_endpoints() {
        let c = coef(0.5, 0.1, 0.0, 30, ExpansionKind::Normalized);
        let curve = expansion_curve(&c, -3.0, 3.0, 61);
        assert_eq!(curve.len(), 61);
        assert_eq!(curve[0].0, -3.0);
        assert_eq!(curve[60].0, 3.0);
    }
}
