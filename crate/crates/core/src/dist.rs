//! Ground-truth distributions for simulation.
//!
//! Every model exposes its cdf, the left-continuous quantile
//! `F^{-1}(u) = inf{x : F(x) >= u}`, the density where one exists, and an
//! inverse-transform sampler. The catalog:
//!
//! | family             | params                  |
//! |--------------------|-------------------------|
//! | `uniform`          | `[a, b]`, `a < b`       |
//! | `exponential`      | `[rate]` or `[rate, loc]` |
//! | `normal`           | `[mean, sd]`            |
//! | `cauchy`           | `[loc, scale]`          |
//! | `discrete_uniform` | `[n]`, support `1..=n`  |
//!
//! `discrete_uniform` has atoms at every quantile and no density; it exists
//! to exercise the rejection paths of the population functionals.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::normal::{normal_cdf, normal_pdf, normal_quantile};
use crate::rng::{RngStream, StreamRng};

pub const FAMILIES: [&str; 5] = ["uniform", "exponential", "normal", "cauchy", "discrete_uniform"];

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64, loc: f64 },
    Normal { mean: f64, sd: f64 },
    Cauchy { loc: f64, scale: f64 },
    DiscreteUniform { n: u64 },
}

/// Family name plus parameter list, as it appears in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<DistributionModel> {
        make_model(&self.family, &self.params)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionModel {
    name: String,
    params: Vec<f64>,
    family: Family,
    // y = scale * x + shift applied to the base family; scale may be negative
    scale: f64,
    shift: f64,
}

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: family.to_string(),
        reason: reason.into(),
    }
}

/// Builds a catalog model from its family name and parameters.
pub fn make_model(name: &str, params: &[f64]) -> Result<DistributionModel> {
    if params.iter().any(|p| !p.is_finite()) {
        return Err(invalid(name, "parameters must be finite"));
    }
    let arity = |expected: &[usize]| -> Result<()> {
        if expected.contains(&params.len()) {
            Ok(())
        } else {
            Err(invalid(
                name,
                format!("expected {expected:?} parameters, got {}", params.len()),
            ))
        }
    };
    let family = match name {
        "uniform" => {
            arity(&[2])?;
            let (a, b) = (params[0], params[1]);
            if a >= b {
                return Err(invalid(name, "need a < b"));
            }
            Family::Uniform { a, b }
        }
        "exponential" => {
            arity(&[1, 2])?;
            let rate = params[0];
            if rate <= 0.0 {
                return Err(invalid(name, "rate must be positive"));
            }
            Family::Exponential {
                rate,
                loc: params.get(1).copied().unwrap_or(0.0),
            }
        }
        "normal" => {
            arity(&[2])?;
            if params[1] <= 0.0 {
                return Err(invalid(name, "sd must be positive"));
            }
            Family::Normal {
                mean: params[0],
                sd: params[1],
            }
        }
        "cauchy" => {
            arity(&[2])?;
            if params[1] <= 0.0 {
                return Err(invalid(name, "scale must be positive"));
            }
            Family::Cauchy {
                loc: params[0],
                scale: params[1],
            }
        }
        "discrete_uniform" => {
            arity(&[1])?;
            let n = params[0];
            if n < 1.0 || n.fract() != 0.0 || n > 1e15 {
                return Err(invalid(name, "n must be a positive integer"));
            }
            Family::DiscreteUniform { n: n as u64 }
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(DistributionModel {
        name: name.to_string(),
        params: params.to_vec(),
        family,
        scale: 1.0,
        shift: 0.0,
    })
}

impl DistributionModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self.family, Family::DiscreteUniform { .. })
    }

    /// Law of `scale * X + shift`. A negative scale reflects the model, which
    /// is only supported for continuous families.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        if !scale.is_finite() || !shift.is_finite() || scale == 0.0 {
            return Err(invalid(&self.name, "affine map needs finite nonzero scale"));
        }
        if scale < 0.0 && !self.is_continuous() {
            return Err(invalid(&self.name, "reflection of an atomic law"));
        }
        Ok(Self {
            scale: self.scale * scale,
            shift: self.shift * scale + shift,
            ..self.clone()
        })
    }

    fn base_cdf(&self, x: f64) -> f64 {
        match self.family {
            Family::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Family::Exponential { rate, loc } => {
                if x <= loc {
                    0.0
                } else {
                    -(-rate * (x - loc)).exp_m1()
                }
            }
            Family::Normal { mean, sd } => normal_cdf((x - mean) / sd),
            Family::Cauchy { loc, scale } => 0.5 + ((x - loc) / scale).atan() / PI,
            Family::DiscreteUniform { n } => {
                let j = x.floor();
                if j < 1.0 {
                    0.0
                } else if j >= n as f64 {
                    1.0
                } else {
                    j / n as f64
                }
            }
        }
    }

    fn base_quantile(&self, u: f64) -> f64 {
        match self.family {
            Family::Uniform { a, b } => a + (b - a) * u,
            Family::Exponential { rate, loc } => loc - (-u).ln_1p() / rate,
            Family::Normal { mean, sd } => mean + sd * normal_quantile(u),
            Family::Cauchy { loc, scale } => loc + scale * (PI * (u - 0.5)).tan(),
            Family::DiscreteUniform { n } => {
                let nf = n as f64;
                let mut j = (u * nf).ceil().clamp(1.0, nf);
                // smallest j with j/n >= u
                if j > 1.0 && (j - 1.0) / nf >= u {
                    j -= 1.0;
                }
                if j / nf < u && j < nf {
                    j += 1.0;
                }
                j
            }
        }
    }

    fn base_density(&self, x: f64) -> Option<f64> {
        match self.family {
            Family::Uniform { a, b } => Some(if x < a || x > b { 0.0 } else { 1.0 / (b - a) }),
            Family::Exponential { rate, loc } => Some(if x < loc {
                0.0
            } else {
                rate * (-rate * (x - loc)).exp()
            }),
            Family::Normal { mean, sd } => Some(normal_pdf((x - mean) / sd) / sd),
            Family::Cauchy { loc, scale } => {
                let z = (x - loc) / scale;
                Some(1.0 / (PI * scale * (1.0 + z * z)))
            }
            Family::DiscreteUniform { .. } => None,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let y = (x - self.shift) / self.scale;
        if self.scale > 0.0 {
            self.base_cdf(y)
        } else {
            1.0 - self.base_cdf(y)
        }
    }

    /// Left-continuous inverse of the cdf, for `u` in (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        if self.scale > 0.0 {
            self.shift + self.scale * self.base_quantile(u)
        } else {
            self.shift + self.scale * self.base_quantile(1.0 - u)
        }
    }

    /// Density at `x`; `None` where the law has no density (atoms).
    pub fn density(&self, x: f64) -> Option<f64> {
        let y = (x - self.shift) / self.scale;
        self.base_density(y).map(|d| d / self.scale.abs())
    }

    #[inline]
    pub fn draw(&self, rng: &mut StreamRng) -> f64 {
        self.quantile(rng.uniform_open())
    }

    /// Fills `buf` with i.i.d. draws by inverse transform.
    pub fn fill(&self, rng: &mut StreamRng, buf: &mut [f64]) {
        for x in buf.iter_mut() {
            *x = self.draw(rng);
        }
    }

    /// `n` i.i.d. variates from `stream`; deterministic in the stream.
    pub fn sample(&self, n: usize, stream: RngStream) -> Vec<f64> {
        let mut rng = stream.generator();
        let mut out = vec![0.0; n];
        self.fill(&mut rng, &mut out);
        out
    }
}
