//! U-statistic approximation of the trimmed sum, the linearization of the
//! plug-in variance, and Bahadur-type remainders for simulated samples whose
//! population functionals are known.
//!
//! With `W_i` the observation Winsorized at `(xi_alpha, xi_beta]`,
//! `a_i = I(X_i <= xi_alpha) - alpha` and `b_i = I(X_i <= xi_beta) - beta`:
//!
//! ```text
//! L_N = N^{-1/2} sum (W_i - mu_W)
//! U_N = N^{-3/2} [ -(1/f_alpha) sum_{i<j} a_i a_j + (1/f_beta) sum_{i<j} b_i b_j ]
//! ```
//!
//! Sums `sum_{i=a}^{b}` over order statistics follow the signed convention
//! `P(b) - P(a-1)` with partial sums `P`, so `b = a - 1` is empty and `b < a - 1`
//! gives a negated sum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{mu_s2_sorted, SortedSample};
use crate::functionals::{bias_term, PopulationFunctionals, TrimSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UStatDecomposition {
    pub n: usize,
    pub l_n: f64,
    pub u_n: f64,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub v_n1: f64,
    pub v_n2: f64,
}

impl UStatDecomposition {
    pub fn v_n(&self) -> f64 {
        self.v_n1 + self.v_n2
    }
}

#[inline]
fn winsorize(x: f64, pop: &PopulationFunctionals) -> f64 {
    if x <= pop.xi_alpha {
        pop.xi_alpha
    } else if x > pop.xi_beta {
        pop.xi_beta
    } else {
        x
    }
}

/// `sum_{i<j} c_i c_j` for `count` entries equal to `1 - p` and `n - count`
/// equal to `-p`, via `((sum c)^2 - sum c^2) / 2`.
#[inline]
pub fn indicator_pair_sum(n: usize, count: usize, p: f64) -> f64 {
    let hit = count as f64;
    let miss = (n - count) as f64;
    let sum = hit * (1.0 - p) - miss * p;
    let sum_sq = hit * (1.0 - p) * (1.0 - p) + miss * p * p;
    (sum * sum - sum_sq) / 2.0
}

/// `N^{-3/2}` times the bracket defining `U_N`, given the tail counts.
#[inline]
pub fn u_statistic(n: usize, n_alpha: usize, n_beta: usize, pop: &PopulationFunctionals) -> f64 {
    let lower = indicator_pair_sum(n, n_alpha, pop.alpha) / pop.f_alpha;
    let upper = indicator_pair_sum(n, n_beta, pop.beta) / pop.f_beta;
    (upper - lower) / (n as f64).powf(1.5)
}

/// `L_N`, `U_N` and the pieces of `V_N` for one sample (any order).
pub fn decompose(x: &[f64], pop: &PopulationFunctionals) -> UStatDecomposition {
    let n = x.len();
    let nf = n as f64;
    let mut n_alpha = 0;
    let mut n_beta = 0;
    let mut lin = 0.0;
    let mut quad = 0.0;
    for &v in x {
        if v <= pop.xi_alpha {
            n_alpha += 1;
        }
        if v <= pop.xi_beta {
            n_beta += 1;
        }
        let d = winsorize(v, pop) - pop.mu_w;
        lin += d;
        quad += d * d - pop.sigma2_w;
    }
    let v_n1 = 2.0 * pop.alpha / pop.f_alpha * (n_alpha as f64 - pop.alpha * nf) / nf
        * (pop.mu_w - pop.xi_alpha)
        + 2.0 * (1.0 - pop.beta) / pop.f_beta * (n_beta as f64 - pop.beta * nf) / nf
            * (pop.mu_w - pop.xi_beta);
    UStatDecomposition {
        n,
        l_n: lin / nf.sqrt(),
        u_n: u_statistic(n, n_alpha, n_beta, pop),
        n_alpha,
        n_beta,
        v_n1,
        v_n2: quad / nf,
    }
}

/// Which approximation a remainder belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagnostic {
    /// `X_{k:N} - xi_alpha + (N_alpha - alpha N) / (N f_alpha)`
    Lemma31,
    /// `N^{-1} sum_{i=k}^{N_alpha} (X_{i:N} - xi_alpha)` about its quadratic term
    Corollary31First,
    /// Same with squares.
    Corollary31Second,
    /// Trimmed sum about `L_N + U_N`.
    Lemma41,
    /// `S_N^2 - sigma_W^2 - V_N`
    Lemma51,
}

impl Diagnostic {
    pub const ALL: [Diagnostic; 5] = [
        Diagnostic::Lemma31,
        Diagnostic::Corollary31First,
        Diagnostic::Corollary31Second,
        Diagnostic::Lemma41,
        Diagnostic::Lemma51,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Diagnostic::Lemma31 => "lemma31",
            Diagnostic::Corollary31First => "corollary31_first",
            Diagnostic::Corollary31Second => "corollary31_second",
            Diagnostic::Lemma41 => "lemma41",
            Diagnostic::Lemma51 => "lemma51",
        }
    }

    /// Factor applied to the raw remainder so that it stays bounded in
    /// probability.
    pub fn scaling(self, n: usize) -> f64 {
        let nf = n as f64;
        let ln = nf.ln();
        match self {
            Diagnostic::Lemma31 | Diagnostic::Lemma51 => (nf / ln).powf(0.75),
            Diagnostic::Corollary31First | Diagnostic::Corollary31Second => (nf / ln).powf(1.25),
            Diagnostic::Lemma41 => nf.powf(0.75) * ln.powf(-1.25),
        }
    }
}

impl FromStr for Diagnostic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Diagnostic::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::UnknownDiagnostic(s.to_string()))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemainderSample {
    pub n: usize,
    pub which: Diagnostic,
    pub raw_remainder: f64,
    pub scaled_remainder: f64,
}

/// `sum_{i=a}^{b} g(x_i)` over 1-based indices with the signed convention.
fn signed_sum(x: &[f64], a: usize, b: usize, g: impl Fn(f64) -> f64) -> f64 {
    if b + 1 >= a {
        x[a - 1..b].iter().map(|&v| g(v)).sum()
    } else {
        -x[b..a - 1].iter().map(|&v| g(v)).sum::<f64>()
    }
}

/// Raw and scaled remainder of the chosen approximation for one sample.
pub fn bahadur_remainder(
    x: &[f64],
    pop: &PopulationFunctionals,
    spec: &TrimSpec,
    which: Diagnostic,
) -> Result<RemainderSample> {
    let sorted = SortedSample::new(x.to_vec())?;
    if sorted.n() != spec.n {
        return Err(Error::InvalidSample(format!(
            "trim spec built for n = {} but sample has {} values",
            spec.n,
            sorted.n()
        )));
    }
    Ok(remainder_sorted(sorted.values(), pop, spec, which))
}

pub(crate) fn remainder_sorted(
    x: &[f64],
    pop: &PopulationFunctionals,
    spec: &TrimSpec,
    which: Diagnostic,
) -> RemainderSample {
    let n = x.len();
    let nf = n as f64;
    let n_alpha = x.partition_point(|&v| v <= pop.xi_alpha);
    let dev_alpha = n_alpha as f64 - pop.alpha * nf;
    let raw = match which {
        Diagnostic::Lemma31 => x[spec.k - 1] - pop.xi_alpha + dev_alpha / (nf * pop.f_alpha),
        Diagnostic::Corollary31First => {
            signed_sum(x, spec.k, n_alpha, |v| v - pop.xi_alpha) / nf
                + dev_alpha * dev_alpha / (2.0 * nf * nf * pop.f_alpha)
        }
        Diagnostic::Corollary31Second => {
            let xi2 = pop.xi_alpha * pop.xi_alpha;
            signed_sum(x, spec.k, n_alpha, |v| v * v - xi2) / nf
                + dev_alpha * dev_alpha / (nf * nf) * pop.xi_alpha / pop.f_alpha
        }
        Diagnostic::Lemma41 => {
            let d = decompose(x, pop);
            let kept: f64 = x[spec.k - 1..spec.m].iter().sum();
            // centring at beta_N with the count mismatch (m - k + 1) - (beta - alpha) N
            // taken out, so it matches the trimmed sum rather than the trimmed mean
            let b2 = bias_term(pop, spec) - (spec.frac_beta - spec.frac_alpha) * pop.mu_trim / nf;
            let root = nf.sqrt();
            kept / root
                - root * (pop.beta - pop.alpha) * pop.mu_trim
                - root * b2
                - (d.l_n + d.u_n)
        }
        Diagnostic::Lemma51 => {
            let (_, s2) = mu_s2_sorted(x, spec);
            s2 - pop.sigma2_w - decompose(x, pop).v_n()
        }
    };
    RemainderSample {
        n,
        which,
        raw_remainder: raw,
        scaled_remainder: raw * which.scaling(n),
    }
}
