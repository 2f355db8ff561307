//! Trimmed means, Studentized trimmed means and their one-term Edgeworth
//! expansions, with the plug-in (empirical) versions, U-statistic and
//! Bahadur-type diagnostics, and a deterministic Monte Carlo harness.

pub mod dist;
pub mod edgeworth;
pub mod error;
pub mod estimators;
pub mod functionals;
pub mod io;
pub mod montecarlo;
pub mod normal;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod ustat;

pub use dist::{make_model, DistributionModel, ModelSpec};
pub use edgeworth::{expansion_cdf, invert_expansion, ExpansionCoefficients, ExpansionKind, Source};
pub use error::{Error, Result};
pub use estimators::{BiasEstimator, PluginEstimates, SortedSample};
pub use functionals::{bias_term, compute_functionals, PopulationFunctionals, TrimLevels, TrimSpec};
pub use montecarlo::{SimulationConfig, Target};
pub use ustat::{Diagnostic, UStatDecomposition};
