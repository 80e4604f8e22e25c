//! Population quality indicators.
//!
//! * [`distance`]: GD / IGD, their power-mean variants and the averaged
//!   Hausdorff distance.
//! * [`hypervolume`]: exact hypervolume for up to four objectives and a
//!   Monte Carlo estimator for any objective count.
//! * [`entropy`]: the KKT-residual entropy indicator, which needs decision
//!   vectors and gradients but no reference front.

pub mod distance;
pub mod entropy;
pub mod hypervolume;

pub use distance::{delta_p, gd, gd_p, igd, igd_p};
pub use entropy::{
    entropy_from_residuals, entropy_indicator, entropy_term, h_upper_bound, EntropyOptions,
    EntropyTerms,
};
pub use hypervolume::{
    hv_exact, hv_monte_carlo, HvConfig, HvEstimate, HvValue, DEFAULT_MC_SAMPLES, MAX_EXACT_OBJECTIVES,
};
