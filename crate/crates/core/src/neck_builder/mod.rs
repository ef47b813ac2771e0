//! The neck: a Ricci-positive metric on a long cylinder interpolating
//! between a round sphere end and a prescribed warped-product sphere end.
//!
//! The construction runs in stages, one submodule each:
//!
//! * [`gamma`] — the decay profile driving the warp functions `h(t)`, `k(t)`
//!   and its closed-form integrals;
//! * [`fixture`] — a shooting-method generator for admissible boundary
//!   profiles `g_1 = dphi^2 + f_1^2 ds^2` with sectional curvature above 1;
//! * [`renorm`] — the renormalized speed profile, the interpolation function
//!   `eta`, the two-parameter sphere family, and the curvature-above-1 path
//!   check;
//! * [`params`] — the derived parameter pack `(t0, eps, delta) -> (alpha,
//!   beta, t1, r_tilde, kappa, lambda)` with internal consistency checks;
//! * [`curvature`] — pointwise neck curvatures, boundary conditions, grid
//!   positivity reports, and empirical asymptotic-constant estimates;
//! * [`search`] — the feasibility search over `(eps, delta, t0)`.

use thiserror::Error;

pub mod curvature;
pub mod fixture;
pub mod gamma;
pub mod params;
pub mod renorm;
pub mod search;

pub use curvature::{
    asymptotic_bound_check, boundary_check, neck_curvatures, neck_warp, ricci_positivity_report,
    AsymptoticReport, BoundaryCheck, GridReport, NeckPointCurvatures,
};
pub use fixture::{fixture_g1, ProfileG1};
pub use gamma::{delta_t0, delta_t0_quadrature, gamma, gamma_integral, gamma_prime};
pub use params::{neck_params, NeckParams};
pub use renorm::{
    eta_profile, gtilde_sectional, path_check, path_min, PathReport, RenormalizedProfile,
};
pub use search::{parameter_search, SearchBox, SearchOutcome};


#[derive(Debug, Error)]
pub enum NeckError {
    #[error("neck parameter out of range: {0}")]
    BadParameter(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("degenerate renormalized profile (a1 = 1): the source is already round")]
    DegenerateProfile,
    #[error("evaluation inside the C^1 seam band |t - 2 t0| < {0}")]
    SeamEvaluation(f64),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("shooting fixture infeasible: {0}")]
    InfeasibleFixture(String),
    #[error("neck too long for floating point: ln t1 = {0:.1}")]
    TooLong(f64),
    #[error(transparent)]
    Warp(#[from] crate::warped_forms::WarpError),
    #[error(transparent)]
    Profile(#[from] crate::profile::ProfileError),
}
