//! The renormalized boundary profile and the two-parameter family of sphere
//! metrics `A^2(a,b,x) dx^2 + b^2 cos^2 x ds^2` it generates, where
//! `A(a,b,x) = b (1 + (a - 1) eta(x))`. The interpolation function `eta`
//! encodes the shape of the boundary profile; the path `b(a) = rho a^{-1/alpha}`
//! connects the round sphere of radius `rho` to the boundary profile while
//! keeping sectional curvature above 1.

use serde::Serialize;

use crate::numeric::linspace;
use crate::profile::ScalarProfile;
use crate::warped_forms::{renormalize_profile, sup_on_grid};

use super::fixture::ProfileG1;
use super::NeckError;

/// Renormalized speed profile of a boundary metric together with the
/// derived interpolation data.
#[derive(Clone)]
pub struct RenormalizedProfile {
    pub g1: ProfileG1,
    pub a1_profile: ScalarProfile,
    /// Peak speed ratio `sup A / r`.
    pub a1: f64,
    pub x_max: f64,
    pub rho: f64,
    /// Path exponent `ln a1 / (ln rho - ln r)`.
    pub alpha_tilde: f64,
    /// Empirical floor of `(1 + (a - 1) eta(x)) / a` over the parameter range.
    pub h_eta: f64,
    /// Grid extrema of `eta`.
    pub eta_max: f64,
    pub eta_min: f64,
}

impl RenormalizedProfile {
    /// `eta(x)` and `eta'(x)`.
    pub fn eta(&self, x: f64) -> (f64, f64) {
        let j = self.a1_profile.jet(x).expect("x inside [-pi/2, pi/2]");
        let denom = self.g1.r * (self.a1 - 1.0);
        ((j.v / self.g1.r - 1.0) / (self.a1 - 1.0), j.d1 / denom)
    }

    /// `1 + (a - 1) eta(x)`, the normalized speed of the interpolated metric.
    pub fn speed(&self, a: f64, x: f64) -> f64 {
        1.0 + (a - 1.0) * self.eta(x).0
    }
}

const X_MARGIN: f64 = 1e-2;

/// Renormalize a boundary profile and derive the interpolation data,
/// verifying the bounds `eta <= 1` (attained), `eta > -1/(a1 - 1)`, the
/// sine lower bound at `a = a1`, and the positive floor `h_eta`.
pub fn eta_profile(g1: &ProfileG1, rho: f64) -> Result<RenormalizedProfile, NeckError> {
    let ren = renormalize_profile(&g1.f1, g1.r)?;
    let (x_max, sup_a) = sup_on_grid(&ren.a1, 4097);
    let a1 = sup_a / g1.r;
    if a1 - 1.0 < 1e-9 {
        return Err(NeckError::DegenerateProfile);
    }
    if a1 <= rho / g1.r {
        return Err(NeckError::HypothesisViolation(format!(
            "a1 = {a1} <= rho/r = {}; path exponent would not exceed 1",
            rho / g1.r
        )));
    }
    let alpha_tilde = a1.ln() / (rho.ln() - g1.r.ln());

    let mut prof = RenormalizedProfile {
        g1: g1.clone(),
        a1_profile: ren.a1,
        a1,
        x_max,
        rho,
        alpha_tilde,
        h_eta: 0.0,
        eta_max: f64::NEG_INFINITY,
        eta_min: f64::INFINITY,
    };

    let xs = linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        1024,
    );
    let mut h_eta = f64::INFINITY;
    for &x in &xs {
        let (eta, _) = prof.eta(x);
        prof.eta_max = prof.eta_max.max(eta);
        prof.eta_min = prof.eta_min.min(eta);
        // The a-minimum of (1 + (a-1) eta)/a over [1, a1] sits at a = a1.
        let speed_a1 = 1.0 + (a1 - 1.0) * eta;
        h_eta = h_eta.min(speed_a1 / a1);
        if speed_a1 <= x.sin().abs() {
            return Err(NeckError::InternalConsistency(format!(
                "sine bound fails at x = {x}: speed {speed_a1} <= |sin x|"
            )));
        }
    }
    if (prof.eta_max - 1.0).abs() > 1e-9 {
        return Err(NeckError::InternalConsistency(format!(
            "max eta = {} not attained at 1",
            prof.eta_max
        )));
    }
    if prof.eta_min <= -1.0 / (a1 - 1.0) {
        return Err(NeckError::InternalConsistency(format!(
            "eta lower bound violated: {} <= {}",
            prof.eta_min,
            -1.0 / (a1 - 1.0)
        )));
    }
    if h_eta <= 0.0 {
        return Err(NeckError::InternalConsistency(format!(
            "speed floor h_eta = {h_eta} not positive"
        )));
    }
    prof.h_eta = h_eta;
    Ok(prof)
}

/// Sectional curvatures of the interpolated sphere metric at parameters
/// `(a, b)` and point `x`:
///
/// ```text
/// K(X, Sigma)     = (1/b^2) [ 1/s^2 - eta' tan x (a-1) / s^3 ]
/// K(Sigma, Sigma) = (1/b^2) [ 1/cos^2 x - tan^2 x / s^2 ]
/// ```
///
/// with `s = 1 + (a - 1) eta(x)`.
pub fn gtilde_sectional(
    prof: &RenormalizedProfile,
    a: f64,
    b: f64,
    x: f64,
) -> Result<(f64, f64), NeckError> {
    if a < 1.0 || b <= 0.0 {
        return Err(NeckError::BadParameter(format!(
            "need a >= 1, b > 0; got a = {a}, b = {b}"
        )));
    }
    if x.abs() >= std::f64::consts::FRAC_PI_2 - X_MARGIN * 0.1 {
        return Err(NeckError::BadParameter(format!(
            "x = {x} too close to the pole"
        )));
    }
    let (eta, etap) = prof.eta(x);
    let s = 1.0 + (a - 1.0) * eta;
    let inv_b2 = 1.0 / (b * b);
    let k_x = inv_b2 * (1.0 / (s * s) - etap * x.tan() * (a - 1.0) / (s * s * s));
    let tanx = x.tan();
    let k_s = inv_b2 * (1.0 / (x.cos() * x.cos()) - tanx * tanx / (s * s));
    Ok((k_x, k_s))
}

#[derive(Debug, Clone, Serialize)]
pub struct PathReport {
    pub min_k_xsigma: f64,
    pub min_k_sigmasigma: f64,
    pub arg_min: (f64, f64),
    pub pass: bool,
}

/// Grid minimum of both sectional families along `b(a) = rho a^{-1/exponent}`
/// over `(a, x) in [1, a1] x (-pi/2, pi/2)`.
pub fn path_min(
    prof: &RenormalizedProfile,
    exponent: f64,
    na: usize,
    nx: usize,
) -> Result<PathReport, NeckError> {
    let mut rep = PathReport {
        min_k_xsigma: f64::INFINITY,
        min_k_sigmasigma: f64::INFINITY,
        arg_min: (1.0, 0.0),
        pass: false,
    };
    let xs = linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        nx,
    );
    for &a in linspace(1.0, prof.a1, na).iter() {
        let b = prof.rho / a.powf(1.0 / exponent);
        for &x in &xs {
            let (kx, ks) = gtilde_sectional(prof, a, b, x)?;
            if kx < rep.min_k_xsigma {
                rep.min_k_xsigma = kx;
                rep.arg_min = (a, x);
            }
            if ks < rep.min_k_sigmasigma {
                rep.min_k_sigmasigma = ks;
            }
        }
    }
    rep.pass = rep.min_k_xsigma > 1.0 && rep.min_k_sigmasigma > 1.0;
    Ok(rep)
}

/// The curvature-above-1 check along the ideal path with exponent
/// `alpha_tilde`.
pub fn path_check(
    prof: &RenormalizedProfile,
    na: usize,
    nx: usize,
) -> Result<PathReport, NeckError> {
    path_min(prof, prof.alpha_tilde, na, nx)
}
