//! The derived neck parameters. Given `(t0, eps, delta)` and a renormalized
//! profile, the warp functions are
//!
//! ```text
//! h(t) = exp(alpha beta int_{t0}^t Gamma),   h(t0) = 1, h(t1) = a1,
//! k(t) = rho exp(-beta int_{t0}^t Gamma),    k(t0) = rho, k(t1) = r_tilde,
//! ```
//!
//! with `beta = (1 - eps)(ln rho - ln r) / Delta(t0)` and `alpha = (1 +
//! delta) ln a1 / (beta Delta(t0))`. Both `t1` and `r_tilde` have closed
//! forms that are cross-checked against independent numerical evaluations.

use serde::Serialize;

use crate::numeric::bisect;

use super::gamma::{
    delta_t0, delta_t0_quadrature, gamma, gamma_integral, gamma_prime, scaled_gamma,
};
use super::renorm::RenormalizedProfile;
use super::NeckError;

/// Warp data at a point with `t`-normalized derivatives:
/// `tp = t k'/k`, `t2kpp = t^2 k''/k`, `th = t h'/h`, `t2hpp = t^2 h''/h`.
#[derive(Debug, Clone, Copy)]
pub struct NormJets {
    pub h: f64,
    pub k: f64,
    pub tp: f64,
    pub t2kpp: f64,
    pub th: f64,
    pub t2hpp: f64,
}

/// Guard against `t1 = exp(ln_t1)` leaving the double-precision range.
const LN_T1_MAX: f64 = 690.0;

#[derive(Clone)]
pub struct NeckParams {
    pub prof: RenormalizedProfile,
    pub t0: f64,
    pub eps: f64,
    pub delta: f64,
    pub rho: f64,
    pub delta_mass: f64,
    pub beta: f64,
    pub alpha: f64,
    pub ln_t1: f64,
    pub t1: f64,
    pub t1_numeric: f64,
    pub r_tilde: f64,
    pub r_tilde_closed: f64,
    pub kappa: f64,
    pub lambda: f64,
    /// Half-width of the excluded band around the curvature seam at `2 t0`.
    pub seam_half_width: f64,
}

/// Serializable summary of a parameter pack.
#[derive(Debug, Clone, Serialize)]
pub struct NeckParamsSummary {
    pub t0: f64,
    pub eps: f64,
    pub delta: f64,
    pub rho: f64,
    pub r: f64,
    pub big_r: f64,
    pub n: usize,
    pub a1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub ln_t1: f64,
    pub r_tilde: f64,
    pub kappa: f64,
    pub lambda: f64,
}

impl NeckParams {
    pub fn summary(&self) -> NeckParamsSummary {
        NeckParamsSummary {
            t0: self.t0,
            eps: self.eps,
            delta: self.delta,
            rho: self.rho,
            r: self.prof.g1.r,
            big_r: self.prof.g1.big_r,
            n: self.prof.g1.n,
            a1: self.prof.a1,
            alpha: self.alpha,
            beta: self.beta,
            ln_t1: self.ln_t1,
            r_tilde: self.r_tilde,
            kappa: self.kappa,
            lambda: self.lambda,
        }
    }

    /// Warp data at `t` with every derivative pre-multiplied by the power of
    /// `t` that keeps it order-one over the whole neck; safe for `t` beyond
    /// the range where `t^2` itself overflows.
    pub fn norm_jets(&self, t: f64) -> Result<NormJets, NeckError> {
        let (tg, t2gp) = scaled_gamma(t, self.t0)?;
        let gi = gamma_integral(self.t0, t)?;
        let ab = self.alpha * self.beta;
        let h = (ab * gi).exp();
        let k = self.rho * (-self.beta * gi).exp();
        Ok(NormJets {
            h,
            k,
            tp: -self.beta * tg,
            t2kpp: self.beta * self.beta * tg * tg - self.beta * t2gp,
            th: ab * tg,
            t2hpp: ab * t2gp + ab * ab * tg * tg,
        })
    }

    /// `h, h', h'', k, k', k''` at `t` (`Gamma'` taken on the branch of `t`).
    pub fn warp_jets(&self, t: f64) -> Result<[f64; 6], NeckError> {
        let g = gamma(t, self.t0)?;
        let gp = gamma_prime(t, self.t0)?;
        let gi = gamma_integral(self.t0, t)?;
        let ab = self.alpha * self.beta;
        let h = (ab * gi).exp();
        let hp = ab * g * h;
        let hpp = (ab * gp + ab * ab * g * g) * h;
        let k = self.rho * (-self.beta * gi).exp();
        let kp = -self.beta * g * k;
        let kpp = (-self.beta * gp + self.beta * self.beta * g * g) * k;
        Ok([h, hp, hpp, k, kp, kpp])
    }

    pub fn h(&self, t: f64) -> Result<f64, NeckError> {
        Ok((self.alpha * self.beta * gamma_integral(self.t0, t)?).exp())
    }

    pub fn k(&self, t: f64) -> Result<f64, NeckError> {
        Ok(self.rho * (-self.beta * gamma_integral(self.t0, t)?).exp())
    }

    pub fn in_seam(&self, t: f64) -> bool {
        (t - 2.0 * self.t0).abs() < self.seam_half_width
    }
}

pub fn neck_params(
    prof: &RenormalizedProfile,
    t0: f64,
    eps: f64,
    delta: f64,
) -> Result<NeckParams, NeckError> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t0 > 2.0) {
        return Err(NeckError::BadParameter(format!(
            "t0 must exceed 2, got {t0}"
        )));
    }
    for (name, v) in [("eps", eps), ("delta", delta)] {
        if !(v > 0.0 && v <= 0.25) {
            return Err(NeckError::BadParameter(format!(
                "{name} must lie in (0, 1/4], got {v}"
            )));
        }
    }
    let rho = prof.rho;
    let r = prof.g1.r;
    let a1 = prof.a1;
    let mass = delta_t0(t0)?;
    // Quadrature cross-check of the closed-form mass.
    let mass_quad = delta_t0_quadrature(t0)?;
    if (mass - mass_quad).abs() > 1e-10 * mass {
        return Err(NeckError::InternalConsistency(format!(
            "Delta(t0): closed {mass} vs quadrature {mass_quad}"
        )));
    }

    let beta = (1.0 - eps) * (rho.ln() - r.ln()) / mass;
    let alpha = (1.0 + delta) * a1.ln() / (beta * mass);

    let l = (2.0 * t0).ln();
    let ln_t1 = (1.0 + delta) / delta * 4.0 * l * l / (1.0 + 4.0 * l);
    if ln_t1 > LN_T1_MAX {
        return Err(NeckError::TooLong(ln_t1));
    }
    let t1 = ln_t1.exp();

    // Numeric root of h(t1) = a1, i.e. alpha beta G(t1) = ln a1, on the tail
    // branch where G(t) = 1/(4 l) + 1 - l / ln t.
    let target = a1.ln() / (alpha * beta);
    let root_fn = |t: f64| {
        gamma_integral(t0, t)
            .map(|g| g - target)
            .unwrap_or(f64::NAN)
    };
    let t1_numeric = bisect(
        root_fn,
        2.0 * t0,
        t1.max(4.0 * t0) * 4.0,
        1e-9 * t1.max(1.0),
    );
    if (t1_numeric - t1).abs() > 1e-9 * t1 {
        return Err(NeckError::InternalConsistency(format!(
            "t1 closed form {t1:e} vs numeric root {t1_numeric:e}"
        )));
    }

    let r_tilde = rho * (-beta * gamma_integral(t0, t1)?).exp();
    let r_tilde_closed = r * (rho / r).powf(eps) * (beta * l / ln_t1).exp();
    if (r_tilde - r_tilde_closed).abs() > 1e-9 * r_tilde {
        return Err(NeckError::InternalConsistency(format!(
            "r_tilde: k(t1) = {r_tilde} vs closed form {r_tilde_closed}"
        )));
    }
    if r_tilde <= r {
        return Err(NeckError::InternalConsistency(format!(
            "r_tilde = {r_tilde} not above r = {r}"
        )));
    }

    let kappa = r / (t1 * r_tilde);
    let lambda = t1 * r_tilde / (t0 * r);

    Ok(NeckParams {
        prof: prof.clone(),
        t0,
        eps,
        delta,
        rho,
        delta_mass: mass,
        beta,
        alpha,
        ln_t1,
        t1,
        t1_numeric,
        r_tilde,
        r_tilde_closed,
        kappa,
        lambda,
        seam_half_width: 1e-3 * t0,
    })
}
