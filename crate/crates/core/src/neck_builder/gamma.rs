//! The decay profile driving the neck warp functions: zero at `t0`, a linear
//! ramp up to `2 t0`, then a `1/(t ln^2 t)` tail. Its running integral and
//! total mass have closed forms, checked against adaptive quadrature.

use crate::numeric::adaptive_simpson;

use super::NeckError;

fn check_t0(t0: f64) -> Result<(), NeckError> {
    // NaN must fail too, hence the negated form.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t0 > 2.0) {
        return Err(NeckError::BadParameter(format!(
            "t0 must exceed 2, got {t0}"
        )));
    }
    Ok(())
}

/// `Gamma(t)`: `(t - t0) / (2 t0^2 ln 2t0)` on `[t0, 2t0]`, then
/// `ln(2t0) / (t ln^2 t)`. Continuous at `2 t0`.
pub fn gamma(t: f64, t0: f64) -> Result<f64, NeckError> {
    check_t0(t0)?;
    if t < t0 {
        return Err(NeckError::BadParameter(format!("t = {t} below t0 = {t0}")));
    }
    let l = (2.0 * t0).ln();
    Ok(if t <= 2.0 * t0 {
        (t - t0) / (2.0 * t0 * t0 * l)
    } else {
        let lt = t.ln();
        l / (t * lt * lt)
    })
}

/// One-sided derivative of `Gamma` (the left branch value at exactly
/// `t = 2 t0`; the second derivative jumps there).
pub fn gamma_prime(t: f64, t0: f64) -> Result<f64, NeckError> {
    check_t0(t0)?;
    if t < t0 {
        return Err(NeckError::BadParameter(format!("t = {t} below t0 = {t0}")));
    }
    let l = (2.0 * t0).ln();
    Ok(if t <= 2.0 * t0 {
        1.0 / (2.0 * t0 * t0 * l)
    } else {
        let lt = t.ln();
        -l * (lt + 2.0) / (t * t * lt * lt * lt)
    })
}

/// `(t Gamma(t), t^2 Gamma'(t))` in forms that never build `t^2` directly,
/// so they stay finite for `t` up to the representable limit.
pub fn scaled_gamma(t: f64, t0: f64) -> Result<(f64, f64), NeckError> {
    check_t0(t0)?;
    if t < t0 {
        return Err(NeckError::BadParameter(format!("t = {t} below t0 = {t0}")));
    }
    let l = (2.0 * t0).ln();
    Ok(if t <= 2.0 * t0 {
        let ratio = t / t0;
        (
            ratio * ((t - t0) / t0) / (2.0 * l),
            ratio * ratio / (2.0 * l),
        )
    } else {
        let lt = t.ln();
        (l / (lt * lt), -l * (lt + 2.0) / (lt * lt * lt))
    })
}

/// Closed form of the running integral `int_{t0}^{t} Gamma`.
pub fn gamma_integral(t0: f64, t: f64) -> Result<f64, NeckError> {
    check_t0(t0)?;
    if t < t0 {
        return Err(NeckError::BadParameter(format!("t = {t} below t0 = {t0}")));
    }
    let l = (2.0 * t0).ln();
    Ok(if t <= 2.0 * t0 {
        (t - t0) * (t - t0) / (4.0 * t0 * t0 * l)
    } else {
        0.25 / l + 1.0 - l / t.ln()
    })
}

/// Total mass `Delta(t0) = int_{t0}^{inf} Gamma = 1 + 1/(4 ln 2t0)`.
pub fn delta_t0(t0: f64) -> Result<f64, NeckError> {
    check_t0(t0)?;
    Ok(1.0 + 0.25 / (2.0 * t0).ln())
}

/// Independent quadrature of the total mass: adaptive Simpson over the ramp,
/// adaptive Simpson in the substitution `u = ln t` over a long stretch of
/// the tail, and the exact remainder `ln(2t0)/U` of the `1/u^2` integrand
/// beyond the cutoff.
pub fn delta_t0_quadrature(t0: f64) -> Result<f64, NeckError> {
    check_t0(t0)?;
    let l = (2.0 * t0).ln();
    let ramp = adaptive_simpson(|t| (t - t0) / (2.0 * t0 * t0 * l), t0, 2.0 * t0, 1e-13);
    // Tail: int_{2t0}^inf ln(2t0)/(t ln^2 t) dt = int_{ln 2t0}^inf ln(2t0)/u^2 du.
    let cutoff = 1e6_f64.max(100.0 * l);
    let tail = adaptive_simpson(|u| l / (u * u), l, cutoff, 1e-13) + l / cutoff;
    Ok(ramp + tail)
}
