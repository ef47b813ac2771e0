//! Shooting-method generator for admissible boundary profiles: symmetric
//! solutions of `f'' = -c(phi) f` with `f(0) = 0`, `f'(0) = 1`, slope `-1`
//! at the far end, prescribed waist `sup f = r`, and sectional curvature
//! above 1 throughout. The curvature profile `c` is a floor `1 + margin`
//! plus Gaussian bumps at the two ends; the bump amplitude closes the
//! profile and the bump width tunes the waist.

use std::sync::Arc;

use crate::numeric::linspace;
use crate::profile::ScalarProfile;
use crate::warped_forms::{smoothness_check, warped_sectional, SmoothnessMode};

use super::NeckError;

/// An admissible warped-product boundary profile on `[0, pi R]` with waist
/// `r`, together with the sphere dimension of the slice it bounds.
#[derive(Clone)]
pub struct ProfileG1 {
    pub f1: ScalarProfile,
    pub r: f64,
    pub big_r: f64,
    pub n: usize,
    /// Grid minimum of both sectional curvature families.
    pub k_min: f64,
}

impl ProfileG1 {
    pub fn diameter(&self) -> f64 {
        std::f64::consts::PI * self.big_r
    }
}

struct Shot {
    values: Vec<f64>,
    slopes: Vec<f64>,
    dphi: f64,
}

/// RK4 integration of `f'' = -c(phi) f` from `(0, 1)` over `[0, half]`,
/// with `c = c_min + amp * bump` and the bump precomputed on the half-step
/// grid (`2 steps + 1` nodes) so repeated shots only pay for arithmetic.
fn shoot(c_min: f64, amp: f64, bump_half_grid: &[f64], half: f64, steps: usize) -> Shot {
    debug_assert_eq!(bump_half_grid.len(), 2 * steps + 1);
    let dphi = half / steps as f64;
    let mut values = Vec::with_capacity(steps + 1);
    let mut slopes = Vec::with_capacity(steps + 1);
    let (mut f, mut fp) = (0.0_f64, 1.0_f64);
    values.push(f);
    slopes.push(fp);
    for i in 0..steps {
        let c0 = c_min + amp * bump_half_grid[2 * i];
        let cm = c_min + amp * bump_half_grid[2 * i + 1];
        let c1 = c_min + amp * bump_half_grid[2 * i + 2];
        let (k1v, k1s) = (fp, -c0 * f);
        let (k2v, k2s) = (fp + 0.5 * dphi * k1s, -cm * (f + 0.5 * dphi * k1v));
        let (k3v, k3s) = (fp + 0.5 * dphi * k2s, -cm * (f + 0.5 * dphi * k2v));
        let (k4v, k4s) = (fp + dphi * k3s, -c1 * (f + dphi * k3v));
        f += dphi / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        fp += dphi / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        values.push(f);
        slopes.push(fp);
    }
    Shot {
        values,
        slopes,
        dphi,
    }
}

/// Build the boundary profile for sphere dimension `n >= 3`, waist `r`, and
/// diameter `pi R` with `0 < r < R < 1`. `curvature_margin` is the floor of
/// `K(X, Sigma) - 1`.
pub fn fixture_g1(
    n: usize,
    r: f64,
    big_r: f64,
    curvature_margin: f64,
) -> Result<ProfileG1, NeckError> {
    if n < 3 {
        return Err(NeckError::BadParameter(format!("n must be >= 3, got {n}")));
    }
    if !(0.0 < r && r < big_r && big_r < 1.0) {
        return Err(NeckError::BadParameter(format!(
            "need 0 < r < R < 1, got r = {r}, R = {big_r}"
        )));
    }
    let c_min = 1.0 + curvature_margin;
    let d_len = std::f64::consts::PI * big_r;
    if c_min * big_r * big_r >= 1.0 {
        return Err(NeckError::InfeasibleFixture(format!(
            "curvature floor {c_min} cannot span diameter pi * {big_r}"
        )));
    }
    let half = 0.5 * d_len;
    let steps = 8192usize;

    let bump_fn = move |w: f64, phi: f64| {
        let b = |s: f64| (-(s / w) * (s / w)).exp();
        b(phi) + b(d_len - phi)
    };
    let bump_grid = |w: f64| -> Vec<f64> {
        let dphi = half / steps as f64;
        (0..=2 * steps)
            .map(|i| bump_fn(w, 0.5 * dphi * i as f64))
            .collect()
    };

    // Inner solve: amplitude that flattens the slope at the midpoint.
    let close_amp = |w: f64| -> Result<(f64, Shot), NeckError> {
        let bumps = bump_grid(w);
        let slope_at_half = |amp: f64| shoot(c_min, amp, &bumps, half, steps).slopes[steps];
        let mut hi = 1.0;
        let mut tries = 0;
        while slope_at_half(hi) > 0.0 {
            hi *= 2.0;
            tries += 1;
            if tries > 40 {
                return Err(NeckError::InfeasibleFixture(
                    "slope never closes; widen the bump".into(),
                ));
            }
        }
        let (mut lo, mut hi) = (0.0, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope_at_half(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-13 * hi.max(1.0) {
                break;
            }
        }
        let amp = 0.5 * (lo + hi);
        Ok((amp, shoot(c_min, amp, &bumps, half, steps)))
    };

    // Outer solve: bump width that hits the prescribed waist.
    let waist_of = |w: f64| -> Result<f64, NeckError> { Ok(close_amp(w)?.1.values[steps]) };
    let (w_lo, w_hi) = (d_len / 60.0, d_len / 3.0);
    let mut bracket: Option<(f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for &w in linspace(w_lo, w_hi, 25).iter() {
        let waist = waist_of(w)?;
        if let Some((pw, pv)) = prev {
            if (pv - r) * (waist - r) <= 0.0 {
                bracket = Some((pw, w));
                break;
            }
        }
        prev = Some((w, waist));
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        NeckError::InfeasibleFixture(format!(
            "waist {r} unreachable for R = {big_r}, margin = {curvature_margin}"
        ))
    })?;
    let rising = waist_of(hi)? >= waist_of(lo)?;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let (_, shot) = close_amp(mid)?;
        let waist = shot.values[steps];
        if (waist > r) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
        if (waist - r).abs() < 1e-11 {
            break;
        }
    }
    let w_star = 0.5 * (lo + hi);
    let (amp_final, shot) = close_amp(w_star)?;
    let waist = shot.values[steps];
    if (waist - r).abs() > 1e-8 {
        return Err(NeckError::InfeasibleFixture(format!(
            "waist converged to {waist}, wanted {r}"
        )));
    }

    // Mirror onto the full interval; the even extension keeps f' continuous
    // because the slope vanishes at the midpoint by construction.
    let total = 2 * steps;
    let mut values = Vec::with_capacity(total + 1);
    let mut slopes = Vec::with_capacity(total + 1);
    for i in 0..=total {
        if i <= steps {
            values.push(shot.values[i]);
            slopes.push(shot.slopes[i]);
        } else {
            values.push(shot.values[total - i]);
            slopes.push(-shot.slopes[total - i]);
        }
    }
    // Zero the mirrored data exactly at the closing conditions.
    values[0] = 0.0;
    slopes[0] = 1.0;
    values[total] = 0.0;
    slopes[total] = -1.0;
    let mid_slope = slopes[steps];
    if mid_slope.abs() > 1e-9 {
        return Err(NeckError::InfeasibleFixture(format!(
            "midpoint slope {mid_slope} did not close"
        )));
    }
    slopes[steps] = 0.0;

    let f1 = ScalarProfile::from_uniform_samples(
        0.0,
        shot.dphi,
        values,
        slopes,
        Arc::new(move |phi, v, _| -(c_min + amp_final * bump_fn(w_star, phi)) * v),
    )
    .flagged_positive();

    // Admissibility: curvature above 1 on a 1024-point grid away from the
    // coordinate poles, and the capping conditions at both ends.
    let mut k_min = f64::INFINITY;
    for &phi in linspace(1e-3, d_len - 1e-3, 1024).iter() {
        let (kx, ks) = warped_sectional(&f1, phi)?;
        k_min = k_min.min(kx).min(ks);
    }
    if k_min <= 1.0 {
        return Err(NeckError::InfeasibleFixture(format!(
            "curvature floor violated: min K = {k_min}"
        )));
    }
    for end in [0.0, d_len] {
        let rep = smoothness_check(&f1, end, SmoothnessMode::Cap, 2)?;
        if !rep.pass {
            return Err(NeckError::InfeasibleFixture(format!(
                "capping conditions fail at {end}: {:?}",
                rep.defects
            )));
        }
    }

    Ok(ProfileG1 {
        f1,
        r,
        big_r,
        n,
        k_min,
    })
}
