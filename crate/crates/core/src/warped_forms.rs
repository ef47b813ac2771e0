//! Closed-form curvature kernels for warped product metrics
//! `dphi^2 + f^2(phi) ds^2_{n-1}` and two-variable metrics
//! `dt^2 + A^2(t,x) dx^2 + B^2(t,x) ds^2_n`, together with the
//! renormalization that puts every concave warped product on the common
//! domain `[-pi/2, pi/2]` and the endpoint smoothness checks for capping and
//! doubling.
//!
//! All formulas are written in ratio form (`A_t/A`, `B_x/B`, ...) so they
//! stay finite-precision stable when the warp factors span many orders of
//! magnitude.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use thiserror::Error;

use crate::chart_calculus::MetricChart;
use crate::numeric::{bisect, golden_max, linspace};
use crate::profile::{Jet2, ProfileError, ScalarProfile};

#[derive(Debug, Error)]
pub enum WarpError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("warp factor {0} is not positive at (t, x) = ({1}, {2})")]
    Pole(f64, f64, f64),
    #[error("scale factor must be positive, got {0}")]
    BadScale(f64),
    #[error("profile is not concave: f'' = {0} at phi = {1}")]
    NotConcave(f64, f64),
    #[error("profile does not close: {0}")]
    BadProfile(String),
    #[error("inversion failed: no root of f = {target} on branch [{lo}, {hi}]")]
    RootFind { target: f64, lo: f64, hi: f64 },
}

/// Value and partials of a two-variable warp factor.
#[derive(Debug, Clone, Copy)]
pub struct Jet2Two {
    pub v: f64,
    pub dt: f64,
    pub dx: f64,
    pub dtt: f64,
    pub dxx: f64,
    pub dtx: f64,
}

type WarpFn = dyn Fn(f64, f64) -> Jet2Two + Send + Sync;

/// The pair `A(t,x)`, `B(t,x)` defining `dt^2 + A^2 dx^2 + B^2 ds_n^2`,
/// with `n = fiber_dim` sphere dimensions carried by `B`.
#[derive(Clone)]
pub struct TwoVarWarp {
    pub a: Arc<WarpFn>,
    pub b: Arc<WarpFn>,
    pub t_domain: (f64, f64),
    pub x_domain: (f64, f64),
    pub fiber_dim: usize,
}

impl TwoVarWarp {
    pub fn new<F, G>(
        a: F,
        b: G,
        t_domain: (f64, f64),
        x_domain: (f64, f64),
        fiber_dim: usize,
    ) -> Self
    where
        F: Fn(f64, f64) -> Jet2Two + Send + Sync + 'static,
        G: Fn(f64, f64) -> Jet2Two + Send + Sync + 'static,
    {
        assert!(fiber_dim >= 2);
        TwoVarWarp {
            a: Arc::new(a),
            b: Arc::new(b),
            t_domain,
            x_domain,
            fiber_dim,
        }
    }

    fn eval(&self, t: f64, x: f64) -> Result<(Jet2Two, Jet2Two), WarpError> {
        let a = (self.a)(t, x);
        let b = (self.b)(t, x);
        if a.v <= 0.0 {
            return Err(WarpError::Pole(a.v, t, x));
        }
        if b.v <= 0.0 {
            return Err(WarpError::Pole(b.v, t, x));
        }
        Ok((a, b))
    }
}

/// Sectional curvatures and the single Ricci off-diagonal of a two-variable
/// warp metric at a point, in the orthonormal frame `(T, X, Sigma)`. The
/// time-direction entries are absent when the metric has no `t` dependence.
#[derive(Debug, Clone, Copy)]
pub struct SectionalSet {
    pub k_tx: Option<f64>,
    pub k_tsigma: Option<f64>,
    pub k_xsigma: f64,
    pub k_sigmasigma: f64,
    /// `Ric(X, T)` in the orthonormal frame; zero for pure warped products.
    pub ric_tx: f64,
    /// Curvatures intrinsic to the `{t} = const` slice.
    pub slice_k_xsigma: f64,
    pub slice_k_sigmasigma: f64,
}

/// Diagonal second fundamental form values of a slice, paired with the
/// outward `+axis` normal.
#[derive(Debug, Clone, Copy)]
pub struct SliceSecondFundamental {
    pub ii_xx: f64,
    pub ii_sigma: f64,
}

/// Which coordinate slice to take the second fundamental form of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceAxis {
    /// `{t} x [x0,x1] x S^n` inside the full cylinder, normal `+d_t`.
    Time,
    /// `{t} x {x} x S^n` inside a time slice, normal `+X`.
    Angular,
}

/// Sectional curvatures of `dphi^2 + f^2 ds^2`:
/// `K(X, Sigma) = -f''/f` and `K(Sigma, Sigma) = (1 - f'^2)/f^2`.
pub fn warped_sectional(f: &ScalarProfile, phi: f64) -> Result<(f64, f64), WarpError> {
    let j = f.jet_positive(phi)?;
    Ok((-j.d2 / j.v, (1.0 - j.d1 * j.d1) / (j.v * j.v)))
}

/// All curvature components of `dt^2 + A^2 dx^2 + B^2 ds_n^2` at `(t, x)`.
pub fn necksectional(w: &TwoVarWarp, t: f64, x: f64) -> Result<SectionalSet, WarpError> {
    let (a, b) = w.eval(t, x)?;
    let (at, ax, att) = (a.dt / a.v, a.dx / a.v, a.dtt / a.v);
    let (bt, bx, btt, bxx, bxt) = (
        b.dt / b.v,
        b.dx / b.v,
        b.dtt / b.v,
        b.dxx / b.v,
        b.dtx / b.v,
    );
    let inv_a2 = 1.0 / (a.v * a.v);
    let slice_k_xsigma = (ax * bx - bxx) * inv_a2;
    let slice_k_sigmasigma = 1.0 / (b.v * b.v) - bx * bx * inv_a2;
    let n = w.fiber_dim as f64;
    Ok(SectionalSet {
        k_tx: Some(-att),
        k_tsigma: Some(-btt),
        k_xsigma: slice_k_xsigma - at * bt,
        k_sigmasigma: slice_k_sigmasigma - bt * bt,
        ric_tx: n * (at * bx - bxt) / a.v,
        slice_k_xsigma,
        slice_k_sigmasigma,
    })
}

/// Second fundamental form of a coordinate slice of a two-variable warp:
/// time slices give `(A_t/A, B_t/B)`, angular slices `(A_x/A^2, B_x/(AB))`.
pub fn slice_second_fundamental(
    w: &TwoVarWarp,
    axis: SliceAxis,
    t: f64,
    x: f64,
) -> Result<SliceSecondFundamental, WarpError> {
    let (a, b) = w.eval(t, x)?;
    Ok(match axis {
        SliceAxis::Time => SliceSecondFundamental {
            ii_xx: a.dt / a.v,
            ii_sigma: b.dt / b.v,
        },
        SliceAxis::Angular => SliceSecondFundamental {
            ii_xx: a.dx / (a.v * a.v),
            ii_sigma: b.dx / (a.v * b.v),
        },
    })
}

/// Rescaling `g -> kappa^2 g` divides sectional curvatures by `kappa^2`.
pub fn scale_sectional(kappa: f64, s: &SectionalSet) -> Result<SectionalSet, WarpError> {
    if kappa <= 0.0 {
        return Err(WarpError::BadScale(kappa));
    }
    let c = 1.0 / (kappa * kappa);
    Ok(SectionalSet {
        k_tx: s.k_tx.map(|v| v * c),
        k_tsigma: s.k_tsigma.map(|v| v * c),
        k_xsigma: s.k_xsigma * c,
        k_sigmasigma: s.k_sigmasigma * c,
        ric_tx: s.ric_tx * c,
        slice_k_xsigma: s.slice_k_xsigma * c,
        slice_k_sigmasigma: s.slice_k_sigmasigma * c,
    })
}

/// Rescaling `g -> kappa^2 g` divides second fundamental forms by `kappa`.
pub fn scale_second_fundamental(
    kappa: f64,
    ii: &SliceSecondFundamental,
) -> Result<SliceSecondFundamental, WarpError> {
    if kappa <= 0.0 {
        return Err(WarpError::BadScale(kappa));
    }
    Ok(SliceSecondFundamental {
        ii_xx: ii.ii_xx / kappa,
        ii_sigma: ii.ii_sigma / kappa,
    })
}

/// Output of [`renormalize_profile`]: the speed profile `A(x)` of the
/// reparameterized warped product together with the location of the waist of
/// the source profile.
pub struct Renormalized {
    pub a1: ScalarProfile,
    pub waist: f64,
    pub phi_max: f64,
}

const X_LIMIT_BAND: f64 = 1e-6;

/// Reparameterize a concave warped product `dphi^2 + f^2 ds^2` on `[0, D]`
/// with waist `r = sup f` onto `[-pi/2, pi/2]` as `A^2(x) dx^2 +
/// r^2 cos^2 x ds^2`, where `phi(x) = f^{-1}(r cos x)` per monotone branch
/// and `A(x) = -r sin x / f'(phi(x))`. The endpoint values `A(+-pi/2) = r`
/// and the waist value `A(0) = sqrt(-r / f''(phi_max))` are set from the
/// analytic limits of the otherwise indeterminate quotient.
pub fn renormalize_profile(f: &ScalarProfile, r: f64) -> Result<Renormalized, WarpError> {
    let (lo, hi) = f.domain();
    if !(lo == 0.0 && hi > 0.0) {
        return Err(WarpError::BadProfile(format!(
            "expected domain [0, D], got [{lo}, {hi}]"
        )));
    }
    let d_len = hi;

    // Concavity and closing conditions, probed on a grid.
    let mut sup = f64::NEG_INFINITY;
    for &phi in linspace(0.0, d_len, 513).iter() {
        let j = f.jet(phi)?;
        if j.d2 > 1e-9 {
            return Err(WarpError::NotConcave(j.d2, phi));
        }
        sup = sup.max(j.v);
    }
    if (sup - r).abs() > 1e-6 * r.max(1.0) {
        return Err(WarpError::BadProfile(format!(
            "sup f = {sup} does not match declared waist {r}"
        )));
    }
    let j0 = f.jet(0.0)?;
    let jd = f.jet(d_len)?;
    if j0.v.abs() > 1e-8 || jd.v.abs() > 1e-8 {
        return Err(WarpError::BadProfile(
            "profile does not vanish at both ends".into(),
        ));
    }

    // Waist location: unique zero of the strictly decreasing f'.
    let f1 = f.clone();
    let phi_max = bisect(
        |p| f1.jet(p).map(|j| j.d1).unwrap_or(0.0),
        0.0,
        d_len,
        1e-14,
    );
    let a0 = {
        let d2 = f.jet(phi_max)?.d2;
        if d2 >= 0.0 {
            return Err(WarpError::NotConcave(d2, phi_max));
        }
        (-r / d2).sqrt()
    };

    let f_arc = f.clone();
    let eval = move |x: f64| -> Jet2 {
        if x <= -FRAC_PI_2 + X_LIMIT_BAND || x >= FRAC_PI_2 - X_LIMIT_BAND {
            // Endpoint limit from the closing conditions f' = +-1, f'' = 0.
            return Jet2 {
                v: r,
                d1: 0.0,
                d2: 0.0,
            };
        }
        if x.abs() < X_LIMIT_BAND {
            return Jet2 {
                v: a0,
                d1: 0.0,
                d2: 0.0,
            };
        }
        let target = r * x.cos();
        let (blo, bhi) = if x < 0.0 {
            (0.0, phi_max) // ascending branch
        } else {
            (phi_max, f_arc.domain().1) // descending branch
        };
        let phi = bisect(
            |p| f_arc.jet(p).map(|j| j.v - target).unwrap_or(0.0),
            blo,
            bhi,
            1e-14,
        );
        let j = f_arc.jet(phi).unwrap_or(Jet2 {
            v: target,
            d1: if x < 0.0 { 1.0 } else { -1.0 },
            d2: 0.0,
        });
        let v = -r * x.sin() / j.d1;
        // d/dx of -r sin x / f'(phi(x)) with phi'(x) = A(x).
        let d1 = -r * x.cos() / j.d1 + r * x.sin() * j.d2 * v / (j.d1 * j.d1);
        Jet2 { v, d1, d2: 0.0 }
    };

    // Second derivative by central differences of the analytic first
    // derivative; needed only for downstream consumers that want A''.
    let eval_arc = Arc::new(eval);
    let eval_inner = eval_arc.clone();
    let full = move |x: f64| -> Jet2 {
        let base = eval_inner(x);
        let h = 1e-5;
        let (xl, xr) = ((x - h).max(-FRAC_PI_2), (x + h).min(FRAC_PI_2));
        let d2 = (eval_inner(xr).d1 - eval_inner(xl).d1) / (xr - xl);
        Jet2 {
            v: base.v,
            d1: base.d1,
            d2,
        }
    };

    let a1 = ScalarProfile::from_fn(full, (-FRAC_PI_2, FRAC_PI_2), 2).flagged_positive();

    // Mean-speed bound: the reparameterized arc must still have length D.
    let (_, sup_a) = sup_on_grid(&a1, 1025);
    if sup_a < d_len / std::f64::consts::PI - 1e-9 {
        return Err(WarpError::BadProfile(format!(
            "sup A = {sup_a} below D/pi = {}",
            d_len / std::f64::consts::PI
        )));
    }

    Ok(Renormalized {
        a1,
        waist: r,
        phi_max,
    })
}

/// Maximum of a profile over a dense grid followed by golden-section
/// refinement around the best node. Returns `(argmax, max)`.
pub fn sup_on_grid(p: &ScalarProfile, n: usize) -> (f64, f64) {
    let (lo, hi) = p.domain();
    let xs = linspace(lo, hi, n);
    let mut best = (xs[0], f64::NEG_INFINITY);
    for &x in &xs {
        if let Ok(v) = p.value(x) {
            if v > best.1 {
                best = (x, v);
            }
        }
    }
    let h = (hi - lo) / ((n - 1) as f64);
    let (a, b) = ((best.0 - h).max(lo), (best.0 + h).min(hi));
    let pc = p.clone();
    let (xm, vm) = golden_max(
        move |x| pc.value(x).unwrap_or(f64::NEG_INFINITY),
        a,
        b,
        1e-12,
    );
    if vm > best.1 {
        (xm, vm)
    } else {
        best
    }
}

/// Endpoint behavior a profile must satisfy for the warped metric to close
/// smoothly there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessMode {
    /// Capping off a sphere factor: `f = 0`, `|f'| = 1`, even derivatives
    /// vanish (slope `+1` at the left end, `-1` at the right end).
    Cap,
    /// An even factor across the cap: `h > 0`, odd derivatives vanish.
    Even,
}

#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    pub pass: bool,
    pub defects: Vec<(String, f64)>,
}

/// Check the capping/evenness conditions at an endpoint up to the requested
/// derivative order (tolerance 1e-6). Derivatives above second order come
/// from one-sided differences of the supplied second derivative.
pub fn smoothness_check(
    p: &ScalarProfile,
    endpoint: f64,
    mode: SmoothnessMode,
    order: u32,
) -> Result<SmoothnessReport, WarpError> {
    if order > p.smoothness_order().max(2) + 2 {
        return Err(ProfileError::Capability {
            requested: order,
            available: p.smoothness_order(),
        }
        .into());
    }
    let (lo, hi) = p.domain();
    let at_left = (endpoint - lo).abs() < (endpoint - hi).abs();
    let j = p.jet(endpoint)?;
    let tol = 1e-6;
    let mut defects: Vec<(String, f64)> = Vec::new();
    fn check(defects: &mut Vec<(String, f64)>, tol: f64, name: &str, defect: f64) {
        if defect.abs() > tol {
            defects.push((name.to_string(), defect));
        }
    }

    // One-sided interior samples for derivative orders 3 and 4.
    let h = (hi - lo) * 1e-4;
    let sgn = if at_left { 1.0 } else { -1.0 };
    let d2_at = |k: f64| -> f64 { p.jet(endpoint + sgn * k * h).map(|j| j.d2).unwrap_or(0.0) };
    let d3 = sgn * (-3.0 * j.d2 + 4.0 * d2_at(1.0) - d2_at(2.0)) / (2.0 * h);
    let d4 = (2.0 * j.d2 - 5.0 * d2_at(1.0) + 4.0 * d2_at(2.0) - d2_at(3.0)) / (h * h);

    match mode {
        SmoothnessMode::Cap => {
            let want_slope = if at_left { 1.0 } else { -1.0 };
            check(&mut defects, tol, "f(end)", j.v);
            check(
                &mut defects,
                tol,
                "f'(end) - closing slope",
                j.d1 - want_slope,
            );
            if order >= 2 {
                check(&mut defects, tol, "f''(end)", j.d2);
            }
            if order >= 4 {
                // Fourth derivative estimated from sampled f'' carries an
                // O(h) one-sided error; scale the tolerance accordingly.
                if d4.abs() > 1e-2 {
                    defects.push(("f''''(end)".to_string(), d4));
                }
            }
        }
        SmoothnessMode::Even => {
            if j.v <= 0.0 {
                defects.push(("h(end) > 0".to_string(), j.v));
            }
            check(&mut defects, tol, "h'(end)", j.d1);
            if order >= 3 && d3.abs() > 1e-4 {
                defects.push(("h'''(end)".to_string(), d3));
            }
        }
    }

    Ok(SmoothnessReport {
        pass: defects.is_empty(),
        defects,
    })
}

/// Coordinate chart for a two-variable warp, with the sphere factor
/// represented by a totally geodesic 2-sphere block `B^2 (dth^2 +
/// sin^2 th dphi^2)`. Sectional curvatures among `(T, X, Sigma_th,
/// Sigma_phi)` computed here agree with the full metric for any fiber
/// dimension.
pub fn warp_chart(w: &TwoVarWarp, theta_window: (f64, f64)) -> MetricChart {
    let a = w.a.clone();
    let b = w.b.clone();
    MetricChart::new(
        4,
        vec![w.t_domain, w.x_domain, theta_window, (0.0, 6.0)],
        move |p: &[f64]| {
            let (t, x, th) = (p[0], p[1], p[2]);
            let av = a(t, x).v;
            let bv = b(t, x).v;
            let mut g = nalgebra::DMatrix::zeros(4, 4);
            g[(0, 0)] = 1.0;
            g[(1, 1)] = av * av;
            g[(2, 2)] = bv * bv;
            g[(3, 3)] = bv * bv * th.sin() * th.sin();
            g
        },
    )
}

/// A bumpy analytic warp pair with exact derivatives, for oracle
/// cross-checks: each factor is a positive base plus a separable
/// trigonometric ripple.
pub fn random_smooth_warp(rng: &mut rand::rngs::StdRng) -> TwoVarWarp {
    use rand::Rng;
    let mut mk = |base: f64| {
        let c0 = base + rng.gen_range(0.0..0.4);
        let amp = rng.gen_range(0.05..0.18);
        let p = rng.gen_range(0.4..1.4);
        let q = rng.gen_range(0.4..1.4);
        let ph = rng.gen_range(0.0..std::f64::consts::PI);
        move |t: f64, x: f64| {
            let s = (p * t + ph).sin();
            let c = (p * t + ph).cos();
            let u = (q * x).cos();
            let w = (q * x).sin();
            Jet2Two {
                v: c0 + amp * s * u,
                dt: amp * p * c * u,
                dx: -amp * q * s * w,
                dtt: -amp * p * p * s * u,
                dxx: -amp * q * q * s * u,
                dtx: -amp * p * q * c * w,
            }
        }
    };
    let a = mk(0.8);
    let b = mk(1.0);
    TwoVarWarp::new(a, b, (0.5, 3.0), (-1.2, 1.2), 2)
}

/// Chart of a time slice `{t}` of a two-variable warp (coordinates
/// `x, theta, phi`), for slice-intrinsic oracle checks.
pub fn slice_chart(w: &TwoVarWarp, t: f64, theta_window: (f64, f64)) -> MetricChart {
    let a = w.a.clone();
    let b = w.b.clone();
    MetricChart::new(
        3,
        vec![w.x_domain, theta_window, (0.0, 6.0)],
        move |p: &[f64]| {
            let (x, th) = (p[0], p[1]);
            let av = a(t, x).v;
            let bv = b(t, x).v;
            let mut g = nalgebra::DMatrix::zeros(3, 3);
            g[(0, 0)] = av * av;
            g[(1, 1)] = bv * bv;
            g[(2, 2)] = bv * bv * th.sin() * th.sin();
            g
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart_calculus::{riemann_ricci_fd, second_fundamental_fd, sectional_fd};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn const_warp(ca: f64, cb: f64) -> TwoVarWarp {
        TwoVarWarp::new(
            move |_, _| Jet2Two {
                v: ca,
                dt: 0.0,
                dx: 0.0,
                dtt: 0.0,
                dxx: 0.0,
                dtx: 0.0,
            },
            move |_, _| Jet2Two {
                v: cb,
                dt: 0.0,
                dx: 0.0,
                dtt: 0.0,
                dxx: 0.0,
                dtx: 0.0,
            },
            (0.0, 10.0),
            (-1.0, 1.0),
            2,
        )
    }

    #[test]
    fn warped_sectional_round_flat_scaled() {
        let f = ScalarProfile::sin(3.0);
        let (kx, ks) = warped_sectional(&f, 1.0).unwrap();
        assert!((kx - 1.0).abs() < 1e-14 && (ks - 1.0).abs() < 1e-14);

        let cone = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t,
                d1: 1.0,
                d2: 0.0,
            },
            (0.0, 3.0),
            16,
        );
        let (kx, ks) = warped_sectional(&cone, 1.0).unwrap();
        assert!(kx.abs() < 1e-14 && ks.abs() < 1e-14);

        let c = 2.0;
        let scaled_sin = ScalarProfile::from_fn(
            move |t| Jet2 {
                v: (c * t).sin() / c,
                d1: (c * t).cos(),
                d2: -c * (c * t).sin(),
            },
            (0.0, 1.5),
            16,
        );
        let (kx, ks) = warped_sectional(&scaled_sin, 0.3).unwrap();
        assert!((kx - 4.0).abs() < 1e-12 && (ks - 4.0).abs() < 1e-12);

        assert!(warped_sectional(&ScalarProfile::constant(-1.0, (0.0, 1.0)), 0.5).is_err());
    }

    #[test]
    fn necksectional_product_cylinder() {
        // Constants A = B = 1: every derivative term drops; what survives is
        // the intrinsic curvature of the unit sphere factor.
        let w = const_warp(1.0, 1.0);
        let s = necksectional(&w, 1.0, 0.0).unwrap();
        for v in [s.k_tx.unwrap(), s.k_tsigma.unwrap(), s.k_xsigma, s.ric_tx] {
            assert!(v.abs() < 1e-14);
        }
        assert!((s.k_sigmasigma - 1.0).abs() < 1e-14);
        assert!((s.slice_k_sigmasigma - 1.0).abs() < 1e-14);
    }

    #[test]
    fn necksectional_static_round_family() {
        // A = 1, B = sin x: every t-slice is a round unit sphere.
        let w = TwoVarWarp::new(
            |_, _| Jet2Two {
                v: 1.0,
                dt: 0.0,
                dx: 0.0,
                dtt: 0.0,
                dxx: 0.0,
                dtx: 0.0,
            },
            |_, x: f64| Jet2Two {
                v: x.sin(),
                dt: 0.0,
                dx: x.cos(),
                dtt: 0.0,
                dxx: -x.sin(),
                dtx: 0.0,
            },
            (0.0, 10.0),
            (0.2, PI - 0.2),
            3,
        );
        let s = necksectional(&w, 1.0, 0.9).unwrap();
        assert!((s.k_xsigma - 1.0).abs() < 1e-13);
        assert!((s.k_sigmasigma - 1.0).abs() < 1e-13);
        assert!(s.k_tx.unwrap().abs() < 1e-14);
        assert!(s.k_tsigma.unwrap().abs() < 1e-14);
        assert!(s.ric_tx.abs() < 1e-14);
    }

    #[test]
    fn necksectional_matches_oracle_on_random_warps() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..4 {
            let w = random_smooth_warp(&mut rng);
            let chart = warp_chart(&w, (0.4, PI - 0.4));
            for _ in 0..5 {
                let t = rng.gen_range(0.9..2.6);
                let x = rng.gen_range(-0.8..0.8);
                let th = rng.gen_range(0.8..2.2);
                let p = [t, x, th, 1.0];
                let step = 2e-3;
                let c = riemann_ricci_fd(&chart, &p, step).unwrap();
                let s = necksectional(&w, t, x).unwrap();
                let (av, bv) = ((w.a)(t, x).v, (w.b)(t, x).v);
                let e_t = [1.0, 0.0, 0.0, 0.0];
                let e_x = [0.0, 1.0 / av, 0.0, 0.0];
                let e_th = [0.0, 0.0, 1.0 / bv, 0.0];
                let e_ph = [0.0, 0.0, 0.0, 1.0 / (bv * th.sin())];
                let cases = [
                    (s.k_tx.unwrap(), sectional_fd(&c, &e_t, &e_x).unwrap()),
                    (s.k_tsigma.unwrap(), sectional_fd(&c, &e_t, &e_th).unwrap()),
                    (s.k_xsigma, sectional_fd(&c, &e_x, &e_th).unwrap()),
                    (s.k_sigmasigma, sectional_fd(&c, &e_th, &e_ph).unwrap()),
                ];
                for (want, got) in cases {
                    assert!(
                        (want - got).abs() <= 1e-5 * want.abs().max(1.0),
                        "closed {want} vs oracle {got}"
                    );
                }
            }
        }
    }

    #[test]
    fn slice_second_fundamental_cases() {
        let w = const_warp(2.0, 3.0);
        let ii = slice_second_fundamental(&w, SliceAxis::Time, 1.0, 0.0).unwrap();
        assert!(ii.ii_xx.abs() < 1e-15 && ii.ii_sigma.abs() < 1e-15);

        // A = B = t at t = 2: II_t = (1/2, 1/2).
        let lin = |t: f64, _| Jet2Two {
            v: t,
            dt: 1.0,
            dx: 0.0,
            dtt: 0.0,
            dxx: 0.0,
            dtx: 0.0,
        };
        let w = TwoVarWarp::new(lin, lin, (0.5, 5.0), (-1.0, 1.0), 2);
        let ii = slice_second_fundamental(&w, SliceAxis::Time, 2.0, 0.3).unwrap();
        assert!((ii.ii_xx - 0.5).abs() < 1e-15);
        assert!((ii.ii_sigma - 0.5).abs() < 1e-15);
    }

    #[test]
    fn slice_second_fundamental_matches_oracle() {
        let mut rng = StdRng::seed_from_u64(11);
        let w = random_smooth_warp(&mut rng);
        let chart = warp_chart(&w, (0.5, PI - 0.5));
        let (t, x, th) = (1.4, 0.25, 1.3);
        let ii_fd = second_fundamental_fd(&chart, 0, &[t, x, th, 1.0], 2e-3).unwrap();
        let ii = slice_second_fundamental(&w, SliceAxis::Time, t, x).unwrap();
        let (av, bv) = ((w.a)(t, x).v, (w.b)(t, x).v);
        // The FD result is the (0,2)-tensor; normalize by the metric diag.
        assert!((ii_fd[(0, 0)] / (av * av) - ii.ii_xx).abs() < 1e-5);
        assert!((ii_fd[(1, 1)] / (bv * bv) - ii.ii_sigma).abs() < 1e-5);
    }

    #[test]
    fn scaling_laws() {
        let w = const_warp(1.0, 0.5);
        let s = necksectional(&w, 1.0, 0.1).unwrap();
        let s1 = scale_sectional(1.0, &s).unwrap();
        assert_eq!(s.k_sigmasigma, s1.k_sigmasigma);
        let s2 = scale_sectional(2.0, &s).unwrap();
        assert!((s2.k_sigmasigma - s.k_sigmasigma / 4.0).abs() < 1e-15);
        let ii = SliceSecondFundamental {
            ii_xx: 3.0,
            ii_sigma: 3.0,
        };
        let ii2 = scale_second_fundamental(2.0, &ii).unwrap();
        assert!((ii2.ii_xx - 1.5).abs() < 1e-15);
        assert!(scale_sectional(0.0, &s).is_err());
        assert!(scale_second_fundamental(-1.0, &ii).is_err());
    }

    /// Gauss consistency: the ambient mixed curvature differs from the
    /// slice-intrinsic one by exactly the product of the slice second
    /// fundamental form diagonals.
    #[test]
    fn gauss_consistency_identity() {
        let mut rng = StdRng::seed_from_u64(3);
        let w = random_smooth_warp(&mut rng);
        for _ in 0..50 {
            let t = rng.gen_range(0.7..2.8);
            let x = rng.gen_range(-1.0..1.0);
            let s = necksectional(&w, t, x).unwrap();
            let ii = slice_second_fundamental(&w, SliceAxis::Time, t, x).unwrap();
            let lhs = s.k_xsigma;
            let rhs = s.slice_k_xsigma - ii.ii_xx * ii.ii_sigma;
            assert!((lhs - rhs).abs() < 1e-12);
            let lhs2 = s.k_sigmasigma;
            let rhs2 = s.slice_k_sigmasigma - ii.ii_sigma * ii.ii_sigma;
            assert!((lhs2 - rhs2).abs() < 1e-12);
        }
    }

    fn hemisphere_pair(r: f64) -> ScalarProfile {
        // f(phi) = r sin(phi / r) on [0, pi r]: the round r-sphere profile.
        ScalarProfile::from_fn(
            move |phi| Jet2 {
                v: r * (phi / r).sin(),
                d1: (phi / r).cos(),
                d2: -(phi / r).sin() / r,
            },
            (0.0, PI * r),
            16,
        )
    }

    #[test]
    fn renormalize_round_profile_is_constant() {
        let r = 0.7;
        let ren = renormalize_profile(&hemisphere_pair(r), r).unwrap();
        for &x in &[-1.5, -0.9, -1e-3, 0.0, 0.4, 1.2, FRAC_PI_2] {
            let v = ren.a1.value(x).unwrap();
            assert!((v - r).abs() < 1e-9, "A({x}) = {v}");
        }
        assert!((ren.a1.value(FRAC_PI_2).unwrap() - r).abs() < 1e-12);
        assert!((ren.a1.value(-FRAC_PI_2).unwrap() - r).abs() < 1e-12);
        let (_, sup_a) = sup_on_grid(&ren.a1, 257);
        assert!(sup_a >= PI * r / PI - 1e-9);
    }

    #[test]
    fn renormalize_rejects_nonconcave() {
        let bad = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t * t,
                d1: 2.0 * t,
                d2: 2.0,
            },
            (0.0, 1.0),
            16,
        );
        assert!(matches!(
            renormalize_profile(&bad, 1.0),
            Err(WarpError::NotConcave(..))
        ));
    }

    /// Rebuilding the warped curvatures from the renormalized form
    /// reproduces the originals at matched points.
    #[test]
    fn renormalize_curvature_round_trip() {
        let r = 0.7;
        let c = 1.0 / r;
        // Constant-curvature profile, nontrivial A only through the branch map.
        let f = hemisphere_pair(r);
        let ren = renormalize_profile(&f, r).unwrap();
        for &x in &[-1.2, -0.6, 0.3, 0.9, 1.4] {
            let aj = ren.a1.jet(x).unwrap();
            // K(X, Sigma) of A^2 dx^2 + r^2 cos^2 x ds^2.
            let k_x = 1.0 / (aj.v * aj.v) - aj.d1 * x.tan() / (aj.v * aj.v * aj.v);
            let k_s = (1.0 - (r * x.sin() / aj.v).powi(2)) / (r * r * x.cos() * x.cos());
            // Matched point on the original profile.
            let phi = if x < 0.0 {
                r * (x.cos()).asin()
            } else {
                PI * r - r * (x.cos()).asin()
            };
            let (kx0, ks0) = warped_sectional(&f, phi).unwrap();
            assert!(
                (k_x - kx0).abs() < 1e-6 * (1.0 + kx0.abs()),
                "{k_x} vs {kx0}"
            );
            assert!(
                (k_s - ks0).abs() < 1e-6 * (1.0 + ks0.abs()),
                "{k_s} vs {ks0}"
            );
            let _ = c;
        }
    }

    #[test]
    fn smoothness_examples() {
        let f = ScalarProfile::sin(3.0);
        let rep = smoothness_check(&f, 0.0, SmoothnessMode::Cap, 2).unwrap();
        assert!(rep.pass, "{:?}", rep.defects);

        let h = ScalarProfile::cosh_over(5.0, 3.0);
        let rep = smoothness_check(&h, 0.0, SmoothnessMode::Even, 3).unwrap();
        assert!(rep.pass, "{:?}", rep.defects);

        let sq = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t * t,
                d1: 2.0 * t,
                d2: 2.0,
            },
            (0.0, 1.0),
            16,
        );
        let rep = smoothness_check(&sq, 0.0, SmoothnessMode::Cap, 2).unwrap();
        assert!(!rep.pass);

        let coarse = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t,
                d1: 1.0,
                d2: 0.0,
            },
            (0.0, 1.0),
            1,
        );
        assert!(smoothness_check(&coarse, 0.0, SmoothnessMode::Cap, 6).is_err());
    }
}
