//! Pointwise curvature of the neck metric
//! `kappa^2 (dt^2 + t^2 k^2 (1 + (h - 1) eta)^2 dx^2 + t^2 k^2 cos^2 x ds^2)`,
//! its boundary conditions, and the grid positivity reports.
//!
//! Internally everything is evaluated in "normalized" form: curvatures are
//! multiplied by `t^2` and the scale `kappa` is factored out, which keeps
//! every quantity order-one even when `t1/t0` spans hundreds of e-folds.
//! Signs, which is what the positivity verdicts rest on, are unaffected.

use serde::Serialize;

use crate::exec::parallel_map;
use crate::numeric::linspace;
use crate::warped_forms::{Jet2Two, SectionalSet, TwoVarWarp};

use super::params::{NeckParams, NeckParamsSummary, NormJets};
use super::NeckError;

const X_MARGIN: f64 = 1e-2;

/// `t^2` times the unscaled curvature components at one point, plus the
/// normalized second fundamental form entries `t kappa II`.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedPoint {
    pub t: f64,
    pub x: f64,
    pub k_tx: f64,
    pub k_tsigma: f64,
    pub k_xsigma: f64,
    pub k_sigmasigma: f64,
    pub ric_tx: f64,
    pub ric_tt: f64,
    pub ric_xx: f64,
    pub ric_ss: f64,
    pub det2: f64,
    /// `t kappa II(X,X)` and `t kappa II(Sigma,Sigma)` w.r.t. `+d_t`.
    pub ii_xx_norm: f64,
    pub ii_ss_norm: f64,
}

/// Full curvature data of the scaled neck metric at a point.
#[derive(Debug, Clone)]
pub struct NeckPointCurvatures {
    pub sectional: SectionalSet,
    pub ric_tt: f64,
    pub ric_xx: f64,
    pub ric_ss: f64,
    pub det2: f64,
    /// Second fundamental form of the `t`-slice w.r.t. `+d_t`, scaled.
    pub ii_xx: f64,
    pub ii_ss: f64,
    pub normalized: NormalizedPoint,
}

pub(crate) struct EtaEntry {
    pub x: f64,
    pub eta: f64,
    pub etap: f64,
    pub tanx: f64,
    pub cosx: f64,
}

pub(crate) fn eta_entry(params: &NeckParams, x: f64) -> EtaEntry {
    let (eta, etap) = params.prof.eta(x);
    EtaEntry {
        x,
        eta,
        etap,
        tanx: x.tan(),
        cosx: x.cos(),
    }
}

/// Core evaluation shared by the pointwise API and the grid reports. Works
/// entirely with `t`-normalized derivatives so nothing overflows on long
/// necks.
pub(crate) fn normalized_point(
    params: &NeckParams,
    t: f64,
    jets: &NormJets,
    e: &EtaEntry,
) -> NormalizedPoint {
    let NormJets {
        h,
        k,
        tp,
        t2kpp,
        th,
        t2hpp,
    } = *jets;
    let n_sigma = (params.prof.g1.n - 1) as f64;

    let s = 1.0 + (h - 1.0) * e.eta;
    let w = e.eta * h / s;
    let tq = w * th;
    let t2hpp_s = w * t2hpp;

    // t^2 K(T, X) = -t^2 A_tt / A and t^2 K(T, Sigma) = -t^2 B_tt / B.
    let ta = 1.0 + tp + tq; // t A_t / A
    let tb = 1.0 + tp; // t B_t / B
    let t2_att = ta * ta - 1.0 + t2kpp - tp * tp + t2hpp_s - tq * tq;
    let t2_btt = tb * tb - 1.0 + t2kpp - tp * tp;
    let k_tx = -t2_att;
    let k_tsigma = -t2_btt;

    // Slice-intrinsic curvatures of t^2 gtilde(h, k) scale to the gtilde
    // values themselves after the t^2 normalization.
    let inv_b2 = 1.0 / (k * k);
    let g_x = inv_b2 * (1.0 / (s * s) - e.etap * e.tanx * (h - 1.0) / (s * s * s));
    let g_s = inv_b2 * (1.0 / (e.cosx * e.cosx) - e.tanx * e.tanx / (s * s));
    let k_xsigma = g_x - ta * tb;
    let k_sigmasigma = g_s - tb * tb;

    let ric_tx = -n_sigma * e.tanx * tq / (k * s);

    let ric_tt = k_tx + n_sigma * k_tsigma;
    let ric_xx = k_tx + n_sigma * k_xsigma;
    let ric_ss = k_tsigma + k_xsigma + (n_sigma - 1.0) * k_sigmasigma;
    let det2 = ric_tt * ric_xx - ric_tx * ric_tx;

    NormalizedPoint {
        t,
        x: e.x,
        k_tx,
        k_tsigma,
        k_xsigma,
        k_sigmasigma,
        ric_tx,
        ric_tt,
        ric_xx,
        ric_ss,
        det2,
        ii_xx_norm: ta,
        ii_ss_norm: tb,
    }
}

fn check_point(params: &NeckParams, t: f64, x: f64) -> Result<(), NeckError> {
    if t < params.t0 || t > params.t1 {
        return Err(NeckError::BadParameter(format!(
            "t = {t} outside [{}, {}]",
            params.t0, params.t1
        )));
    }
    if params.in_seam(t) {
        return Err(NeckError::SeamEvaluation(params.seam_half_width));
    }
    if x.abs() >= std::f64::consts::FRAC_PI_2 - X_MARGIN {
        return Err(NeckError::BadParameter(format!(
            "x = {x} inside the pole margin"
        )));
    }
    Ok(())
}

/// Curvature of the scaled neck metric at `(t, x)`. Refuses the seam band
/// around `2 t0` (where the warp functions are only once differentiable)
/// and the coordinate pole margin.
pub fn neck_curvatures(
    params: &NeckParams,
    t: f64,
    x: f64,
) -> Result<NeckPointCurvatures, NeckError> {
    check_point(params, t, x)?;
    let jets = params.norm_jets(t)?;
    let e = eta_entry(params, x);
    let np = normalized_point(params, t, &jets, &e);
    let inv = 1.0 / (params.kappa * t);
    let c2 = inv * inv;
    let sectional = SectionalSet {
        k_tx: Some(np.k_tx * c2),
        k_tsigma: Some(np.k_tsigma * c2),
        k_xsigma: np.k_xsigma * c2,
        k_sigmasigma: np.k_sigmasigma * c2,
        ric_tx: np.ric_tx * c2,
        slice_k_xsigma: (np.k_xsigma + np.ii_xx_norm * np.ii_ss_norm) * c2,
        slice_k_sigmasigma: (np.k_sigmasigma + np.ii_ss_norm * np.ii_ss_norm) * c2,
    };
    Ok(NeckPointCurvatures {
        sectional,
        ric_tt: np.ric_tt * c2,
        ric_xx: np.ric_xx * c2,
        ric_ss: np.ric_ss * c2,
        det2: np.det2 * c2 * c2,
        ii_xx: np.ii_xx_norm * inv,
        ii_ss: np.ii_ss_norm * inv,
        normalized: np,
    })
}

/// The neck warp pair `(A, B)` with full jets, for oracle cross-checks.
/// `scale` multiplies the metric (so `scale = kappa` gives the final neck
/// up to the non-unit `dt^2` coefficient, and `scale = 1.0` the
/// construction-scale metric `dt^2 + t^2 gtilde`).
pub fn neck_warp(params: &NeckParams, scale: f64) -> TwoVarWarp {
    let p = params.clone();
    let pb = params.clone();
    let a_fn = move |t: f64, x: f64| -> Jet2Two {
        let [h, hp, hpp, k, kp, kpp] = p.warp_jets(t).expect("t in neck domain");
        let (eta, etap) = p.prof.eta(x);
        // Second derivative of eta from the sampled profile.
        let eta2 = p.prof.a1_profile.jet(x).map(|j| j.d2).unwrap_or(0.0)
            / (p.prof.g1.r * (p.prof.a1 - 1.0));
        let s = 1.0 + (h - 1.0) * eta;
        let tk = t * k;
        let tkp = k + t * kp;
        let tkpp = 2.0 * kp + t * kpp;
        Jet2Two {
            v: scale * tk * s,
            dt: scale * (tkp * s + tk * hp * eta),
            dx: scale * tk * (h - 1.0) * etap,
            dtt: scale * (tkpp * s + 2.0 * tkp * hp * eta + tk * hpp * eta),
            dxx: scale * tk * (h - 1.0) * eta2,
            dtx: scale * (tkp * (h - 1.0) * etap + tk * hp * etap),
        }
    };
    let b_fn = move |t: f64, x: f64| -> Jet2Two {
        let [_, _, _, k, kp, kpp] = pb.warp_jets(t).expect("t in neck domain");
        let tk = t * k;
        let tkp = k + t * kp;
        let tkpp = 2.0 * kp + t * kpp;
        let (c, s) = (x.cos(), x.sin());
        Jet2Two {
            v: scale * tk * c,
            dt: scale * tkp * c,
            dx: -scale * tk * s,
            dtt: scale * tkpp * c,
            dxx: -scale * tk * c,
            dtx: -scale * tkp * s,
        }
    };
    TwoVarWarp::new(
        a_fn,
        b_fn,
        (params.t0, params.t1),
        (
            -std::f64::consts::FRAC_PI_2 + X_MARGIN,
            std::f64::consts::FRAC_PI_2 - X_MARGIN,
        ),
        (params.prof.g1.n - 1).max(2),
    )
}

/// The boundary conditions the neck must satisfy at its two ends.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryCheck {
    pub h_t0_defect: f64,
    pub k_t0_defect: f64,
    pub h_t1_defect: f64,
    pub hp_t0: f64,
    pub kp_t0: f64,
    /// First clause at `t1`: `-k'(t1)/k(t1) < 1/t1`, recorded as the ratio
    /// `t1 |k'(t1)|/k(t1)` which must stay below 1.
    pub kp_ratio_t1: f64,
    /// Second clause: `kappa t1 < 1`, equivalently `r_tilde > r`.
    pub kappa_t1: f64,
    /// Outward principal curvature at the `t0` end (all directions).
    pub ii_t0_outward: f64,
    pub lambda: f64,
    /// Minimum over `x` of the outward principal curvatures at `t1`.
    pub ii_t1_min: f64,
    pub pass_ends: bool,
    pub pass_derivatives: bool,
    pub pass_t1_clauses: bool,
    pub pass_ii_t1: bool,
    pub pass: bool,
}

pub fn boundary_check(params: &NeckParams) -> Result<BoundaryCheck, NeckError> {
    let [h0, hp0, _, k0, kp0, _] = params.warp_jets(params.t0)?;
    let h_t0_defect = (h0 - 1.0).abs();
    let k_t0_defect = (k0 - params.rho).abs();
    let h_t1_defect = (params.h(params.t1)? - params.prof.a1).abs();

    let t1 = params.t1;
    let kp_ratio_t1 = params.norm_jets(t1)?.tp.abs();
    let kappa_t1 = params.kappa * t1;

    // Outward II at t0 (outward normal is -d_t): -1/(kappa t0) = -lambda.
    let ii_t0_outward = -1.0 / (params.kappa * params.t0);

    // II at t1 with outward +d_t, minimized over x.
    let scale_t1 = params.r_tilde / params.prof.g1.r; // 1/(kappa t1)
    let norm1 = params.norm_jets(t1)?;
    let tp1 = norm1.tp;
    let mut ii_t1_min = f64::INFINITY;
    for &x in linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        257,
    )
    .iter()
    {
        let e = eta_entry(params, x);
        let s = 1.0 + (norm1.h - 1.0) * e.eta;
        let tq = e.eta * norm1.h * norm1.th / s;
        let ii_xx = scale_t1 * (1.0 + tp1 + tq);
        let ii_ss = scale_t1 * (1.0 + tp1);
        ii_t1_min = ii_t1_min.min(ii_xx).min(ii_ss);
    }

    let pass_ends =
        h_t0_defect < 1e-12 && k_t0_defect < 1e-12 && h_t1_defect < 1e-9 * params.prof.a1;
    let pass_derivatives = hp0.abs() < 1e-14 && kp0.abs() < 1e-14;
    let pass_t1_clauses = kp_ratio_t1 < 1.0 && kappa_t1 < 1.0;
    let pass_ii_t1 = ii_t1_min >= 1.0;
    Ok(BoundaryCheck {
        h_t0_defect,
        k_t0_defect,
        h_t1_defect,
        hp_t0: hp0,
        kp_t0: kp0,
        kp_ratio_t1,
        kappa_t1,
        ii_t0_outward,
        lambda: params.lambda,
        ii_t1_min,
        pass_ends,
        pass_derivatives,
        pass_t1_clauses,
        pass_ii_t1,
        pass: pass_ends && pass_derivatives && pass_t1_clauses && pass_ii_t1,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantityMin {
    pub name: String,
    pub min: f64,
    pub arg: (f64, f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub t: f64,
    pub x: f64,
    pub quantity: String,
    pub value: f64,
}

/// Grid minima of the Ricci diagonal, the time-x block determinant, and the
/// spherical sectional curvatures, everything normalized by `t^2` in
/// construction units (signs equal those of the scaled metric). `kappa` and
/// `lambda` are recorded alongside so scaled values can be reconstructed.
#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub params: NeckParamsSummary,
    pub nt: usize,
    pub nx: usize,
    pub seam_half_width: f64,
    pub minima: Vec<QuantityMin>,
    /// Empirical spherical-curvature floor constants `min t^2 K`.
    pub c_s_xsigma: f64,
    pub c_s_sigmasigma: f64,
    pub violations: Vec<Violation>,
    pub pass: bool,
    /// Grid rows actually evaluated (seam band excluded).
    pub rows: usize,
}

/// The composite `t`-grid: a linear stretch across the ramp `[t0, 2 t0]`
/// (one quarter of the budget) and a log-spaced tail to `t1`, with the seam
/// band removed.
pub(crate) fn t_grid(params: &NeckParams, nt: usize) -> Vec<f64> {
    let n_ramp = (nt / 4).max(8);
    let n_tail = nt - n_ramp;
    let mut ts = Vec::with_capacity(nt);
    ts.extend(linspace(params.t0, 2.0 * params.t0, n_ramp));
    let tail_lo = 2.0 * params.t0;
    let (la, lb) = (tail_lo.ln(), params.ln_t1);
    for i in 0..n_tail {
        ts.push((la + (lb - la) * (i + 1) as f64 / n_tail as f64).exp());
    }
    ts.retain(|&t| !params.in_seam(t) && t <= params.t1);
    ts
}

/// Normalized curvature data over the verification grid, for CSV dumps.
pub fn grid_rows(
    params: &NeckParams,
    nt: usize,
    nx: usize,
) -> Result<Vec<NormalizedPoint>, NeckError> {
    let ts = t_grid(params, nt);
    let xs: Vec<EtaEntry> = linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        nx,
    )
    .into_iter()
    .map(|x| eta_entry(params, x))
    .collect();
    let mut out = Vec::with_capacity(ts.len() * xs.len());
    for &t in &ts {
        let jets = params.norm_jets(t)?;
        for e in &xs {
            out.push(normalized_point(params, t, &jets, e));
        }
    }
    Ok(out)
}

pub fn ricci_positivity_report(
    params: &NeckParams,
    nt: usize,
    nx: usize,
) -> Result<GridReport, NeckError> {
    let ts = t_grid(params, nt);
    let xs: Vec<EtaEntry> = linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        nx,
    )
    .into_iter()
    .map(|x| eta_entry(params, x))
    .collect();

    struct RowMin {
        vals: [(f64, f64, f64); 6], // (min, t, x) for each tracked quantity
    }
    let rows: Vec<RowMin> = parallel_map(ts.len(), |i| {
        let t = ts[i];
        let jets = params.norm_jets(t).expect("grid t valid");
        let mut vals = [(f64::INFINITY, 0.0, 0.0); 6];
        for e in &xs {
            let np = normalized_point(params, t, &jets, e);
            for (slot, v) in vals.iter_mut().zip([
                np.ric_tt,
                np.ric_xx,
                np.ric_ss,
                np.det2,
                np.k_xsigma,
                np.k_sigmasigma,
            ]) {
                if v < slot.0 {
                    *slot = (v, t, e.x);
                }
            }
        }
        RowMin { vals }
    });

    let names = [
        "t2_ric_tt",
        "t2_ric_xx",
        "t2_ric_sigmasigma",
        "t4_det_tx_block",
        "t2_k_xsigma",
        "t2_k_sigmasigma",
    ];
    let mut mins = [(f64::INFINITY, 0.0, 0.0); 6];
    for row in &rows {
        for (m, v) in mins.iter_mut().zip(row.vals.iter()) {
            if v.0 < m.0 {
                *m = *v;
            }
        }
    }
    let minima: Vec<QuantityMin> = names
        .iter()
        .zip(mins.iter())
        .map(|(n, m)| QuantityMin {
            name: n.to_string(),
            min: m.0,
            arg: (m.1, m.2),
        })
        .collect();
    let mut violations: Vec<Violation> = Vec::new();
    for (n, m) in names.iter().take(4).zip(mins.iter().take(4)) {
        if m.0 <= 0.0 {
            violations.push(Violation {
                t: m.1,
                x: m.2,
                quantity: n.to_string(),
                value: m.0,
            });
        }
    }
    let pass = violations.is_empty();
    Ok(GridReport {
        params: params.summary(),
        nt,
        nx,
        seam_half_width: params.seam_half_width,
        c_s_xsigma: mins[4].0,
        c_s_sigmasigma: mins[5].0,
        minima,
        violations,
        pass,
        rows: ts.len(),
    })
}

/// Empirical estimates of the decay-envelope constants, plus the two
/// pointwise sign conditions that drive the radial Ricci positivity: the
/// ramp combination `Gamma' + 2 Gamma / t > 0` and the coefficient bound
/// `alpha eta h / (1 + (h - 1) eta) - n < 0`.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    /// sup of `|k'/k| t ln^2 t / ln 2t0`.
    pub c1_log_derivative: f64,
    /// sup of `|eta h'/(1 + (h-1) eta)| t ln^2 t / ln 2t0`.
    pub c1_eta_derivative: f64,
    /// sup of `|k''/k| t^2 ln^2 t / ln 2t0`.
    pub c2_log_second: f64,
    /// sup of `|eta h''/(1 + (h-1) eta)| t^2 ln^2 t / ln 2t0`.
    pub c2_eta_second: f64,
    /// sup of the normalized time-direction curvatures `|t^2 K| ln^2 t / ln 2t0`.
    pub c_u_time: f64,
    /// min of `(Gamma' + 2 Gamma/t) t^2 ln^2 t / ln 2t0`.
    pub c_n_ramp_min: f64,
    pub ramp_positive: bool,
    /// max of `alpha eta h / (1 + (h-1) eta) - n`.
    pub coefficient_max: f64,
    pub coefficient_negative: bool,
    pub pass: bool,
}

pub fn asymptotic_bound_check(
    params: &NeckParams,
    nt: usize,
    nx: usize,
) -> Result<AsymptoticReport, NeckError> {
    let ts = t_grid(params, nt);
    let xs: Vec<EtaEntry> = linspace(
        -std::f64::consts::FRAC_PI_2 + X_MARGIN,
        std::f64::consts::FRAC_PI_2 - X_MARGIN,
        nx,
    )
    .into_iter()
    .map(|x| eta_entry(params, x))
    .collect();
    let l = (2.0 * params.t0).ln();
    let n = params.prof.g1.n as f64;

    let mut rep = AsymptoticReport {
        c1_log_derivative: 0.0,
        c1_eta_derivative: 0.0,
        c2_log_second: 0.0,
        c2_eta_second: 0.0,
        c_u_time: 0.0,
        c_n_ramp_min: f64::INFINITY,
        ramp_positive: false,
        coefficient_max: f64::NEG_INFINITY,
        coefficient_negative: false,
        pass: false,
    };

    for &t in &ts {
        let jets = params.norm_jets(t)?;
        let lt = t.ln();
        // Envelope weights for the t-normalized quantities: |k'/k| t ln^2 t
        // equals |tp| ln^2 t, and |k''/k| t^2 ln^2 t equals |t2kpp| ln^2 t.
        let env = lt * lt / l;
        rep.c1_log_derivative = rep.c1_log_derivative.max(jets.tp.abs() * env);
        rep.c2_log_second = rep.c2_log_second.max(jets.t2kpp.abs() * env);
        let (tg, t2gp) = super::gamma::scaled_gamma(t, params.t0)?;
        // (Gamma' + 2 Gamma / t) t^2 ln^2 t / ln 2t0.
        let ramp = (t2gp + 2.0 * tg) * env;
        rep.c_n_ramp_min = rep.c_n_ramp_min.min(ramp);
        for e in &xs {
            let s = 1.0 + (jets.h - 1.0) * e.eta;
            let w = e.eta * jets.h / s;
            rep.c1_eta_derivative = rep.c1_eta_derivative.max((w * jets.th).abs() * env);
            rep.c2_eta_second = rep.c2_eta_second.max((w * jets.t2hpp).abs() * env);
            rep.coefficient_max = rep.coefficient_max.max(params.alpha * w - n);
            let np = normalized_point(params, t, &jets, e);
            rep.c_u_time = rep
                .c_u_time
                .max(np.k_tx.abs() * env)
                .max(np.k_tsigma.abs() * env)
                .max((np.ric_tx / (n - 1.0)).abs() * env);
        }
    }
    rep.ramp_positive = rep.c_n_ramp_min > 0.0;
    rep.coefficient_negative = rep.coefficient_max < 0.0;
    rep.pass = rep.ramp_positive
        && rep.coefficient_negative
        && rep.c1_log_derivative.is_finite()
        && rep.c2_log_second.is_finite()
        && rep.c1_eta_derivative.is_finite()
        && rep.c2_eta_second.is_finite()
        && rep.c_u_time.is_finite();
    Ok(rep)
}
