//! Arithmetic for assembling Ricci-positive pieces along isometric
//! boundaries: the second-fundamental-form positivity check for gluing, the
//! feasibility window for the docking-station construction, the scaling
//! bookkeeping that attaches cores to a docking station, and the exponential
//! bending profile that makes product boundaries convex.
//!
//! Throughout, second fundamental forms pair with the outward normal of
//! their own side, so a gluing is admissible when the two forms sum to
//! something positive definite.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GlueError {
    #[error("boundaries are not isometric: {0}")]
    BoundaryMismatch(String),
    #[error("principal curvature lists have different lengths: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("bending width must be positive, got {0}")]
    BadWidth(f64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// Intrinsic geometry of a boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundaryShape {
    Round { radius: f64 },
    Warped { waist: f64, diameter: f64 },
}

/// One boundary component: its intrinsic shape and the diagonal principal
/// curvatures with respect to the outward normal.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryData {
    pub shape: BoundaryShape,
    pub principal_curvatures: Vec<f64>,
    pub dim: usize,
}

impl BoundaryData {
    pub fn round(radius: f64, ii: f64, dim: usize) -> Self {
        BoundaryData {
            shape: BoundaryShape::Round { radius },
            principal_curvatures: vec![ii; dim],
            dim,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GlueMode {
    /// The sum of the two forms must be positive definite.
    Strict,
    /// The forms cancel exactly and the first is positive definite.
    Degenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlueReport {
    pub mode: GlueMode,
    /// Smallest eigenvalue of the summed (diagonal) forms.
    pub min_sum: f64,
    pub min_first: f64,
    pub pass: bool,
}

const ISOMETRY_TOL: f64 = 1e-9;

fn shapes_match(a: &BoundaryShape, b: &BoundaryShape) -> bool {
    match (a, b) {
        (BoundaryShape::Round { radius: ra }, BoundaryShape::Round { radius: rb }) => {
            (ra - rb).abs() <= ISOMETRY_TOL * ra.abs().max(1.0)
        }
        (
            BoundaryShape::Warped {
                waist: wa,
                diameter: da,
            },
            BoundaryShape::Warped {
                waist: wb,
                diameter: db,
            },
        ) => {
            (wa - wb).abs() <= ISOMETRY_TOL * wa.abs().max(1.0)
                && (da - db).abs() <= ISOMETRY_TOL * da.abs().max(1.0)
        }
        _ => false,
    }
}

/// Check the gluing condition for two boundary components with isometric
/// intrinsic data.
pub fn glue_check(
    b1: &BoundaryData,
    b2: &BoundaryData,
    mode: GlueMode,
) -> Result<GlueReport, GlueError> {
    if b1.dim != b2.dim || !shapes_match(&b1.shape, &b2.shape) {
        return Err(GlueError::BoundaryMismatch(format!(
            "{:?} (dim {}) vs {:?} (dim {})",
            b1.shape, b1.dim, b2.shape, b2.dim
        )));
    }
    if b1.principal_curvatures.len() != b2.principal_curvatures.len() {
        return Err(GlueError::RankMismatch(
            b1.principal_curvatures.len(),
            b2.principal_curvatures.len(),
        ));
    }
    let mut min_sum = f64::INFINITY;
    let mut min_first = f64::INFINITY;
    for (a, b) in b1
        .principal_curvatures
        .iter()
        .zip(b2.principal_curvatures.iter())
    {
        min_sum = min_sum.min(a + b);
        min_first = min_first.min(*a);
    }
    let pass = match mode {
        GlueMode::Strict => min_sum > 0.0,
        GlueMode::Degenerate => min_sum.abs() <= 1e-12 && min_first > 0.0,
    };
    Ok(GlueReport {
        mode,
        min_sum,
        min_first,
        pass,
    })
}

/// Admissibility window and normalization identities for building a docking
/// station on the sphere with `k` balls removed and boundary radius `rho`.
#[derive(Debug, Clone, Serialize)]
pub struct DockingReport {
    pub n: usize,
    pub k: usize,
    pub rho: f64,
    /// A concrete admissible pair `r < R` with `r^{(n-1)/n} < rho < R < 1`.
    pub r: f64,
    pub big_r: f64,
    pub feasible: bool,
    /// After scaling a neck end of radius `rho/lambda` and principal
    /// curvature `-lambda` by `lambda`, the boundary has radius `rho` and
    /// principal curvatures `-1`; checked for a sweep of `lambda`.
    pub normalization_identity: bool,
}

pub fn docking_feasibility(n: usize, k: usize, rho: f64) -> Result<DockingReport, GlueError> {
    if n <= 3 {
        return Err(GlueError::BadParameter(format!("need n > 3, got {n}")));
    }
    if k == 0 {
        return Err(GlueError::BadParameter("need k > 0".into()));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(rho > 0.0) {
        return Err(GlueError::BadParameter(format!("need rho > 0, got {rho}")));
    }
    if rho >= 1.0 {
        return Ok(DockingReport {
            n,
            k,
            rho,
            r: f64::NAN,
            big_r: f64::NAN,
            feasible: false,
            normalization_identity: false,
        });
    }
    // Midpoint construction: R halfway between rho and 1, and r half of the
    // largest value allowed by r^{(n-1)/n} < rho.
    let big_r = 0.5 * (rho + 1.0);
    let exponent = (n as f64 - 1.0) / n as f64;
    let r_cap = rho.powf(1.0 / exponent);
    let r = 0.5 * r_cap;
    let admissible = r.powf(exponent) < rho && rho < big_r && big_r < 1.0 && r < big_r;

    let mut normalization_identity = true;
    for lambda in [0.5, 1.0, 7.3, 4.1e3] {
        let radius_after = lambda * (rho / lambda);
        let ii_after = (1.0 / lambda) * (-lambda);
        if (radius_after - rho).abs() > 1e-12 * rho || (ii_after + 1.0).abs() > 1e-12 {
            normalization_identity = false;
        }
    }

    Ok(DockingReport {
        n,
        k,
        rho,
        r,
        big_r,
        feasible: admissible,
        normalization_identity,
    })
}

/// Check `r^{(n-1)/n} < rho < R` for explicit values.
pub fn docking_window_admissible(n: usize, r: f64, big_r: f64, rho: f64) -> bool {
    let exponent = (n as f64 - 1.0) / n as f64;
    0.0 < r && r < big_r && big_r < 1.0 && r.powf(exponent) < rho && rho < big_r
}

/// One core summand of an assembly: boundary radius and the infimum of its
/// boundary principal curvatures.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoreBoundary {
    pub rho_i: f64,
    pub nu_i: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandPlan {
    pub rho_i: f64,
    pub nu_i: f64,
    /// Scale factor normalizing the boundary radius to the common `rho`.
    pub s_i: f64,
    /// Boundary curvature after scaling; must exceed 1 to beat the docking
    /// station's `-1`.
    pub scaled_nu: f64,
    pub glue_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssemblyPlan {
    pub rho: f64,
    pub dim: usize,
    pub summands: Vec<SummandPlan>,
    pub docking: DockingReport,
    pub pass: bool,
    /// Index of the summand with the smallest margin (the binding
    /// constraint), if any fail.
    pub binding: Option<usize>,
}

/// Scale each core so its boundary radius matches `rho`, then check that
/// every scaled boundary glues against the docking station's concave
/// boundary (principal curvatures all `-1`).
pub fn assembly_plan(
    cores: &[CoreBoundary],
    n: usize,
    rho: f64,
) -> Result<AssemblyPlan, GlueError> {
    let docking = docking_feasibility(n, cores.len().max(1), rho)?;
    let boundary_dim = n - 1;
    let docking_boundary = BoundaryData::round(rho, -1.0, boundary_dim);
    let mut summands = Vec::with_capacity(cores.len());
    let mut binding: Option<(usize, f64)> = None;
    for (i, c) in cores.iter().enumerate() {
        let s_i = rho / c.rho_i;
        let scaled_nu = c.nu_i / s_i;
        let scaled = BoundaryData::round(rho, scaled_nu, boundary_dim);
        let glue = glue_check(&scaled, &docking_boundary, GlueMode::Strict)?;
        let margin = scaled_nu - 1.0;
        if binding.map(|(_, m)| margin < m).unwrap_or(true) {
            binding = Some((i, margin));
        }
        summands.push(SummandPlan {
            rho_i: c.rho_i,
            nu_i: c.nu_i,
            s_i,
            scaled_nu,
            glue_pass: glue.pass,
        });
    }
    let all_pass = docking.feasible && summands.iter().all(|s| s.glue_pass);
    Ok(AssemblyPlan {
        rho,
        dim: n,
        summands,
        docking,
        pass: all_pass,
        binding: if all_pass {
            None
        } else {
            binding.map(|(i, _)| i)
        },
    })
}

/// Value and first two derivatives of the bending profile
/// `chi(t) = exp(-1/(t + xi)^2)` on `(-xi, 0]`, zero before `-xi`.
pub fn bend_profile(xi: f64, t: f64) -> Result<(f64, f64, f64), GlueError> {
    if xi <= 0.0 {
        return Err(GlueError::BadWidth(xi));
    }
    if t <= -xi {
        return Ok((0.0, 0.0, 0.0));
    }
    let u = t + xi;
    let v = (-1.0 / (u * u)).exp();
    let d1 = v * 2.0 / (u * u * u);
    let d2 = v * (4.0 / u.powi(6) - 6.0 / u.powi(4));
    Ok((v, d1, d2))
}

#[derive(Debug, Clone, Serialize)]
pub struct BendReport {
    pub xi: f64,
    /// One-sided finite-difference estimates of derivatives 1..=4 at the
    /// join `t = -xi`; all must vanish.
    pub join_derivatives: [f64; 4],
    pub join_flat: bool,
    /// `chi'(0) = 2 xi^{-3} exp(-1/xi^2)`, the convexity gained at the
    /// boundary.
    pub slope_at_zero: f64,
    /// Sup norms of `(chi, chi', chi'')` over a halving sequence of widths
    /// starting at `xi`.
    pub c2_norms: Vec<(f64, f64)>,
    pub c2_monotone: bool,
    pub pass: bool,
}

/// Check the defining properties of the bending profile: flatness at the
/// join to all tested orders, positive slope at the boundary, and a
/// `C^2`-norm that shrinks with the width.
pub fn bend_check(xi: f64) -> Result<BendReport, GlueError> {
    if xi <= 0.0 {
        return Err(GlueError::BadWidth(xi));
    }
    // One-sided stencils from the right of the join.
    let h = xi * 1e-2;
    let f = |k: f64| bend_profile(xi, -xi + k * h).map(|(v, _, _)| v).unwrap();
    let (f0, f1, f2, f3, f4) = (f(0.0), f(1.0), f(2.0), f(3.0), f(4.0));
    let d1 = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    let d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
    let d3 = (-f0 + 3.0 * f1 - 3.0 * f2 + f3) / (h * h * h);
    let d4 = (f0 - 4.0 * f1 + 6.0 * f2 - 4.0 * f3 + f4) / (h * h * h * h);
    let join_derivatives = [d1, d2, d3, d4];
    let join_flat = join_derivatives.iter().all(|d| d.abs() < 1e-8);

    let slope_at_zero = bend_profile(xi, 0.0)?.1;

    let c2_norm = |w: f64| -> f64 {
        let mut sup: f64 = 0.0;
        for i in 0..=2000 {
            let t = -w + w * (i as f64) / 2000.0;
            let (v, d1, d2) = bend_profile(w, t).unwrap();
            sup = sup.max(v.abs()).max(d1.abs()).max(d2.abs());
        }
        sup
    };
    let mut c2_norms = Vec::new();
    let mut w = xi;
    for _ in 0..4 {
        c2_norms.push((w, c2_norm(w)));
        w *= 0.5;
    }
    let c2_monotone = c2_norms.windows(2).all(|p| p[1].1 < p[0].1);

    Ok(BendReport {
        xi,
        join_derivatives,
        join_flat,
        slope_at_zero,
        c2_norms,
        c2_monotone,
        pass: join_flat && slope_at_zero > 0.0 && c2_monotone,
    })
}
