//! Brute-force curvature oracle on a coordinate chart.
//!
//! Everything here is computed from finite differences of the raw metric
//! coefficients: Christoffel symbols from first derivatives, the lowered
//! Riemann tensor from second derivatives plus quadratic Christoffel terms,
//! Ricci by trace, sectional curvatures by plane contraction, and the second
//! fundamental form of coordinate slices from the normal derivative of the
//! induced metric. No closed-form curvature knowledge enters this module, so
//! it can sit on the other side of cross-checks against the analytic kernels
//! in the rest of the crate.
//!
//! Conventions: the lowered tensor satisfies `R(u, v, v, u) = K(u, v) *
//! (|u|^2 |v|^2 - <u,v>^2)`, so the round sphere has positive components, and
//! second fundamental forms pair with the `+axis` coordinate normal.

// Index loops mirror the tensor formulas on purpose.
#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Central 5-point first-derivative weights at offsets -2h, -h, +h, +2h.
const D1_W: [f64; 4] = [1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0];
const D1_OFF: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

#[derive(Debug, Error)]
pub enum ChartError {
    #[error("point is within {margin} of the domain boundary along axis {axis}")]
    Margin { axis: usize, margin: f64 },
    #[error("metric matrix is numerically singular (condition estimate {cond:.3e})")]
    Singular { cond: f64 },
    #[error("metric matrix is not positive definite at the queried point")]
    NotPositiveDefinite,
    #[error("plane is degenerate (gram determinant {0:.3e})")]
    DegeneratePlane(f64),
    #[error("metric is not in normal form along axis {axis}: defect {defect:.3e}")]
    NotNormalForm { axis: usize, defect: f64 },
    #[error("point dimension {got} does not match chart dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
}

type MetricFn = dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync;

/// A metric tensor given by its coefficient matrix on an axis-aligned box.
#[derive(Clone)]
pub struct MetricChart {
    dim: usize,
    components: Arc<MetricFn>,
    domain: Vec<(f64, f64)>,
}

/// Rank-3 array `G[c][a][b]` of Christoffel symbols.
#[derive(Debug, Clone)]
pub struct Rank3 {
    dim: usize,
    data: Vec<f64>,
}

impl Rank3 {
    fn zeros(dim: usize) -> Self {
        Rank3 {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }
    #[inline]
    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.data[(c * self.dim + a) * self.dim + b]
    }
    #[inline]
    fn set(&mut self, c: usize, a: usize, b: usize, v: f64) {
        self.data[(c * self.dim + a) * self.dim + b] = v;
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Rank-4 array `R[a][b][c][d]` of lowered Riemann components.
#[derive(Debug, Clone)]
pub struct Rank4 {
    dim: usize,
    data: Vec<f64>,
}

impl Rank4 {
    fn zeros(dim: usize) -> Self {
        Rank4 {
            dim,
            data: vec![0.0; dim * dim * dim * dim],
        }
    }
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d]
    }
    #[inline]
    fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: f64) {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d] = v;
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Christoffel symbols, lowered Riemann tensor, Ricci tensor, and the metric
/// at a point.
#[derive(Debug, Clone)]
pub struct CurvatureAtPoint {
    pub christoffel: Rank3,
    pub riemann_lowered: Rank4,
    pub ricci: DMatrix<f64>,
    pub metric: DMatrix<f64>,
    pub point: Vec<f64>,
}

impl MetricChart {
    pub fn new<F>(dim: usize, domain: Vec<(f64, f64)>, components: F) -> Self
    where
        F: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    {
        assert_eq!(domain.len(), dim);
        MetricChart {
            dim,
            components: Arc::new(components),
            domain,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn metric_at(&self, p: &[f64]) -> DMatrix<f64> {
        (self.components)(p)
    }

    /// Default step: 1e-3 of the shortest domain side.
    pub fn default_step(&self) -> f64 {
        let side = self
            .domain
            .iter()
            .map(|(a, b)| b - a)
            .fold(f64::INFINITY, f64::min);
        1e-3 * side
    }

    /// The same chart with every metric coefficient multiplied by `kappa^2`.
    pub fn scaled(&self, kappa: f64) -> MetricChart {
        let inner = self.components.clone();
        let k2 = kappa * kappa;
        MetricChart {
            dim: self.dim,
            components: Arc::new(move |p| inner(p) * k2),
            domain: self.domain.clone(),
        }
    }

    fn check_margin(&self, point: &[f64], margin: f64) -> Result<(), ChartError> {
        if point.len() != self.dim {
            return Err(ChartError::DimensionMismatch {
                got: point.len(),
                want: self.dim,
            });
        }
        for (axis, (&p, &(lo, hi))) in point.iter().zip(self.domain.iter()).enumerate() {
            if p - lo < margin || hi - p < margin {
                return Err(ChartError::Margin { axis, margin });
            }
        }
        Ok(())
    }
}

/// Inverse of a symmetric positive-definite matrix through its eigensystem,
/// rejecting condition numbers above 1e12 so that coordinate degeneracies
/// fail loudly instead of producing garbage curvature.
fn guarded_inverse(g: &DMatrix<f64>) -> Result<DMatrix<f64>, ChartError> {
    let sym = (g + g.transpose()) * 0.5;
    let eig = sym.clone().symmetric_eigen();
    let mut min_ev = f64::INFINITY;
    let mut max_ev: f64 = 0.0;
    for &ev in eig.eigenvalues.iter() {
        min_ev = min_ev.min(ev);
        max_ev = max_ev.max(ev.abs());
    }
    if min_ev <= 0.0 {
        return Err(ChartError::NotPositiveDefinite);
    }
    let cond = max_ev / min_ev;
    if cond > 1e12 {
        return Err(ChartError::Singular { cond });
    }
    let inv_diag = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&ev| 1.0 / ev),
    );
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&inv_diag) * eig.eigenvectors.transpose())
}

fn shifted(point: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut q = point.to_vec();
    q[axis] += delta;
    q
}

/// First partials of every metric coefficient: `dg[a][(i,j)] = d_a g_ij`,
/// order-4 central stencil.
fn metric_first_derivs(chart: &MetricChart, point: &[f64], h: f64) -> Vec<DMatrix<f64>> {
    let dim = chart.dim;
    let mut out = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut acc = DMatrix::zeros(dim, dim);
        for (w, off) in D1_W.iter().zip(D1_OFF.iter()) {
            acc += chart.metric_at(&shifted(point, a, off * h)) * (*w / h);
        }
        out.push(acc);
    }
    out
}

/// Second partial `d_a d_b g` by order-4 stencils (same-axis 5-point formula,
/// mixed axes by composing two first-derivative stencils).
fn metric_second_deriv(
    chart: &MetricChart,
    point: &[f64],
    a: usize,
    b: usize,
    h: f64,
) -> DMatrix<f64> {
    let dim = chart.dim;
    if a == b {
        let mut acc = chart.metric_at(point) * (-30.0 / (12.0 * h * h));
        for (c, off) in [(-1.0, -2.0), (16.0, -1.0), (16.0, 1.0), (-1.0, 2.0)] {
            acc += chart.metric_at(&shifted(point, a, off * h)) * (c / (12.0 * h * h));
        }
        acc
    } else {
        let mut acc = DMatrix::zeros(dim, dim);
        for (wi, oi) in D1_W.iter().zip(D1_OFF.iter()) {
            for (wj, oj) in D1_W.iter().zip(D1_OFF.iter()) {
                let mut q = point.to_vec();
                q[a] += oi * h;
                q[b] += oj * h;
                acc += chart.metric_at(&q) * (wi * wj / (h * h));
            }
        }
        acc
    }
}

/// Christoffel symbols `G^c_ab = 1/2 g^cd (d_a g_bd - d_d g_ab + d_b g_ad)`
/// from order-4 central differences.
pub fn christoffel_fd(chart: &MetricChart, point: &[f64], step: f64) -> Result<Rank3, ChartError> {
    chart.check_margin(point, 2.0 * step)?;
    let dim = chart.dim;
    let g_inv = guarded_inverse(&chart.metric_at(point))?;
    let dg = metric_first_derivs(chart, point, step);
    let mut gamma = Rank3::zeros(dim);
    for c in 0..dim {
        for a in 0..dim {
            for b in a..dim {
                let mut sum = 0.0;
                for d in 0..dim {
                    sum += g_inv[(c, d)] * (dg[a][(b, d)] - dg[d][(a, b)] + dg[b][(a, d)]);
                }
                let v = 0.5 * sum;
                gamma.set(c, a, b, v);
                gamma.set(c, b, a, v);
            }
        }
    }
    Ok(gamma)
}

/// Lowered Riemann tensor
///
/// ```text
/// R_abcd = 1/2 (d_a d_c g_bd + d_b d_d g_ac - d_a d_d g_bc - d_b d_c g_ad)
///          + g_ef (G^e_ac G^f_bd - G^e_ad G^f_bc)
/// ```
///
/// and the Ricci tensor `Ric_bc = g^ad R_abcd`. With symmetric stencils the
/// antisymmetries, pair symmetry, and first Bianchi identity of this
/// expression hold to rounding; only comparisons against analytic curvature
/// see the stencil truncation error.
pub fn riemann_ricci_fd(
    chart: &MetricChart,
    point: &[f64],
    step: f64,
) -> Result<CurvatureAtPoint, ChartError> {
    chart.check_margin(point, 4.0 * step)?;
    let dim = chart.dim;
    let g = chart.metric_at(point);
    let g_inv = guarded_inverse(&g)?;
    let gamma = christoffel_fd(chart, point, step)?;

    // All distinct second partials d_a d_b g, symmetric in (a, b).
    let mut hess: Vec<Option<DMatrix<f64>>> = vec![None; dim * dim];
    for a in 0..dim {
        for b in a..dim {
            let m = metric_second_deriv(chart, point, a, b, step);
            hess[a * dim + b] = Some(m.clone());
            if a != b {
                hess[b * dim + a] = Some(m);
            }
        }
    }
    let h2 = |a: usize, b: usize| hess[a * dim + b].as_ref().unwrap();

    let mut riemann = Rank4::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    let deriv_part = 0.5
                        * (h2(a, c)[(b, d)] + h2(b, d)[(a, c)]
                            - h2(a, d)[(b, c)]
                            - h2(b, c)[(a, d)]);
                    let mut quad = 0.0;
                    for e in 0..dim {
                        for f in 0..dim {
                            quad += g[(e, f)]
                                * (gamma.get(e, a, c) * gamma.get(f, b, d)
                                    - gamma.get(e, a, d) * gamma.get(f, b, c));
                        }
                    }
                    riemann.set(a, b, c, d, deriv_part + quad);
                }
            }
        }
    }

    let mut ricci = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        for c in 0..dim {
            let mut sum = 0.0;
            for a in 0..dim {
                for d in 0..dim {
                    sum += g_inv[(a, d)] * riemann.get(a, b, c, d);
                }
            }
            ricci[(b, c)] = sum;
        }
    }

    Ok(CurvatureAtPoint {
        christoffel: gamma,
        riemann_lowered: riemann,
        ricci,
        metric: g,
        point: point.to_vec(),
    })
}

/// Sectional curvature of the plane spanned by `u`, `v`:
/// `K = R(u, v, v, u) / (|u|^2 |v|^2 - <u,v>^2)`.
pub fn sectional_fd(curv: &CurvatureAtPoint, u: &[f64], v: &[f64]) -> Result<f64, ChartError> {
    let dim = curv.metric.nrows();
    let g = &curv.metric;
    let pair = |x: &[f64], y: &[f64]| {
        let mut s = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                s += g[(i, j)] * x[i] * y[j];
            }
        }
        s
    };
    let uu = pair(u, u);
    let vv = pair(v, v);
    let uv = pair(u, v);
    let gram = uu * vv - uv * uv;
    if gram <= 1e-12 * uu * vv {
        return Err(ChartError::DegeneratePlane(gram));
    }
    let mut num = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    num += curv.riemann_lowered.get(a, b, c, d) * u[a] * v[b] * v[c] * u[d];
                }
            }
        }
    }
    Ok(num / gram)
}

/// Contraction `R(u, v, w, z)` of the lowered tensor with four vectors.
pub fn riemann_contract(
    curv: &CurvatureAtPoint,
    u: &[f64],
    v: &[f64],
    w: &[f64],
    z: &[f64],
) -> f64 {
    let dim = curv.metric.nrows();
    let mut s = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    s += curv.riemann_lowered.get(a, b, c, d) * u[a] * v[b] * w[c] * z[d];
                }
            }
        }
    }
    s
}

/// Ricci contraction `Ric(u, v)` at the point.
pub fn ricci_contract(curv: &CurvatureAtPoint, u: &[f64], v: &[f64]) -> f64 {
    let dim = curv.metric.nrows();
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            s += curv.ricci[(i, j)] * u[i] * v[j];
        }
    }
    s
}

/// Second fundamental form of the coordinate slice `{x_axis = const}` with
/// respect to the unit normal `+d_axis`, for metrics in normal form along
/// that axis (`g_aa = 1`, vanishing cross terms): `II_ij = 1/2 d_axis g_ij`
/// restricted to the slice indices.
pub fn second_fundamental_fd(
    chart: &MetricChart,
    slice_axis: usize,
    point: &[f64],
    step: f64,
) -> Result<DMatrix<f64>, ChartError> {
    chart.check_margin(point, 2.0 * step)?;
    let dim = chart.dim;
    // Normal-form precondition, checked across the stencil points.
    for off in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let g = chart.metric_at(&shifted(point, slice_axis, off * step));
        let mut defect = (g[(slice_axis, slice_axis)] - 1.0).abs();
        for j in 0..dim {
            if j != slice_axis {
                defect = defect.max(g[(slice_axis, j)].abs());
            }
        }
        if defect > 1e-8 {
            return Err(ChartError::NotNormalForm {
                axis: slice_axis,
                defect,
            });
        }
    }
    let mut dg = DMatrix::zeros(dim, dim);
    for (w, off) in D1_W.iter().zip(D1_OFF.iter()) {
        dg += chart.metric_at(&shifted(point, slice_axis, off * step)) * (*w / step);
    }
    let m = dim - 1;
    let mut ii = DMatrix::zeros(m, m);
    let keep: Vec<usize> = (0..dim).filter(|&i| i != slice_axis).collect();
    for (r, &i) in keep.iter().enumerate() {
        for (c, &j) in keep.iter().enumerate() {
            ii[(r, c)] = 0.5 * dg[(i, j)];
        }
    }
    Ok(ii)
}

/// Charts used repeatedly in tests and cross-checks.
pub mod charts {
    use super::MetricChart;
    use nalgebra::DMatrix;

    /// Euclidean chart of the given dimension on [-1, 1]^dim.
    pub fn euclidean(dim: usize) -> MetricChart {
        MetricChart::new(dim, vec![(-1.0, 1.0); dim], move |_| {
            DMatrix::identity(dim, dim)
        })
    }

    /// Unit round 2-sphere chart `dt^2 + sin^2 t dth^2` away from the poles.
    pub fn round_s2() -> MetricChart {
        MetricChart::new(
            2,
            vec![(0.05, std::f64::consts::PI - 0.05), (0.0, 6.0)],
            |p| {
                let mut g = DMatrix::zeros(2, 2);
                g[(0, 0)] = 1.0;
                g[(1, 1)] = p[0].sin().powi(2);
                g
            },
        )
    }

    /// Hyperbolic-type chart `dt^2 + cosh^2 t dth^2`.
    pub fn hyperbolic_band() -> MetricChart {
        MetricChart::new(2, vec![(-1.5, 1.5), (0.0, 6.0)], |p| {
            let mut g = DMatrix::zeros(2, 2);
            g[(0, 0)] = 1.0;
            g[(1, 1)] = p[0].cosh().powi(2);
            g
        })
    }
}

#[cfg(test)]
mod tests {
    use super::charts::*;
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn euclidean_christoffels_vanish() {
        let chart = euclidean(3);
        let gamma = christoffel_fd(&chart, &[0.1, -0.2, 0.3], 1e-3).unwrap();
        assert!(gamma.max_abs() < 1e-10);
    }

    #[test]
    fn constant_conformal_christoffels_vanish() {
        let chart = euclidean(3).scaled(3.0);
        let gamma = christoffel_fd(&chart, &[0.0, 0.0, 0.0], 1e-3).unwrap();
        assert!(gamma.max_abs() < 1e-10);
    }

    #[test]
    fn round_sphere_christoffels() {
        let chart = round_s2();
        let t = PI / 4.0;
        let gamma = christoffel_fd(&chart, &[t, 1.0], 1e-4).unwrap();
        // Analytic values of the warped line element: G^t_thth = -sin t cos t,
        // G^th_t,th = cot t.
        assert!((gamma.get(0, 1, 1) + t.sin() * t.cos()).abs() < 1e-9);
        assert!((gamma.get(1, 0, 1) - t.cos() / t.sin()).abs() < 1e-9);
    }

    #[test]
    fn euclidean_curvature_vanishes() {
        let chart = euclidean(3);
        let c = riemann_ricci_fd(&chart, &[0.0, 0.1, -0.1], 1e-3).unwrap();
        assert!(c.riemann_lowered.max_abs() < 1e-8);
        assert!(c.ricci.amax() < 1e-8);
    }

    #[test]
    fn round_sphere_unit_curvature() {
        let chart = round_s2();
        for &t in &[0.6, PI / 4.0, 2.0] {
            let c = riemann_ricci_fd(&chart, &[t, 1.5], 1e-4).unwrap();
            let k = sectional_fd(&c, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
            assert!((k - 1.0).abs() < 1e-7, "K = {k} at t = {t}");
            // Ric = g on the unit sphere.
            for i in 0..2 {
                for j in 0..2 {
                    assert!((c.ricci[(i, j)] - c.metric[(i, j)]).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn hyperbolic_band_negative_curvature() {
        let chart = hyperbolic_band();
        let c = riemann_ricci_fd(&chart, &[0.4, 2.0], 1e-4).unwrap();
        let k = sectional_fd(&c, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!((k + 1.0).abs() < 1e-7, "K = {k}");
    }

    #[test]
    fn degenerate_plane_rejected() {
        let chart = euclidean(2);
        let c = riemann_ricci_fd(&chart, &[0.0, 0.0], 1e-3).unwrap();
        let err = sectional_fd(&c, &[1.0, 1.0], &[2.0, 2.0]).unwrap_err();
        assert!(matches!(err, ChartError::DegeneratePlane(_)));
    }

    #[test]
    fn margin_violation_rejected() {
        let chart = euclidean(2);
        let err = riemann_ricci_fd(&chart, &[0.9999, 0.0], 1e-3).unwrap_err();
        assert!(matches!(err, ChartError::Margin { .. }));
    }

    #[test]
    fn singular_metric_rejected() {
        let chart = MetricChart::new(2, vec![(-1.0, 1.0); 2], |p: &[f64]| {
            let mut g = DMatrix::zeros(2, 2);
            g[(0, 0)] = 1.0;
            g[(1, 1)] = p[0] * p[0]; // degenerates at the pole p[0] = 0
            g
        });
        let err = christoffel_fd(&chart, &[0.0, 0.0], 1e-4).unwrap_err();
        assert!(matches!(
            err,
            ChartError::Singular { .. } | ChartError::NotPositiveDefinite
        ));
    }

    #[test]
    fn product_slices_totally_geodesic() {
        let chart = MetricChart::new(3, vec![(-1.0, 1.0); 3], |_: &[f64]| {
            let mut g = DMatrix::identity(3, 3);
            g[(1, 1)] = 4.0;
            g[(2, 2)] = 0.25;
            g
        });
        let ii = second_fundamental_fd(&chart, 0, &[0.0, 0.0, 0.0], 1e-3).unwrap();
        assert!(ii.amax() < 1e-12);
    }

    #[test]
    fn cone_slice_second_fundamental() {
        // dt^2 + t^2 dth^2 at t = 2: II_thth / g_thth = 1/2.
        let chart = MetricChart::new(2, vec![(0.5, 4.0), (0.0, 6.0)], |p: &[f64]| {
            let mut g = DMatrix::zeros(2, 2);
            g[(0, 0)] = 1.0;
            g[(1, 1)] = p[0] * p[0];
            g
        });
        let ii = second_fundamental_fd(&chart, 0, &[2.0, 1.0], 1e-4).unwrap();
        assert!((ii[(0, 0)] / 4.0 - 0.5).abs() < 1e-10);
    }

    #[test]
    fn normal_form_precondition_enforced() {
        let chart = MetricChart::new(2, vec![(0.5, 4.0), (0.0, 6.0)], |p: &[f64]| {
            let mut g = DMatrix::zeros(2, 2);
            g[(0, 0)] = 1.0 + 0.1 * p[0]; // g_tt != 1
            g[(1, 1)] = p[0] * p[0];
            g
        });
        let err = second_fundamental_fd(&chart, 0, &[2.0, 1.0], 1e-4).unwrap_err();
        assert!(matches!(err, ChartError::NotNormalForm { .. }));
    }

    /// Riemann symmetries and the first Bianchi identity hold to FD tolerance
    /// on a bumpy random metric.
    #[test]
    fn riemann_symmetries_and_bianchi() {
        let chart = MetricChart::new(3, vec![(-1.0, 1.0); 3], |p: &[f64]| {
            let (x, y, z) = (p[0], p[1], p[2]);
            let mut g = DMatrix::identity(3, 3);
            g[(0, 0)] = 1.0 + 0.2 * (x + 2.0 * y).sin().powi(2);
            g[(1, 1)] = 1.3 + 0.2 * (y * z).cos();
            g[(2, 2)] = 0.9 + 0.1 * (x * z).sin();
            g[(0, 1)] = 0.05 * (x * y).sin();
            g[(1, 0)] = g[(0, 1)];
            g[(1, 2)] = 0.04 * (y + z).cos();
            g[(2, 1)] = g[(1, 2)];
            g
        });
        let step = 2e-3;
        let c = riemann_ricci_fd(&chart, &[0.1, -0.2, 0.15], step).unwrap();
        let scale = c.riemann_lowered.max_abs().max(1.0);
        // 10x the order-4 truncation estimate for this step and metric scale.
        let tol = 10.0 * (step.powi(4) + 1e-12 / (step * step)) * scale * 100.0;
        let r = &c.riemann_lowered;
        for a in 0..3 {
            for b in 0..3 {
                for cc in 0..3 {
                    for d in 0..3 {
                        let v = r.get(a, b, cc, d);
                        assert!((v + r.get(b, a, cc, d)).abs() < tol);
                        assert!((v + r.get(a, b, d, cc)).abs() < tol);
                        assert!((v - r.get(cc, d, a, b)).abs() < tol);
                        let bianchi = v + r.get(a, cc, d, b) + r.get(a, d, b, cc);
                        assert!(bianchi.abs() < tol);
                    }
                }
            }
        }
        // Ric symmetry.
        assert!((c.ricci.clone() - c.ricci.transpose()).amax() < tol);
    }

    /// Scale covariance: for kappa^2 g the lowered components pick up kappa^2
    /// and orthonormal-frame sectional curvatures pick up 1/kappa^2.
    #[test]
    fn oracle_scale_covariance() {
        let mut rng = StdRng::seed_from_u64(7);
        let chart = round_s2();
        let kappa = 3.0_f64;
        let scaled = chart.scaled(kappa);
        for _ in 0..5 {
            let p = [rng.gen_range(0.5..2.5), rng.gen_range(0.5..5.0)];
            let c1 = riemann_ricci_fd(&chart, &p, 1e-4).unwrap();
            let c2 = riemann_ricci_fd(&scaled, &p, 1e-4).unwrap();
            for a in 0..2 {
                for b in 0..2 {
                    for cc in 0..2 {
                        for d in 0..2 {
                            let want = kappa * kappa * c1.riemann_lowered.get(a, b, cc, d);
                            let got = c2.riemann_lowered.get(a, b, cc, d);
                            assert!(
                                (got - want).abs() <= 1e-6 * want.abs().max(1e-9),
                                "component ({a},{b},{cc},{d})"
                            );
                        }
                    }
                }
            }
            let k1 = sectional_fd(&c1, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
            let k2 = sectional_fd(&c2, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
            assert!((k2 - k1 / (kappa * kappa)).abs() < 1e-6 * k1.abs());
        }
    }

    /// Halving the step cuts the defect of known cases by at least 8x
    /// (order-4 stencils; measured on the round sphere where the truncation
    /// error is visible, and checked to stay at noise level on flat space).
    #[test]
    fn richardson_step_halving() {
        let flat = euclidean(2);
        for &h in &[0.08, 0.04] {
            let c = riemann_ricci_fd(&flat, &[0.1, 0.2], h).unwrap();
            assert!(c.riemann_lowered.max_abs() < 1e-12);
        }

        let sphere = round_s2();
        let defect = |h: f64| {
            let c = riemann_ricci_fd(&sphere, &[1.1, 2.0], h).unwrap();
            let k = sectional_fd(&c, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
            (k - 1.0).abs()
        };
        let d1 = defect(0.08);
        let d2 = defect(0.04);
        assert!(d2 <= d1 / 8.0, "d(0.08) = {d1:e}, d(0.04) = {d2:e}");
    }
}
